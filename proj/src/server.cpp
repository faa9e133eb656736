#include "qhorn/server.hpp"

#include "httplib.h"

namespace qhorn {

struct HttpServer::Impl {
  explicit Impl(SessionManager& s) : sessions(s) {}
  SessionManager& sessions;
  httplib::Server http;
};

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Runs `fn` and maps library errors onto HTTP status codes.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    reply(res, 200, fn());
  } catch (const NotFound& e) {
    reply(res, 404, {{"error", e.what()}});
  } catch (const json::exception& e) {
    reply(res, 400, {{"error", std::string("invalid JSON: ") + e.what()}});
  } catch (const Error& e) {
    reply(res, 400, {{"error", e.what()}});
  } catch (const std::exception& e) {
    reply(res, 500, {{"error", e.what()}});
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

HttpServer::HttpServer(SessionManager& sessions, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(sessions)) {
  auto& http = impl_->http;
  SessionManager& mgr = impl_->sessions;

  http.Post("/api/sessions", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return mgr.create(parse_body(req)); });
  });
  http.Get("/api/sessions", [&mgr](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { return json{{"sessions", mgr.ids()}}; });
  });
  http.Get(R"(/api/sessions/([^/]+))", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return mgr.state(req.matches[1]); });
  });
  http.Post(R"(/api/sessions/([^/]+)/answer)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.contains("answer") || !body["answer"].is_boolean()) throw Error("body needs boolean 'answer'");
      return mgr.answer(req.matches[1], body["answer"].get<bool>());
    });
  });
  http.Post(R"(/api/sessions/([^/]+)/rollback)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.contains("to") || !body["to"].is_number_unsigned()) throw Error("body needs non-negative integer 'to'");
      return mgr.rollback(req.matches[1], body["to"].get<std::size_t>());
    });
  });
  http.Get(R"(/api/sessions/([^/]+)/transcript)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return mgr.transcript(req.matches[1]); });
  });
  http.Get(R"(/api/sessions/([^/]+)/result)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return mgr.result(req.matches[1]); });
  });

  if (static_dir && !http.set_mount_point("/", static_dir->string())) {
    throw Error("static directory '" + static_dir->string() + "' does not exist");
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::run() { impl_->http.listen_after_bind(); }

void HttpServer::wait_until_ready() { impl_->http.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

}  // namespace qhorn
