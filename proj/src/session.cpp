#include "qhorn/session.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "qhorn/harness.hpp"

namespace qhorn {

const char* mode_name(SessionMode m) {
  switch (m) {
    case SessionMode::LearnQhorn1: return "learn-qhorn1";
    case SessionMode::LearnRp: return "learn-rp";
    case SessionMode::Verify: return "verify";
  }
  return "?";
}

const char* status_name(SessionStatus s) {
  switch (s) {
    case SessionStatus::AwaitingAnswer: return "awaiting_answer";
    case SessionStatus::Running: return "running";
    case SessionStatus::Done: return "done";
    case SessionStatus::Failed: return "failed";
  }
  return "?";
}

SessionRequest SessionRequest::from_json(const json& j) {
  if (!j.is_object()) throw Error("session request must be a JSON object");
  SessionRequest r;
  const std::string mode = j.value("mode", std::string{});
  if (mode == "learn-qhorn1") {
    r.mode = SessionMode::LearnQhorn1;
  } else if (mode == "learn-rp") {
    r.mode = SessionMode::LearnRp;
  } else if (mode == "verify") {
    r.mode = SessionMode::Verify;
  } else {
    throw Error("mode must be learn-qhorn1, learn-rp or verify");
  }
  const std::string oracle = j.value("oracle", std::string{"interactive"});
  if (oracle == "simulated") {
    r.oracle = OracleKind::Simulated;
  } else if (oracle != "interactive") {
    throw Error("oracle must be simulated or interactive");
  }
  r.theta_cap = j.value("theta_cap", 3);
  if (r.theta_cap < 1) throw Error("theta_cap must be positive");

  const QueryClass learn_class = r.mode == SessionMode::LearnQhorn1 ? QueryClass::Qhorn1 : QueryClass::RolePreserving;
  if (j.contains("target") && !j["target"].is_null()) r.target = query_from_json(j["target"], learn_class);
  if (j.contains("query") && !j["query"].is_null()) r.query = query_from_json(j["query"], QueryClass::RolePreserving);
  if (j.contains("intended") && !j["intended"].is_null()) r.intended = query_from_json(j["intended"]);

  const QhornQuery* source = r.mode == SessionMode::Verify ? (r.query ? &*r.query : nullptr) : (r.target ? &*r.target : nullptr);
  if (r.mode == SessionMode::Verify && !source) throw Error("verify sessions need a 'query'");
  if (r.mode != SessionMode::Verify && r.oracle == OracleKind::Simulated && !source) {
    throw Error("simulated learning needs a 'target' query");
  }
  if (r.mode == SessionMode::Verify && r.oracle == OracleKind::Simulated && !r.intended) {
    throw Error("simulated verification needs an 'intended' query");
  }

  if (j.contains("n") && !j["n"].is_null()) {
    if (!j["n"].is_number_integer()) throw Error("'n' must be an integer");
    r.n = j["n"].get<int>();
  } else if (source) {
    r.n = source->n;
  } else {
    throw Error("'n' is required");
  }
  check_arity(r.n);
  if ((source && source->n != r.n) || (r.intended && r.intended->n != r.n)) {
    throw Error("query arity does not match n");
  }

  if (j.contains("propositions")) {
    r.propositions = j["propositions"].get<std::vector<std::string>>();
  } else if (source) {
    r.propositions = source->propositions;
  }
  if (!r.propositions.empty() && static_cast<int>(r.propositions.size()) != r.n) {
    throw Error("propositions must list exactly n labels");
  }
  return r;
}

json SessionRequest::to_json() const {
  json j{{"mode", mode_name(mode)},
         {"oracle", oracle == OracleKind::Simulated ? "simulated" : "interactive"},
         {"n", n},
         {"theta_cap", theta_cap}};
  if (!propositions.empty()) j["propositions"] = propositions;
  if (target) j["target"] = query_to_json(*target);
  if (query) j["query"] = query_to_json(*query);
  if (intended) j["intended"] = query_to_json(*intended);
  return j;
}

Session::Session(std::string id, SessionRequest request) : id_(std::move(id)), request_(std::move(request)) {}

Session::~Session() {
  if (driver_) driver_->stop();
}

void Session::run_job(MembershipOracle& oracle) {
  {
    std::lock_guard lock(result_mu_);
    result_.reset();
  }
  CountingOracle counter(oracle);
  json result;
  if (request_.mode == SessionMode::Verify) {
    const auto report = run_verification(counter, build_verification_set(*request_.query));
    result = verification_report_to_json(report);
  } else {
    const QueryClass cls = request_.mode == SessionMode::LearnQhorn1 ? QueryClass::Qhorn1 : QueryClass::RolePreserving;
    QhornQuery learned = learn_with(cls, counter, request_.n, request_.theta_cap);
    learned.propositions = request_.propositions;
    json inconsistent = json::array();
    for (std::size_t i : replay_disagreements(counter.transcript(), learned)) inconsistent.push_back(i);
    result = {{"query", query_to_json(learned)}, {"shorthand", to_shorthand(learned)}, {"inconsistencies", inconsistent}};
    if (request_.target) result["equivalent_to_target"] = equivalent(learned, *request_.target);
  }
  result["stats"] = stats_to_json(counter.stats());
  std::lock_guard lock(result_mu_);
  result_ = std::move(result);
}

void Session::start() {
  std::lock_guard lock(mu_);
  if (request_.oracle == OracleKind::Simulated) {
    const QhornQuery& hidden = request_.mode == SessionMode::Verify ? *request_.intended : *request_.target;
    SimulatedOracle sim(hidden);
    CountingOracle counter(sim);
    try {
      run_job(counter);
    } catch (const std::exception& e) {
      error_ = e.what();
    }
    simulated_transcript_ = counter.transcript();
    return;
  }
  driver_ = std::make_unique<InteractiveDriver>([this](MembershipOracle& o) { run_job(o); });
  driver_->start();
}

void Session::submit_answer(bool answer) {
  std::lock_guard lock(mu_);
  if (!driver_ || !driver_->pending()) throw Error("no pending question");
  driver_->submit(to_label(answer));
}

void Session::rollback(std::size_t to) {
  std::lock_guard lock(mu_);
  if (!driver_) throw Error("rollback needs an interactive session");
  if (to > driver_->transcript().size()) throw Error("rollback index beyond transcript");
  {
    std::lock_guard rlock(result_mu_);
    result_.reset();
  }
  driver_->rollback(to);
}

SessionStatus Session::status() const {
  std::lock_guard lock(mu_);
  if (!driver_) return error_ ? SessionStatus::Failed : SessionStatus::Done;
  if (driver_->pending()) return SessionStatus::AwaitingAnswer;
  if (driver_->finished()) return driver_->error() ? SessionStatus::Failed : SessionStatus::Done;
  return SessionStatus::Running;
}

std::vector<TranscriptEntry> Session::transcript() const {
  std::lock_guard lock(mu_);
  return driver_ ? driver_->transcript() : simulated_transcript_;
}

json Session::result() const {
  const SessionStatus s = status();
  json j{{"id", id_}, {"status", status_name(s)}};
  if (s == SessionStatus::Done) {
    std::lock_guard lock(result_mu_);
    if (result_) j["result"] = *result_;
  }
  return j;
}

json Session::pending_json(const PendingQuestion& p) const {
  json rows = json::array();
  for (const Tuple& t : p.question) rows.push_back(render_tuple(t, request_.propositions));
  return {{"i", p.index}, {"tuples", p.question.bitstrings()}, {"rows", rows}, {"phase", phase_name(p.phase)}};
}

json Session::state() const {
  const SessionStatus s = status();
  const auto entries = transcript();
  json j{{"id", id_},
         {"mode", mode_name(request_.mode)},
         {"oracle", request_.oracle == OracleKind::Simulated ? "simulated" : "interactive"},
         {"n", request_.n},
         {"status", status_name(s)},
         {"questions_answered", entries.size()},
         {"stats", stats_to_json(stats_of(entries))},
         {"pending", nullptr},
         {"error", nullptr}};
  std::vector<std::string> vocab = request_.propositions;
  if (vocab.empty()) {
    for (int i = 1; i <= request_.n; ++i) vocab.push_back("x" + std::to_string(i));
  }
  j["propositions"] = vocab;
  {
    std::lock_guard lock(mu_);
    if (driver_) {
      if (auto p = driver_->pending()) j["pending"] = pending_json(*p);
      if (auto e = driver_->error()) j["error"] = *e;
    } else if (error_) {
      j["error"] = *error_;
    }
  }
  if (s == SessionStatus::Done) {
    std::lock_guard lock(result_mu_);
    if (result_) j["result"] = *result_;
  }
  return j;
}

json Session::transcript_json() const {
  json arr = json::array();
  for (const auto& e : transcript()) arr.push_back(transcript_entry_to_json(e));
  return {{"id", id_}, {"transcript", arr}};
}

SessionManager::SessionManager(std::optional<std::filesystem::path> data_dir) : dir_(std::move(data_dir)) {
  if (dir_) {
    std::filesystem::create_directories(*dir_);
    load();
  }
}

void SessionManager::append_event(const std::string& id, const json& event) const {
  if (!dir_) return;
  std::ofstream out(*dir_ / (id + ".jsonl"), std::ios::app);
  if (!out) throw Error("cannot write session log for " + id);
  out << event.dump() << '\n';
}

void SessionManager::load() {
  std::vector<std::filesystem::path> logs;
  for (const auto& entry : std::filesystem::directory_iterator(*dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") logs.push_back(entry.path());
  }
  std::sort(logs.begin(), logs.end());
  for (const auto& path : logs) {
    std::ifstream in(path);
    std::string line;
    std::shared_ptr<Session> session;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json ev = json::parse(line);
      const std::string kind = ev.at("event").get<std::string>();
      if (kind == "create") {
        const std::string id = ev.at("id").get<std::string>();
        session = std::make_shared<Session>(id, SessionRequest::from_json(ev.at("request")));
        session->start();
        sessions_[id] = session;
        if (id.size() > 1 && id[0] == 's') {
          next_id_ = std::max<std::size_t>(next_id_, std::stoul(id.substr(1)) + 1);
        }
      } else if (!session) {
        throw Error("session log " + path.string() + " does not start with a create event");
      } else if (kind == "answer") {
        session->submit_answer(ev.at("answer").get<bool>());
      } else if (kind == "rollback") {
        session->rollback(ev.at("to").get<std::size_t>());
      }
    }
  }
}

std::shared_ptr<Session> SessionManager::get(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
  return it->second;
}

json SessionManager::create(const json& request) {
  SessionRequest r = SessionRequest::from_json(request);
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = "s" + std::to_string(next_id_++);
  }
  auto session = std::make_shared<Session>(id, r);
  session->start();
  append_event(id, {{"event", "create"}, {"id", id}, {"request", r.to_json()}});
  {
    std::lock_guard lock(mu_);
    sessions_[id] = session;
  }
  return session->state();
}

std::shared_ptr<std::mutex> SessionManager::op_mutex(const std::string& id) {
  std::lock_guard lock(mu_);
  auto& m = op_mu_[id];
  if (!m) m = std::make_shared<std::mutex>();
  return m;
}

json SessionManager::answer(const std::string& id, bool answer) {
  auto session = get(id);
  auto op = op_mutex(id);
  std::lock_guard lock(*op);
  session->submit_answer(answer);
  append_event(id, {{"event", "answer"}, {"answer", answer}});
  return session->state();
}

json SessionManager::rollback(const std::string& id, std::size_t to) {
  auto session = get(id);
  auto op = op_mutex(id);
  std::lock_guard lock(*op);
  session->rollback(to);
  append_event(id, {{"event", "rollback"}, {"to", to}});
  return session->state();
}

json SessionManager::state(const std::string& id) const { return get(id)->state(); }
json SessionManager::transcript(const std::string& id) const { return get(id)->transcript_json(); }
json SessionManager::result(const std::string& id) const { return get(id)->result(); }

std::vector<std::string> SessionManager::ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

std::filesystem::path resolve_data_dir(const std::string& fallback) {
  if (const char* env = std::getenv("QHORN_DATA"); env && *env) return env;
  return fallback;
}

}  // namespace qhorn
