// pybind11 bindings. Queries, questions and reports cross the boundary as
// JSON text; the Python package converts them to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qhorn/harness.hpp"
#include "qhorn/learn_rp.hpp"
#include "qhorn/session.hpp"
#include "qhorn/verify.hpp"

namespace py = pybind11;
using namespace qhorn;

namespace {

QhornQuery parse(const std::string& text, QueryClass cls = QueryClass::Any) {
  return query_from_json(json::parse(text), cls);
}

QuestionObject to_question(const std::vector<std::string>& tuples) {
  if (tuples.empty()) throw Error("question has no tuples");
  std::vector<Tuple> ts;
  for (const auto& s : tuples) ts.push_back(parse_tuple(s));
  const int n = ts.front().n;
  return QuestionObject(n, std::move(ts));
}

std::string learn_json(const std::string& cls_name, const std::string& target_text, int theta_cap) {
  const QueryClass cls = parse_query_class(cls_name);
  const QhornQuery target = parse(target_text, cls);
  SimulatedOracle sim(target);
  CountingOracle counter(sim);
  QhornQuery learned = learn_with(cls, counter, target.n, theta_cap);
  learned.propositions = target.propositions;
  json transcript = json::array();
  for (const auto& e : counter.transcript()) transcript.push_back(transcript_entry_to_json(e));
  return json{{"query", query_to_json(learned)},
              {"shorthand", to_shorthand(learned)},
              {"equivalent_to_target", equivalent(learned, target)},
              {"stats", stats_to_json(counter.stats())},
              {"transcript", transcript}}
      .dump();
}

VerificationOptions verify_options(const std::string& a3_fill) {
  VerificationOptions o;
  if (a3_fill == "outside-true") {
    o.a3_fill = A3Fill::OutsideTrue;
  } else if (a3_fill != "outside-false") {
    throw Error("a3_fill must be outside-false or outside-true");
  }
  return o;
}

}  // namespace

PYBIND11_MODULE(_qhorn, m) {
  m.doc() = "qhorn query learning and verification core";

  py::register_exception<Error>(m, "QhornError", PyExc_ValueError);

  m.def("evaluate", [](const std::string& q, const std::vector<std::string>& tuples) {
    return is_answer(evaluate(parse(q), to_question(tuples)));
  });
  m.def("normalize", [](const std::string& q) { return query_to_json(to_query(normalize(parse(q)))).dump(); });
  m.def("shorthand", [](const std::string& q) { return to_shorthand(parse(q)); });
  m.def("equivalent", [](const std::string& a, const std::string& b) { return equivalent(parse(a), parse(b)); });
  m.def("equivalent_bruteforce",
        [](const std::string& a, const std::string& b) { return equivalent_bruteforce(parse(a), parse(b)); });
  m.def("is_role_preserving", [](const std::string& q) { return is_role_preserving(parse(q)); });
  m.def("is_qhorn1", [](const std::string& q) { return is_qhorn1(parse(q)); });
  m.def("causal_density", [](const std::string& q) { return causal_density(parse(q)); });
  m.def("distinguishing_tuples", [](const std::string& q) {
    const NormalizedQuery nq = normalize(parse(q));
    std::vector<std::string> ex, un;
    for (const Tuple& t : existential_distinguishing_tuples(nq)) ex.push_back(format_tuple(t));
    for (const Tuple& t : universal_distinguishing_tuples(nq)) un.push_back(format_tuple(t));
    return std::make_pair(ex, un);
  });

  m.def("learn", &learn_json, py::arg("cls"), py::arg("target"), py::arg("theta_cap") = kDefaultThetaCap);

  m.def(
      "verification_set",
      [](const std::string& q, const std::string& a3_fill) {
        json items = json::array();
        for (const auto& item : build_verification_set(parse(q), verify_options(a3_fill))) {
          items.push_back(verification_item_to_json(item));
        }
        return items.dump();
      },
      py::arg("query"), py::arg("a3_fill") = "outside-false");
  m.def(
      "verify",
      [](const std::string& q, const std::string& intended, const std::string& a3_fill) {
        SimulatedOracle oracle(parse(intended));
        return verification_report_to_json(
                   run_verification(oracle, build_verification_set(parse(q), verify_options(a3_fill))))
            .dump();
      },
      py::arg("query"), py::arg("intended"), py::arg("a3_fill") = "outside-false");

  m.def(
      "gen_random",
      [](const std::string& cls, int n, int k, int theta, std::uint64_t seed) {
        GenSpec spec{n, parse_query_class(cls), k, theta, seed};
        return query_to_json(gen_random(spec)).dump();
      },
      py::arg("cls"), py::arg("n"), py::arg("k") = 4, py::arg("theta") = 2, py::arg("seed") = 1);
  m.def("mutate", [](const std::string& q, std::uint64_t seed) { return query_to_json(mutate_query(parse(q), seed)).dump(); });
  m.def(
      "bench",
      [](const std::string& cls, int n, int k, int theta, int trials, std::uint64_t seed) {
        GenSpec spec{n, parse_query_class(cls), k, theta, seed};
        std::ostringstream out;
        write_bench_csv(out, bench(spec, trials));
        return out.str();
      },
      py::arg("cls"), py::arg("n"), py::arg("k") = 4, py::arg("theta") = 2, py::arg("trials") = 10,
      py::arg("seed") = 1);

  py::class_<SessionManager>(m, "SessionManager")
      .def(py::init([](std::optional<std::string> dir) {
             std::optional<std::filesystem::path> p;
             if (dir) p = *dir;
             return std::make_unique<SessionManager>(p);
           }),
           py::arg("data_dir") = py::none())
      .def("create", [](SessionManager& s, const std::string& req) { return s.create(json::parse(req)).dump(); },
           py::call_guard<py::gil_scoped_release>())
      .def("answer", [](SessionManager& s, const std::string& id, bool a) { return s.answer(id, a).dump(); },
           py::call_guard<py::gil_scoped_release>())
      .def("rollback", [](SessionManager& s, const std::string& id, std::size_t to) { return s.rollback(id, to).dump(); },
           py::call_guard<py::gil_scoped_release>())
      .def("state", [](const SessionManager& s, const std::string& id) { return s.state(id).dump(); })
      .def("transcript", [](const SessionManager& s, const std::string& id) { return s.transcript(id).dump(); })
      .def("result", [](const SessionManager& s, const std::string& id) { return s.result(id).dump(); })
      .def("ids", &SessionManager::ids);
}
