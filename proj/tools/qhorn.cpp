// qhorn command-line tool: learning, verification, benchmarks, HTTP service
// and one-shot query utilities.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qhorn/harness.hpp"
#include "qhorn/learn_qhorn1.hpp"
#include "qhorn/learn_rp.hpp"
#include "qhorn/server.hpp"
#include "qhorn/session.hpp"
#include "qhorn/verify.hpp"

using namespace qhorn;

namespace {

// Asks a human on the terminal; questions go to stderr so stdout stays JSON.
class TerminalOracle final : public MembershipOracle {
 public:
  explicit TerminalOracle(std::vector<std::string> vocabulary) : vocabulary_(std::move(vocabulary)) {}

  Label ask(const QuestionObject& question, Phase phase) override {
    std::cerr << "\nQuestion " << asked_++ << " [" << phase_name(phase) << "]\n";
    for (const Tuple& t : question) {
      std::cerr << "  " << format_tuple(t);
      if (!vocabulary_.empty()) std::cerr << "  " << render_tuple(t, vocabulary_).dump();
      std::cerr << "\n";
    }
    for (;;) {
      std::cerr << "answer? [y/n] " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) throw OracleClosed();
      if (line == "y" || line == "yes" || line == "1") return Label::Answer;
      if (line == "n" || line == "no" || line == "0") return Label::NonAnswer;
    }
  }

 private:
  std::vector<std::string> vocabulary_;
  std::size_t asked_ = 0;
};

void write_transcript(const std::string& path, const std::vector<TranscriptEntry>& transcript) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto& e : transcript) out << transcript_entry_to_json(e).dump() << "\n";
}

A3Fill parse_a3_fill(const std::string& s) {
  if (s == "outside-false") return A3Fill::OutsideFalse;
  if (s == "outside-true") return A3Fill::OutsideTrue;
  throw Error("--a3-fill must be outside-false or outside-true");
}

QuestionObject parse_question_arg(const std::string& s) {
  // JSON (object or array) or comma-separated bitstrings.
  if (!s.empty() && (s.front() == '{' || s.front() == '[')) return question_from_json(json::parse(s));
  std::vector<Tuple> tuples;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) tuples.push_back(parse_tuple(item));
  }
  if (tuples.empty()) throw Error("question has no tuples");
  const int n = tuples.front().n;
  return QuestionObject(n, std::move(tuples));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qhorn query learning and verification workbench"};
  app.require_subcommand(1);

  // learn
  auto* learn = app.add_subcommand("learn", "Learn a query from membership questions");
  std::string learn_class = "rp", learn_oracle = "simulated", learn_target, learn_transcript;
  int learn_n = 0, theta_cap = kDefaultThetaCap;
  std::uint64_t learn_seed = 1;
  bool learn_stats = false;
  learn->add_option("--class", learn_class, "qhorn1 or rp")->check(CLI::IsMember({"qhorn1", "rp"}));
  learn->add_option("--n", learn_n, "number of propositions");
  learn->add_option("--oracle", learn_oracle)->check(CLI::IsMember({"simulated", "interactive"}));
  learn->add_option("--target", learn_target, "target query JSON for the simulated oracle");
  learn->add_option("--theta-cap", theta_cap, "largest number of bodies per head the rp learner accepts");
  learn->add_option("--seed", learn_seed, "seed of a random target when no --target is given");
  learn->add_flag("--stats", learn_stats, "include question statistics");
  learn->add_option("--transcript", learn_transcript, "write the transcript as JSON lines");

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a query with its verification set");
  std::string verify_query, verify_oracle = "simulated", verify_intended, a3_fill = "outside-false";
  bool list_only = false;
  verify->add_option("--query", verify_query, "query under verification")->required();
  verify->add_option("--oracle", verify_oracle)->check(CLI::IsMember({"simulated", "interactive"}));
  verify->add_option("--intended", verify_intended, "intended query answering for the simulated oracle");
  verify->add_option("--a3-fill", a3_fill, "outside-false or outside-true");
  verify->add_flag("--list", list_only, "print the verification set without asking");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Round-trip learning benchmark");
  std::string bench_class = "rp", bench_out;
  GenSpec spec;
  int trials = 10, bench_cap = kDefaultThetaCap;
  bench_cmd->add_option("--class", bench_class)->check(CLI::IsMember({"qhorn1", "rp"}));
  bench_cmd->add_option("--n", spec.n);
  bench_cmd->add_option("--k", spec.k);
  bench_cmd->add_option("--theta", spec.theta);
  bench_cmd->add_option("--theta-cap", bench_cap);
  bench_cmd->add_option("--trials", trials);
  bench_cmd->add_option("--seed", spec.seed);
  bench_cmd->add_option("--out", bench_out, "CSV path (stdout when omitted)");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  int port = 8080;
  std::string host = "127.0.0.1", data_dir = "qhorn-data", static_dir;
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--data", data_dir, "event log directory (QHORN_DATA overrides)");
  serve->add_option("--static", static_dir, "web UI assets");

  // eval / normalize / equiv
  auto* eval = app.add_subcommand("eval", "Label a question with a query");
  std::string eval_query, eval_question;
  eval->add_option("--query", eval_query)->required();
  eval->add_option("--question", eval_question, "comma-separated bitstrings or {\"tuples\":[...]}")->required();

  auto* norm = app.add_subcommand("normalize", "Print the normalized form of a query");
  std::string norm_query;
  norm->add_option("--query", norm_query)->required();

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two queries");
  std::string equiv_a, equiv_b;
  bool brute = false;
  equiv->add_option("a", equiv_a)->required();
  equiv->add_option("b", equiv_b)->required();
  equiv->add_flag("--brute", brute, "also compare on every object (n <= 4)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*learn) {
      const QueryClass cls = parse_query_class(learn_class);
      std::optional<QhornQuery> target;
      if (!learn_target.empty()) {
        target = load_query_file(learn_target, cls);
      } else if (learn_oracle == "simulated") {
        if (learn_n <= 0) throw Error("simulated learning needs --target or --n");
        GenSpec g;
        g.n = learn_n;
        g.cls = cls;
        g.seed = learn_seed;
        target = gen_random(g);
      }
      if (!target && learn_n <= 0) throw Error("interactive learning needs --n or --target");
      const int n = learn_n > 0 ? learn_n : target->n;
      if (target && target->n != n) throw Error("--n does not match the target arity");
      std::vector<std::string> vocab = target ? target->propositions : std::vector<std::string>{};

      std::unique_ptr<MembershipOracle> base;
      if (learn_oracle == "simulated") {
        base = std::make_unique<SimulatedOracle>(*target);
      } else {
        base = std::make_unique<TerminalOracle>(vocab);
      }
      CountingOracle counter(*base);
      QhornQuery learned = learn_with(cls, counter, n, theta_cap);
      learned.propositions = vocab;
      json out{{"query", query_to_json(learned)}, {"shorthand", to_shorthand(learned)}};
      if (target) {
        out["target"] = to_shorthand(*target);
        out["equivalent_to_target"] = equivalent(learned, *target);
      }
      if (learn_stats) out["stats"] = stats_to_json(counter.stats());
      if (!learn_transcript.empty()) write_transcript(learn_transcript, counter.transcript());
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*verify) {
      const QhornQuery q = load_query_file(verify_query, QueryClass::RolePreserving);
      VerificationOptions opts;
      opts.a3_fill = parse_a3_fill(a3_fill);
      const auto items = build_verification_set(q, opts);
      if (list_only) {
        json arr = json::array();
        for (const auto& item : items) arr.push_back(verification_item_to_json(item));
        std::cout << json{{"items", arr}, {"count", items.size()}}.dump(2) << "\n";
        return 0;
      }
      std::unique_ptr<MembershipOracle> oracle;
      if (verify_oracle == "simulated") {
        if (verify_intended.empty()) throw Error("simulated verification needs --intended");
        oracle = std::make_unique<SimulatedOracle>(load_query_file(verify_intended));
      } else {
        oracle = std::make_unique<TerminalOracle>(q.propositions);
      }
      const auto report = run_verification(*oracle, items);
      std::cout << verification_report_to_json(report).dump(2) << "\n";
      return report.verified ? 0 : 3;
    }

    if (*bench_cmd) {
      spec.cls = parse_query_class(bench_class);
      BenchOptions opts;
      opts.theta_cap = bench_cap;
      const auto rows = bench(spec, trials, opts);
      if (bench_out.empty()) {
        write_bench_csv(std::cout, rows);
      } else {
        std::ofstream out(bench_out);
        if (!out) throw Error("cannot write " + bench_out);
        write_bench_csv(out, rows);
      }
      std::size_t failed = 0;
      for (const auto& r : rows) failed += r.equivalent ? 0 : 1;
      std::cerr << rows.size() << " trials, " << failed << " not equivalent\n";
      return failed == 0 ? 0 : 3;
    }

    if (*serve) {
      SessionManager sessions(resolve_data_dir(data_dir));
      std::optional<std::filesystem::path> assets;
      if (!static_dir.empty()) assets = static_dir;
      HttpServer server(sessions, assets);
      const int bound = server.bind(host, port);
      std::cerr << "listening on http://" << host << ":" << bound << "\n";
      server.run();
      return 0;
    }

    if (*eval) {
      const QhornQuery q = load_query_file(eval_query);
      const QuestionObject obj = parse_question_arg(eval_question);
      if (obj.arity() != q.n) throw Error("question arity does not match the query");
      std::cout << json{{"label", label_name(evaluate(q, obj))}}.dump() << "\n";
      return 0;
    }

    if (*norm) {
      const QhornQuery q = to_query(normalize(load_query_file(norm_query)));
      std::cout << json{{"query", query_to_json(q)}, {"shorthand", to_shorthand(q)}}.dump(2) << "\n";
      return 0;
    }

    if (*equiv) {
      const QhornQuery a = load_query_file(equiv_a);
      const QhornQuery b = load_query_file(equiv_b);
      json out{{"equivalent", equivalent(a, b)}};
      if (brute) out["bruteforce"] = equivalent_bruteforce(a, b);
      std::cout << out.dump() << "\n";
      return out["equivalent"].get<bool>() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
