#include <algorithm>

#include "doctest.h"

#include "qhorn/harness.hpp"
#include "qhorn/query_json.hpp"
#include "qhorn/verify.hpp"
#include "support.hpp"

using namespace qhorn;
using namespace qhorn::test;

namespace {

using Bits = std::set<std::string>;

std::vector<std::uint32_t> raw(const QuestionObject& q) {
  std::vector<std::uint32_t> out;
  for (const Tuple& t : q) out.push_back(t.bits);
  return out;
}

std::vector<Bits> of_kind(const std::vector<VerificationItem>& items, ItemKind k) {
  std::vector<Bits> out;
  for (const auto& item : items) {
    if (item.kind == k) out.push_back(bitset_of(item.question));
  }
  return out;
}

// Every role-preserving query on two variables, one per equivalence class.
std::vector<QhornQuery> all_rp_queries_n2() {
  const std::vector<UniversalHorn> us{{VarSet{}, 0}, {VarSet{}, 1}, {VarSet{1}, 0}, {VarSet{0}, 1}};
  const std::vector<VarSet> es{VarSet{0}, VarSet{1}, VarSet{0, 1}};
  std::vector<QhornQuery> out;
  for (int um = 0; um < 16; ++um) {
    for (int em = 0; em < 8; ++em) {
      QhornQuery q;
      q.n = 2;
      for (int i = 0; i < 4; ++i) {
        if (um >> i & 1) q.universals.push_back(us[i]);
      }
      for (int i = 0; i < 3; ++i) {
        if (em >> i & 1) q.existentials.push_back({es[i]});
      }
      if (!is_role_preserving(q)) continue;
      if (std::none_of(out.begin(), out.end(), [&](const QhornQuery& o) { return naive_equivalent(o, q); })) {
        out.push_back(q);
      }
    }
  }
  return out;
}

bool detects(const std::vector<VerificationItem>& items, const QhornQuery& intended) {
  return std::any_of(items.begin(), items.end(), [&](const VerificationItem& item) {
    return naive_is_answer(intended, raw(item.question)) != is_answer(item.expected);
  });
}

}  // namespace

TEST_CASE("worked example verification set") {
  const auto items = build_verification_set(worked_example());
  CHECK(of_kind(items, ItemKind::A1) == std::vector<Bits>{{"111001", "011110", "110011", "011011", "100110"}});
  const auto n1 = of_kind(items, ItemKind::N1);
  CHECK(std::set<Bits>(n1.begin(), n1.end()) ==
        std::set<Bits>{
            {"011110", "110011", "011011", "100110", "011001", "101001", "110001"},
            {"111001", "110011", "011011", "100110", "011010", "010110", "001110"},
            {"111001", "011110", "011011", "100110", "110001", "100011", "010011"},
            {"111001", "011110", "110011", "100110", "011010", "011001", "010011", "001011"},
        });
  const auto a2 = of_kind(items, ItemKind::A2);
  CHECK(std::set<Bits>(a2.begin(), a2.end()) ==
        std::set<Bits>{{"111111", "100001", "000101"}, {"111111", "001001", "000101"}, {"111111", "100010", "010010"}});
  const auto n2 = of_kind(items, ItemKind::N2);
  CHECK(std::set<Bits>(n2.begin(), n2.end()) ==
        std::set<Bits>{{"111111", "100101"}, {"111111", "001101"}, {"111111", "110010"}});
  CHECK(of_kind(items, ItemKind::A4) == std::vector<Bits>{{"111111", "011111", "101111", "110111", "111011"}});

  // A3: a single question. x5 roots under x2x3x4x5 are 010101 and 011001,
  // x6 roots under x1x2x3x6 are 101010 and 011010.
  const auto a3 = of_kind(items, ItemKind::A3);
  REQUIRE(a3.size() == 1);
  CHECK(a3[0] == Bits{"111111", "010101", "011001", "110001", "101010", "011010"});
  CHECK(items.size() == 13);

  // Fixed order A1, N1*, A2*, N2*, A3*, A4.
  std::vector<ItemKind> kinds;
  for (const auto& item : items) kinds.push_back(item.kind);
  CHECK(std::is_sorted(kinds.begin(), kinds.end()));
  CHECK(items.size() <= verification_size_bound(worked_example()));
  CHECK(verification_size_bound(worked_example()) == 2 + 5 + 9);
}

TEST_CASE("the A3 question surfaces a hidden body for either head") {
  const auto items = build_verification_set(worked_example());
  const auto it = std::find_if(items.begin(), items.end(), [](const auto& i) { return i.kind == ItemKind::A3; });
  REQUIRE(it != items.end());
  CHECK(naive_is_answer(worked_example(), raw(it->question)));
  for (const UniversalHorn extra : {UniversalHorn{VarSet{1, 2}, 4}, UniversalHorn{VarSet{0, 2}, 5}}) {
    QhornQuery intended = worked_example();
    intended.universals.push_back(extra);  // ∀x2x3→x5, then ∀x1x3→x6
    CHECK_FALSE(naive_is_answer(intended, raw(it->question)));
    SimulatedOracle sim(intended);
    CHECK_FALSE(run_verification(sim, items).verified);
  }
}

TEST_CASE("printed A3 reading is kept behind a flag") {
  VerificationOptions opts;
  opts.a3_fill = A3Fill::OutsideTrue;
  std::vector<VerificationItem> a3;
  for (const auto& item : build_verification_set(worked_example(), opts)) {
    if (item.kind == ItemKind::A3) a3.push_back(item);
  }
  REQUIRE_FALSE(a3.empty());
  CHECK(bitset_of(a3[0].question).count("111001") == 1);
  // Filling with true breaks the query's own ∀x1x4→x5 (root 110101).
  CHECK(bitset_of(a3[0].question).count("110101") == 1);
  CHECK(naive_is_answer(worked_example(), raw(a3[0].question)) != is_answer(a3[0].expected));
}

TEST_CASE("items are self-consistent with the given query") {
  for (const auto& item : build_verification_set(worked_example())) {
    CHECK(naive_is_answer(worked_example(), raw(item.question)) == is_answer(item.expected));
  }
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    GenSpec spec;
    spec.n = 2 + static_cast<int>(seed % 5);
    spec.k = 1 + static_cast<int>(seed % 4);
    spec.theta = static_cast<int>(seed % 3);
    spec.seed = seed;
    const QhornQuery q = gen_random(spec);
    const auto items = build_verification_set(q);
    CHECK(items.size() <= verification_size_bound(q));
    for (const auto& item : items) {
      REQUIRE(naive_is_answer(q, raw(item.question)) == is_answer(item.expected));
    }
  }
}

TEST_CASE("small and degenerate queries") {
  const QhornQuery one = query_from_json(json::parse(R"({"n":3,"existentials":[[1,2]]})"));
  CHECK(verification_set_size(one) == 3);
  const QhornQuery empty{3, {}, {}, {}};
  const auto items = build_verification_set(empty);
  REQUIRE(items.size() == 2);
  CHECK(bitset_of(items[0].question) == Bits{"000"});
  CHECK(items[1].kind == ItemKind::A4);
  const QhornQuery non_rp = query_from_json(
      json::parse(R"({"n":6,"universals":[{"body":[1,4],"head":5},{"body":[2,3,5],"head":6}]})"));
  CHECK_THROWS_AS(build_verification_set(non_rp), Error);
}

TEST_CASE("run_verification verdicts") {
  const QhornQuery qg = worked_example();
  const auto items = build_verification_set(qg);
  SimulatedOracle self(qg);
  const auto ok = run_verification(self, items);
  CHECK(ok.verified);
  CHECK_FALSE(ok.first_disagreement);
  CHECK(verification_report_to_json(ok)["verdict"] == "verified");

  // A smaller intended body is caught by A2, a larger one by N2.
  auto flagged = [&](const QhornQuery& intended, ItemKind kind, const std::string& provenance) {
    SimulatedOracle sim(intended);
    const auto rep = run_verification(sim, items);
    for (const auto& o : rep.outcomes) {
      if (o.item.kind == kind && o.item.provenance == provenance) {
        CHECK(o.agree == (naive_is_answer(intended, raw(o.item.question)) == is_answer(o.item.expected)));
        return !o.agree;
      }
    }
    return false;
  };
  QhornQuery narrower = qg;
  narrower.universals[1].body = VarSet{2};  // ∀x3→x5 instead of ∀x3x4→x5
  CHECK(flagged(narrower, ItemKind::A2, "∀x3x4→x5"));
  CHECK_FALSE(flagged(narrower, ItemKind::N2, "∀x3x4→x5"));
  QhornQuery wider = qg;
  wider.universals[1].body = VarSet{1, 2, 3};  // ∀x2x3x4→x5
  CHECK(flagged(wider, ItemKind::N2, "∀x3x4→x5"));

  QhornQuery dropped = qg;
  dropped.existentials.pop_back();
  SimulatedOracle sim2(dropped);
  const auto rep = run_verification(sim2, items);
  CHECK_FALSE(rep.verified);
  for (const auto& o : rep.outcomes) {
    CHECK(o.agree == (naive_is_answer(dropped, raw(o.item.question)) == is_answer(o.item.expected)));
  }
  const json j = verification_report_to_json(rep);
  CHECK(j["verdict"] == "refuted");
  CHECK(j["discrepancy"] == discrepancy_class(rep.outcomes[*rep.first_disagreement].item.kind));
  CHECK(j["items"].size() == items.size());
  CHECK(j["items"][0].contains("observed"));
}

TEST_CASE("soundness and completeness on random pairs, n <= 4") {
  int distinct = 0, same = 0;
  for (std::uint64_t seed = 1; seed <= 260; ++seed) {
    GenSpec spec;
    spec.n = 2 + static_cast<int>(seed % 3);
    spec.k = 1 + static_cast<int>(seed % 3);
    spec.theta = static_cast<int>(seed % 3);
    spec.seed = seed;
    const QhornQuery qg = gen_random(spec);
    spec.seed = seed + 100000;
    QhornQuery qi;
    if (seed % 3 == 0) {
      qi = gen_random(spec);
    } else if (seed % 3 == 1) {
      try {
        qi = mutate_query(qg, seed);
      } catch (const Error&) {
        continue;
      }
    } else {
      qi = equivalent_variant(qg, seed);
    }
    const auto items = build_verification_set(qg);
    if (naive_equivalent(qg, qi)) {
      ++same;
      CHECK_FALSE(detects(items, qi));
    } else {
      ++distinct;
      CHECK(detects(items, qi));
    }
  }
  CHECK(distinct >= 100);
  CHECK(same >= 50);
}

TEST_CASE("two-variable grid is fully distinguished") {
  const auto queries = all_rp_queries_n2();
  CHECK(queries.size() >= 10);
  for (const auto& qg : queries) {
    const auto items = build_verification_set(qg);
    for (const auto& qi : queries) {
      CHECK(detects(items, qi) == !naive_equivalent(qg, qi));
    }
  }
}
