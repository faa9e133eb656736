// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. An optional argument runs a single criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "qhorn/harness.hpp"
#include "qhorn/learn_qhorn1.hpp"
#include "qhorn/learn_rp.hpp"
#include "qhorn/rng.hpp"
#include "qhorn/verify.hpp"
#include "support.hpp"

using namespace qhorn;
using namespace qhorn::test;

namespace {

using Clock = std::chrono::steady_clock;
using Bits = std::set<std::string>;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << what;
      pass = false;
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Bits kind_bits(const std::vector<VerificationItem>& items, ItemKind k, const std::string& provenance = "") {
  for (const auto& item : items) {
    if (item.kind == k && (provenance.empty() || item.provenance == provenance)) return bitset_of(item.question);
  }
  return {};
}

std::set<Bits> all_kind_bits(const std::vector<VerificationItem>& items, ItemKind k) {
  std::set<Bits> out;
  for (const auto& item : items) {
    if (item.kind == k) out.insert(bitset_of(item.question));
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  const auto start = Clock::now();
  SimulatedOracle sim(worked_example());
  const QhornQuery learned = learn_rp(sim, 6);
  const double elapsed = seconds_since(start);
  const NormalizedQuery nq = normalize(learned);
  o.require(bitset_of(existential_distinguishing_tuples(nq)) == Bits{"110011", "100110", "111001", "011011", "011110"},
            "existential tuples differ");
  o.require(bitset_of(universal_distinguishing_tuples(nq)) == Bits{"100101", "001101", "110010"},
            "universal tuples differ");
  o.require(elapsed < 1.0, "took longer than 1 s");
  if (o.pass) o.detail << "learned " << to_shorthand(learned) << " in " << elapsed * 1000 << " ms";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto items = build_verification_set(worked_example());
  o.require(kind_bits(items, ItemKind::A1) == Bits{"111001", "011110", "110011", "011011", "100110"}, "A1 differs");
  o.require(all_kind_bits(items, ItemKind::N2) ==
                std::set<Bits>{{"111111", "100101"}, {"111111", "001101"}, {"111111", "110010"}},
            "N2 differs");
  o.require(kind_bits(items, ItemKind::A2, "∀x1x4→x5") == Bits{"111111", "100001", "000101"},
            "A2 for ∀x1x4→x5 differs");
  o.require(kind_bits(items, ItemKind::A4) == Bits{"111111", "011111", "101111", "110111", "111011"}, "A4 differs");
  if (o.pass) o.detail << "A1, N2, A2(∀x1x4→x5) and A4 match";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t worst_ratio_q = 0;
  double worst_ratio = 0;
  for (int trial = 0; trial < 500; ++trial) {
    GenSpec spec;
    spec.cls = QueryClass::Qhorn1;
    spec.n = 4 + trial % 9;
    spec.seed = derive_seed(3, static_cast<std::uint64_t>(trial));
    const QhornQuery target = gen_random(spec);
    SimulatedOracle sim(target);
    CountingOracle counter(sim);
    const QhornQuery learned = learn_qhorn1(counter, spec.n);
    const double bound = 12.0 * spec.n * std::log2(spec.n);
    const std::size_t q = counter.stats().questions;
    o.require(equivalent(learned, target), "trial " + std::to_string(trial) + " not equivalent");
    o.require(static_cast<double>(q) <= bound, "trial " + std::to_string(trial) + " exceeded 12 n lg n");
    if (q / bound > worst_ratio) {
      worst_ratio = q / bound;
      worst_ratio_q = q;
    }
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 60, "suite took longer than 60 s");
  if (o.pass) {
    o.detail << "500/500 equivalent, max questions/(12 n lg n) = " << worst_ratio << " (" << worst_ratio_q
             << " questions), " << elapsed << " s";
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto start = Clock::now();
  double worst_ratio = 0;
  for (int trial = 0; trial < 200; ++trial) {
    GenSpec spec;
    spec.n = 3 + trial % 6;
    spec.k = 1 + trial % 6;
    spec.theta = trial % 3;
    spec.seed = derive_seed(4, static_cast<std::uint64_t>(trial));
    const QhornQuery target = gen_random(spec);
    SimulatedOracle sim(target);
    CountingOracle counter(sim);
    const QhornQuery learned = learn_rp(counter, spec.n);
    const double n = spec.n;
    const int theta = causal_density(target);
    const int k = std::max(1, target.size());
    const double bound = 8.0 * (std::pow(n, theta + 1) + k * n * std::log2(n));
    o.require(equivalent(learned, target), "trial " + std::to_string(trial) + " not equivalent");
    o.require(static_cast<double>(counter.stats().questions) <= bound,
              "trial " + std::to_string(trial) + " exceeded the question bound");
    worst_ratio = std::max(worst_ratio, counter.stats().questions / bound);
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 300, "suite took longer than 5 min");
  if (o.pass) o.detail << "200/200 equivalent, max questions/bound = " << worst_ratio << ", " << elapsed << " s";
  return o;
}

// Pairs mixing unrelated queries, mutants and equivalent rewrites.
std::pair<QhornQuery, QhornQuery> random_pair(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  GenSpec spec;
  spec.n = n;
  spec.k = rng.uniform(1, 4);
  spec.theta = rng.uniform(0, 2);
  spec.seed = rng();
  const QhornQuery a = gen_random(spec);
  switch (seed % 3) {
    case 0: {
      spec.seed = rng();
      return {a, gen_random(spec)};
    }
    case 1:
      try {
        return {a, mutate_query(a, rng())};
      } catch (const Error&) {
        return {a, a};
      }
    default:
      return {a, equivalent_variant(a, rng())};
  }
}

Outcome criterion5() {
  Outcome o;
  int agree_equal = 0;
  for (int i = 0; i < 300; ++i) {
    const auto [a, b] = random_pair(4, derive_seed(5, static_cast<std::uint64_t>(i)));
    const bool fast = equivalent(a, b);
    const bool brute = equivalent_bruteforce(a, b);
    o.require(fast == brute, "pair " + std::to_string(i) + " disagrees");
    agree_equal += fast && brute ? 1 : 0;
  }
  if (o.pass) o.detail << "300/300 pairs agree (" << agree_equal << " equivalent)";
  return o;
}

bool detected(const std::vector<VerificationItem>& items, const QhornQuery& intended) {
  for (const auto& item : items) {
    if (evaluate(intended, item.question) != item.expected) return true;
  }
  return false;
}

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
      bool seen = false;
      for (const auto& prev : out) seen = seen || equivalent_bruteforce(prev, q);
      if (!seen) out.push_back(q);
    }
  }
  return out;
}

std::vector<QhornQuery> generated_pool() {
  std::vector<QhornQuery> pool;
  for (int i = 0; i < 400; ++i) {
    GenSpec spec;
    spec.n = 2 + i % 7;
    spec.k = 1 + i % 5;
    spec.theta = i % 3;
    spec.seed = derive_seed(6, static_cast<std::uint64_t>(i));
    pool.push_back(gen_random(spec));
  }
  return pool;
}

Outcome criterion6() {
  Outcome o;
  const auto pool = generated_pool();
  int mutants = 0, variants = 0;
  for (std::size_t i = 0; i < pool.size() && (mutants < 200 || variants < 50); ++i) {
    const QhornQuery& qg = pool[i];
    const auto items = build_verification_set(qg);
    if (mutants < 200) {
      try {
        const QhornQuery qi = mutate_query(qg, derive_seed(61, i));
        const bool differ = qg.n <= 4 ? !equivalent_bruteforce(qg, qi) : !equivalent(qg, qi);
        if (differ) {
          ++mutants;
          o.require(detected(items, qi), "mutant " + std::to_string(i) + " not detected: " + to_shorthand(qg) +
                                             " vs " + to_shorthand(qi));
        }
      } catch (const Error&) {
      }
    }
    if (variants < 50) {
      const QhornQuery qi = equivalent_variant(qg, derive_seed(62, i));
      ++variants;
      o.require(!detected(items, qi), "variant " + std::to_string(i) + " flagged");
    }
  }
  o.require(mutants == 200, "only " + std::to_string(mutants) + " mutants generated");
  o.require(variants == 50, "only " + std::to_string(variants) + " variants generated");

  const auto grid = all_rp_queries_n2();
  std::size_t pairs = 0;
  for (const auto& qg : grid) {
    const auto items = build_verification_set(qg);
    for (const auto& qi : grid) {
      if (&qg == &qi) continue;
      ++pairs;
      o.require(detected(items, qi), "n=2 pair " + to_shorthand(qg) + " / " + to_shorthand(qi) + " not distinguished");
    }
  }
  if (o.pass) {
    o.detail << mutants << " mutants detected, " << variants << " variants agree, " << grid.size()
             << " two-variable classes (" << pairs << " ordered pairs) distinguished";
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& q : generated_pool()) {
    ++checked;
    o.require(verification_set_size(q) <= verification_size_bound(q), "bound exceeded for " + to_shorthand(q));
  }
  const std::size_t example = verification_set_size(worked_example());
  const std::string bound_note = o.pass ? "bound holds on " + std::to_string(checked) + " queries; " : "";
  o.require(example == 13, bound_note + "worked example has " + std::to_string(example) + " items, expected 13");
  if (o.pass) o.detail << bound_note << "worked example has 13 items";
  return o;
}

Outcome criterion8() {
  Outcome o;
  SplitMix64 rng(8);
  for (int i = 0; i < 100; ++i) {
    QhornQuery q;
    if (i % 2 == 0) {
      GenSpec spec;
      spec.n = 4;
      spec.k = 1 + i % 5;
      spec.theta = i % 3;
      spec.seed = rng();
      q = equivalent_variant(gen_random(spec), rng());
    } else {
      // Arbitrary qhorn, not necessarily role-preserving.
      q.n = 4;
      const int nu = rng.uniform(0, 3), ne = rng.uniform(0, 3);
      for (int u = 0; u < nu; ++u) {
        const VarId h = rng.uniform(0, 3);
        VarSet body(static_cast<std::uint32_t>(rng.uniform(0, 15)));
        body.erase(h);
        const UniversalHorn horn{body, h};
        if (std::find(q.universals.begin(), q.universals.end(), horn) == q.universals.end()) q.universals.push_back(horn);
      }
      for (int e = 0; e < ne; ++e) {
        const ExistentialConj c{VarSet(static_cast<std::uint32_t>(rng.uniform(1, 15)))};
        if (std::find(q.existentials.begin(), q.existentials.end(), c) == q.existentials.end()) q.existentials.push_back(c);
      }
    }
    const QhornQuery nq = to_query(normalize(q));
    for (std::uint64_t obj = 0; obj < 65536; ++obj) {
      if (evaluate_mask(q, obj) != evaluate_mask(nq, obj)) {
        o.require(false, "query " + std::to_string(i) + " (" + to_shorthand(q) + ") changes on object " +
                             std::to_string(obj));
        break;
      }
    }
  }
  if (o.pass) o.detail << "100 queries agree on all 65536 objects";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"learning reproduces the worked example", criterion1},
      {"verification set of the worked example", criterion2},
      {"qhorn-1 round trip", criterion3},
      {"role-preserving round trip", criterion4},
      {"equivalence agrees with brute force", criterion5},
      {"verification soundness and completeness", criterion6},
      {"verification set size", criterion7},
      {"normalization preserves semantics", criterion8},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != static_cast<int>(i + 1)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
