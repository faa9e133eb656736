#include "doctest.h"

#include <sstream>

#include "qhorn/harness.hpp"
#include "support.hpp"

using namespace qhorn;
using namespace qhorn::test;

TEST_CASE("qhorn-1 generator") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GenSpec spec;
    spec.cls = QueryClass::Qhorn1;
    spec.n = 1 + static_cast<int>(seed % 12);
    spec.seed = seed;
    const QhornQuery q = gen_random(spec);
    REQUIRE(is_qhorn1(q));
    CHECK(q.n == spec.n);
    CHECK(to_shorthand(gen_random(spec)) == to_shorthand(q));
  }
  GenSpec one;
  one.cls = QueryClass::Qhorn1;
  one.n = 1;
  const QhornQuery q = gen_random(one);
  CHECK(q.size() == 1);
  CHECK((q.universals.size() == 1 ? q.universals[0].body.empty() : q.existentials[0].vars == VarSet{0}));
}

TEST_CASE("rp generator") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GenSpec spec;
    spec.n = 2 + static_cast<int>(seed % 7);
    spec.k = 1 + static_cast<int>(seed % 7);
    spec.theta = static_cast<int>(seed % 3);
    spec.seed = seed;
    const QhornQuery q = gen_random(spec);
    REQUIRE(is_role_preserving(q));
    CHECK(causal_density(q) <= spec.theta);
    CHECK(normalize(to_query(normalize(q))) == normalize(q));
    CHECK(to_shorthand(gen_random(spec)) == to_shorthand(q));
    if (spec.theta == 0) CHECK(q.universals.empty());
  }
}

TEST_CASE("mutants differ semantically") {
  int made = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    GenSpec spec;
    spec.n = 2 + static_cast<int>(seed % 3);
    spec.k = 1 + static_cast<int>(seed % 3);
    spec.theta = static_cast<int>(seed % 3);
    spec.seed = seed;
    const QhornQuery q = gen_random(spec);
    QhornQuery m;
    try {
      m = mutate_query(q, seed);
    } catch (const Error&) {
      continue;
    }
    ++made;
    CHECK(is_role_preserving(m));
    CHECK_FALSE(naive_equivalent(q, m));
    CHECK(to_shorthand(mutate_query(q, seed)) == to_shorthand(m));
  }
  CHECK(made >= 100);

  QhornQuery body34;
  body34.n = 4;
  body34.universals = {{VarSet{2, 3}, 0}};
  QhornQuery dropped = body34;
  dropped.universals[0].body = VarSet{2};
  CHECK_FALSE(equivalent(body34, dropped));
}

TEST_CASE("equivalent variants stay equivalent") {
  int changed = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    GenSpec spec;
    spec.n = 2 + static_cast<int>(seed % 3);
    spec.k = 1 + static_cast<int>(seed % 4);
    spec.theta = static_cast<int>(seed % 3);
    spec.seed = seed;
    const QhornQuery q = gen_random(spec);
    const QhornQuery v = equivalent_variant(q, seed);
    CHECK(is_role_preserving(v));
    CHECK(naive_equivalent(q, v));
    changed += to_shorthand(v) != to_shorthand(q) ? 1 : 0;
  }
  CHECK(changed >= 30);
}

TEST_CASE("bench rows") {
  GenSpec spec;
  spec.n = 5;
  spec.k = 3;
  spec.theta = 2;
  spec.seed = 42;
  CHECK(bench(spec, 0).empty());
  const auto a = bench(spec, 8);
  const auto b = bench(spec, 8);
  REQUIRE(a.size() == 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].equivalent);
    CHECK(a[i].stats == b[i].stats);
    CHECK(a[i].k == b[i].k);
    CHECK(a[i].theta <= spec.theta);
  }
  std::ostringstream out;
  write_bench_csv(out, a);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,k,theta,questions,tuples,max_tuples,ms,equivalent");
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    ++lines;
    CHECK(line.substr(line.rfind(',') + 1) == "true");
  }
  CHECK(lines == 8);

  spec.cls = QueryClass::Qhorn1;
  for (const auto& row : bench(spec, 5)) CHECK(row.equivalent);
}
