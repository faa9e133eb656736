#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qhorn/oracle.hpp"
#include "qhorn/query_json.hpp"

namespace qhorn {

struct GenSpec {
  int n = 6;
  QueryClass cls = QueryClass::RolePreserving;
  /// Target number of existential conjunctions for rp queries (before
  /// normalization); qhorn-1 sizes follow from the partition.
  int k = 4;
  int theta = 2;
  std::uint64_t seed = 1;
};

QhornQuery gen_random_qhorn1(const GenSpec& spec);
QhornQuery gen_random_rp(const GenSpec& spec);
QhornQuery gen_random(const GenSpec& spec);

/// One random class-preserving edit that changes the semantics. Throws Error
/// after 50 attempts without a non-equivalent result.
QhornQuery mutate_query(const QhornQuery& q, std::uint64_t seed);

/// A syntactically different but equivalent rewrite: dominated conjunctions
/// and universals added, implied heads dropped or added, expressions
/// reordered.
QhornQuery equivalent_variant(const QhornQuery& q, std::uint64_t seed);

struct BenchRow {
  int n = 0;
  int k = 0;
  int theta = 0;
  OracleStats stats;
  double ms = 0;
  bool equivalent = false;
};

struct BenchOptions {
  int theta_cap = 3;
};

/// Learns `trials` targets generated from `spec` (trial seeds derived from
/// spec.seed) against simulated oracles.
std::vector<BenchRow> bench(const GenSpec& spec, int trials, BenchOptions options = {});

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Learns one target with the learner matching `cls`.
QhornQuery learn_with(QueryClass cls, MembershipOracle& oracle, int n, int theta_cap = 3);

}  // namespace qhorn
