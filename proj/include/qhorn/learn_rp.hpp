#pragma once

#include <vector>

#include "qhorn/oracle.hpp"

namespace qhorn {

inline constexpr int kDefaultThetaCap = 3;

/// Same probes as qhorn-1 head classification; returns the head set.
VarSet detect_heads_rp(MembershipOracle& oracle, int n);

/// Asks {1^n, tuple with h and every non-head false, other heads true}.
bool is_bodyless(MembershipOracle& oracle, VarId h, VarSet heads, int n);

/// Greedy body search over `candidates` with `fixed_false` held false, h
/// false and every other head true. Returns an inclusion-minimal body.
VarSet learn_one_body(MembershipOracle& oracle, VarId h, VarSet candidates, VarSet fixed_false, VarSet heads, int n);

/// False-sets of the search roots for the given bodies: one variable of each
/// body, deduplicated, inclusion-minimal, in lexicographic cross-product order.
std::vector<VarSet> search_roots(const std::vector<VarSet>& bodies);

/// All dominant bodies of h. Throws Error("causal density cap exceeded") once
/// more than `theta_cap` bodies turn up.
std::vector<VarSet> learn_bodies_for_head(MembershipOracle& oracle, VarId h, VarSet heads, int n,
                                          int theta_cap = kDefaultThetaCap);

/// Returns an inclusion-minimal K within C such that K plus O is an answer.
/// Requires C plus O to be an answer.
std::vector<Tuple> prune(MembershipOracle& oracle, const std::vector<Tuple>& C, const std::vector<Tuple>& O);

struct ExistentialSearchOptions {
  /// Take a frontier tuple equal to an undominated guarantee closure as
  /// distinguishing without asking, and skip its downset.
  bool guarantee_downset_skip = true;
};

/// Top-down pruned lattice walk; returns the distinguishing tuples of the
/// dominant existential conjunctions, sorted.
std::vector<Tuple> learn_existential_conjunctions(MembershipOracle& oracle, const std::vector<UniversalHorn>& universals,
                                                  int n, ExistentialSearchOptions options = {});

struct RpLearnOptions {
  int theta_cap = kDefaultThetaCap;
  ExistentialSearchOptions existential;
};

QhornQuery learn_rp(MembershipOracle& oracle, int n, RpLearnOptions options = {});

}  // namespace qhorn
