#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qhorn/oracle.hpp"

namespace qhorn {

struct Qhorn1State {
  int n = 1;
  VarSet U;  ///< universal head variables
  VarSet E;  ///< existential variables
  std::vector<VarSet> bodies;
  QhornQuery query;
};

/// Builds the question for one candidate variable set.
using QuestionBuilder = std::function<QuestionObject(VarSet)>;

/// Head classification: one {1^n, 1^n - x} question per variable.
std::pair<VarSet, VarSet> classify_variables(MembershipOracle& oracle, int n);

QuestionObject universal_dependence_question(VarId h, VarSet V, int n);
QuestionObject existential_independence_question(VarSet X, VarSet Y, int n);
/// One tuple per d in D with d false and every other variable true, except
/// those in `context_false`, which are false in every tuple.
QuestionObject matrix_question(VarSet D, int n, VarSet context_false = {});

/// Binary search for one variable of `domain` on which the question deviates
/// from `eliminate_on`; empty when the whole-domain question already equals it.
VarSet find(MembershipOracle& oracle, const QuestionBuilder& build, Label eliminate_on,
            const std::vector<VarId>& domain, Phase phase);
/// Every variable of `domain` the question depends on.
VarSet find_all(MembershipOracle& oracle, const QuestionBuilder& build, Label eliminate_on,
                const std::vector<VarId>& domain, Phase phase);

void learn_universal_bodies(MembershipOracle& oracle, Qhorn1State& state);

/// Looks for a pair of independent variables among the dependents D of x.
/// Returns one or two existential head variables of D, or the empty set when
/// D holds at most one head.
VarSet get_head(MembershipOracle& oracle, VarId x, VarSet D, int n, VarSet context_false = {});

void learn_existential(MembershipOracle& oracle, Qhorn1State& state);

QhornQuery learn_qhorn1(MembershipOracle& oracle, int n);

}  // namespace qhorn
