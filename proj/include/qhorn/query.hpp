#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhorn/bits.hpp"

namespace qhorn {

enum class Label : std::uint8_t { NonAnswer = 0, Answer = 1 };

inline Label to_label(bool answer) { return answer ? Label::Answer : Label::NonAnswer; }
inline bool is_answer(Label l) { return l == Label::Answer; }
const char* label_name(Label l);

/// Universal Horn expression: whenever every body variable is true the head
/// must be true. An empty body is the bodyless form (the head is always true).
/// The guarantee clause (some tuple has body and head true) is implied.
struct UniversalHorn {
  VarSet body;
  VarId head = 0;

  friend bool operator==(const UniversalHorn&, const UniversalHorn&) = default;
};

struct ExistentialConj {
  VarSet vars;

  friend bool operator==(const ExistentialConj&, const ExistentialConj&) = default;
};

struct QhornQuery {
  int n = 1;
  std::vector<UniversalHorn> universals;
  std::vector<ExistentialConj> existentials;
  std::vector<std::string> propositions;

  /// Number of expressions; guarantee clauses are not counted.
  int size() const { return static_cast<int>(universals.size() + existentials.size()); }

  /// Throws Error on out-of-range variables, head-in-body, empty conjunctions
  /// or duplicate expressions.
  void validate() const;
  VarSet heads() const;
  VarSet body_vars() const;
};

/// Canonical form: closed, dominance-filtered expressions in a fixed order.
struct NormalizedQuery {
  int n = 1;
  /// Inclusion-minimal bodies per head, ordered by (|body|, body mask, head).
  std::vector<UniversalHorn> universals;
  /// Head-closed, inclusion-maximal conjunctions including the closures of
  /// guarantee clauses, ordered by (|vars| descending, mask ascending).
  std::vector<VarSet> existentials;
  VarSet heads;

  friend bool operator==(const NormalizedQuery&, const NormalizedQuery&) = default;
};

Label evaluate(const QhornQuery& q, const QuestionObject& obj);

bool violates_universal(const Tuple& t, const std::vector<UniversalHorn>& universals);

/// Least superset of `vars` closed under "body contained => add head".
VarSet head_closure(VarSet vars, const std::vector<UniversalHorn>& universals);

NormalizedQuery normalize(const QhornQuery& q);

/// Back to a plain query. Existentials that coincide with the closure of a
/// guarantee clause are redundant and dropped.
QhornQuery to_query(const NormalizedQuery& nq);

/// Closure of body plus head, i.e. the conjunction the guarantee clause forces.
VarSet guarantee_closure(const UniversalHorn& u, const std::vector<UniversalHorn>& universals);

std::vector<Tuple> existential_distinguishing_tuples(const NormalizedQuery& nq);
Tuple universal_distinguishing_tuple(const UniversalHorn& u, const NormalizedQuery& nq);
std::vector<Tuple> universal_distinguishing_tuples(const NormalizedQuery& nq);

bool is_role_preserving(const QhornQuery& q);
bool is_qhorn1(const QhornQuery& q);

int causal_density(const QhornQuery& q);

bool equivalent(const QhornQuery& a, const QhornQuery& b);

/// Exhaustive semantic comparison over every object (all 2^(2^n) tuple sets).
/// Requires n <= 4.
bool equivalent_bruteforce(const QhornQuery& a, const QhornQuery& b);

/// Randomized semantic comparison for larger n: checks `samples` objects
/// drawn from `seed`. A true result is advisory only.
bool equivalent_sampled(const QhornQuery& a, const QhornQuery& b, int samples, std::uint64_t seed);

/// Evaluate on an object given as a mask over the 2^n tuples (n <= 6).
Label evaluate_mask(const QhornQuery& q, std::uint64_t object);

/// Shorthand notation, e.g. "∀x1x4→x5 ∃x2x3x5x6".
std::string to_shorthand(const QhornQuery& q);

}  // namespace qhorn
