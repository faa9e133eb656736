#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qhorn/query.hpp"

namespace qhorn::test {

// ∀x1x4→x5 ∀x3x4→x5 ∀x1x2→x6 ∃x1x2x3 ∃x2x3x4 ∃x1x2x5 ∃x2x3x5x6
inline QhornQuery worked_example() {
  QhornQuery q;
  q.n = 6;
  q.universals = {{VarSet{0, 3}, 4}, {VarSet{2, 3}, 4}, {VarSet{0, 1}, 5}};
  q.existentials = {{VarSet{0, 1, 2}}, {VarSet{1, 2, 3}}, {VarSet{0, 1, 4}}, {VarSet{1, 2, 4, 5}}};
  return q;
}

inline std::set<std::string> bitset_of(const std::vector<Tuple>& ts) {
  std::set<std::string> out;
  for (const Tuple& t : ts) out.insert(format_tuple(t));
  return out;
}

inline std::set<std::string> bitset_of(const QuestionObject& q) {
  const auto b = q.bitstrings();
  return {b.begin(), b.end()};
}

// Direct reading of the answer semantics, kept free of any library helper
// beyond plain bit access.
inline bool naive_is_answer(const QhornQuery& q, const std::vector<std::uint32_t>& tuples) {
  for (const auto& u : q.universals) {
    const std::uint32_t body = u.body.mask();
    const std::uint32_t head = 1u << u.head;
    bool witnessed = false;
    for (std::uint32_t t : tuples) {
      if ((t & body) == body && !(t & head)) return false;
      if ((t & (body | head)) == (body | head)) witnessed = true;
    }
    if (!witnessed) return false;
  }
  for (const auto& e : q.existentials) {
    const std::uint32_t vars = e.vars.mask();
    if (std::none_of(tuples.begin(), tuples.end(), [&](std::uint32_t t) { return (t & vars) == vars; })) return false;
  }
  return true;
}

// Object given as a mask over the 2^n tuples.
inline std::vector<std::uint32_t> object_tuples(int n, std::uint64_t object) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < (1u << n); ++t) {
    if ((object >> t) & 1u) out.push_back(t);
  }
  return out;
}

inline QuestionObject to_object(int n, const std::vector<std::uint32_t>& tuples) {
  std::vector<Tuple> ts;
  for (std::uint32_t t : tuples) ts.push_back(Tuple{t, n});
  return QuestionObject(n, ts);
}

// Exhaustive semantic equality through the naive evaluator, n <= 4.
inline bool naive_equivalent(const QhornQuery& a, const QhornQuery& b) {
  const std::uint64_t objects = std::uint64_t{1} << (1u << a.n);
  for (std::uint64_t o = 0; o < objects; ++o) {
    const auto ts = object_tuples(a.n, o);
    if (naive_is_answer(a, ts) != naive_is_answer(b, ts)) return false;
  }
  return true;
}

}  // namespace qhorn::test
