#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qhorn {

/// Largest supported number of propositions. Tuples, variable sets and the
/// brute-force checks all live in 32-bit masks below this bound.
inline constexpr int kMaxArity = 20;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero-based variable index; x_{i+1} in the usual notation is index i.
using VarId = int;

void check_arity(int n);

/// A set of variables stored as a bitmask (bit i <=> variable index i).
class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr explicit VarSet(std::uint32_t mask) : mask_(mask) {}
  VarSet(std::initializer_list<VarId> vars);

  static VarSet single(VarId v) { return VarSet(std::uint32_t{1} << v); }
  static VarSet first(int n) { return VarSet(n >= 32 ? ~0u : ((std::uint32_t{1} << n) - 1)); }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  int size() const { return std::popcount(mask_); }
  bool contains(VarId v) const { return (mask_ >> v) & 1u; }
  bool subset_of(VarSet other) const { return (mask_ & ~other.mask_) == 0; }
  bool intersects(VarSet other) const { return (mask_ & other.mask_) != 0; }
  bool within(int n) const { return subset_of(first(n)); }

  VarSet& insert(VarId v) { mask_ |= std::uint32_t{1} << v; return *this; }
  VarSet& erase(VarId v) { mask_ &= ~(std::uint32_t{1} << v); return *this; }

  /// Members in ascending index order.
  std::vector<VarId> members() const;
  /// Lowest member; the set must not be empty.
  VarId front() const { return std::countr_zero(mask_); }

  friend constexpr VarSet operator|(VarSet a, VarSet b) { return VarSet(a.mask_ | b.mask_); }
  friend constexpr VarSet operator&(VarSet a, VarSet b) { return VarSet(a.mask_ & b.mask_); }
  friend constexpr VarSet operator-(VarSet a, VarSet b) { return VarSet(a.mask_ & ~b.mask_); }
  VarSet& operator|=(VarSet o) { mask_ |= o.mask_; return *this; }
  VarSet& operator&=(VarSet o) { mask_ &= o.mask_; return *this; }
  VarSet& operator-=(VarSet o) { mask_ &= ~o.mask_; return *this; }

  friend constexpr bool operator==(VarSet, VarSet) = default;
  friend constexpr auto operator<=>(VarSet, VarSet) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// Ordering used wherever a deterministic dominance tie-break is needed:
/// fewer members first, then smaller mask.
bool popcount_then_mask(VarSet a, VarSet b);

/// One Boolean tuple: bit i set <=> variable i is true.
struct Tuple {
  std::uint32_t bits = 0;
  int n = 0;

  VarSet true_set() const { return VarSet(bits); }
  bool is_true(VarId v) const { return (bits >> v) & 1u; }

  friend bool operator==(const Tuple&, const Tuple&) = default;
  friend auto operator<=>(const Tuple& a, const Tuple& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    return a.bits <=> b.bits;
  }
};

Tuple all_true(int n);
Tuple make_tuple(int n, VarSet true_vars);
Tuple with_false(const Tuple& t, VarSet vars);

/// One child per true variable of `t` that is in `allowed`, ascending index.
std::vector<Tuple> children(const Tuple& t, VarSet allowed);
std::vector<Tuple> children(const Tuple& t);

/// True iff every true variable of `b` is true in `a` (a is in b's upset).
bool dominates(const Tuple& a, const Tuple& b);

/// Bitstring form, leftmost character is x1.
Tuple parse_tuple(std::string_view s);
std::string format_tuple(const Tuple& t);

/// A membership question: a canonical (sorted, deduplicated) set of tuples.
class QuestionObject {
 public:
  explicit QuestionObject(int n) : n_(n) { check_arity(n); }
  QuestionObject(int n, std::vector<Tuple> tuples);
  QuestionObject(int n, std::initializer_list<std::string_view> bitstrings);

  int arity() const { return n_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  bool contains(const Tuple& t) const;
  const std::vector<Tuple>& tuples() const { return tuples_; }
  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  void insert(const Tuple& t);
  void insert(const QuestionObject& other);
  void erase(const Tuple& t);

  std::vector<std::string> bitstrings() const;

  friend bool operator==(const QuestionObject&, const QuestionObject&) = default;

 private:
  int n_;
  std::vector<Tuple> tuples_;
};

QuestionObject question_union(int n, std::initializer_list<const std::vector<Tuple>*> parts);

}  // namespace qhorn
