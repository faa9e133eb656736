#include "qhorn/bits.hpp"

#include <algorithm>

namespace qhorn {

void check_arity(int n) {
  if (n < 1 || n > kMaxArity) {
    throw Error("arity " + std::to_string(n) + " out of range [1, " + std::to_string(kMaxArity) + "]");
  }
}

VarSet::VarSet(std::initializer_list<VarId> vars) {
  for (VarId v : vars) {
    if (v < 0 || v >= 32) throw Error("variable index out of range");
    insert(v);
  }
}

std::vector<VarId> VarSet::members() const {
  std::vector<VarId> out;
  out.reserve(size());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

bool popcount_then_mask(VarSet a, VarSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.mask() < b.mask();
}

Tuple all_true(int n) {
  check_arity(n);
  return Tuple{VarSet::first(n).mask(), n};
}

Tuple make_tuple(int n, VarSet true_vars) {
  check_arity(n);
  if (!true_vars.within(n)) throw Error("variable set exceeds arity");
  return Tuple{true_vars.mask(), n};
}

Tuple with_false(const Tuple& t, VarSet vars) {
  if (!vars.within(t.n)) throw Error("variable set exceeds arity");
  return Tuple{t.bits & ~vars.mask(), t.n};
}

std::vector<Tuple> children(const Tuple& t, VarSet allowed) {
  std::vector<Tuple> out;
  for (VarId v : (t.true_set() & allowed).members()) {
    out.push_back(Tuple{t.bits & ~(std::uint32_t{1} << v), t.n});
  }
  return out;
}

std::vector<Tuple> children(const Tuple& t) { return children(t, VarSet::first(t.n)); }

bool dominates(const Tuple& a, const Tuple& b) {
  if (a.n != b.n) throw Error("arity mismatch");
  return (b.bits & ~a.bits) == 0;
}

Tuple parse_tuple(std::string_view s) {
  if (s.empty() || s.size() > static_cast<std::size_t>(kMaxArity)) {
    throw Error("tuple length out of range: '" + std::string(s) + "'");
  }
  Tuple t{0, static_cast<int>(s.size())};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      t.bits |= std::uint32_t{1} << i;
    } else if (s[i] != '0') {
      throw Error("invalid character in tuple: '" + std::string(s) + "'");
    }
  }
  return t;
}

std::string format_tuple(const Tuple& t) {
  std::string s(t.n, '0');
  for (int i = 0; i < t.n; ++i) {
    if (t.is_true(i)) s[i] = '1';
  }
  return s;
}

QuestionObject::QuestionObject(int n, std::vector<Tuple> tuples) : n_(n), tuples_(std::move(tuples)) {
  check_arity(n);
  for (const Tuple& t : tuples_) {
    if (t.n != n) throw Error("tuple arity does not match question arity");
  }
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

QuestionObject::QuestionObject(int n, std::initializer_list<std::string_view> bitstrings) : n_(n) {
  check_arity(n);
  for (auto s : bitstrings) insert(parse_tuple(s));
}

bool QuestionObject::contains(const Tuple& t) const {
  return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

void QuestionObject::insert(const Tuple& t) {
  if (t.n != n_) throw Error("tuple arity does not match question arity");
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t);
  if (it == tuples_.end() || *it != t) tuples_.insert(it, t);
}

void QuestionObject::insert(const QuestionObject& other) {
  for (const Tuple& t : other) insert(t);
}

void QuestionObject::erase(const Tuple& t) {
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t);
  if (it != tuples_.end() && *it == t) tuples_.erase(it);
}

std::vector<std::string> QuestionObject::bitstrings() const {
  std::vector<std::string> out;
  out.reserve(tuples_.size());
  for (const Tuple& t : tuples_) out.push_back(format_tuple(t));
  return out;
}

QuestionObject question_union(int n, std::initializer_list<const std::vector<Tuple>*> parts) {
  std::vector<Tuple> all;
  for (const auto* p : parts) all.insert(all.end(), p->begin(), p->end());
  return QuestionObject(n, std::move(all));
}

}  // namespace qhorn
