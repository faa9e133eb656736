#include "qhorn/query.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "qhorn/rng.hpp"

namespace qhorn {

const char* label_name(Label l) { return l == Label::Answer ? "answer" : "non-answer"; }

void QhornQuery::validate() const {
  check_arity(n);
  const VarSet all = VarSet::first(n);
  for (const auto& u : universals) {
    if (u.head < 0 || u.head >= n) throw Error("universal head out of range");
    if (!u.body.within(n)) throw Error("universal body exceeds arity");
    if (u.body.contains(u.head)) throw Error("universal head appears in its own body");
  }
  for (const auto& e : existentials) {
    if (e.vars.empty()) throw Error("empty existential conjunction");
    if (!e.vars.subset_of(all)) throw Error("existential conjunction exceeds arity");
  }
  for (std::size_t i = 0; i < universals.size(); ++i) {
    for (std::size_t j = i + 1; j < universals.size(); ++j) {
      if (universals[i] == universals[j]) throw Error("duplicate universal expression");
    }
  }
  for (std::size_t i = 0; i < existentials.size(); ++i) {
    for (std::size_t j = i + 1; j < existentials.size(); ++j) {
      if (existentials[i] == existentials[j]) throw Error("duplicate existential expression");
    }
  }
  if (!propositions.empty() && static_cast<int>(propositions.size()) != n) {
    throw Error("proposition vocabulary must have exactly n labels");
  }
}

VarSet QhornQuery::heads() const {
  VarSet h;
  for (const auto& u : universals) h.insert(u.head);
  return h;
}

VarSet QhornQuery::body_vars() const {
  VarSet b;
  for (const auto& u : universals) b |= u.body;
  return b;
}

Label evaluate(const QhornQuery& q, const QuestionObject& obj) {
  if (obj.arity() != q.n) throw Error("arity mismatch between query and object");
  for (const Tuple& t : obj) {
    if (violates_universal(t, q.universals)) return Label::NonAnswer;
  }
  auto witnessed = [&](VarSet need) {
    return std::any_of(obj.begin(), obj.end(), [&](const Tuple& t) { return need.subset_of(t.true_set()); });
  };
  for (const auto& u : q.universals) {
    if (!witnessed(u.body | VarSet::single(u.head))) return Label::NonAnswer;
  }
  for (const auto& e : q.existentials) {
    if (!witnessed(e.vars)) return Label::NonAnswer;
  }
  return Label::Answer;
}

bool violates_universal(const Tuple& t, const std::vector<UniversalHorn>& universals) {
  const VarSet s = t.true_set();
  return std::any_of(universals.begin(), universals.end(),
                     [&](const UniversalHorn& u) { return u.body.subset_of(s) && !s.contains(u.head); });
}

VarSet head_closure(VarSet vars, const std::vector<UniversalHorn>& universals) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& u : universals) {
      if (u.body.subset_of(vars) && !vars.contains(u.head)) {
        vars.insert(u.head);
        changed = true;
      }
    }
  }
  return vars;
}

VarSet guarantee_closure(const UniversalHorn& u, const std::vector<UniversalHorn>& universals) {
  return head_closure(u.body | VarSet::single(u.head), universals);
}

namespace {

std::vector<UniversalHorn> dominant_universals(const std::vector<UniversalHorn>& all) {
  std::vector<UniversalHorn> out;
  for (const auto& u : all) {
    bool dominated = std::any_of(all.begin(), all.end(), [&](const UniversalHorn& o) {
      return o.head == u.head && o.body.subset_of(u.body) && o.body != u.body;
    });
    bool duplicate = std::find(out.begin(), out.end(), u) != out.end();
    if (!dominated && !duplicate) out.push_back(u);
  }
  std::sort(out.begin(), out.end(), [](const UniversalHorn& a, const UniversalHorn& b) {
    if (a.body != b.body) return popcount_then_mask(a.body, b.body);
    return a.head < b.head;
  });
  return out;
}

std::vector<VarSet> maximal_sets(std::vector<VarSet> sets) {
  std::sort(sets.begin(), sets.end(), [](VarSet a, VarSet b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.mask() < b.mask();
  });
  std::vector<VarSet> kept;
  for (VarSet s : sets) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](VarSet k) { return s.subset_of(k); });
    if (!dominated) kept.push_back(s);
  }
  return kept;
}

}  // namespace

NormalizedQuery normalize(const QhornQuery& q) {
  q.validate();
  NormalizedQuery nq;
  nq.n = q.n;
  nq.universals = dominant_universals(q.universals);
  for (const auto& u : nq.universals) nq.heads.insert(u.head);

  // Dominated universals still contribute their guarantee clause.
  std::vector<VarSet> candidates;
  for (const auto& u : q.universals) candidates.push_back(guarantee_closure(u, nq.universals));
  for (const auto& e : q.existentials) candidates.push_back(head_closure(e.vars, nq.universals));
  nq.existentials = maximal_sets(std::move(candidates));
  return nq;
}

QhornQuery to_query(const NormalizedQuery& nq) {
  QhornQuery q;
  q.n = nq.n;
  q.universals = nq.universals;
  for (VarSet c : nq.existentials) {
    bool is_guarantee = std::any_of(nq.universals.begin(), nq.universals.end(), [&](const UniversalHorn& u) {
      return guarantee_closure(u, nq.universals) == c;
    });
    if (!is_guarantee) q.existentials.push_back({c});
  }
  return q;
}

std::vector<Tuple> existential_distinguishing_tuples(const NormalizedQuery& nq) {
  std::vector<Tuple> out;
  for (VarSet c : nq.existentials) out.push_back(make_tuple(nq.n, c));
  std::sort(out.begin(), out.end());
  return out;
}

Tuple universal_distinguishing_tuple(const UniversalHorn& u, const NormalizedQuery& nq) {
  VarSet other_heads = nq.heads;
  other_heads.erase(u.head);
  return make_tuple(nq.n, (u.body | other_heads) - VarSet::single(u.head));
}

std::vector<Tuple> universal_distinguishing_tuples(const NormalizedQuery& nq) {
  std::vector<Tuple> out;
  for (const auto& u : nq.universals) out.push_back(universal_distinguishing_tuple(u, nq));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_role_preserving(const QhornQuery& q) {
  q.validate();
  return !q.heads().intersects(q.body_vars());
}

bool is_qhorn1(const QhornQuery& q) {
  if (!is_role_preserving(q)) return false;

  VarSet heads;
  for (const auto& u : q.universals) {
    if (heads.contains(u.head)) return false;  // one body per head
    heads.insert(u.head);
  }
  std::vector<VarSet> bodies;
  for (const auto& u : q.universals) {
    if (!u.body.empty() && std::find(bodies.begin(), bodies.end(), u.body) == bodies.end()) bodies.push_back(u.body);
  }
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    for (std::size_t j = i + 1; j < bodies.size(); ++j) {
      if (bodies[i].intersects(bodies[j])) return false;
    }
  }

  VarSet covered = heads | q.body_vars();
  for (const auto& e : q.existentials) {
    if (e.vars.intersects(heads)) return false;
    covered |= e.vars;
  }
  if (covered != VarSet::first(q.n)) return false;

  // Group existential conjunctions that share variables; each group is one
  // body with one or more distinct existential heads.
  const std::size_t m = q.existentials.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (q.existentials[i].vars.intersects(q.existentials[j].vars)) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<VarSet>> groups;
  for (std::size_t i = 0; i < m; ++i) groups[find(i)].push_back(q.existentials[i].vars);

  for (const auto& [root, conjs] : groups) {
    VarSet group_vars;
    for (VarSet c : conjs) group_vars |= c;
    std::optional<VarSet> universal_body;
    for (VarSet b : bodies) {
      if (b.intersects(group_vars)) {
        if (universal_body) return false;
        universal_body = b;
      }
    }
    VarSet body;
    if (universal_body) {
      body = *universal_body;
    } else if (conjs.size() == 1) {
      continue;
    } else {
      body = conjs.front();
      for (VarSet c : conjs) body &= c;
      if (body.empty()) return false;
    }
    VarSet seen_heads;
    for (VarSet c : conjs) {
      if (!body.subset_of(c) || (c - body).size() != 1) return false;
      VarSet h = c - body;
      if (h.intersects(seen_heads)) return false;
      seen_heads |= h;
    }
  }
  return true;
}

int causal_density(const QhornQuery& q) {
  const NormalizedQuery nq = normalize(q);
  std::map<VarId, int> per_head;
  int best = 0;
  for (const auto& u : nq.universals) best = std::max(best, ++per_head[u.head]);
  return best;
}

bool equivalent(const QhornQuery& a, const QhornQuery& b) {
  if (a.n != b.n) throw Error("arity mismatch");
  const NormalizedQuery na = normalize(a);
  const NormalizedQuery nb = normalize(b);
  return existential_distinguishing_tuples(na) == existential_distinguishing_tuples(nb) &&
         universal_distinguishing_tuples(na) == universal_distinguishing_tuples(nb);
}

namespace {

/// Masks over the 2^n tuples that let an object (itself a mask) be checked
/// with a few word operations. Built straight from the three clauses of the
/// answer definition; no closure or dominance reasoning.
struct MaskEvaluator {
  std::uint64_t allowed = 0;
  std::vector<std::uint64_t> witness_masks;

  explicit MaskEvaluator(const QhornQuery& q) {
    if (q.n > 6) throw Error("mask evaluation supports n <= 6");
    const std::uint32_t count = std::uint32_t{1} << q.n;
    auto mask_of = [&](VarSet need) {
      std::uint64_t m = 0;
      for (std::uint32_t t = 0; t < count; ++t) {
        if (need.subset_of(VarSet(t))) m |= std::uint64_t{1} << t;
      }
      return m;
    };
    for (std::uint32_t t = 0; t < count; ++t) {
      if (!violates_universal(Tuple{t, q.n}, q.universals)) allowed |= std::uint64_t{1} << t;
    }
    for (const auto& u : q.universals) witness_masks.push_back(mask_of(u.body | VarSet::single(u.head)));
    for (const auto& e : q.existentials) witness_masks.push_back(mask_of(e.vars));
  }

  bool operator()(std::uint64_t object) const {
    if (object & ~allowed) return false;
    return std::all_of(witness_masks.begin(), witness_masks.end(),
                       [&](std::uint64_t w) { return (object & w) != 0; });
  }
};

}  // namespace

Label evaluate_mask(const QhornQuery& q, std::uint64_t object) { return to_label(MaskEvaluator(q)(object)); }

bool equivalent_bruteforce(const QhornQuery& a, const QhornQuery& b) {
  if (a.n != b.n) throw Error("arity mismatch");
  if (a.n > 4) throw Error("exhaustive equivalence check requires n <= 4");
  const MaskEvaluator ea(a);
  const MaskEvaluator eb(b);
  const std::uint64_t objects = std::uint64_t{1} << (std::uint64_t{1} << a.n);
  for (std::uint64_t obj = 0; obj < objects; ++obj) {
    if (ea(obj) != eb(obj)) return false;
  }
  return true;
}

bool equivalent_sampled(const QhornQuery& a, const QhornQuery& b, int samples, std::uint64_t seed) {
  if (a.n != b.n) throw Error("arity mismatch");
  SplitMix64 rng(seed);
  const int n = a.n;
  for (int s = 0; s < samples; ++s) {
    QuestionObject obj(n);
    const int size = rng.uniform(0, 6);
    for (int i = 0; i < size; ++i) {
      // Bias toward tuples near the top of the lattice, where most answers live.
      std::uint32_t bits = VarSet::first(n).mask();
      const int flips = rng.uniform(0, n);
      for (int f = 0; f < flips; ++f) bits &= ~(std::uint32_t{1} << rng.uniform(0, n - 1));
      obj.insert(Tuple{bits, n});
    }
    if (evaluate(a, obj) != evaluate(b, obj)) return false;
  }
  return true;
}

std::string to_shorthand(const QhornQuery& q) {
  auto vars = [](VarSet s) {
    std::string out;
    for (VarId v : s.members()) out += "x" + std::to_string(v + 1);
    return out;
  };
  std::string out;
  auto append = [&](const std::string& piece) {
    if (!out.empty()) out += ' ';
    out += piece;
  };
  for (const auto& u : q.universals) {
    if (u.body.empty()) {
      append("∀x" + std::to_string(u.head + 1));
    } else {
      append("∀" + vars(u.body) + "→x" + std::to_string(u.head + 1));
    }
  }
  for (const auto& e : q.existentials) append("∃" + vars(e.vars));
  return out;
}

}  // namespace qhorn
