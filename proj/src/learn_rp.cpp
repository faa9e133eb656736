#include "qhorn/learn_rp.hpp"

#include <algorithm>
#include <set>

#include "qhorn/learn_qhorn1.hpp"

namespace qhorn {

namespace {

// Tuple for body probes: `false_vars` and h false, everything else true.
QuestionObject body_probe(VarId h, VarSet false_vars, int n) {
  const Tuple top = all_true(n);
  return QuestionObject(n, {top, with_false(top, false_vars | VarSet::single(h))});
}

void append(std::vector<Tuple>& out, const std::vector<Tuple>& more) { out.insert(out.end(), more.begin(), more.end()); }

}  // namespace

VarSet detect_heads_rp(MembershipOracle& oracle, int n) { return classify_variables(oracle, n).first; }

bool is_bodyless(MembershipOracle& oracle, VarId h, VarSet heads, int n) {
  const VarSet non_heads = VarSet::first(n) - heads;
  return oracle.ask(body_probe(h, non_heads, n), Phase::BodySearch) == Label::NonAnswer;
}

VarSet learn_one_body(MembershipOracle& oracle, VarId h, VarSet candidates, VarSet fixed_false, VarSet heads, int n) {
  (void)heads;  // other heads stay true in every probe
  VarSet X;
  for (VarId x : candidates.members()) {
    const VarSet off = X | VarSet::single(x) | fixed_false;
    if (oracle.ask(body_probe(h, off, n), Phase::BodySearch) == Label::NonAnswer) X.insert(x);
  }
  return candidates - X;
}

std::vector<VarSet> search_roots(const std::vector<VarSet>& bodies) {
  std::vector<VarSet> roots{VarSet{}};
  for (VarSet body : bodies) {
    std::vector<VarSet> next;
    for (VarSet r : roots) {
      for (VarId v : body.members()) {
        VarSet s = r;
        s.insert(v);
        if (std::find(next.begin(), next.end(), s) == next.end()) next.push_back(s);
      }
    }
    roots = std::move(next);
  }
  // A root whose false-set contains another root's spans a sub-lattice of it.
  std::vector<VarSet> minimal;
  for (VarSet r : roots) {
    bool dominated = std::any_of(roots.begin(), roots.end(), [&](VarSet o) { return o != r && o.subset_of(r); });
    if (!dominated) minimal.push_back(r);
  }
  return minimal;
}

std::vector<VarSet> learn_bodies_for_head(MembershipOracle& oracle, VarId h, VarSet heads, int n, int theta_cap) {
  const VarSet non_heads = VarSet::first(n) - heads;
  std::vector<VarSet> bodies{learn_one_body(oracle, h, non_heads, {}, heads, n)};
  if (static_cast<int>(bodies.size()) > theta_cap) throw Error("causal density cap exceeded");
  std::vector<VarSet> answered;

  bool found = true;
  while (found) {
    found = false;
    for (VarSet root : search_roots(bodies)) {
      if (std::any_of(answered.begin(), answered.end(), [&](VarSet a) { return a.subset_of(root); })) continue;
      if (is_answer(oracle.ask(body_probe(h, root, n), Phase::BodySearch))) {
        answered.push_back(root);
        continue;
      }
      bodies.push_back(learn_one_body(oracle, h, non_heads - root, root, heads, n));
      if (static_cast<int>(bodies.size()) > theta_cap) throw Error("causal density cap exceeded");
      found = true;
      break;
    }
  }
  return bodies;
}

std::vector<Tuple> prune(MembershipOracle& oracle, const std::vector<Tuple>& C, const std::vector<Tuple>& O) {
  std::vector<Tuple> K;
  auto split = [](const std::vector<Tuple>& v) {
    const auto mid = static_cast<std::ptrdiff_t>(v.size() / 2);
    return std::pair{std::vector<Tuple>(v.begin(), v.begin() + mid), std::vector<Tuple>(v.begin() + mid, v.end())};
  };
  auto [T1, T2] = split(C);
  const int n = C.empty() ? 0 : C.front().n;
  while (!T1.empty() || !T2.empty()) {
    // With T2 empty, T1 + K + O is the set already known to be an answer.
    bool answer = T2.empty();
    if (!answer) {
      std::vector<Tuple> q = T1;
      append(q, K);
      append(q, O);
      answer = is_answer(oracle.ask(QuestionObject(n, std::move(q)), Phase::Prune));
    }
    if (answer) {
      std::tie(T1, T2) = split(T1);
    } else if (T2.size() == 1) {
      K.push_back(T2.front());
      T2.clear();
    } else {
      auto [front, back] = split(T2);
      append(T1, front);
      T2 = std::move(back);
    }
  }
  return K;
}

std::vector<Tuple> learn_existential_conjunctions(MembershipOracle& oracle, const std::vector<UniversalHorn>& universals,
                                                  int n, ExistentialSearchOptions options) {
  std::vector<VarSet> closures;
  for (const auto& u : universals) closures.push_back(guarantee_closure(u, universals));

  std::vector<Tuple> D;
  std::set<Tuple> T{all_true(n)};
  while (!T.empty()) {
    std::set<Tuple> next;
    std::set<Tuple> rest = T;
    for (const Tuple& t : T) {
      rest.erase(t);
      if (options.guarantee_downset_skip &&
          std::find(closures.begin(), closures.end(), t.true_set()) != closures.end() &&
          std::none_of(D.begin(), D.end(), [&](const Tuple& d) { return dominates(d, t); })) {
        D.push_back(t);
        continue;
      }
      std::vector<Tuple> C;
      for (const Tuple& c : children(t)) {
        if (!violates_universal(c, universals)) C.push_back(c);
      }
      std::vector<Tuple> O = D;
      O.insert(O.end(), rest.begin(), rest.end());
      O.insert(O.end(), next.begin(), next.end());
      std::vector<Tuple> q = O;
      append(q, C);
      if (is_answer(oracle.ask(QuestionObject(n, std::move(q)), Phase::Existential))) {
        for (const Tuple& k : prune(oracle, C, O)) next.insert(k);
      } else {
        D.push_back(t);
      }
    }
    T = std::move(next);
  }
  std::sort(D.begin(), D.end());
  return D;
}

QhornQuery learn_rp(MembershipOracle& oracle, int n, RpLearnOptions options) {
  QhornQuery q;
  q.n = n;
  const VarSet heads = detect_heads_rp(oracle, n);
  for (VarId h : heads.members()) {
    if (is_bodyless(oracle, h, heads, n)) {
      q.universals.push_back({VarSet{}, h});
      continue;
    }
    for (VarSet body : learn_bodies_for_head(oracle, h, heads, n, options.theta_cap)) q.universals.push_back({body, h});
  }
  std::vector<VarSet> closures;
  for (const auto& u : q.universals) closures.push_back(guarantee_closure(u, q.universals));
  for (const Tuple& t : learn_existential_conjunctions(oracle, q.universals, n, options.existential)) {
    // Conjunctions that only restate a guarantee clause are implied.
    if (std::find(closures.begin(), closures.end(), t.true_set()) == closures.end()) {
      q.existentials.push_back({t.true_set()});
    }
  }
  return q;
}

}  // namespace qhorn
