#include "qhorn/learn_qhorn1.hpp"

namespace qhorn {

namespace {

VarSet to_set(const std::vector<VarId>& vars) {
  VarSet s;
  for (VarId v : vars) s.insert(v);
  return s;
}

// First half takes the extra element, so {x2,x3,x4} splits as {x2,x3} | {x4}.
std::pair<std::vector<VarId>, std::vector<VarId>> split_half(const std::vector<VarId>& d) {
  const std::size_t mid = (d.size() + 1) / 2;
  return {{d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid)},
          {d.begin() + static_cast<std::ptrdiff_t>(mid), d.end()}};
}

std::pair<VarSet, VarSet> split_half(VarSet s) {
  auto [a, b] = split_half(s.members());
  return {to_set(a), to_set(b)};
}

VarSet find_impl(MembershipOracle& oracle, const QuestionBuilder& build, Label r, const std::vector<VarId>& d,
                 Phase phase, bool all) {
  if (d.empty()) return {};
  if (oracle.ask(build(to_set(d)), phase) == r) return {};
  if (d.size() == 1) return to_set(d);
  auto [d1, d2] = split_half(d);
  VarSet x = find_impl(oracle, build, r, d1, phase, all);
  if (!all && !x.empty()) return x;
  return x | find_impl(oracle, build, r, d2, phase, all);
}

VarSet union_of(const std::vector<VarSet>& sets) {
  VarSet u;
  for (VarSet s : sets) u |= s;
  return u;
}

}  // namespace

std::pair<VarSet, VarSet> classify_variables(MembershipOracle& oracle, int n) {
  check_arity(n);
  VarSet U, E;
  const Tuple top = all_true(n);
  for (VarId x = 0; x < n; ++x) {
    QuestionObject q(n, {top, with_false(top, VarSet::single(x))});
    if (oracle.ask(q, Phase::HeadClassification) == Label::NonAnswer) {
      U.insert(x);
    } else {
      E.insert(x);
    }
  }
  return {U, E};
}

QuestionObject universal_dependence_question(VarId h, VarSet V, int n) {
  const Tuple top = all_true(n);
  return QuestionObject(n, {top, with_false(top, V | VarSet::single(h))});
}

QuestionObject existential_independence_question(VarSet X, VarSet Y, int n) {
  if (X.empty() || Y.empty()) throw Error("independence question needs non-empty variable sets");
  if (X.intersects(Y)) throw Error("independence question needs disjoint variable sets");
  const Tuple top = all_true(n);
  return QuestionObject(n, {with_false(top, X), with_false(top, Y)});
}

QuestionObject matrix_question(VarSet D, int n, VarSet context_false) {
  if (D.size() < 2) throw Error("matrix question needs at least two variables");
  const Tuple base = with_false(all_true(n), context_false);
  QuestionObject q(n);
  for (VarId d : D.members()) q.insert(with_false(base, VarSet::single(d)));
  return q;
}

VarSet find(MembershipOracle& oracle, const QuestionBuilder& build, Label eliminate_on,
            const std::vector<VarId>& domain, Phase phase) {
  return find_impl(oracle, build, eliminate_on, domain, phase, false);
}

VarSet find_all(MembershipOracle& oracle, const QuestionBuilder& build, Label eliminate_on,
                const std::vector<VarId>& domain, Phase phase) {
  return find_impl(oracle, build, eliminate_on, domain, phase, true);
}

void learn_universal_bodies(MembershipOracle& oracle, Qhorn1State& state) {
  const int n = state.n;
  for (VarId h : state.U.members()) {
    QuestionBuilder dep = [&](VarSet V) { return universal_dependence_question(h, V, n); };
    VarSet body;
    const VarSet b = find(oracle, dep, Label::NonAnswer, union_of(state.bodies).members(), Phase::BodySearch);
    if (!b.empty()) {
      for (VarSet B : state.bodies) {
        if (B.contains(b.front())) body = B;
      }
    } else {
      body = find_all(oracle, dep, Label::NonAnswer, state.E.members(), Phase::BodySearch);
      if (!body.empty()) state.bodies.push_back(body);
    }
    state.query.universals.push_back({body, h});
  }
}

VarSet get_head(MembershipOracle& oracle, VarId x, VarSet D, int n, VarSet context_false) {
  if (D.empty()) throw Error("get_head needs at least one dependent");
  (void)x;  // x stays true in every matrix tuple
  VarSet D1 = D, D2, D3;
  while (!D1.empty()) {
    // A matrix question over fewer than two variables cannot hold two heads.
    const bool answer =
        D1.size() >= 2 && is_answer(oracle.ask(matrix_question(D1, n, context_false), Phase::Existential));
    if (answer) {
      if (D1.size() == 2 && D2.empty()) return D1;
      if (D1.size() > 2 && D2.empty()) {
        std::tie(D1, D3) = split_half(D1);
      } else if (D2.size() == 1) {
        return D2;
      } else {
        std::tie(D2, D3) = split_half(D2);
        D1 -= D3;
      }
    } else {
      if (D3.empty()) return {};
      if (D3.size() == 1) return D3;
      std::tie(D2, D3) = split_half(D3);
      D1 |= D2;
    }
  }
  return {};
}

void learn_existential(MembershipOracle& oracle, Qhorn1State& state) {
  const int n = state.n;
  VarSet consumed;
  for (VarId e : (state.E - union_of(state.bodies)).members()) {
    if (consumed.contains(e) || union_of(state.bodies).contains(e)) continue;
    QuestionBuilder indep = [&](VarSet V) { return existential_independence_question(VarSet::single(e), V, n); };

    const VarSet b = find(oracle, indep, Label::Answer, union_of(state.bodies).members(), Phase::Existential);
    if (!b.empty()) {
      for (VarSet B : state.bodies) {
        if (B.contains(b.front())) state.query.existentials.push_back({B | VarSet::single(e)});
      }
      consumed.insert(e);
      continue;
    }

    const VarSet domain = state.E - union_of(state.bodies) - consumed - VarSet::single(e);
    const VarSet D = find_all(oracle, indep, Label::Answer, domain.members(), Phase::Existential);
    consumed.insert(e);
    if (D.empty()) {
      state.query.existentials.push_back({VarSet::single(e)});
      continue;
    }
    VarSet H = get_head(oracle, e, D, n);
    if (H.empty()) {
      state.query.existentials.push_back({D | VarSet::single(e)});
      state.bodies.push_back(D);
    } else {
      const VarId h = H.front();
      for (VarId d : (D - H).members()) {
        const QuestionObject q = existential_independence_question(VarSet::single(h), VarSet::single(d), n);
        if (is_answer(oracle.ask(q, Phase::Existential))) H.insert(d);
      }
      const VarSet B = (D - H) | VarSet::single(e);
      state.bodies.push_back(B);
      for (VarId head : H.members()) state.query.existentials.push_back({B | VarSet::single(head)});
    }
    consumed |= D;
  }
}

QhornQuery learn_qhorn1(MembershipOracle& oracle, int n) {
  Qhorn1State state;
  state.n = n;
  state.query.n = n;
  std::tie(state.U, state.E) = classify_variables(oracle, n);
  learn_universal_bodies(oracle, state);
  learn_existential(oracle, state);
  return state.query;
}

}  // namespace qhorn
