#include "qhorn/verify.hpp"

#include <algorithm>

#include "qhorn/learn_rp.hpp"

namespace qhorn {

namespace {

std::string conj_name(VarSet s) {
  std::string out = "∃";
  for (VarId v : s.members()) out += "x" + std::to_string(v + 1);
  return out;
}

std::string universal_name(const UniversalHorn& u) {
  QhornQuery q;
  q.n = kMaxArity;
  q.universals = {u};
  return to_shorthand(q);
}

QuestionObject with_top(int n, const std::vector<Tuple>& tuples) {
  QuestionObject q(n, tuples);
  q.insert(all_true(n));
  return q;
}

}  // namespace

const char* item_kind_name(ItemKind k) {
  switch (k) {
    case ItemKind::A1: return "A1";
    case ItemKind::N1: return "N1";
    case ItemKind::A2: return "A2";
    case ItemKind::N2: return "N2";
    case ItemKind::A3: return "A3";
    case ItemKind::A4: return "A4";
  }
  return "?";
}

const char* discrepancy_class(ItemKind k) {
  switch (k) {
    case ItemKind::A1:
    case ItemKind::N1: return "existential-tuple mismatch";
    case ItemKind::A2: return "body-subset";
    case ItemKind::N2: return "body-superset";
    case ItemKind::A3: return "missing incomparable body";
    case ItemKind::A4: return "head/non-head flip";
  }
  return "unknown";
}

std::vector<VerificationItem> build_verification_set(const QhornQuery& q, VerificationOptions options) {
  if (!is_role_preserving(q)) throw Error("verification requires a role-preserving query");
  const NormalizedQuery nq = normalize(q);
  const int n = q.n;
  const Tuple top = all_true(n);
  const VarSet heads = nq.heads;
  const VarSet non_heads = VarSet::first(n) - heads;
  const std::vector<Tuple> dominant = existential_distinguishing_tuples(nq);
  std::vector<VerificationItem> items;

  // A1
  {
    QuestionObject a1(n, dominant);
    // Without expressions every object is an answer; 0^n separates that from
    // any query that has one.
    if (a1.empty()) a1.insert(Tuple{0, n});
    items.push_back({ItemKind::A1, a1, Label::Answer, "all dominant existential tuples"});
  }

  // N1: only tuples some stated conjunction closes to.
  for (const Tuple& t : dominant) {
    const bool stated = std::any_of(q.existentials.begin(), q.existentials.end(), [&](const ExistentialConj& e) {
      return head_closure(e.vars, nq.universals) == t.true_set();
    });
    if (!stated) continue;
    QuestionObject n1(n, dominant);
    n1.erase(t);
    for (const Tuple& c : children(t)) {
      if (!violates_universal(c, nq.universals)) n1.insert(c);
    }
    items.push_back({ItemKind::N1, n1, Label::NonAnswer, conj_name(t.true_set())});
  }

  // A2
  for (const auto& u : nq.universals) {
    const Tuple d = universal_distinguishing_tuple(u, nq);
    std::vector<Tuple> tuples;
    for (VarId b : u.body.members()) tuples.push_back(with_false(d, VarSet::single(b)));
    items.push_back({ItemKind::A2, with_top(n, tuples), Label::Answer, universal_name(u)});
  }

  // N2
  for (const auto& u : nq.universals) {
    items.push_back(
        {ItemKind::N2, with_top(n, {universal_distinguishing_tuple(u, nq)}), Label::NonAnswer, universal_name(u)});
  }

  // A3: a single question holding, for every head, the roots of the
  // sub-lattices under each dominant conjunction that could still hide
  // another body of that head. Every tuple respects the query, and 1^n
  // supplies all witnesses, so the union fails exactly when one root does.
  {
    std::vector<Tuple> roots;
    std::string covered;
    for (VarId h : heads.members()) {
      std::vector<VarSet> bodies;
      for (const auto& u : nq.universals) {
        if (u.head == h && !u.body.empty()) bodies.push_back(u.body);
      }
      if (bodies.empty()) continue;
      const std::size_t before = roots.size();
      for (VarSet C : nq.existentials) {
        if (!C.contains(h)) continue;
        const VarSet inner = C & non_heads;
        if (std::any_of(bodies.begin(), bodies.end(), [&](VarSet b) { return inner.subset_of(b); })) continue;
        std::vector<VarSet> inside;
        for (VarSet b : bodies) {
          if (b.subset_of(C)) inside.push_back(b);
        }
        const VarSet base = (options.a3_fill == A3Fill::OutsideFalse ? inner : non_heads) | (heads - VarSet::single(h));
        for (VarSet flips : search_roots(inside)) roots.push_back(make_tuple(n, base - flips));
      }
      if (roots.size() > before) covered += (covered.empty() ? "x" : " x") + std::to_string(h + 1);
    }
    if (!roots.empty()) items.push_back({ItemKind::A3, with_top(n, roots), Label::Answer, "roots for " + covered});
  }

  // A4
  {
    std::vector<Tuple> tuples;
    for (VarId v : non_heads.members()) tuples.push_back(with_false(top, VarSet::single(v)));
    items.push_back({ItemKind::A4, with_top(n, tuples), Label::Answer, "non-head variables"});
  }
  return items;
}

std::size_t verification_set_size(const QhornQuery& q) { return build_verification_set(q).size(); }

std::size_t verification_size_bound(const QhornQuery& q) {
  const NormalizedQuery nq = normalize(q);
  return 2 + nq.existentials.size() + 3 * nq.universals.size();
}

VerificationReport run_verification(MembershipOracle& oracle, const std::vector<VerificationItem>& items) {
  VerificationReport report;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Label observed = oracle.ask(items[i].question, Phase::Verification);
    const bool agree = observed == items[i].expected;
    report.outcomes.push_back({items[i], observed, agree});
    if (!agree && !report.first_disagreement) {
      report.verified = false;
      report.first_disagreement = i;
      report.discrepancy = discrepancy_class(items[i].kind);
    }
  }
  return report;
}

json verification_item_to_json(const VerificationItem& item) {
  return {{"kind", item_kind_name(item.kind)},
          {"tuples", item.question.bitstrings()},
          {"expected", label_name(item.expected)},
          {"provenance", item.provenance}};
}

json verification_report_to_json(const VerificationReport& report) {
  json items = json::array();
  for (const auto& o : report.outcomes) {
    json j = verification_item_to_json(o.item);
    j["observed"] = label_name(o.observed);
    j["agree"] = o.agree;
    items.push_back(std::move(j));
  }
  json j{{"verdict", report.verified ? "verified" : "refuted"}, {"items", std::move(items)}};
  if (report.first_disagreement) {
    j["first_disagreement"] = *report.first_disagreement;
    j["discrepancy"] = report.discrepancy;
  } else {
    j["first_disagreement"] = nullptr;
  }
  return j;
}

}  // namespace qhorn
