#include "qhorn/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>

#include "qhorn/learn_qhorn1.hpp"
#include "qhorn/learn_rp.hpp"
#include "qhorn/rng.hpp"

namespace qhorn {

namespace {

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[rng.uniform(0, i)]);
}

template <typename T>
const T& pick(const std::vector<T>& v, SplitMix64& rng) {
  return v[rng.uniform(0, static_cast<int>(v.size()) - 1)];
}

// Random subset of `from` with between lo and hi members (clamped).
VarSet random_subset(VarSet from, int lo, int hi, SplitMix64& rng) {
  std::vector<VarId> pool = from.members();
  hi = std::min(hi, static_cast<int>(pool.size()));
  lo = std::min(lo, hi);
  shuffle(pool, rng);
  VarSet s;
  const int size = rng.uniform(lo, hi);
  for (int i = 0; i < size; ++i) s.insert(pool[i]);
  return s;
}

bool valid_rp(const QhornQuery& q) {
  try {
    return is_role_preserving(q);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

QhornQuery gen_random_qhorn1(const GenSpec& spec) {
  check_arity(spec.n);
  SplitMix64 rng(spec.seed);
  QhornQuery q;
  q.n = spec.n;
  std::vector<VarId> vars(spec.n);
  for (int i = 0; i < spec.n; ++i) vars[i] = i;
  shuffle(vars, rng);

  std::size_t pos = 0;
  while (pos < vars.size()) {
    const int remaining = static_cast<int>(vars.size() - pos);
    const int size = rng.uniform(1, std::min(4, remaining));
    std::vector<VarId> part(vars.begin() + static_cast<std::ptrdiff_t>(pos),
                            vars.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
    if (size == 1) {
      if (rng.coin(50)) {
        q.universals.push_back({VarSet{}, part[0]});
      } else {
        q.existentials.push_back({VarSet::single(part[0])});
      }
      continue;
    }
    const int heads = rng.uniform(1, size - 1);
    VarSet body;
    for (int i = 0; i < size - heads; ++i) body.insert(part[i]);
    for (int i = size - heads; i < size; ++i) {
      if (rng.coin(50)) {
        q.universals.push_back({body, part[i]});
      } else {
        q.existentials.push_back({body | VarSet::single(part[i])});
      }
    }
  }
  return q;
}

QhornQuery gen_random_rp(const GenSpec& spec) {
  check_arity(spec.n);
  SplitMix64 rng(spec.seed);
  const int n = spec.n;
  QhornQuery q;
  q.n = n;

  VarSet heads;
  if (spec.theta > 0) heads = random_subset(VarSet::first(n), 0, std::max(1, n / 3), rng);
  const VarSet non_heads = VarSet::first(n) - heads;
  for (VarId h : heads.members()) {
    if (non_heads.empty() || rng.coin(10)) {
      q.universals.push_back({VarSet{}, h});
      continue;
    }
    const int wanted = rng.uniform(1, spec.theta);
    std::vector<VarSet> bodies;
    for (int attempt = 0; attempt < 20 && static_cast<int>(bodies.size()) < wanted; ++attempt) {
      const VarSet b = random_subset(non_heads, 1, 3, rng);
      const bool comparable =
          std::any_of(bodies.begin(), bodies.end(), [&](VarSet o) { return o.subset_of(b) || b.subset_of(o); });
      if (!comparable) bodies.push_back(b);
    }
    for (VarSet b : bodies) q.universals.push_back({b, h});
  }

  const int conjunctions = rng.uniform(1, std::max(1, spec.k));
  for (int i = 0; i < conjunctions; ++i) {
    const VarSet c = random_subset(VarSet::first(n), 1, std::max(1, n - 1), rng);
    if (std::none_of(q.existentials.begin(), q.existentials.end(), [&](const ExistentialConj& e) { return e.vars == c; })) {
      q.existentials.push_back({c});
    }
  }
  return to_query(normalize(q));
}

QhornQuery gen_random(const GenSpec& spec) {
  return spec.cls == QueryClass::Qhorn1 ? gen_random_qhorn1(spec) : gen_random_rp(spec);
}

QhornQuery mutate_query(const QhornQuery& q, std::uint64_t seed) {
  if (!is_role_preserving(q)) throw Error("mutation requires a role-preserving query");
  SplitMix64 rng(seed);
  const int n = q.n;
  for (int attempt = 0; attempt < 50; ++attempt) {
    QhornQuery m = q;
    const VarSet heads = m.heads();
    const VarSet non_heads = VarSet::first(n) - heads;
    switch (rng.uniform(0, 8)) {
      case 0: {  // add a body variable
        if (m.universals.empty()) continue;
        auto& u = m.universals[rng.uniform(0, static_cast<int>(m.universals.size()) - 1)];
        const VarSet free = non_heads - u.body;
        if (free.empty()) continue;
        u.body.insert(pick(free.members(), rng));
        break;
      }
      case 1: {  // remove a body variable
        if (m.universals.empty()) continue;
        auto& u = m.universals[rng.uniform(0, static_cast<int>(m.universals.size()) - 1)];
        if (u.body.empty()) continue;
        u.body.erase(pick(u.body.members(), rng));
        break;
      }
      case 2: {  // add a conjunction variable
        if (m.existentials.empty()) continue;
        auto& e = m.existentials[rng.uniform(0, static_cast<int>(m.existentials.size()) - 1)];
        const VarSet free = VarSet::first(n) - e.vars;
        if (free.empty()) continue;
        e.vars.insert(pick(free.members(), rng));
        break;
      }
      case 3: {  // drop a conjunction variable
        if (m.existentials.empty()) continue;
        auto& e = m.existentials[rng.uniform(0, static_cast<int>(m.existentials.size()) - 1)];
        if (e.vars.size() < 2) continue;
        e.vars.erase(pick(e.vars.members(), rng));
        break;
      }
      case 4: {  // drop an expression
        if (m.size() == 0) continue;
        const int i = rng.uniform(0, m.size() - 1);
        if (i < static_cast<int>(m.universals.size())) {
          m.universals.erase(m.universals.begin() + i);
        } else {
          m.existentials.erase(m.existentials.begin() + (i - static_cast<int>(m.universals.size())));
        }
        break;
      }
      case 5: {  // a head stops being a head
        if (heads.empty()) continue;
        const VarId h = pick(heads.members(), rng);
        std::erase_if(m.universals, [&](const UniversalHorn& u) { return u.head == h; });
        break;
      }
      case 6: {  // a free non-head becomes a head
        const VarSet candidates = non_heads - m.body_vars();
        if (candidates.empty()) continue;
        const VarId h = pick(candidates.members(), rng);
        m.universals.push_back({random_subset(non_heads - VarSet::single(h), 0, 3, rng), h});
        break;
      }
      case 7:  // extra conjunction
        m.existentials.push_back({random_subset(VarSet::first(n), 1, n, rng)});
        break;
      default: {  // extra body for an existing head
        if (heads.empty() || non_heads.empty()) continue;
        m.universals.push_back({random_subset(non_heads, 1, 3, rng), pick(heads.members(), rng)});
        break;
      }
    }
    if (valid_rp(m) && !equivalent(q, m)) return m;
  }
  throw Error("no non-equivalent mutant found after 50 attempts");
}

QhornQuery equivalent_variant(const QhornQuery& q, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const NormalizedQuery nq = normalize(q);
  QhornQuery v = rng.coin(50) ? q : to_query(nq);
  const int steps = rng.uniform(1, 4);
  for (int s = 0; s < steps; ++s) {
    QhornQuery w = v;
    switch (rng.uniform(0, 3)) {
      case 0: {  // a conjunction dominated by an existing one
        if (nq.existentials.empty()) continue;
        w.existentials.push_back({random_subset(pick(nq.existentials, rng), 1, kMaxArity, rng)});
        break;
      }
      case 1: {  // drop or add implied heads in a conjunction
        if (w.existentials.empty()) continue;
        auto& e = w.existentials[rng.uniform(0, static_cast<int>(w.existentials.size()) - 1)];
        const VarSet closed = head_closure(e.vars, nq.universals);
        if (closed != e.vars) {
          e.vars = closed;
        } else {
          const VarSet implied = e.vars & nq.heads;
          if (implied.empty()) continue;
          e.vars.erase(pick(implied.members(), rng));
        }
        break;
      }
      case 2: {  // a dominated universal whose guarantee is already implied
        if (nq.universals.empty()) continue;
        UniversalHorn u = pick(nq.universals, rng);
        const VarSet extra = VarSet::first(q.n) - nq.heads - u.body;
        if (extra.empty()) continue;
        u.body.insert(pick(extra.members(), rng));
        w.universals.push_back(u);
        break;
      }
      default:
        shuffle(w.universals, rng);
        shuffle(w.existentials, rng);
        break;
    }
    if (valid_rp(w) && equivalent(q, w)) v = std::move(w);
  }
  return v;
}

QhornQuery learn_with(QueryClass cls, MembershipOracle& oracle, int n, int theta_cap) {
  if (cls == QueryClass::Qhorn1) return learn_qhorn1(oracle, n);
  RpLearnOptions options;
  options.theta_cap = theta_cap;
  return learn_rp(oracle, n, options);
}

std::vector<BenchRow> bench(const GenSpec& spec, int trials, BenchOptions options) {
  std::vector<BenchRow> rows;
  for (int i = 0; i < trials; ++i) {
    GenSpec s = spec;
    s.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(i));
    const QhornQuery target = gen_random(s);
    SimulatedOracle sim(target);
    CountingOracle counter(sim);
    const auto start = std::chrono::steady_clock::now();
    const QhornQuery learned = learn_with(spec.cls, counter, spec.n, options.theta_cap);
    const auto stop = std::chrono::steady_clock::now();
    BenchRow row;
    row.n = spec.n;
    row.k = target.size();
    row.theta = causal_density(target);
    row.stats = counter.stats();
    row.ms = std::chrono::duration<double, std::milli>(stop - start).count();
    row.equivalent = equivalent(learned, target);
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,k,theta,questions,tuples,max_tuples,ms,equivalent\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << r.theta << ',' << r.stats.questions << ',' << r.stats.total_tuples << ','
        << r.stats.max_tuples << ',' << std::fixed << std::setprecision(3) << r.ms << ','
        << (r.equivalent ? "true" : "false") << '\n';
  }
}

}  // namespace qhorn
