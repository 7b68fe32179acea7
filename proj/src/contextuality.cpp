#include "braidcat/contextuality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "braidcat/lp.hpp"

namespace braidcat {

namespace {

constexpr long long kAssignmentCap = 1'000'000;

long long assignment_count(const MeasurementScenario& s) {
  long long total = 1;
  for (const auto& o : s.outcomes) {
    total *= static_cast<long long>(o.size());
    if (total > kAssignmentCap || total <= 0)
      throw std::runtime_error("exceeds desk-scale bound");
  }
  return total;
}

std::vector<int> decode_assignment(const MeasurementScenario& s,
                                   long long id) {
  const int m = s.n_measurements();
  std::vector<int> g(m);
  for (int i = m - 1; i >= 0; --i) {
    long long r = static_cast<long long>(s.outcomes[i].size());
    g[i] = static_cast<int>(id % r);
    id /= r;
  }
  return g;
}

std::vector<int> restrict_assignment(const std::vector<int>& g,
                                     const std::vector<int>& context) {
  std::vector<int> out(context.size());
  for (std::size_t j = 0; j < context.size(); ++j) out[j] = g[context[j]];
  return out;
}

std::string context_names(const MeasurementScenario& s, int c) {
  std::string out = "{";
  for (std::size_t j = 0; j < s.contexts[c].size(); ++j) {
    if (j) out += ",";
    out += s.measurements[s.contexts[c][j]];
  }
  return out + "}";
}

/// Marginal of a context table onto the given positions within the context.
std::vector<double> marginal(const EmpiricalModel& model, int c,
                             const std::vector<int>& positions) {
  const MeasurementScenario& s = model.scenario;
  const std::vector<int>& ctx = s.contexts[c];
  std::vector<long long> radix(ctx.size());
  for (std::size_t j = 0; j < ctx.size(); ++j)
    radix[j] = static_cast<long long>(s.outcomes[ctx[j]].size());

  long long sub_size = 1;
  for (int p : positions) sub_size *= radix[p];
  std::vector<double> out(sub_size, 0.0);

  const std::vector<double>& table = model.tables[c];
  for (long long idx = 0; idx < static_cast<long long>(table.size()); ++idx) {
    long long rest = idx;
    std::vector<int> tuple(ctx.size());
    for (int j = static_cast<int>(ctx.size()) - 1; j >= 0; --j) {
      tuple[j] = static_cast<int>(rest % radix[j]);
      rest /= radix[j];
    }
    long long sub = 0;
    for (int p : positions) sub = sub * radix[p] + tuple[p];
    out[sub] += table[idx];
  }
  return out;
}

}  // namespace

long long MeasurementScenario::context_size(int c) const {
  long long total = 1;
  for (int i : contexts[c]) total *= static_cast<long long>(outcomes[i].size());
  return total;
}

long long MeasurementScenario::tuple_index(
    int c, const std::vector<int>& outcome_ids) const {
  long long idx = 0;
  for (std::size_t j = 0; j < contexts[c].size(); ++j)
    idx = idx * static_cast<long long>(outcomes[contexts[c][j]].size()) +
          outcome_ids[j];
  return idx;
}

std::string to_string(ContextualityVerdict::Class c) {
  switch (c) {
    case ContextualityVerdict::Class::noncontextual: return "noncontextual";
    case ContextualityVerdict::Class::contextual: return "contextual";
    case ContextualityVerdict::Class::logically_contextual:
      return "logically_contextual";
    case ContextualityVerdict::Class::strongly_contextual:
      return "strongly_contextual";
  }
  return "unknown";
}

CheckReport validate_scenario(const MeasurementScenario& s) {
  int violations = 0;
  std::string first;
  auto flag = [&](const std::string& what) {
    ++violations;
    if (first.empty()) first = what;
  };

  const int m = s.n_measurements();
  if (static_cast<int>(s.outcomes.size()) != m) flag("outcome table size");
  for (int i = 0; i < m && i < static_cast<int>(s.outcomes.size()); ++i)
    if (s.outcomes[i].empty()) flag("empty outcome set");

  std::vector<bool> covered(m, false);
  std::set<std::vector<int>> seen;
  for (std::size_t c = 0; c < s.contexts.size(); ++c) {
    const auto& ctx = s.contexts[c];
    if (ctx.empty()) flag("empty context");
    if (!std::is_sorted(ctx.begin(), ctx.end()) ||
        std::adjacent_find(ctx.begin(), ctx.end()) != ctx.end())
      flag("context not a sorted set");
    for (int i : ctx) {
      if (i < 0 || i >= m) {
        flag("context index out of range");
        continue;
      }
      covered[i] = true;
    }
    if (!seen.insert(ctx).second) flag("duplicate context");
  }
  for (std::size_t c1 = 0; c1 < s.contexts.size(); ++c1)
    for (std::size_t c2 = 0; c2 < s.contexts.size(); ++c2) {
      if (c1 == c2) continue;
      if (std::includes(s.contexts[c2].begin(), s.contexts[c2].end(),
                        s.contexts[c1].begin(), s.contexts[c1].end()))
        flag("context " + context_names(s, static_cast<int>(c1)) +
             " nested in " + context_names(s, static_cast<int>(c2)));
    }
  for (int i = 0; i < m; ++i)
    if (!covered[i]) flag("measurement " + s.measurements[i] + " uncovered");

  CheckReport rep;
  rep.name = "scenario";
  rep.residual = violations;
  rep.tol = 0.0;
  rep.pass = violations == 0;
  rep.detail = first;
  return rep;
}

std::vector<std::vector<bool>> commutation_adjacency(const ProjectorSet& ps,
                                                     double tol) {
  const int v = static_cast<int>(ps.projectors.size());
  std::vector<std::vector<bool>> adj(v, std::vector<bool>(v, false));
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) {
      Matrix comm = ps.projectors[i] * ps.projectors[j] -
                    ps.projectors[j] * ps.projectors[i];
      adj[i][j] = adj[j][i] = max_abs(comm) < tol;
    }
  return adj;
}

namespace {

void bron_kerbosch(const std::vector<std::vector<bool>>& adj,
                   std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   std::vector<std::vector<int>>& cliques) {
  if (p.empty() && x.empty()) {
    cliques.push_back(r);
    return;
  }
  while (!p.empty()) {
    int v = p.front();
    std::vector<int> np, nx;
    for (int u : p)
      if (adj[v][u]) np.push_back(u);
    for (int u : x)
      if (adj[v][u]) nx.push_back(u);
    r.push_back(v);
    bron_kerbosch(adj, r, std::move(np), std::move(nx), cliques);
    r.pop_back();
    p.erase(p.begin());
    x.insert(std::lower_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace

MeasurementScenario scenario_from_projectors(const ProjectorSet& ps,
                                             double tol) {
  if (ps.projectors.empty())
    throw std::invalid_argument("empty projector set");
  if (static_cast<int>(ps.projectors.size()) > 24)
    throw std::runtime_error("exceeds desk-scale bound");
  for (std::size_t i = 0; i < ps.projectors.size(); ++i) {
    const Matrix& p = ps.projectors[i];
    if (max_abs((p * p - p).eval()) > 1e-10 ||
        max_abs((p - p.adjoint().eval()).eval()) > 1e-10)
      throw std::invalid_argument(ps.names[i] +
                                  " is not a Hermitian idempotent");
  }

  MeasurementScenario s;
  s.measurements = ps.names;
  s.outcomes.assign(ps.names.size(), {"0", "1"});

  auto adj = commutation_adjacency(ps, tol);
  std::vector<int> r, p(ps.projectors.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i);
  bron_kerbosch(adj, r, std::move(p), {}, s.contexts);
  for (auto& ctx : s.contexts) std::sort(ctx.begin(), ctx.end());
  std::sort(s.contexts.begin(), s.contexts.end());
  return s;
}

EmpiricalModel empirical_from_state(const Vector& state,
                                    const ProjectorSet& ps,
                                    const MeasurementScenario& scenario,
                                    double commute_tol) {
  if (state.size() != ps.dim)
    throw std::invalid_argument("state dimension mismatch");
  if (std::abs(state.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("state is not a unit vector");

  EmpiricalModel model;
  model.scenario = scenario;
  const Matrix eye = Matrix::Identity(ps.dim, ps.dim);

  for (std::size_t c = 0; c < scenario.contexts.size(); ++c) {
    const std::vector<int>& ctx = scenario.contexts[c];
    for (std::size_t i = 0; i < ctx.size(); ++i)
      for (std::size_t j = i + 1; j < ctx.size(); ++j) {
        Matrix comm = ps.projectors[ctx[i]] * ps.projectors[ctx[j]] -
                      ps.projectors[ctx[j]] * ps.projectors[ctx[i]];
        if (max_abs(comm) >= commute_tol)
          throw std::runtime_error(
              "non-commuting context " +
              context_names(scenario, static_cast<int>(c)));
      }
    const long long size = scenario.context_size(static_cast<int>(c));
    std::vector<double> table(size, 0.0);
    for (long long idx = 0; idx < size; ++idx) {
      long long rest = idx;
      std::vector<int> tuple(ctx.size());
      for (int j = static_cast<int>(ctx.size()) - 1; j >= 0; --j) {
        tuple[j] = static_cast<int>(rest % 2);
        rest /= 2;
      }
      Matrix op = eye;
      for (std::size_t j = 0; j < ctx.size(); ++j)
        op = op * (tuple[j] == 1 ? ps.projectors[ctx[j]]
                                 : (eye - ps.projectors[ctx[j]]).eval());
      table[idx] = (state.adjoint() * op * state)(0, 0).real();
    }
    model.tables.push_back(std::move(table));
  }
  return model;
}

CheckReport check_model(const EmpiricalModel& model, double tol) {
  const MeasurementScenario& s = model.scenario;
  double worst = 0.0;
  std::string where;
  auto consider = [&](double dev, const std::string& what) {
    if (dev > worst) {
      worst = dev;
      where = what;
    }
  };

  for (std::size_t c = 0; c < s.contexts.size(); ++c) {
    double sum = 0.0;
    for (double p : model.tables[c]) {
      sum += p;
      if (p < 0.0) consider(-p, "negative entry in " +
                                    context_names(s, static_cast<int>(c)));
    }
    consider(std::abs(sum - 1.0),
             "normalization of " + context_names(s, static_cast<int>(c)));
  }

  for (std::size_t c1 = 0; c1 < s.contexts.size(); ++c1)
    for (std::size_t c2 = c1 + 1; c2 < s.contexts.size(); ++c2) {
      std::vector<int> shared;
      std::set_intersection(s.contexts[c1].begin(), s.contexts[c1].end(),
                            s.contexts[c2].begin(), s.contexts[c2].end(),
                            std::back_inserter(shared));
      if (shared.empty()) continue;
      std::vector<int> pos1, pos2;
      for (int i : shared) {
        pos1.push_back(static_cast<int>(
            std::lower_bound(s.contexts[c1].begin(), s.contexts[c1].end(), i) -
            s.contexts[c1].begin()));
        pos2.push_back(static_cast<int>(
            std::lower_bound(s.contexts[c2].begin(), s.contexts[c2].end(), i) -
            s.contexts[c2].begin()));
      }
      std::vector<double> m1 = marginal(model, static_cast<int>(c1), pos1);
      std::vector<double> m2 = marginal(model, static_cast<int>(c2), pos2);
      double dev = 0.0;
      for (std::size_t k = 0; k < m1.size(); ++k)
        dev = std::max(dev, std::abs(m1[k] - m2[k]));
      std::string shared_names = "{";
      for (std::size_t k = 0; k < shared.size(); ++k) {
        if (k) shared_names += ",";
        shared_names += s.measurements[shared[k]];
      }
      shared_names += "}";
      std::string what = "contexts " + context_names(s, static_cast<int>(c1)) +
                         " and " + context_names(s, static_cast<int>(c2)) +
                         " disagree on " + shared_names;
      consider(dev, what);
    }

  return make_report("model_compatibility", worst, tol, where);
}

ContextualityVerdict noncontextual_lp(const EmpiricalModel& model,
                                      double tol) {
  const MeasurementScenario& s = model.scenario;
  const long long n_assign = assignment_count(s);
  const int n_ctx = static_cast<int>(s.contexts.size());

  std::vector<int> offset(n_ctx + 1, 0);
  for (int c = 0; c < n_ctx; ++c)
    offset[c + 1] = offset[c] + static_cast<int>(s.context_size(c));
  const int ctx_rows = offset[n_ctx];
  const int rows = ctx_rows + 1;  // trailing normalization row

  RealVector b(rows);
  for (int c = 0; c < n_ctx; ++c)
    for (std::size_t k = 0; k < model.tables[c].size(); ++k)
      b[offset[c] + static_cast<int>(k)] = model.tables[c][k];
  b[ctx_rows] = 1.0;

  std::vector<std::vector<int>> columns(n_assign);
  for (long long g = 0; g < n_assign; ++g) {
    std::vector<int> rowsof;
    rowsof.reserve(n_ctx + 1);
    std::vector<int> assign = decode_assignment(s, g);
    for (int c = 0; c < n_ctx; ++c)
      rowsof.push_back(offset[c] +
                       static_cast<int>(s.tuple_index(
                           c, restrict_assignment(assign, s.contexts[c]))));
    rowsof.push_back(ctx_rows);
    columns[g] = std::move(rowsof);
  }

  L1MatchResult lp = solve_l1_match(columns, b);

  ContextualityVerdict v;
  v.lp_residual = lp.objective;
  v.lp_feasible = lp.objective <= tol;
  v.dual = lp.dual;
  if (v.lp_feasible) {
    v.cls = ContextualityVerdict::Class::noncontextual;
    for (long long g = 0; g < n_assign; ++g)
      if (lp.lambda[g] > 1e-12)
        v.global_weights.emplace_back(decode_assignment(s, g), lp.lambda[g]);
    std::ostringstream os;
    os << "global distribution over " << v.global_weights.size()
       << " assignments reproduces all context tables";
    v.summary = os.str();
  } else {
    v.cls = ContextualityVerdict::Class::contextual;
    double best = 0.0;
    for (long long g = 0; g < n_assign; ++g) {
      double val = 0.0;
      for (std::size_t k = 0; k + 1 < columns[g].size(); ++k)
        val += lp.dual[columns[g][k]];
      if (g == 0 || val > best) best = val;
    }
    double functional_value = 0.0;
    for (int r = 0; r < ctx_rows; ++r) functional_value += lp.dual[r] * b[r];
    v.dual_violation = functional_value - best;
    std::ostringstream os;
    os << "separating functional (sup-norm 1) beats all " << n_assign
       << " deterministic assignments";
    v.summary = os.str();
  }
  return v;
}

ContextualityVerdict classify_hierarchy(const EmpiricalModel& model,
                                        double lp_tol, double support_tol) {
  ContextualityVerdict v = noncontextual_lp(model, lp_tol);
  const MeasurementScenario& s = model.scenario;
  const long long n_assign = assignment_count(s);
  const int n_ctx = static_cast<int>(s.contexts.size());

  std::vector<std::vector<bool>> support(n_ctx);
  for (int c = 0; c < n_ctx; ++c) {
    support[c].resize(model.tables[c].size());
    for (std::size_t k = 0; k < model.tables[c].size(); ++k)
      support[c][k] = model.tables[c][k] > support_tol;
  }

  std::vector<std::vector<bool>> extended(n_ctx);
  for (int c = 0; c < n_ctx; ++c) extended[c].resize(support[c].size(), false);

  bool any_consistent = false;
  for (long long g = 0; g < n_assign; ++g) {
    std::vector<int> assign = decode_assignment(s, g);
    bool ok = true;
    std::vector<long long> tidx(n_ctx);
    for (int c = 0; c < n_ctx && ok; ++c) {
      tidx[c] = s.tuple_index(c, restrict_assignment(assign, s.contexts[c]));
      ok = support[c][tidx[c]];
    }
    if (!ok) continue;
    any_consistent = true;
    for (int c = 0; c < n_ctx; ++c) extended[c][tidx[c]] = true;
  }

  v.strongly_contextual = !any_consistent;
  v.logically_contextual = false;
  for (int c = 0; c < n_ctx && !v.logically_contextual; ++c)
    for (std::size_t k = 0; k < support[c].size(); ++k)
      if (support[c][k] && !extended[c][k]) {
        v.logically_contextual = true;
        break;
      }

  if (v.strongly_contextual && !v.logically_contextual)
    throw std::logic_error("hierarchy monotonicity violated (strong without "
                           "logical contextuality)");
  if (v.logically_contextual && v.lp_feasible)
    throw std::logic_error("hierarchy monotonicity violated (logical "
                           "contextuality with feasible LP)");

  if (v.strongly_contextual)
    v.cls = ContextualityVerdict::Class::strongly_contextual;
  else if (v.logically_contextual)
    v.cls = ContextualityVerdict::Class::logically_contextual;
  else if (!v.lp_feasible)
    v.cls = ContextualityVerdict::Class::contextual;
  else
    v.cls = ContextualityVerdict::Class::noncontextual;
  return v;
}

KcbsConstruction kcbs_projectors_fibonacci() {
  const CategoryData fib = fibonacci_category();
  const int tau = 1;
  const std::vector<int> leaves(4, tau);
  const int d = dimension(fib, leaves, tau);
  if (d != 3)
    throw std::logic_error("fusion space of four tau anyons is not 3-dim");

  constexpr double pi = std::numbers::pi;
  const double c2 = std::cos(pi / 5.0) / (1.0 + std::cos(pi / 5.0));
  const double ct = std::sqrt(c2);
  const double st = std::sqrt(1.0 - c2);

  KcbsConstruction k;
  k.fusion_dim = d;
  k.projectors.dim = d;
  for (int j = 0; j < 5; ++j) {
    const double angle = 4.0 * pi * j / 5.0;
    Vector v(3);
    v << Cplx(st * std::cos(angle), 0.0), Cplx(st * std::sin(angle), 0.0),
        Cplx(ct, 0.0);
    k.projectors.names.push_back("P" + std::to_string(j));
    k.projectors.projectors.push_back(v * v.adjoint());
  }
  Vector state(3);
  state << Cplx(0, 0), Cplx(0, 0), Cplx(1, 0);
  k.state = state;
  return k;
}

double kcbs_value(const EmpiricalModel& model) {
  const MeasurementScenario& s = model.scenario;
  double total = 0.0;
  for (int i = 0; i < s.n_measurements(); ++i) {
    auto it = std::find(s.outcomes[i].begin(), s.outcomes[i].end(), "1");
    if (it == s.outcomes[i].end())
      throw std::invalid_argument("measurement " + s.measurements[i] +
                                  " has no outcome \"1\"");
    const int one = static_cast<int>(it - s.outcomes[i].begin());
    int c = -1, pos = -1;
    for (std::size_t cc = 0; cc < s.contexts.size() && c < 0; ++cc) {
      auto jt =
          std::find(s.contexts[cc].begin(), s.contexts[cc].end(), i);
      if (jt != s.contexts[cc].end()) {
        c = static_cast<int>(cc);
        pos = static_cast<int>(jt - s.contexts[cc].begin());
      }
    }
    if (c < 0)
      throw std::invalid_argument("measurement " + s.measurements[i] +
                                  " appears in no context");
    std::vector<double> m = marginal(model, c, {pos});
    total += m[one];
  }
  return total;
}

double kcbs_value(const Vector& state, const ProjectorSet& ps) {
  double total = 0.0;
  for (const Matrix& p : ps.projectors)
    total += (state.adjoint() * p * state)(0, 0).real();
  return total;
}

double classical_bound(const MeasurementScenario& scenario,
                       const std::vector<double>& functional) {
  const int m = scenario.n_measurements();
  if (m > 24) throw std::runtime_error("exceeds desk-scale bound");
  if (static_cast<int>(functional.size()) != m)
    throw std::invalid_argument("functional size mismatch");

  std::vector<std::uint32_t> ctx_masks;
  for (const auto& ctx : scenario.contexts) {
    std::uint32_t mask = 0;
    for (int i : ctx) mask |= (1u << i);
    ctx_masks.push_back(mask);
  }

  double best = 0.0;
  bool first = true;
  for (std::uint32_t g = 0; g < (1u << m); ++g) {
    bool ok = true;
    for (std::uint32_t mask : ctx_masks)
      if (std::popcount(g & mask) > 1) {
        ok = false;
        break;
      }
    if (!ok) continue;
    double val = 0.0;
    for (int i = 0; i < m; ++i)
      if ((g >> i) & 1) val += functional[i];
    if (first || val > best) {
      best = val;
      first = false;
    }
  }
  return best;
}

BraidingScenario contextuality_from_braiding(
    const CategoryData& cat, const std::vector<int>& leaves, int total,
    const std::vector<BraidWord>& words, int base_projector_index,
    const std::optional<Vector>& state, double commute_tol) {
  BraidRep rep = build_rep(cat, leaves, total);
  const int d = rep.dim();
  if (base_projector_index < 0 || base_projector_index >= d)
    throw std::invalid_argument("base projector index out of range");

  Vector base = Vector::Zero(d);
  base[base_projector_index] = 1.0;
  Matrix p_base = base * base.adjoint();

  BraidingScenario out;
  out.projectors.dim = d;
  for (std::size_t k = 0; k < words.size(); ++k) {
    Matrix u = apply_word(rep, words[k]);
    out.projectors.names.push_back("M" + std::to_string(k));
    out.projectors.projectors.push_back(u * p_base * u.adjoint());
  }
  out.scenario = scenario_from_projectors(out.projectors, commute_tol);

  Vector psi;
  if (state.has_value()) {
    psi = *state;
  } else {
    psi = Vector::Zero(d);
    psi[0] = 1.0;
  }
  out.model = empirical_from_state(psi, out.projectors, out.scenario,
                                   commute_tol);
  return out;
}

}  // namespace braidcat
