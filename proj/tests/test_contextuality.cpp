#include <doctest.h>

#include <cmath>
#include <random>

#include "braidcat/contextuality.hpp"
#include "braidcat/jsonio.hpp"

using namespace braidcat;

namespace {

EmpiricalModel prbox_model() {
  return model_from_json(R"({
    "measurements": ["a1", "a2", "b1", "b2"],
    "outcomes": {"a1": ["0","1"], "a2": ["0","1"], "b1": ["0","1"], "b2": ["0","1"]},
    "contexts": [["a1","b1"], ["a1","b2"], ["a2","b1"], ["a2","b2"]],
    "tables": {
      "0": {"0,0": 0.5, "1,1": 0.5},
      "1": {"0,0": 0.5, "1,1": 0.5},
      "2": {"0,0": 0.5, "1,1": 0.5},
      "3": {"0,1": 0.5, "1,0": 0.5}
    }
  })");
}

EmpiricalModel uniform_noise_pentagon() {
  KcbsConstruction k = kcbs_projectors_fibonacci();
  MeasurementScenario s = scenario_from_projectors(k.projectors);
  EmpiricalModel m;
  m.scenario = s;
  for (std::size_t c = 0; c < s.contexts.size(); ++c)
    m.tables.push_back({0.5, 0.25, 0.25, 0.0});
  return m;
}

/// Replay a noncontextual certificate against the model tables.
double replay_residual(const EmpiricalModel& model,
                       const ContextualityVerdict& v) {
  const MeasurementScenario& s = model.scenario;
  double worst = 0.0;
  for (std::size_t c = 0; c < s.contexts.size(); ++c) {
    std::vector<double> recon(model.tables[c].size(), 0.0);
    for (const auto& [assign, weight] : v.global_weights) {
      std::vector<int> restricted;
      for (int i : s.contexts[c]) restricted.push_back(assign[i]);
      recon[s.tuple_index(static_cast<int>(c), restricted)] += weight;
    }
    for (std::size_t k = 0; k < recon.size(); ++k)
      worst = std::max(worst, std::abs(recon[k] - model.tables[c][k]));
  }
  return worst;
}

}  // namespace

TEST_CASE("kcbs pentagon construction") {
  KcbsConstruction k = kcbs_projectors_fibonacci();
  REQUIRE(k.projectors.projectors.size() == 5);
  CHECK(k.fusion_dim == 3);

  // adjacent projectors are orthogonal rank-1s
  for (int i = 0; i < 5; ++i) {
    const Matrix& p = k.projectors.projectors[i];
    const Matrix& q = k.projectors.projectors[(i + 1) % 5];
    CHECK(max_abs((p * q).eval()) < 1e-12);
    CHECK(max_abs((p * p - p).eval()) < 1e-12);
    CHECK(std::abs(p.trace() - Cplx(1.0)) < 1e-12);
  }
  // non-adjacent pairs fail to commute
  for (int i = 0; i < 5; ++i) {
    const Matrix& p = k.projectors.projectors[i];
    const Matrix& q = k.projectors.projectors[(i + 2) % 5];
    CHECK(max_abs((p * q - q * p).eval()) > 0.1);
  }

  // max eigenvalue of sum P_i = sqrt(5), via an independent power iteration
  Matrix sum = Matrix::Zero(3, 3);
  for (const Matrix& p : k.projectors.projectors) sum += p;
  Vector x(3);
  x << Cplx(0.3, 0.1), Cplx(-0.2, 0.4), Cplx(0.8, 0.0);
  x.normalize();
  for (int it = 0; it < 300; ++it) x = (sum * x).normalized();
  double lead = (x.adjoint() * sum * x)(0, 0).real();
  CHECK(lead == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));

  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  CHECK(es.eigenvalues().maxCoeff() ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-10));

  // the recommended state attains it
  CHECK(kcbs_value(k.state, k.projectors) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
}

TEST_CASE("commutation graph to contexts") {
  KcbsConstruction k = kcbs_projectors_fibonacci();
  MeasurementScenario s = scenario_from_projectors(k.projectors);
  REQUIRE(s.contexts.size() == 5);
  std::vector<std::vector<int>> expect = {
      {0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}};
  CHECK(s.contexts == expect);
  CHECK(validate_scenario(s).pass);

  // fully commuting family collapses to one context
  ProjectorSet diag;
  diag.dim = 3;
  for (int i = 0; i < 3; ++i) {
    Vector e = Vector::Zero(3);
    e[i] = 1.0;
    diag.names.push_back("D" + std::to_string(i));
    diag.projectors.push_back(e * e.adjoint());
  }
  MeasurementScenario ds = scenario_from_projectors(diag);
  REQUIRE(ds.contexts.size() == 1);
  CHECK(ds.contexts[0] == std::vector<int>{0, 1, 2});

  // a non-commuting pair yields two singleton contexts
  ProjectorSet pair;
  pair.dim = 2;
  Vector e0(2), plus(2);
  e0 << 1.0, 0.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  pair.names = {"A", "B"};
  pair.projectors = {e0 * e0.adjoint(), plus * plus.adjoint()};
  MeasurementScenario ps = scenario_from_projectors(pair);
  REQUIRE(ps.contexts.size() == 2);
  CHECK(ps.contexts[0] == std::vector<int>{0});
  CHECK(ps.contexts[1] == std::vector<int>{1});
}

TEST_CASE("born-rule tables") {
  KcbsConstruction k = kcbs_projectors_fibonacci();
  MeasurementScenario s = scenario_from_projectors(k.projectors);
  EmpiricalModel model = empirical_from_state(k.state, k.projectors, s);
  CHECK(check_model(model, 1e-9).pass);

  // orthogonal pairs are exclusive: outcome (1,1) has probability 0
  for (std::size_t c = 0; c < s.contexts.size(); ++c)
    CHECK(std::abs(model.tables[c][3]) < 1e-12);

  // eigenvector of a projector gives a deterministic singleton outcome
  ProjectorSet single;
  single.dim = 2;
  Vector e0(2);
  e0 << 1.0, 0.0;
  single.names = {"Z"};
  single.projectors = {e0 * e0.adjoint()};
  MeasurementScenario ss = scenario_from_projectors(single);
  EmpiricalModel sm = empirical_from_state(e0, single, ss);
  CHECK(sm.tables[0][1] == doctest::Approx(1.0));  // outcome "1"
  CHECK(sm.tables[0][0] == doctest::Approx(0.0));

  // non-commuting context is refused
  ProjectorSet pair;
  pair.dim = 2;
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  pair.names = {"A", "B"};
  pair.projectors = {e0 * e0.adjoint(), plus * plus.adjoint()};
  MeasurementScenario forced;
  forced.measurements = pair.names;
  forced.outcomes = {{"0", "1"}, {"0", "1"}};
  forced.contexts = {{0, 1}};
  CHECK_THROWS_AS(empirical_from_state(e0, pair, forced), std::runtime_error);
}

TEST_CASE("signalling model is caught by the compatibility check") {
  EmpiricalModel bad = model_from_json(R"({
    "measurements": ["a", "b", "c"],
    "outcomes": {"a": ["0","1"], "b": ["0","1"], "c": ["0","1"]},
    "contexts": [["a","b"], ["b","c"]],
    "tables": {
      "0": {"0,0": 1.0},
      "1": {"1,0": 1.0}
    }
  })");
  CheckReport rep = check_model(bad, 1e-9);
  CHECK(!rep.pass);
  CHECK(rep.residual == doctest::Approx(1.0));
  CHECK(rep.detail.find("{b}") != std::string::npos);
}

TEST_CASE("noncontextual lp on a deterministic product model") {
  EmpiricalModel det = model_from_json(R"({
    "measurements": ["a", "b"],
    "outcomes": {"a": ["0","1"], "b": ["0","1"]},
    "contexts": [["a","b"]],
    "tables": {"0": {"1,0": 1.0}}
  })");
  ContextualityVerdict v = noncontextual_lp(det);
  CHECK(v.cls == ContextualityVerdict::Class::noncontextual);
  REQUIRE(v.global_weights.size() == 1);
  CHECK(v.global_weights[0].first == std::vector<int>{1, 0});
  CHECK(v.global_weights[0].second == doctest::Approx(1.0));
  CHECK(replay_residual(det, v) < 2e-7);
}

TEST_CASE("noncontextual lp on the kcbs maximum") {
  KcbsConstruction k = kcbs_projectors_fibonacci();
  MeasurementScenario s = scenario_from_projectors(k.projectors);
  EmpiricalModel model = empirical_from_state(k.state, k.projectors, s);

  CHECK(kcbs_value(model) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));
  CHECK(classical_bound(s, std::vector<double>(5, 1.0)) == 2.0);

  ContextualityVerdict v = noncontextual_lp(model);
  CHECK(v.cls == ContextualityVerdict::Class::contextual);
  CHECK(!v.lp_feasible);
  CHECK(v.dual_violation >= 0.23);
  // the dual certificate itself is a valid separating functional
  CHECK(v.dual.size() == 21);  // 5 contexts x 4 outcomes + normalization
  for (double y : v.dual) CHECK(std::abs(y) <= 1.0 + 1e-9);
}

TEST_CASE("uniform-noise pentagon model is noncontextual") {
  EmpiricalModel noise = uniform_noise_pentagon();
  CHECK(check_model(noise, 1e-9).pass);
  CHECK(kcbs_value(noise) == doctest::Approx(1.25));

  ContextualityVerdict v = noncontextual_lp(noise, 1e-7);
  CHECK(v.cls == ContextualityVerdict::Class::noncontextual);
  CHECK(replay_residual(noise, v) < 2e-7);
}

TEST_CASE("hierarchy classification") {
  // kcbs maximum: contextual but not strongly so
  KcbsConstruction k = kcbs_projectors_fibonacci();
  MeasurementScenario s = scenario_from_projectors(k.projectors);
  EmpiricalModel model = empirical_from_state(k.state, k.projectors, s);
  ContextualityVerdict v = classify_hierarchy(model);
  CHECK(v.cls == ContextualityVerdict::Class::contextual);
  CHECK(!v.strongly_contextual);
  CHECK(!v.logically_contextual);

  // PR-box: strongly contextual
  ContextualityVerdict pr = classify_hierarchy(prbox_model());
  CHECK(pr.cls == ContextualityVerdict::Class::strongly_contextual);
  CHECK(pr.strongly_contextual);
  CHECK(pr.logically_contextual);
  CHECK(!pr.lp_feasible);

  // noncontextual model classifies as such
  ContextualityVerdict nc = classify_hierarchy(uniform_noise_pentagon());
  CHECK(nc.cls == ContextualityVerdict::Class::noncontextual);
}

TEST_CASE("verdicts survive measurement relabeling and context reordering") {
  // same PR box with measurements renamed/permuted and contexts shuffled
  EmpiricalModel permuted = model_from_json(R"({
    "measurements": ["b2", "b1", "a2", "a1"],
    "outcomes": {"a1": ["0","1"], "a2": ["0","1"], "b1": ["0","1"], "b2": ["0","1"]},
    "contexts": [["a2","b2"], ["b1","a1"], ["b2","a1"], ["a2","b1"]],
    "tables": {
      "0": {"0,1": 0.5, "1,0": 0.5},
      "1": {"0,0": 0.5, "1,1": 0.5},
      "2": {"0,0": 0.5, "1,1": 0.5},
      "3": {"0,0": 0.5, "1,1": 0.5}
    }
  })");
  CHECK(classify_hierarchy(permuted).cls ==
        ContextualityVerdict::Class::strongly_contextual);

  EmpiricalModel noise = uniform_noise_pentagon();
  std::reverse(noise.scenario.contexts.begin(), noise.scenario.contexts.end());
  std::reverse(noise.tables.begin(), noise.tables.end());
  CHECK(classify_hierarchy(noise).cls ==
        ContextualityVerdict::Class::noncontextual);
}

TEST_CASE("classical bound counts independent sets") {
  KcbsConstruction k = kcbs_projectors_fibonacci();
  MeasurementScenario s = scenario_from_projectors(k.projectors);
  CHECK(classical_bound(s, std::vector<double>(5, 1.0)) == 2.0);
  CHECK(classical_bound(s, {1.0, 0.0, 0.0, 0.0, 0.0}) == 1.0);
  CHECK(classical_bound(s, std::vector<double>(5, 2.0)) == 4.0);
}

TEST_CASE("braiding-induced projector families") {
  CategoryData fib = fibonacci_category();
  std::vector<int> leaves(4, 1);

  // a single identity word gives one projector and a trivially
  // noncontextual model
  std::vector<BraidWord> only_id = {parse_braid_word("", 4)};
  BraidingScenario trivial =
      contextuality_from_braiding(fib, leaves, 1, only_id, 0);
  CHECK(trivial.projectors.projectors.size() == 1);
  CHECK(classify_hierarchy(trivial.model).cls ==
        ContextualityVerdict::Class::noncontextual);

  std::vector<BraidWord> words = {
      parse_braid_word("", 4), parse_braid_word("s1", 4),
      parse_braid_word("s2", 4), parse_braid_word("s1 s2", 4),
      parse_braid_word("s2 s1", 4)};
  BraidingScenario bs = contextuality_from_braiding(fib, leaves, 1, words, 0);
  CHECK(bs.projectors.projectors.size() == 5);
  for (const Matrix& p : bs.projectors.projectors) {
    CHECK(max_abs((p * p - p).eval()) < 1e-10);
    CHECK(max_abs((p - p.adjoint().eval()).eval()) < 1e-10);
  }
  CHECK(validate_scenario(bs.scenario).pass);
  CHECK(check_model(bs.model, 1e-9).pass);
  // the verdict is whatever the pipeline finds; it must replay consistently
  ContextualityVerdict v = classify_hierarchy(bs.model);
  if (v.cls == ContextualityVerdict::Class::noncontextual)
    CHECK(replay_residual(bs.model, v) < 2e-7);
}

TEST_CASE("non-projectors are rejected") {
  ProjectorSet bad;
  bad.dim = 2;
  bad.names = {"X"};
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.7;
  bad.projectors = {m};
  CHECK_THROWS_AS(scenario_from_projectors(bad), std::invalid_argument);
}

TEST_CASE("assignment enumeration is capped at desk scale") {
  // a chain of 21 binary measurements has 2^21 > 10^6 global assignments
  MeasurementScenario s;
  for (int i = 0; i < 21; ++i) {
    s.measurements.push_back("m" + std::to_string(i));
    s.outcomes.push_back({"0", "1"});
  }
  for (int i = 0; i + 1 < 21; ++i) s.contexts.push_back({i, i + 1});
  EmpiricalModel model;
  model.scenario = s;
  model.tables.assign(s.contexts.size(), {0.25, 0.25, 0.25, 0.25});
  CHECK_THROWS_WITH_AS(noncontextual_lp(model), "exceeds desk-scale bound",
                       std::runtime_error);
}

TEST_CASE("scenario invariants are enforced on load") {
  CHECK_THROWS_AS(model_from_json(R"({
    "measurements": ["a", "b"],
    "outcomes": {"a": ["0","1"], "b": ["0","1"]},
    "contexts": [["a","b"], ["a"]],
    "tables": {"0": {"0,0": 1.0}, "1": {"0": 1.0}}
  })"),
                  std::runtime_error);  // nested context
  CHECK_THROWS_AS(model_from_json(R"({
    "measurements": ["a", "b"],
    "outcomes": {"a": ["0","1"], "b": ["0","1"]},
    "contexts": [["a"]],
    "tables": {"0": {"0": 1.0}}
  })"),
                  std::runtime_error);  // b uncovered
}
