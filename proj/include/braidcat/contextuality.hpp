#pragma once

#include <optional>

#include "braidcat/braid.hpp"

namespace braidcat {

/// Measurements, compatible contexts, and per-measurement outcome sets.
/// Contexts hold sorted measurement indices and are maximal by construction.
struct MeasurementScenario {
  std::vector<std::string> measurements;
  std::vector<std::vector<std::string>> outcomes;
  std::vector<std::vector<int>> contexts;

  int n_measurements() const { return static_cast<int>(measurements.size()); }
  /// Joint-outcome count of a context (product of outcome set sizes).
  long long context_size(int c) const;
  /// Mixed-radix tuple index; first measurement of the context is the most
  /// significant digit.
  long long tuple_index(int c, const std::vector<int>& outcome_ids) const;
};

/// Per-context probability tables over joint outcomes, indexed as above.
struct EmpiricalModel {
  MeasurementScenario scenario;
  std::vector<std::vector<double>> tables;
};

/// Hermitian idempotents with labels on a common Hilbert space.
struct ProjectorSet {
  int dim = 0;
  std::vector<std::string> names;
  std::vector<Matrix> projectors;
};

struct ContextualityVerdict {
  enum class Class {
    noncontextual,
    contextual,
    logically_contextual,
    strongly_contextual
  };
  Class cls = Class::noncontextual;
  bool lp_feasible = true;
  bool logically_contextual = false;
  bool strongly_contextual = false;
  double lp_residual = 0.0;    // optimal l1 mismatch of the global-weight LP
  double dual_violation = 0.0; // separating-functional margin when contextual
  /// Noncontextual certificate: weighted global outcome assignments.
  std::vector<std::pair<std::vector<int>, double>> global_weights;
  /// Contextual certificate: row duals (context rows then normalization row).
  std::vector<double> dual;
  std::string summary;
};

std::string to_string(ContextualityVerdict::Class c);

/// Structural invariants: every measurement covered, contexts distinct and
/// mutually non-nested, indices valid. Residual counts violations.
CheckReport validate_scenario(const MeasurementScenario& s);

/// Commutation graph of the projectors (edge iff commutator below tol).
std::vector<std::vector<bool>> commutation_adjacency(const ProjectorSet& ps,
                                                     double tol = 1e-8);

/// Contexts = maximal cliques of the commutation graph; outcomes {0,1}.
MeasurementScenario scenario_from_projectors(const ProjectorSet& ps,
                                             double tol = 1e-8);

/// Born-rule joint distributions from products of commuting projectors and
/// their complements.
EmpiricalModel empirical_from_state(const Vector& state,
                                    const ProjectorSet& ps,
                                    const MeasurementScenario& scenario,
                                    double commute_tol = 1e-8);

/// Normalization and sheaf compatibility (marginals of overlapping contexts
/// agree). The detail names the worst offending overlap.
CheckReport check_model(const EmpiricalModel& model, double tol = 1e-9);

/// Exact-cover LP over global assignments: feasible within tol ->
/// noncontextual with the weight certificate, else contextual with a
/// separating-hyperplane certificate.
ContextualityVerdict noncontextual_lp(const EmpiricalModel& model,
                                      double tol = 1e-7);

/// Full probabilistic/logical/strong classification; the returned class is
/// the strongest level that holds.
ContextualityVerdict classify_hierarchy(const EmpiricalModel& model,
                                        double lp_tol = 1e-7,
                                        double support_tol = 1e-9);

/// Pentagon of rank-1 projectors in the 3-dimensional fusion space of four
/// tau anyons with total charge tau, plus the value-maximizing state.
struct KcbsConstruction {
  ProjectorSet projectors;
  Vector state;
  int fusion_dim = 0;  // dimension of the hosting fusion space
};
KcbsConstruction kcbs_projectors_fibonacci();

/// sum_i Prob(m_i = "1"), marginals taken from the first containing context.
double kcbs_value(const EmpiricalModel& model);
double kcbs_value(const Vector& state, const ProjectorSet& ps);

/// Max of the functional over deterministic 0/1 assignments obeying
/// exclusivity (no two measurements of a common context both 1).
double classical_bound(const MeasurementScenario& scenario,
                       const std::vector<double>& functional);

/// Conjugates a fusion-basis projector by the given braid words and runs the
/// scenario/model pipeline for the supplied (or first-basis-vector) state.
struct BraidingScenario {
  ProjectorSet projectors;
  MeasurementScenario scenario;
  EmpiricalModel model;
};
BraidingScenario contextuality_from_braiding(
    const CategoryData& cat, const std::vector<int>& leaves, int total,
    const std::vector<BraidWord>& words, int base_projector_index,
    const std::optional<Vector>& state = std::nullopt,
    double commute_tol = 1e-8);

}  // namespace braidcat
