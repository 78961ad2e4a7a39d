#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "rpmap/json_io.hpp"
#include "rpmap/sampling.hpp"

namespace rpmap {

// Black-box map T : C(X,E) -> C(Y,E).  The evaluator must be pure; purity is
// enforced by replaying every input once at the end of an analysis.
struct MapUnderTest {
  FiniteSpace domain;    // X
  FiniteSpace codomain;  // Y
  VectorSpaceModel model;
  std::function<VectorFunction(const VectorFunction&)> evaluator;

  // Evaluates with shape validation on both sides.
  VectorFunction eval(const VectorFunction& f) const;
};

enum class WitnessKind {
  RangeViolation,
  Colinearity,
  Ambiguity,
  Additivity,
  UDependence,
  Representation,
  Purity,
};

const char* witness_kind_name(WitnessKind kind);

// Concrete replayable counterexample.  The payload carries the functions,
// points and distances needed to re-run the failed check.
struct Witness {
  WitnessKind kind;
  jsonio::json payload;
};

struct AnalyzerConfig {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int pair_budget = 256;       // range-preservation pairs
  int sample_budget = 64;      // representation-check sample functions
  int scalar_samples = 4;      // extra random scalar probes
  bool integer_samples = false;  // draw all samples from the integer family
  int threads = 1;             // concurrent pair evaluation
};

struct Residuals {
  double range_distance = 0.0;
  double nonexpansive_excess = 0.0;
  double colinearity = 0.0;
  double point_linearity = 0.0;
  double point_multiplicativity = 0.0;
  double point_unitality = 0.0;
  double u_independence = 0.0;
  double additivity = 0.0;
  double representation = 0.0;

  double max() const;
};

struct ExtractionResult {
  VectorFunction offset;        // T(1 (x) 0_E)
  std::optional<Symbol> symbol;
  ComplexVector probe_u;
};

struct CorollaryReport {
  bool t_injective = false;
  bool t_surjective = false;
  bool range_equality = false;
  jsonio::json witnesses;  // named constructive payloads
};

struct AnalysisReport {
  bool composition_consistent = false;
  ExtractionResult extraction;
  Residuals residuals;
  std::vector<Witness> witnesses;
  std::optional<CorollaryReport> corollary;
  std::optional<std::string> evaluator_error;
  AnalyzerConfig config;
};

jsonio::json report_to_json(const AnalysisReport& report);

// --- purity instrumentation -------------------------------------------------

struct EvalLog {
  std::mutex mu;
  std::vector<std::pair<VectorFunction, VectorFunction>> calls;
};

MapUnderTest with_logging(const MapUnderTest& t, std::shared_ptr<EvalLog> log);

// Re-evaluates every distinct logged input once on the raw evaluator; a
// mismatch yields a purity witness (smallest serialized input wins, so the
// outcome does not depend on call interleaving).
std::optional<Witness> replay_purity(const MapUnderTest& raw, EvalLog& log);

// --- pipeline stages ---------------------------------------------------------

// offset = T(0); the returned map is T' = T - offset, so T'(0) = 0 exactly.
std::pair<VectorFunction, MapUnderTest> normalize(const MapUnderTest& t);

struct RangeCheckOutcome {
  std::optional<Witness> witness;
  double max_distance = 0.0;        // worst membership distance over failures
  double nonexpansive_excess = 0.0; // worst uniform-seminorm excess of TF-TG over F-G
};

RangeCheckOutcome check_range_preservation(
    const MapUnderTest& t, const std::vector<std::pair<VectorFunction, VectorFunction>>& pairs,
    double tol, int threads = 1);

struct ScalarAction {
  ScalarFunction g;       // least-squares coefficient of T'(f (x) u)(y) on u
  double residual = 0.0;  // uniform off-axis component
};

ScalarAction scalar_action(const MapUnderTest& t_prime, const ComplexVector& u,
                           const ScalarFunction& f);

struct PointFunctionalReport {
  double linearity = 0.0;
  double multiplicativity = 0.0;
  double unitality = 0.0;
};

PointFunctionalReport check_point_functional(const MapUnderTest& t_prime, const ComplexVector& u,
                                             std::size_t y, const std::vector<ScalarFunction>& fs,
                                             const std::vector<Complex>& lambdas);
// Same residuals aggregated over all points of Y.
PointFunctionalReport check_point_functional_all(const MapUnderTest& t_prime,
                                                 const ComplexVector& u,
                                                 const std::vector<ScalarFunction>& fs,
                                                 const std::vector<Complex>& lambdas);

struct SymbolExtraction {
  std::optional<Symbol> symbol;                        // total iff every point resolved
  std::vector<std::optional<std::size_t>> per_point;   // y -> x
  std::vector<Witness> ambiguities;
};

// Indicator probing: phi(y) is the unique x whose indicator responds with 1
// while all others respond with 0.  Ties or misses become ambiguity
// witnesses, never tie-breaks.
SymbolExtraction extract_symbol(const MapUnderTest& t_prime, const ComplexVector& u, double tol);

struct UIndependenceOutcome {
  double residual = 0.0;
  std::optional<Witness> witness;
};

UIndependenceOutcome check_u_independence(const MapUnderTest& t_prime,
                                          const std::vector<ComplexVector>& us,
                                          const std::vector<ScalarFunction>& fs, double tol);

double check_tensor_additivity(const MapUnderTest& t_prime, const ScalarFunction& f,
                               const ComplexVector& u, const ScalarFunction& g,
                               const ComplexVector& v);

struct CompositionCheck {
  double residual = 0.0;
  std::optional<Witness> witness;
};

CompositionCheck verify_composition(const MapUnderTest& t, const Symbol& phi,
                                    const VectorFunction& offset,
                                    const std::vector<VectorFunction>& samples, double tol);

// F with F(phi(y)) = H(y) - offset(y) and F = 0 off the image of phi.
VectorFunction preimage_construct(const Symbol& phi, const VectorFunction& offset,
                                  const VectorFunction& h);

CorollaryReport corollary_diagnostics(const MapUnderTest& t, const Symbol& phi,
                                      const VectorFunction& offset, const AnalyzerConfig& config);

AnalysisReport classify(const MapUnderTest& t, const AnalyzerConfig& config);

// True when the witness payload still exhibits a failure against t.
bool replay_witness(const MapUnderTest& t, const Witness& witness, double tol);

}  // namespace rpmap
