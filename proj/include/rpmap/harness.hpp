#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rpmap/analyzer.hpp"

namespace rpmap {

enum class MapKind {
  Composition,
  Constant,
  Averaging,
  Rotation,
  DirectionDependent,
  PerturbedComposition,
  External,
};

const char* map_kind_name(MapKind kind);
MapKind map_kind_from_name(const std::string& name);

enum class PerturbTrigger { NonZero, NonConstant, NonTensor };

const char* trigger_name(PerturbTrigger trigger);
PerturbTrigger trigger_from_name(const std::string& name);

// Declarative description of one map instance; everything the tool needs to
// rebuild the evaluator deterministically.
struct InstanceSpec {
  int schema = 1;
  FiniteSpace x;
  FiniteSpace y;
  VectorSpaceModel model;
  MapKind kind = MapKind::Composition;

  std::optional<Symbol> symbol;             // composition, perturbed
  std::optional<VectorFunction> offset;     // composition, perturbed (on Y)
  std::optional<VectorFunction> constant;   // constant kind (on Y)
  std::vector<Complex> weights;             // averaging, one per X label
  std::optional<ComplexMatrix> rotation;    // rotation kind, d x d
  std::optional<Symbol> symbol2;            // direction-dependent second symbol
  double epsilon = 0.0;                     // perturbed bump size
  PerturbTrigger trigger = PerturbTrigger::NonTensor;
  std::vector<std::string> command;         // external child argv
  int timeout_ms = 10000;

  std::uint64_t seed = 1;
  double tol = 1e-9;
  int pairs = 256;

  void validate() const;  // throws std::invalid_argument on malformed specs
};

jsonio::json spec_to_json(const InstanceSpec& spec);
InstanceSpec spec_from_json(const jsonio::json& j);

MapUnderTest generate(const InstanceSpec& spec);

// Seeded random instances used by tests and the `gen` subcommand.
InstanceSpec random_composition_spec(Rng& rng, std::size_t nx, std::size_t ny, std::size_t dim,
                                     bool integer);
InstanceSpec random_adversarial_spec(Rng& rng, MapKind kind, std::size_t nx, std::size_t ny,
                                     std::size_t dim);

// True when the value table of F spans more than one direction of E, i.e.
// F is not of the tensor shape f (x) u.
bool spans_multiple_directions(const VectorFunction& f);

struct OraclePoint {
  std::vector<double> scores;           // one per x, max discrepancy over the probe family
  double min_score = 0.0;
  std::vector<std::size_t> candidates;  // argmin within tol
  bool clean = false;                   // min_score <= tol
};

struct OracleResult {
  std::vector<OraclePoint> per_y;
};

// Brute-force extraction oracle: for every (x, y), the worst discrepancy
// |g_f(y) - f(x)| over all indicators plus 50 seeded random scalar functions.
// Guarded to |X| * |Y| <= 64.
OracleResult oracle_extract(const MapUnderTest& t, const ComplexVector& u, double tol,
                            std::uint64_t seed);

// Agreement rule: where the analyzer extracted a point, the oracle must have
// a clean unique candidate equal to it; where the analyzer reported
// ambiguity, the oracle must not have a clean unique candidate.
bool oracle_agrees(const OracleResult& oracle, const SymbolExtraction& extraction,
                   const FiniteSpace& x_space);

int cli_main(int argc, char** argv);

}  // namespace rpmap
