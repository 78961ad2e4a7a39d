#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rpmap/json_io.hpp"
#include "rpmap/rng.hpp"

namespace rpmap {

// Black-box functional delta : C(X) -> C; must be pure.
struct ScalarFunctional {
  FiniteSpace space;
  std::function<Complex(const ScalarFunction&)> evaluator;
};

// Deduplicated value set of a scalar function; for C(X) this is the spectrum.
struct SpectrumSet {
  std::vector<Complex> values;
  double tolerance = 0.0;
};

SpectrumSet spectrum(const ScalarFunction& f, double tol);

struct SpectrumQuery {
  bool member = false;
  double distance = 0.0;
};

SpectrumQuery spectrum_contains(const SpectrumSet& s, const Complex& z, double tol);

struct KsHypothesisOutcome {
  bool pass = true;
  double max_distance = 0.0;
  std::optional<jsonio::json> witness;  // {a, b, distance} or {zero: ...}
};

// Checks delta(0) = 0 and delta(a) - delta(b) in sigma(a - b) over the given
// pairs.  Callers should include every indicator, the constant one and the
// i-scaled indicators; ks_pair_family does.
KsHypothesisOutcome check_ks_hypothesis(
    const ScalarFunctional& delta,
    const std::vector<std::pair<ScalarFunction, ScalarFunction>>& pairs, double tol);

std::vector<std::pair<ScalarFunction, ScalarFunction>> ks_pair_family(const FiniteSpace& space,
                                                                      Rng& rng, int extra_random,
                                                                      bool integer);

// Exhaustive pairs over the value grid {0, +-1, +-i}^X; for |X| <= 3 this is
// at most 125 functions and 15625 pairs.
std::vector<std::pair<ScalarFunction, ScalarFunction>> ks_grid_pairs(const FiniteSpace& space);

struct KsConclusionReport {
  double linearity = 0.0;
  double multiplicativity = 0.0;
  double unitality_gap = 0.0;  // |delta(1) - 1|
  bool zero_functional = false;
  std::optional<std::string> representing_point;
  double representation_residual = 0.0;  // max |delta(f) - f(x*)| over the family
  std::optional<jsonio::json> ambiguity;
};

KsConclusionReport check_ks_conclusion(const ScalarFunctional& delta,
                                       const std::vector<ScalarFunction>& family,
                                       const std::vector<Complex>& lambdas, double tol);

// Replays the functional on the family once; false when a second evaluation
// disagrees with the first.
bool functional_is_pure(const ScalarFunctional& delta, const std::vector<ScalarFunction>& family);

// Functional catalog (point evaluations pass the hypothesis; the rest are
// adversaries with known failure modes).
ScalarFunctional point_evaluation(const FiniteSpace& space, std::size_t x);
ScalarFunctional averaging_functional(const FiniteSpace& space, std::vector<Complex> weights);
ScalarFunctional conjugation_functional(const FiniteSpace& space, std::size_t x);
ScalarFunctional scaled_functional(const FiniteSpace& space, std::size_t x, const Complex& factor);
ScalarFunctional zero_scalar_functional(const FiniteSpace& space);

}  // namespace rpmap
