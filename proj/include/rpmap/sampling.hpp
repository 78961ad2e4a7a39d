#pragma once

#include <utility>
#include <vector>

#include "rpmap/funcspace.hpp"
#include "rpmap/rng.hpp"

namespace rpmap {

// Seeded function generators shared by the analyzer and the harness.  Values
// come from the complex box [-2,2]^2 per coordinate; in integer mode from the
// integer sub-box, so that downstream arithmetic stays exact and checks can
// run at tolerance zero.

ComplexVector random_model_vector(Rng& rng, std::size_t dim, bool integer);
ScalarFunction random_scalar_function(Rng& rng, const FiniteSpace& space, bool integer);
VectorFunction random_vector_function(Rng& rng, const FiniteSpace& space,
                                      const VectorSpaceModel& model, bool integer);

// e1 and 2*e1 always; each further coordinate vector and e1+e2 when d >= 2,
// exercising both the dependent and the independent probe-pair branches.
std::vector<ComplexVector> default_probe_vectors(std::size_t dim);

// All indicators, the constant one, and a few seeded random functions.
std::vector<ScalarFunction> probe_scalar_family(const FiniteSpace& space, Rng& rng,
                                                int extra_random, bool integer);

// Mix of random functions, tensors, indicator tensors and constants; when the
// shape allows it, one deterministic function whose values span two
// coordinate directions.
std::vector<VectorFunction> sample_function_family(Rng& rng, const FiniteSpace& space,
                                                   const VectorSpaceModel& model, int budget,
                                                   bool integer);

// Pair mix for the range-preservation hypothesis: random/random,
// tensor/tensor, indicator/zero, constant/random, and periodic (F, F) entries
// that double as replay-purity probes.
std::vector<std::pair<VectorFunction, VectorFunction>> sample_pair_family(
    Rng& rng, const FiniteSpace& space, const VectorSpaceModel& model, int budget, bool integer);

}  // namespace rpmap
