#include "rpmap/sampling.hpp"

namespace rpmap {

ComplexVector random_model_vector(Rng& rng, std::size_t dim, bool integer) {
  ComplexVector u(dim);
  for (std::size_t k = 0; k < dim; ++k)
    u[k] = integer ? rng.complex_int_box(-2, 2) : rng.complex_box(2.0);
  return u;
}

ScalarFunction random_scalar_function(Rng& rng, const FiniteSpace& space, bool integer) {
  ScalarFunction f{space, {}};
  f.values.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    f.values.push_back(integer ? rng.complex_int_box(-2, 2) : rng.complex_box(2.0));
  return f;
}

VectorFunction random_vector_function(Rng& rng, const FiniteSpace& space,
                                      const VectorSpaceModel& model, bool integer) {
  VectorFunction f{space, model, {}};
  f.values.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    f.values.push_back(random_model_vector(rng, model.dimension, integer));
  return f;
}

std::vector<ComplexVector> default_probe_vectors(std::size_t dim) {
  std::vector<ComplexVector> probes;
  probes.push_back(basis_vector(dim, 0));
  probes.push_back(Complex{2.0, 0.0} * basis_vector(dim, 0));
  for (std::size_t k = 1; k < dim; ++k) probes.push_back(basis_vector(dim, k));
  if (dim >= 2) probes.push_back(basis_vector(dim, 0) + basis_vector(dim, 1));
  return probes;
}

std::vector<ScalarFunction> probe_scalar_family(const FiniteSpace& space, Rng& rng,
                                                int extra_random, bool integer) {
  std::vector<ScalarFunction> fs;
  for (std::size_t x = 0; x < space.size(); ++x) fs.push_back(indicator_function(space, x));
  fs.push_back(constant_function(space, Complex{1.0, 0.0}));
  for (int k = 0; k < extra_random; ++k) fs.push_back(random_scalar_function(rng, space, integer));
  return fs;
}

namespace {

// Values spanning two coordinate directions; rank two on any shape with
// |X| >= 2 and d >= 2, so it defeats tensor-shaped (rank one) special-casing.
VectorFunction spanning_function(const FiniteSpace& space, const VectorSpaceModel& model) {
  VectorFunction f = zero_function(space, model);
  for (std::size_t i = 0; i < space.size(); ++i)
    f.values[i] = basis_vector(model.dimension, i % model.dimension);
  return f;
}

}  // namespace

std::vector<VectorFunction> sample_function_family(Rng& rng, const FiniteSpace& space,
                                                   const VectorSpaceModel& model, int budget,
                                                   bool integer) {
  std::vector<VectorFunction> fs;
  fs.reserve(static_cast<std::size_t>(budget));
  if (budget > 0) fs.push_back(zero_function(space, model));
  if (budget > 1 && space.size() >= 2 && model.dimension >= 2)
    fs.push_back(spanning_function(space, model));
  std::size_t indicator_cursor = 0;
  std::size_t coord_cursor = 0;
  while (fs.size() < static_cast<std::size_t>(budget)) {
    switch (fs.size() % 4) {
      case 0:
        fs.push_back(random_vector_function(rng, space, model, integer));
        break;
      case 1: {
        const ScalarFunction f = random_scalar_function(rng, space, integer);
        fs.push_back(tensor(f, random_model_vector(rng, model.dimension, integer), model));
        break;
      }
      case 2: {
        const ScalarFunction f = indicator_function(space, indicator_cursor % space.size());
        ++indicator_cursor;
        const ComplexVector u = basis_vector(model.dimension, coord_cursor % model.dimension);
        ++coord_cursor;
        fs.push_back(tensor(f, u, model));
        break;
      }
      default:
        fs.push_back(tensor(constant_function(space, Complex{1.0, 0.0}),
                            random_model_vector(rng, model.dimension, integer), model));
        break;
    }
  }
  return fs;
}

std::vector<std::pair<VectorFunction, VectorFunction>> sample_pair_family(
    Rng& rng, const FiniteSpace& space, const VectorSpaceModel& model, int budget, bool integer) {
  std::vector<std::pair<VectorFunction, VectorFunction>> pairs;
  pairs.reserve(static_cast<std::size_t>(budget));
  const VectorFunction zero = zero_function(space, model);
  std::size_t indicator_cursor = 0;
  for (int k = 0; k < budget; ++k) {
    switch (k % 8) {
      case 0: {
        const ScalarFunction f = indicator_function(space, indicator_cursor % space.size());
        ++indicator_cursor;
        pairs.emplace_back(tensor(f, basis_vector(model.dimension, 0), model), zero);
        break;
      }
      case 1:
        pairs.emplace_back(random_vector_function(rng, space, model, integer),
                           random_vector_function(rng, space, model, integer));
        break;
      case 2: {
        const ScalarFunction f = random_scalar_function(rng, space, integer);
        const ScalarFunction g = random_scalar_function(rng, space, integer);
        pairs.emplace_back(tensor(f, random_model_vector(rng, model.dimension, integer), model),
                           tensor(g, random_model_vector(rng, model.dimension, integer), model));
        break;
      }
      case 3:
        pairs.emplace_back(tensor(constant_function(space, Complex{1.0, 0.0}),
                                  random_model_vector(rng, model.dimension, integer), model),
                           random_vector_function(rng, space, model, integer));
        break;
      case 4: {
        // identical pair: exercises Ran(F-G) = {0} and doubles as a purity probe
        const VectorFunction f = random_vector_function(rng, space, model, integer);
        pairs.emplace_back(f, f);
        break;
      }
      case 5:
        pairs.emplace_back(random_vector_function(rng, space, model, integer), zero);
        break;
      case 6: {
        const ScalarFunction f = random_scalar_function(rng, space, integer);
        pairs.emplace_back(tensor(f, basis_vector(model.dimension, 0), model),
                           tensor(f, random_model_vector(rng, model.dimension, integer), model));
        break;
      }
      default:
        pairs.emplace_back(random_vector_function(rng, space, model, integer),
                           random_vector_function(rng, space, model, integer));
        break;
    }
  }
  return pairs;
}

}  // namespace rpmap
