#include "rpmap/funcspace.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rpmap {

namespace {

void require_same_shape(const VectorFunction& f, const VectorFunction& g) {
  if (!(f.space == g.space) || f.model.dimension != g.model.dimension)
    throw std::invalid_argument("functions live on different spaces");
}

void require_same_space(const ScalarFunction& f, const ScalarFunction& g) {
  if (!(f.space == g.space)) throw std::invalid_argument("functions live on different spaces");
}

}  // namespace

void VectorFunction::validate() const {
  space.validate();
  if (values.size() != space.size()) throw std::invalid_argument("value table must be total");
  for (const auto& v : values) {
    if (v.dim() != model.dimension) throw std::invalid_argument("value dimension != model dimension");
    if (!v.is_finite()) throw std::invalid_argument("value not finite");
  }
}

VectorFunction zero_function(const FiniteSpace& space, const VectorSpaceModel& model) {
  VectorFunction f{space, model, {}};
  f.values.assign(space.size(), zero_vector(model.dimension));
  return f;
}

VectorFunction add(const VectorFunction& f, const VectorFunction& g) {
  require_same_shape(f, g);
  VectorFunction out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f.values[i] + g.values[i];
  return out;
}

VectorFunction sub(const VectorFunction& f, const VectorFunction& g) {
  require_same_shape(f, g);
  VectorFunction out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f.values[i] - g.values[i];
  return out;
}

VectorFunction scale(const Complex& lambda, const VectorFunction& f) {
  VectorFunction out = f;
  for (auto& v : out.values) v = lambda * v;
  return out;
}

bool exact_equal(const VectorFunction& f, const VectorFunction& g) {
  if (!(f.space == g.space) || f.model.dimension != g.model.dimension) return false;
  return f.values == g.values;
}

bool is_zero(const VectorFunction& f) {
  for (const auto& v : f.values) {
    for (const auto& z : v.entries) {
      if (z != Complex{0.0, 0.0}) return false;
    }
  }
  return true;
}

ScalarFunction constant_function(const FiniteSpace& space, const Complex& value) {
  ScalarFunction f{space, {}};
  f.values.assign(space.size(), value);
  return f;
}

ScalarFunction indicator_function(const FiniteSpace& space, std::size_t point) {
  if (point >= space.size()) throw std::invalid_argument("indicator point out of range");
  ScalarFunction f{space, {}};
  f.values.assign(space.size(), Complex{0.0, 0.0});
  f.values[point] = Complex{1.0, 0.0};
  return f;
}

ScalarFunction add(const ScalarFunction& f, const ScalarFunction& g) {
  require_same_space(f, g);
  ScalarFunction out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f.values[i] + g.values[i];
  return out;
}

ScalarFunction scale(const Complex& lambda, const ScalarFunction& f) {
  ScalarFunction out = f;
  for (auto& z : out.values) z = lambda * z;
  return out;
}

ScalarFunction pointwise_mul(const ScalarFunction& f, const ScalarFunction& g) {
  require_same_space(f, g);
  ScalarFunction out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f.values[i] * g.values[i];
  return out;
}

bool exact_equal(const ScalarFunction& f, const ScalarFunction& g) {
  return f.space == g.space && f.values == g.values;
}

VectorFunction tensor(const ScalarFunction& f, const ComplexVector& u, const VectorSpaceModel& model) {
  if (u.dim() != model.dimension) throw std::invalid_argument("tensor vector dimension mismatch");
  VectorFunction out{f.space, model, {}};
  out.values.reserve(f.space.size());
  for (const auto& z : f.values) out.values.push_back(z * u);
  return out;
}

VectorFunction tensor_eval(const TensorSum& sum, const VectorSpaceModel& model) {
  if (sum.terms.empty()) throw std::invalid_argument("tensor sum has no terms");
  const FiniteSpace& space = sum.terms.front().f.space;
  VectorFunction out = zero_function(space, model);
  for (const auto& term : sum.terms) {
    if (!(term.f.space == space)) throw std::invalid_argument("tensor terms on different spaces");
    if (term.u.dim() != model.dimension) throw std::invalid_argument("tensor vector dimension mismatch");
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = out.values[i] + term.f.values[i] * term.u;
  }
  return out;
}

RangeSet range(const VectorFunction& f, double tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");
  RangeSet r{f.model, {}, tol};
  for (const auto& v : f.values) {
    bool fresh = true;
    for (const auto& rep : r.representatives) {
      if (f.model.distance(rep, v) <= tol) {
        fresh = false;
        break;
      }
    }
    if (fresh) r.representatives.push_back(v);
  }
  return r;
}

RangeQuery range_contains(const RangeSet& r, const ComplexVector& v, double tol) {
  if (v.dim() != r.model.dimension) throw std::invalid_argument("vector dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& rep : r.representatives) best = std::min(best, r.model.distance(rep, v));
  return RangeQuery{best <= tol, best};
}

VectorFunction compose(const VectorFunction& f, const Symbol& phi) {
  if (!(phi.target == f.space)) throw std::invalid_argument("symbol target != function space");
  VectorFunction out{phi.source, f.model, {}};
  out.values.reserve(phi.source.size());
  for (std::size_t y = 0; y < phi.source.size(); ++y) out.values.push_back(f.values[phi.apply(y)]);
  return out;
}

bool in_V(const VectorFunction& f, const Neighborhood& B) {
  for (const auto& v : f.values) {
    if (!nbr_contains(f.model, B, v)) return false;
  }
  return true;
}

double uniform_seminorm(const VectorFunction& f, const Seminorm& p) {
  double best = 0.0;
  for (const auto& v : f.values) best = std::max(best, p.eval(v));
  return best;
}

}  // namespace rpmap
