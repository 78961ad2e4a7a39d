#pragma once

#include <string>
#include <vector>

#include "rpmap/lcs.hpp"
#include "rpmap/space.hpp"

namespace rpmap {

// Element of C(X, E): a total value table in label order.
struct VectorFunction {
  FiniteSpace space;
  VectorSpaceModel model;
  std::vector<ComplexVector> values;  // aligned with space.labels

  const ComplexVector& at(std::size_t i) const { return values[i]; }
  const ComplexVector& at(const std::string& label) const { return values[space.index_of(label)]; }
  void validate() const;
};

VectorFunction zero_function(const FiniteSpace& space, const VectorSpaceModel& model);
VectorFunction add(const VectorFunction& f, const VectorFunction& g);
VectorFunction sub(const VectorFunction& f, const VectorFunction& g);
VectorFunction scale(const Complex& lambda, const VectorFunction& f);
bool exact_equal(const VectorFunction& f, const VectorFunction& g);
bool is_zero(const VectorFunction& f);

// Element of C(X): complex scalar values in label order.
struct ScalarFunction {
  FiniteSpace space;
  std::vector<Complex> values;

  const Complex& at(std::size_t i) const { return values[i]; }
  const Complex& at(const std::string& label) const { return values[space.index_of(label)]; }
};

ScalarFunction constant_function(const FiniteSpace& space, const Complex& value);
ScalarFunction indicator_function(const FiniteSpace& space, std::size_t point);
ScalarFunction add(const ScalarFunction& f, const ScalarFunction& g);
ScalarFunction scale(const Complex& lambda, const ScalarFunction& f);
ScalarFunction pointwise_mul(const ScalarFunction& f, const ScalarFunction& g);
bool exact_equal(const ScalarFunction& f, const ScalarFunction& g);

// (f (x) u)(x) = f(x) u
VectorFunction tensor(const ScalarFunction& f, const ComplexVector& u, const VectorSpaceModel& model);

struct TensorTerm {
  ScalarFunction f;
  ComplexVector u;
};

struct TensorSum {
  std::vector<TensorTerm> terms;
};

VectorFunction tensor_eval(const TensorSum& sum, const VectorSpaceModel& model);

// Deduplicated value set of a function; distances are max over the model's
// seminorm family, first occurrence in label order is kept.
struct RangeSet {
  VectorSpaceModel model;
  std::vector<ComplexVector> representatives;
  double tolerance = 0.0;
};

RangeSet range(const VectorFunction& f, double tol);

struct RangeQuery {
  bool member = false;
  double distance = 0.0;  // to the nearest representative
};

RangeQuery range_contains(const RangeSet& r, const ComplexVector& v, double tol);

// (F o phi)(y) = F(phi(y)); phi maps Y into F's space.
VectorFunction compose(const VectorFunction& f, const Symbol& phi);

// Membership in V_X(B) = {F : Ran(F) in B}.
bool in_V(const VectorFunction& f, const Neighborhood& B);

double uniform_seminorm(const VectorFunction& f, const Seminorm& p);

}  // namespace rpmap
