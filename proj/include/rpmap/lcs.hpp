#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rpmap {

using Complex = std::complex<double>;

// Element of the model space E = C^d.
struct ComplexVector {
  std::vector<Complex> entries;

  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : entries(dim, Complex{0.0, 0.0}) {}
  ComplexVector(std::initializer_list<Complex> init) : entries(init) {}

  std::size_t dim() const { return entries.size(); }
  bool is_finite() const;

  Complex& operator[](std::size_t k) { return entries[k]; }
  const Complex& operator[](std::size_t k) const { return entries[k]; }
};

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator*(const Complex& lambda, const ComplexVector& u);
bool operator==(const ComplexVector& a, const ComplexVector& b);  // exact

ComplexVector zero_vector(std::size_t dim);
ComplexVector basis_vector(std::size_t dim, std::size_t k);

struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> coeffs;  // row-major

  static ComplexMatrix identity(std::size_t n);

  Complex& at(std::size_t r, std::size_t c) { return coeffs[r * cols + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return coeffs[r * cols + c]; }
  ComplexVector apply(const ComplexVector& u) const;
};

// p(u) = max_k |(A u)_k| for a fixed complex matrix A.  Sublevel sets of such
// functionals are balanced and convex, which is all the neighborhood
// machinery below needs.
struct Seminorm {
  ComplexMatrix matrix;

  static Seminorm identity(std::size_t dim);
  static Seminorm coordinate(std::size_t dim, std::size_t k);  // p(u) = |u_k|
  static Seminorm from_rows(std::size_t dim, const std::vector<std::vector<Complex>>& rows);

  std::size_t input_dim() const { return matrix.cols; }
  double eval(const ComplexVector& u) const;
};

double seminorm_eval(const Seminorm& p, const ComplexVector& u);

struct VectorSpaceModel {
  std::size_t dimension = 0;
  std::vector<Seminorm> seminorms;

  // max_i p_i(u); a norm whenever the family is separating
  double max_seminorm(const ComplexVector& u) const;
  double distance(const ComplexVector& a, const ComplexVector& b) const;
  void validate() const;  // throws std::invalid_argument on a broken model
};

// True iff the stacked seminorm matrices have full column rank, i.e. the only
// vector with p_i(u) = 0 for all i is the origin.
bool separating_check(const VectorSpaceModel& model);

struct NeighborhoodBound {
  std::size_t seminorm = 0;
  double radius = 0.0;
};

// Finite intersection of closed sublevel sets {u : p_i(u) <= r_i}.
struct Neighborhood {
  std::vector<NeighborhoodBound> bounds;
};

bool nbr_contains(const VectorSpaceModel& model, const Neighborhood& B, const ComplexVector& u);

struct BalancedConvexReport {
  bool ok = true;
  std::string failure;  // "origin" | "scaling" | "midpoint" | "sampling"
  ComplexVector u;
  ComplexVector v;
  Complex lambda{0.0, 0.0};
};

using MembershipFn = std::function<bool(const ComplexVector&)>;

// Samples members of the set and probes balancedness (|lambda| <= 1 scaling)
// and convexity (midpoints / random segment points).  The predicate overload
// exists so broken membership rules can be fed in as test doubles.
BalancedConvexReport check_balanced_convex(const MembershipFn& member, std::size_t dim,
                                           double box_radius, std::uint64_t seed, int count);
BalancedConvexReport check_balanced_convex(const VectorSpaceModel& model, const Neighborhood& B,
                                           std::uint64_t seed, int count);

}  // namespace rpmap
