#include "rpmap/lcs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rpmap/rng.hpp"

namespace rpmap {

bool ComplexVector::is_finite() const {
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dimension mismatch");
  ComplexVector out(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) out[k] = a[k] + b[k];
  return out;
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dimension mismatch");
  ComplexVector out(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) out[k] = a[k] - b[k];
  return out;
}

ComplexVector operator*(const Complex& lambda, const ComplexVector& u) {
  ComplexVector out(u.dim());
  for (std::size_t k = 0; k < u.dim(); ++k) out[k] = lambda * u[k];
  return out;
}

bool operator==(const ComplexVector& a, const ComplexVector& b) {
  return a.entries == b.entries;
}

ComplexVector zero_vector(std::size_t dim) { return ComplexVector(dim); }

ComplexVector basis_vector(std::size_t dim, std::size_t k) {
  if (k >= dim) throw std::invalid_argument("basis index out of range");
  ComplexVector out(dim);
  out[k] = Complex{1.0, 0.0};
  return out;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m;
  m.rows = n;
  m.cols = n;
  m.coeffs.assign(n * n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) m.at(k, k) = Complex{1.0, 0.0};
  return m;
}

ComplexVector ComplexMatrix::apply(const ComplexVector& u) const {
  if (u.dim() != cols) throw std::invalid_argument("matrix/vector dimension mismatch");
  ComplexVector out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t c = 0; c < cols; ++c) acc += at(r, c) * u[c];
    out[r] = acc;
  }
  return out;
}

Seminorm Seminorm::identity(std::size_t dim) { return Seminorm{ComplexMatrix::identity(dim)}; }

Seminorm Seminorm::coordinate(std::size_t dim, std::size_t k) {
  if (k >= dim) throw std::invalid_argument("coordinate index out of range");
  ComplexMatrix m;
  m.rows = 1;
  m.cols = dim;
  m.coeffs.assign(dim, Complex{0.0, 0.0});
  m.at(0, k) = Complex{1.0, 0.0};
  return Seminorm{m};
}

Seminorm Seminorm::from_rows(std::size_t dim, const std::vector<std::vector<Complex>>& rows) {
  ComplexMatrix m;
  m.rows = rows.size();
  m.cols = dim;
  m.coeffs.reserve(rows.size() * dim);
  for (const auto& row : rows) {
    if (row.size() != dim) throw std::invalid_argument("seminorm row width mismatch");
    m.coeffs.insert(m.coeffs.end(), row.begin(), row.end());
  }
  return Seminorm{m};
}

double Seminorm::eval(const ComplexVector& u) const {
  const ComplexVector image = matrix.apply(u);
  double best = 0.0;
  for (const auto& z : image.entries) best = std::max(best, std::abs(z));
  return best;
}

double seminorm_eval(const Seminorm& p, const ComplexVector& u) { return p.eval(u); }

double VectorSpaceModel::max_seminorm(const ComplexVector& u) const {
  double best = 0.0;
  for (const auto& p : seminorms) best = std::max(best, p.eval(u));
  return best;
}

double VectorSpaceModel::distance(const ComplexVector& a, const ComplexVector& b) const {
  return max_seminorm(a - b);
}

void VectorSpaceModel::validate() const {
  if (dimension < 1) throw std::invalid_argument("model dimension must be >= 1");
  if (seminorms.empty()) throw std::invalid_argument("model needs at least one seminorm");
  for (const auto& p : seminorms) {
    if (p.matrix.cols != dimension) throw std::invalid_argument("seminorm width != model dimension");
    if (p.matrix.rows == 0) throw std::invalid_argument("seminorm matrix has no rows");
    for (const auto& z : p.matrix.coeffs) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("seminorm matrix entry not finite");
    }
  }
  if (!separating_check(*this)) throw std::invalid_argument("seminorm family is not separating");
}

namespace {

// Column rank by Gaussian elimination with partial pivoting.
std::size_t complex_rank(std::vector<Complex> m, std::size_t rows, std::size_t cols) {
  double max_abs = 0.0;
  for (const auto& z : m) max_abs = std::max(max_abs, std::abs(z));
  if (max_abs == 0.0) return 0;
  const double tol = max_abs * 1e-12 * static_cast<double>(std::max(rows, cols));

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    double best = std::abs(m[rank * cols + col]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const double a = std::abs(m[r * cols + col]);
      if (a > best) {
        best = a;
        pivot = r;
      }
    }
    if (best <= tol) continue;
    if (pivot != rank) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(m[rank * cols + c], m[pivot * cols + c]);
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Complex factor = m[r * cols + col] / m[rank * cols + col];
      if (factor == Complex{0.0, 0.0}) continue;
      for (std::size_t c = col; c < cols; ++c) m[r * cols + c] -= factor * m[rank * cols + c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool separating_check(const VectorSpaceModel& model) {
  std::vector<Complex> stacked;
  std::size_t rows = 0;
  for (const auto& p : model.seminorms) {
    stacked.insert(stacked.end(), p.matrix.coeffs.begin(), p.matrix.coeffs.end());
    rows += p.matrix.rows;
  }
  return complex_rank(std::move(stacked), rows, model.dimension) == model.dimension;
}

bool nbr_contains(const VectorSpaceModel& model, const Neighborhood& B, const ComplexVector& u) {
  if (u.dim() != model.dimension) throw std::invalid_argument("vector dimension mismatch");
  for (const auto& bound : B.bounds) {
    if (bound.seminorm >= model.seminorms.size())
      throw std::invalid_argument("neighborhood references unknown seminorm");
    if (model.seminorms[bound.seminorm].eval(u) > bound.radius) return false;
  }
  return true;
}

BalancedConvexReport check_balanced_convex(const MembershipFn& member, std::size_t dim,
                                           double box_radius, std::uint64_t seed, int count) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  Rng rng(seed);
  BalancedConvexReport report;

  const ComplexVector origin = zero_vector(dim);
  if (!member(origin)) {
    report.ok = false;
    report.failure = "origin";
    report.u = origin;
    return report;
  }

  std::vector<ComplexVector> members;
  int budget = 200 * count;
  while (static_cast<int>(members.size()) < count && budget-- > 0) {
    ComplexVector cand(dim);
    for (std::size_t k = 0; k < dim; ++k) cand[k] = rng.complex_box(box_radius);
    if (member(cand)) members.push_back(std::move(cand));
  }
  if (members.empty()) {
    report.ok = false;
    report.failure = "sampling";
    return report;
  }

  // balancedness: lambda-scaling with |lambda| <= 1; -1 and i probed always
  for (const auto& u : members) {
    Complex lambdas[4];
    lambdas[0] = Complex{-1.0, 0.0};
    lambdas[1] = Complex{0.0, 1.0};
    for (int j = 2; j < 4; ++j) {
      const double modulus = rng.uniform();
      const double phase = rng.uniform(0.0, 6.283185307179586);
      lambdas[j] = Complex{modulus * std::cos(phase), modulus * std::sin(phase)};
    }
    for (const auto& lambda : lambdas) {
      if (!member(lambda * u)) {
        report.ok = false;
        report.failure = "scaling";
        report.u = u;
        report.lambda = lambda;
        return report;
      }
    }
  }

  // convexity: midpoints and random segment points of member pairs
  for (int k = 0; k < count; ++k) {
    const ComplexVector& u = members[rng.index(members.size())];
    const ComplexVector& v = members[rng.index(members.size())];
    const Complex half{0.5, 0.0};
    if (!member(half * (u + v))) {
      report.ok = false;
      report.failure = "midpoint";
      report.u = u;
      report.v = v;
      return report;
    }
    const double t = rng.uniform();
    const ComplexVector w = Complex{1.0 - t, 0.0} * u + Complex{t, 0.0} * v;
    if (!member(w)) {
      report.ok = false;
      report.failure = "midpoint";
      report.u = u;
      report.v = v;
      return report;
    }
  }
  return report;
}

BalancedConvexReport check_balanced_convex(const VectorSpaceModel& model, const Neighborhood& B,
                                           std::uint64_t seed, int count) {
  double box = 1.0;
  for (const auto& bound : B.bounds) box = std::max(box, bound.radius);
  // Tiny slack absorbs the last-ulp wobble of re-evaluating p on scaled and
  // averaged members; the exact membership predicate stays nbr_contains.
  MembershipFn member = [&model, &B](const ComplexVector& u) {
    for (const auto& bound : B.bounds) {
      const double p = model.seminorms[bound.seminorm].eval(u);
      if (p > bound.radius + 1e-12 * (1.0 + bound.radius)) return false;
    }
    return true;
  };
  return check_balanced_convex(member, model.dimension, box, seed, count);
}

}  // namespace rpmap
