#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rpmap/lcs.hpp"
#include "rpmap/rng.hpp"

using namespace rpmap;

namespace {

VectorSpaceModel coordinate_model(std::size_t dim) {
  VectorSpaceModel model{dim, {}};
  for (std::size_t k = 0; k < dim; ++k) model.seminorms.push_back(Seminorm::coordinate(dim, k));
  return model;
}

// Independent rank oracle for d <= 3: determinant of the Gram matrix of the
// stacked rows.
bool separating_by_gram(const VectorSpaceModel& model) {
  const std::size_t d = model.dimension;
  std::vector<Complex> gram(d * d, Complex{0.0, 0.0});
  double scale = 0.0;
  for (const auto& p : model.seminorms) {
    for (std::size_t r = 0; r < p.matrix.rows; ++r) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
          gram[i * d + j] += std::conj(p.matrix.at(r, i)) * p.matrix.at(r, j);
        scale = std::max(scale, std::abs(p.matrix.at(r, i)));
      }
    }
  }
  Complex det;
  if (d == 1) {
    det = gram[0];
  } else if (d == 2) {
    det = gram[0] * gram[3] - gram[1] * gram[2];
  } else {
    det = gram[0] * (gram[4] * gram[8] - gram[5] * gram[7]) -
          gram[1] * (gram[3] * gram[8] - gram[5] * gram[6]) +
          gram[2] * (gram[3] * gram[7] - gram[4] * gram[6]);
  }
  const double tol = 1e-9 * std::pow(std::max(scale, 1.0), 2.0 * static_cast<double>(d));
  return std::abs(det) > tol;
}

}  // namespace

TEST_CASE("seminorm_eval on the identity matrix is the max modulus") {
  const Seminorm p = Seminorm::identity(2);
  CHECK(seminorm_eval(p, ComplexVector{Complex{3.0, 4.0}, Complex{0.0, 0.0}}) ==
        doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("seminorm_eval vanishes at the origin") {
  const Seminorm p = Seminorm::from_rows(
      2, {{Complex{1.0, 2.0}, Complex{-0.5, 0.0}}, {Complex{0.0, 1.0}, Complex{3.0, 0.0}}});
  CHECK(seminorm_eval(p, zero_vector(2)) == 0.0);
}

TEST_CASE("seminorm with a nontrivial kernel") {
  const Seminorm p = Seminorm::from_rows(2, {{Complex{1.0, 0.0}, Complex{1.0, 0.0}}});
  CHECK(seminorm_eval(p, ComplexVector{Complex{1.0, 0.0}, Complex{-1.0, 0.0}}) == 0.0);
}

TEST_CASE("seminorm rejects a dimension mismatch") {
  const Seminorm p = Seminorm::identity(2);
  CHECK_THROWS_AS(seminorm_eval(p, ComplexVector{Complex{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("nbr_contains constrains only the listed bounds") {
  const VectorSpaceModel model = coordinate_model(2);
  const Neighborhood b{{NeighborhoodBound{0, 1.0}}};
  CHECK(nbr_contains(model, b, ComplexVector{Complex{0.5, 0.0}, Complex{100.0, 0.0}}));
  CHECK_FALSE(nbr_contains(model, b, ComplexVector{Complex{1.0, 1.0}, Complex{0.0, 0.0}}));
  CHECK(nbr_contains(model, b, zero_vector(2)));
}

TEST_CASE("boundary points stay inside under unimodular scaling") {
  const VectorSpaceModel model = coordinate_model(2);
  const Neighborhood b{{NeighborhoodBound{0, 1.0}, NeighborhoodBound{1, 2.0}}};
  const ComplexVector u{Complex{1.0, 0.0}, Complex{2.0, 0.0}};
  REQUIRE(nbr_contains(model, b, u));
  CHECK(nbr_contains(model, b, Complex{0.0, 1.0} * u));
}

TEST_CASE("check_balanced_convex passes on sublevel-set neighborhoods") {
  const VectorSpaceModel model = coordinate_model(2);
  const Neighborhood b{{NeighborhoodBound{0, 1.0}}};
  const BalancedConvexReport report = check_balanced_convex(model, b, 7, 100);
  CHECK(report.ok);
}

TEST_CASE("check_balanced_convex passes for every seed on random sublevel sets") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t dim = 1 + rng.index(3);
    VectorSpaceModel model{dim, {Seminorm::identity(dim)}};
    if (rng.uniform() < 0.5) model.seminorms.push_back(Seminorm::coordinate(dim, rng.index(dim)));
    Neighborhood b;
    for (std::size_t i = 0; i < model.seminorms.size(); ++i) {
      if (i == 0 || rng.uniform() < 0.7)
        b.bounds.push_back(NeighborhoodBound{i, rng.uniform(0.2, 3.0)});
    }
    const BalancedConvexReport report = check_balanced_convex(model, b, 100 + trial, 60);
    CAPTURE(trial);
    CHECK(report.ok);
  }
}

TEST_CASE("a half-plane membership rule is flagged as not balanced") {
  // convex but unbalanced: scaling by -1 escapes
  const MembershipFn half_plane = [](const ComplexVector& u) { return u[0].real() <= 1.0; };
  const BalancedConvexReport report = check_balanced_convex(half_plane, 1, 3.0, 11, 100);
  REQUIRE_FALSE(report.ok);
  CHECK(report.failure == "scaling");
  // replay the reported counterexample
  CHECK(half_plane(report.u));
  CHECK_FALSE(half_plane(report.lambda * report.u));
}

TEST_CASE("a disc-with-annulus membership rule is flagged as not convex") {
  const MembershipFn rings = [](const ComplexVector& u) {
    const double r = std::abs(u[0]);
    return r <= 1.0 || (r >= 2.0 && r <= 3.0);
  };
  const BalancedConvexReport report = check_balanced_convex(rings, 1, 3.0, 5, 200);
  REQUIRE_FALSE(report.ok);
  CHECK(report.failure == "midpoint");
}

TEST_CASE("sampling failure is reported for a degenerate membership rule") {
  const MembershipFn only_origin = [](const ComplexVector& u) {
    return u[0] == Complex{0.0, 0.0};
  };
  const BalancedConvexReport report = check_balanced_convex(only_origin, 1, 2.0, 13, 10);
  REQUIRE_FALSE(report.ok);
  CHECK(report.failure == "sampling");
}

TEST_CASE("seminorm homogeneity and subadditivity hold on sampled data") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + rng.index(3);
    const std::size_t rows = 1 + rng.index(3);
    std::vector<std::vector<Complex>> mat(rows, std::vector<Complex>(dim));
    for (auto& row : mat) {
      for (auto& z : row) z = rng.complex_box(2.0);
    }
    const Seminorm p = Seminorm::from_rows(dim, mat);
    ComplexVector u(dim), v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      u[k] = rng.complex_box(3.0);
      v[k] = rng.complex_box(3.0);
    }
    const Complex lambda = rng.complex_box(2.0);
    CHECK(std::abs(p.eval(lambda * u) - std::abs(lambda) * p.eval(u)) <=
          1e-12 * (1.0 + p.eval(u)));
    CHECK(p.eval(u + v) <= p.eval(u) + p.eval(v) + 1e-12);
    CHECK(p.eval(u) >= 0.0);
  }
}

TEST_CASE("separating_check on the named examples") {
  CHECK(separating_check(coordinate_model(2)));
  CHECK_FALSE(separating_check(VectorSpaceModel{2, {Seminorm::coordinate(2, 0)}}));
  CHECK(separating_check(VectorSpaceModel{1, {Seminorm::identity(1)}}));
}

TEST_CASE("separating_check agrees with the Gram-determinant oracle") {
  Rng rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t dim = 1 + rng.index(3);
    VectorSpaceModel model{dim, {}};
    const bool degenerate = trial % 2 == 0;
    if (degenerate) {
      // all rows multiples of one base row: rank <= 1
      std::vector<Complex> base(dim);
      for (auto& z : base) z = rng.complex_int_box(-2, 2);
      const std::size_t count = 1 + rng.index(3);
      for (std::size_t s = 0; s < count; ++s) {
        const Complex factor = rng.complex_int_box(-2, 2);
        std::vector<std::vector<Complex>> rows{std::vector<Complex>(dim)};
        for (std::size_t k = 0; k < dim; ++k) rows[0][k] = factor * base[k];
        model.seminorms.push_back(Seminorm::from_rows(dim, rows));
      }
    } else {
      const std::size_t count = 1 + rng.index(3);
      for (std::size_t s = 0; s < count; ++s) {
        const std::size_t rows_n = 1 + rng.index(2);
        std::vector<std::vector<Complex>> rows(rows_n, std::vector<Complex>(dim));
        for (auto& row : rows) {
          for (auto& z : row) z = rng.complex_int_box(-2, 2);
        }
        model.seminorms.push_back(Seminorm::from_rows(dim, rows));
      }
    }
    CAPTURE(trial);
    CHECK(separating_check(model) == separating_by_gram(model));
  }
}

TEST_CASE("model validation rejects a non-separating family") {
  VectorSpaceModel model{2, {Seminorm::coordinate(2, 0)}};
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
}
