#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "rpmap/funcspace.hpp"
#include "rpmap/ksfunc.hpp"

using namespace rpmap;

namespace {

const FiniteSpace kAB{{"a", "b"}, {}};

std::vector<ScalarFunction> conclusion_family(const FiniteSpace& space, Rng& rng, int randoms) {
  std::vector<ScalarFunction> family;
  for (std::size_t x = 0; x < space.size(); ++x) family.push_back(indicator_function(space, x));
  family.push_back(constant_function(space, Complex{1, 0}));
  for (int k = 0; k < randoms; ++k) family.push_back(random_scalar_function(rng, space, true));
  return family;
}

const std::vector<Complex> kLambdas{Complex{2, 0}, Complex{0, 1}, Complex{1, 1}};

}  // namespace

TEST_CASE("spectrum reads off the deduplicated value set") {
  const ScalarFunction f{kAB, {Complex{1, 0}, Complex{2, 0}}};
  CHECK(spectrum(f, 0.0).values == std::vector<Complex>{Complex{1, 0}, Complex{2, 0}});
  CHECK(spectrum(constant_function(kAB, Complex{0, 0}), 0.0).values ==
        std::vector<Complex>{Complex{0, 0}});
  CHECK(spectrum(constant_function(kAB, Complex{0, 1}), 0.0).values ==
        std::vector<Complex>{Complex{0, 1}});
}

TEST_CASE("point evaluations pass the hypothesis with distance zero") {
  const ScalarFunctional delta = point_evaluation(kAB, 0);
  const KsHypothesisOutcome outcome = check_ks_hypothesis(delta, ks_grid_pairs(kAB), 0.0);
  CHECK(outcome.pass);
  CHECK(outcome.max_distance == 0.0);
}

TEST_CASE("the averaging functional fails the hypothesis at distance one half") {
  const ScalarFunctional delta =
      averaging_functional(kAB, {Complex{0.5, 0}, Complex{0.5, 0}});
  // indicator pair (1_a, 0): delta difference 1/2 against the spectrum {1, 0}
  const ScalarFunction a = indicator_function(kAB, 0);
  const ScalarFunction zero = constant_function(kAB, Complex{0, 0});
  const KsHypothesisOutcome direct = check_ks_hypothesis(delta, {{a, zero}}, 1e-9);
  REQUIRE_FALSE(direct.pass);
  CHECK(direct.max_distance == doctest::Approx(0.5));

  Rng rng(5);
  const KsHypothesisOutcome outcome =
      check_ks_hypothesis(delta, ks_pair_family(kAB, rng, 4, true), 1e-9);
  CHECK_FALSE(outcome.pass);
  CHECK(outcome.witness.has_value());
}

TEST_CASE("the conjugation functional is caught by an i-scaled indicator") {
  const ScalarFunctional delta = conjugation_functional(kAB, 0);
  // a = i 1_a, b = 0: conj(i) = -i has distance 1 from the spectrum {i, 0}
  const ScalarFunction a = scale(Complex{0, 1}, indicator_function(kAB, 0));
  const ScalarFunction zero = constant_function(kAB, Complex{0, 0});
  const KsHypothesisOutcome direct = check_ks_hypothesis(delta, {{a, zero}}, 1e-9);
  REQUIRE_FALSE(direct.pass);
  CHECK(direct.max_distance == doctest::Approx(1.0));

  Rng rng(7);
  CHECK_FALSE(check_ks_hypothesis(delta, ks_pair_family(kAB, rng, 4, true), 1e-9).pass);
}

TEST_CASE("delta(0) != 0 is flagged immediately") {
  const ScalarFunctional delta{kAB, [](const ScalarFunction&) { return Complex{1, 0}; }};
  const KsHypothesisOutcome outcome = check_ks_hypothesis(delta, {}, 1e-9);
  CHECK_FALSE(outcome.pass);
  REQUIRE(outcome.witness.has_value());
  CHECK(outcome.witness->contains("zero"));
}

TEST_CASE("the conclusion check locates the representing point of a point evaluation") {
  Rng rng(9);
  const ScalarFunctional delta = point_evaluation(kAB, 1);
  const KsConclusionReport report =
      check_ks_conclusion(delta, conclusion_family(kAB, rng, 3), kLambdas, 0.0);
  CHECK(report.linearity == 0.0);
  CHECK(report.multiplicativity == 0.0);
  CHECK(report.unitality_gap == 0.0);
  REQUIRE(report.representing_point.has_value());
  CHECK(*report.representing_point == "b");
  CHECK(report.representation_residual == 0.0);
}

TEST_CASE("the averaging functional carries the quarter multiplicativity residual") {
  Rng rng(11);
  const ScalarFunctional delta =
      averaging_functional(kAB, {Complex{0.5, 0}, Complex{0.5, 0}});
  const KsConclusionReport report =
      check_ks_conclusion(delta, conclusion_family(kAB, rng, 0), kLambdas, 1e-9);
  CHECK(report.multiplicativity >= 0.25 - 1e-12);
  CHECK(report.linearity <= 1e-12);
  CHECK_FALSE(report.representing_point.has_value());
}

TEST_CASE("the zero functional is linear and multiplicative but has no point") {
  Rng rng(13);
  const ScalarFunctional delta = zero_scalar_functional(kAB);
  const KsConclusionReport report =
      check_ks_conclusion(delta, conclusion_family(kAB, rng, 2), kLambdas, 1e-9);
  CHECK(report.zero_functional);
  CHECK(report.linearity == 0.0);
  CHECK(report.multiplicativity == 0.0);
  CHECK_FALSE(report.representing_point.has_value());
  // and it still fails the hypothesis: 0 - 0 is not in the spectrum of 1 - 0
  const KsHypothesisOutcome hypothesis =
      check_ks_hypothesis(delta, {{constant_function(kAB, Complex{1, 0}),
                                   constant_function(kAB, Complex{0, 0})}},
                          1e-9);
  CHECK_FALSE(hypothesis.pass);
}

TEST_CASE("hypothesis-pass matches a zero-residual conclusion over the catalog") {
  for (std::size_t n = 1; n <= 3; ++n) {
    FiniteSpace space;
    for (std::size_t i = 0; i < n; ++i) space.labels.push_back(std::string(1, char('a' + i)));

    std::vector<ScalarFunctional> catalog;
    for (std::size_t x = 0; x < n; ++x) catalog.push_back(point_evaluation(space, x));
    std::vector<Complex> uniform(n, Complex{1.0 / static_cast<double>(n), 0});
    catalog.push_back(averaging_functional(space, uniform));
    catalog.push_back(conjugation_functional(space, 0));
    catalog.push_back(scaled_functional(space, 0, Complex{2, 0}));
    catalog.push_back(zero_scalar_functional(space));

    const auto pairs = ks_grid_pairs(space);
    Rng rng(100 + n);
    const auto family = conclusion_family(space, rng, 2);
    for (std::size_t k = 0; k < catalog.size(); ++k) {
      const bool hypothesis_pass = check_ks_hypothesis(catalog[k], pairs, 0.0).pass;
      const KsConclusionReport conclusion =
          check_ks_conclusion(catalog[k], family, kLambdas, 0.0);
      const bool conclusion_clean = conclusion.linearity == 0.0 &&
                                    conclusion.multiplicativity == 0.0 &&
                                    conclusion.representing_point.has_value();
      CAPTURE(n);
      CAPTURE(k);
      CHECK(hypothesis_pass == conclusion_clean);
    }
  }
}

TEST_CASE("the scalar spectrum agrees with the one-dimensional range") {
  Rng rng(17);
  const VectorSpaceModel line{1, {Seminorm::identity(1)}};
  for (int trial = 0; trial < 30; ++trial) {
    const ScalarFunction f = random_scalar_function(rng, kAB, false);
    const ScalarFunction g = random_scalar_function(rng, kAB, false);
    ScalarFunction diff = f;
    for (std::size_t i = 0; i < diff.values.size(); ++i)
      diff.values[i] = f.values[i] - g.values[i];
    const SpectrumSet s = spectrum(diff, 1e-9);

    VectorFunction fd{kAB, line, {}};
    for (const auto& z : diff.values) fd.values.push_back(ComplexVector{z});
    const RangeSet r = range(fd, 1e-9);
    REQUIRE(s.values.size() == r.representatives.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
      CHECK(s.values[i] == r.representatives[i][0]);
  }
}

TEST_CASE("functional purity replay catches a stateful functional") {
  auto counter = std::make_shared<int>(0);
  const ScalarFunctional impure{kAB, [counter](const ScalarFunction& f) {
                                  return f.values[0] + Complex{static_cast<double>((*counter)++),
                                                               0} *
                                                           Complex{1e-6, 0};
                                }};
  Rng rng(19);
  CHECK_FALSE(functional_is_pure(impure, conclusion_family(kAB, rng, 1)));
  CHECK(functional_is_pure(point_evaluation(kAB, 0), conclusion_family(kAB, rng, 1)));
}
