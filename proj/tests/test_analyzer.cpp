#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "rpmap/harness.hpp"

using namespace rpmap;
using jsonio::json;

namespace {

const FiniteSpace kAB{{"a", "b"}, {}};
const FiniteSpace kP{{"p"}, {}};
const FiniteSpace kPQ{{"p", "q"}, {}};
const VectorSpaceModel kLine{1, {Seminorm::identity(1)}};
const VectorSpaceModel kPlane{2, {Seminorm::identity(2)}};

MapUnderTest composition_map(const FiniteSpace& x, const FiniteSpace& y,
                             const VectorSpaceModel& model, const Symbol& phi,
                             const VectorFunction& offset) {
  MapUnderTest t{x, y, model, nullptr};
  t.evaluator = [phi, offset](const VectorFunction& f) { return add(offset, compose(f, phi)); };
  return t;
}

MapUnderTest lambda_map(const FiniteSpace& x, const FiniteSpace& y, const VectorSpaceModel& model,
                        std::function<VectorFunction(const VectorFunction&)> fn) {
  return MapUnderTest{x, y, model, std::move(fn)};
}

VectorFunction scalar_table(const FiniteSpace& space, std::vector<Complex> values) {
  VectorFunction f{space, kLine, {}};
  for (const auto& z : values) f.values.push_back(ComplexVector{z});
  return f;
}

bool has_witness(const AnalysisReport& report, WitnessKind kind) {
  for (const auto& w : report.witnesses) {
    if (w.kind == kind) return true;
  }
  return false;
}

AnalyzerConfig exact_config(std::uint64_t seed) {
  AnalyzerConfig config;
  config.seed = seed;
  config.tol = 0.0;
  config.integer_samples = true;
  return config;
}

}  // namespace

TEST_CASE("normalize recovers the offset and pins T'(0) to zero") {
  const Symbol phi{kP, kAB, {1}};
  const VectorFunction offset = scalar_table(kP, {Complex{3, 1}});
  const MapUnderTest t = composition_map(kAB, kP, kLine, phi, offset);
  auto [got_offset, t_prime] = normalize(t);
  CHECK(exact_equal(got_offset, offset));
  CHECK(is_zero(t_prime.eval(zero_function(kAB, kLine))));
  // already-normalized map: offset is the zero function
  auto [zero_offset, t2] = normalize(composition_map(kAB, kP, kLine, phi, zero_function(kP, kLine)));
  (void)t2;
  CHECK(is_zero(zero_offset));
}

TEST_CASE("normalize of a constant map leaves the zero map") {
  const VectorFunction k = scalar_table(kP, {Complex{5, -2}});
  const MapUnderTest t = lambda_map(kAB, kP, kLine, [k](const VectorFunction&) { return k; });
  auto [offset, t_prime] = normalize(t);
  CHECK(exact_equal(offset, k));
  Rng rng(1);
  CHECK(is_zero(t_prime.eval(random_vector_function(rng, kAB, kLine, false))));
}

TEST_CASE("range preservation holds with distance zero for compositions") {
  const Symbol phi{kPQ, kAB, {1, 0}};
  const VectorFunction offset = scalar_table(kPQ, {Complex{1, 0}, Complex{-2, 0}});
  const MapUnderTest t = composition_map(kAB, kPQ, kLine, phi, offset);
  Rng rng(7);
  const auto pairs = sample_pair_family(rng, kAB, kLine, 64, true);
  const RangeCheckOutcome outcome = check_range_preservation(t, pairs, 0.0);
  CHECK_FALSE(outcome.witness.has_value());
  CHECK(outcome.max_distance == 0.0);
  CHECK(outcome.nonexpansive_excess <= 0.0);
}

TEST_CASE("a constant map fails range preservation at distance one") {
  const MapUnderTest t = lambda_map(kAB, kP, kLine, [](const VectorFunction& f) {
    VectorFunction out{kP, kLine, {ComplexVector{Complex{4, 0}}}};
    (void)f;
    return out;
  });
  const VectorFunction f =
      tensor(constant_function(kAB, Complex{1, 0}), basis_vector(1, 0), kLine);
  const VectorFunction zero = zero_function(kAB, kLine);
  const RangeCheckOutcome outcome = check_range_preservation(t, {{f, zero}}, 1e-9);
  REQUIRE(outcome.witness.has_value());
  CHECK(outcome.witness->kind == WitnessKind::RangeViolation);
  CHECK(outcome.max_distance == doctest::Approx(1.0));
  CHECK(replay_witness(t, *outcome.witness, 1e-9));
}

TEST_CASE("a nonconstant-triggered bump passes (F,F) but fails (F,0)") {
  Rng seed_rng(11);
  InstanceSpec spec = random_composition_spec(seed_rng, 3, 2, 1, true);
  spec.kind = MapKind::PerturbedComposition;
  spec.epsilon = 1e-3;
  spec.trigger = PerturbTrigger::NonConstant;
  const MapUnderTest t = generate(spec);

  const VectorFunction f = scalar_table(spec.x, {Complex{0, 0}, Complex{1, 0}, Complex{2, 0}});
  const VectorFunction zero = zero_function(spec.x, spec.model);
  CHECK_FALSE(check_range_preservation(t, {{f, f}}, 1e-9).witness.has_value());

  const RangeCheckOutcome outcome = check_range_preservation(t, {{f, zero}}, 1e-9);
  REQUIRE(outcome.witness.has_value());
  // nearest range member sits exactly epsilon away
  CHECK(outcome.max_distance == doctest::Approx(1e-3));
}

TEST_CASE("scalar_action recovers the composition coefficient") {
  const Symbol phi{kP, kAB, {1}};
  const MapUnderTest t = composition_map(kAB, kP, kLine, phi, zero_function(kP, kLine));
  const ScalarFunction f{kAB, {Complex{3, 0}, Complex{4, 0}}};
  const ScalarAction action = scalar_action(t, ComplexVector{Complex{2, 0}}, f);
  CHECK(action.g.values[0] == Complex{4, 0});
  CHECK(action.residual == 0.0);
}

TEST_CASE("scalar_action of the zero function is zero") {
  const Symbol phi{kP, kAB, {0}};
  const MapUnderTest t = composition_map(kAB, kP, kLine, phi, zero_function(kP, kLine));
  const ScalarAction action =
      scalar_action(t, basis_vector(1, 0), constant_function(kAB, Complex{0, 0}));
  CHECK(action.g.values[0] == Complex{0, 0});
  CHECK(action.residual == 0.0);
}

TEST_CASE("a coordinate rotation defeats colinearity") {
  // T'(F)(p) = R F(a) with R the quarter-turn
  const MapUnderTest t = lambda_map(kAB, kP, kPlane, [](const VectorFunction& f) {
    ComplexMatrix r = ComplexMatrix::identity(2);
    r.at(0, 0) = Complex{0, 0};
    r.at(0, 1) = Complex{-1, 0};
    r.at(1, 0) = Complex{1, 0};
    r.at(1, 1) = Complex{0, 0};
    VectorFunction out{kP, f.model, {r.apply(f.values[0])}};
    return out;
  });
  const ScalarAction action = scalar_action(t, basis_vector(2, 0), indicator_function(kAB, 0));
  CHECK(action.g.values[0] == Complex{0, 0});
  CHECK(action.residual == doctest::Approx(1.0));  // |f(a)| with f(a) = 1
  CHECK_THROWS_AS(scalar_action(t, zero_vector(2), indicator_function(kAB, 0)),
                  std::invalid_argument);
}

TEST_CASE("point functionals of a composition are exactly multiplicative and linear") {
  const Symbol phi{kPQ, kAB, {1, 0}};
  const VectorFunction offset = scalar_table(kPQ, {Complex{2, 0}, Complex{0, 1}});
  auto [off, t_prime] = normalize(composition_map(kAB, kPQ, kLine, phi, offset));
  (void)off;
  Rng rng(3);
  const auto fs = probe_scalar_family(kAB, rng, 2, true);
  const std::vector<Complex> lambdas{Complex{2, 0}, Complex{0, 1}};
  const PointFunctionalReport report =
      check_point_functional_all(t_prime, basis_vector(1, 0), fs, lambdas);
  CHECK(report.linearity == 0.0);
  CHECK(report.multiplicativity == 0.0);
  CHECK(report.unitality == 0.0);
}

TEST_CASE("the averaging functional shows the quarter multiplicativity defect") {
  const MapUnderTest t = lambda_map(kAB, kP, kLine, [](const VectorFunction& f) {
    const Complex mean = (f.values[0][0] + f.values[1][0]) / 2.0;
    return VectorFunction{kP, kLine, {ComplexVector{mean}}};
  });
  const std::vector<ScalarFunction> fs{indicator_function(kAB, 0)};
  const PointFunctionalReport report =
      check_point_functional(t, basis_vector(1, 0), 0, fs, {Complex{2, 0}});
  // delta(1_a * 1_a) = 1/2 while delta(1_a)^2 = 1/4
  CHECK(report.multiplicativity == doctest::Approx(0.25));
}

TEST_CASE("a conjugation functional shows the 2|f(a)| linearity defect at lambda = i") {
  const MapUnderTest t = lambda_map(kAB, kP, kLine, [](const VectorFunction& f) {
    return VectorFunction{kP, kLine, {ComplexVector{std::conj(f.values[0][0])}}};
  });
  const std::vector<ScalarFunction> fs{indicator_function(kAB, 0)};
  const PointFunctionalReport report =
      check_point_functional(t, basis_vector(1, 0), 0, fs, {Complex{0, 1}});
  CHECK(report.linearity == doctest::Approx(2.0));
}

TEST_CASE("extract_symbol reads the symbol off indicator probes") {
  const Symbol phi{kP, kAB, {1}};
  const MapUnderTest t = composition_map(kAB, kP, kLine, phi, zero_function(kP, kLine));
  const SymbolExtraction extraction = extract_symbol(t, basis_vector(1, 0), 0.0);
  REQUIRE(extraction.symbol.has_value());
  CHECK(*extraction.symbol == phi);
}

TEST_CASE("extract_symbol on the identity map returns the identity symbol") {
  const MapUnderTest t =
      lambda_map(kAB, kAB, kLine, [](const VectorFunction& f) { return f; });
  const SymbolExtraction extraction = extract_symbol(t, basis_vector(1, 0), 0.0);
  REQUIRE(extraction.symbol.has_value());
  CHECK(*extraction.symbol == identity_symbol(kAB));
}

TEST_CASE("extract_symbol reports averaging ambiguity with the probe responses") {
  const MapUnderTest t = lambda_map(kAB, kP, kLine, [](const VectorFunction& f) {
    const Complex mean = (f.values[0][0] + f.values[1][0]) / 2.0;
    return VectorFunction{kP, kLine, {ComplexVector{mean}}};
  });
  const SymbolExtraction extraction = extract_symbol(t, basis_vector(1, 0), 1e-9);
  CHECK_FALSE(extraction.symbol.has_value());
  REQUIRE(extraction.ambiguities.size() == 1);
  const json& payload = extraction.ambiguities[0].payload;
  CHECK(jsonio::decode_complex(payload.at("responses").at("a")) == Complex{0.5, 0.0});
  CHECK(jsonio::decode_complex(payload.at("responses").at("b")) == Complex{0.5, 0.0});
}

TEST_CASE("u-independence holds exactly for compositions") {
  const Symbol phi{kPQ, kAB, {0, 1}};
  const VectorFunction offset{kPQ, kPlane, {ComplexVector{Complex{1, 0}, Complex{0, 2}},
                                            ComplexVector{Complex{0, 0}, Complex{-1, 0}}}};
  auto [off, t_prime] = normalize(composition_map(kAB, kPQ, kPlane, phi, offset));
  (void)off;
  Rng rng(5);
  const auto fs = probe_scalar_family(kAB, rng, 2, true);
  const UIndependenceOutcome outcome =
      check_u_independence(t_prime, default_probe_vectors(2), fs, 0.0);
  CHECK(outcome.residual == 0.0);
  CHECK_FALSE(outcome.witness.has_value());
}

TEST_CASE("a direction-dependent map is caught with residual one") {
  // coefficient on e1 via phi1(p) = a, on e2 via phi2(p) = b
  const MapUnderTest t = lambda_map(kAB, kP, kPlane, [](const VectorFunction& f) {
    VectorFunction out = zero_function(kP, f.model);
    out.values[0][0] = f.values[0][0];
    out.values[0][1] = f.values[1][1];
    return out;
  });
  const std::vector<ScalarFunction> fs{indicator_function(kAB, 0)};
  const std::vector<ComplexVector> us{basis_vector(2, 0), basis_vector(2, 1)};
  const UIndependenceOutcome outcome = check_u_independence(t, us, fs, 1e-9);
  CHECK(outcome.residual == doctest::Approx(1.0));
  REQUIRE(outcome.witness.has_value());
  CHECK(replay_witness(t, *outcome.witness, 1e-9));
}

TEST_CASE("dependent probes satisfy the projection identity on arbitrary maps") {
  // g_{alpha u, f} = g_{u, alpha f} / alpha, because f (x) (alpha u) and
  // (alpha f) (x) u are the same input function
  const MapUnderTest squaring = lambda_map(kAB, kP, kLine, [](const VectorFunction& f) {
    const Complex v = f.values[0][0];
    return VectorFunction{kP, kLine, {ComplexVector{v * v}}};
  });
  Rng rng(9);
  for (const Complex alpha : {Complex{2, 0}, Complex{0, 1}, Complex{1, -1}}) {
    const ScalarFunction f = random_scalar_function(rng, kAB, false);
    const ComplexVector u = basis_vector(1, 0);
    const ScalarFunction lhs = scalar_action(squaring, alpha * u, f).g;
    const ScalarFunction rhs = scalar_action(squaring, u, scale(alpha, f)).g;
    for (std::size_t y = 0; y < lhs.values.size(); ++y)
      CHECK(std::abs(lhs.values[y] - rhs.values[y] / alpha) <= 1e-12);
  }
}

TEST_CASE("tensor additivity vanishes for compositions and flags a square term") {
  const Symbol phi{kP, kAB, {0}};
  auto [off, comp] = normalize(composition_map(kAB, kP, kPlane, phi, zero_function(kP, kPlane)));
  (void)off;
  const ScalarFunction one = constant_function(kAB, Complex{1, 0});
  CHECK(check_tensor_additivity(comp, one, basis_vector(2, 0), one, basis_vector(2, 1)) == 0.0);

  // T'(F) = F o phi + (F o phi)^2 coordinatewise
  const MapUnderTest squared = lambda_map(kAB, kP, kLine, [](const VectorFunction& f) {
    const Complex v = f.values[0][0];
    return VectorFunction{kP, kLine, {ComplexVector{v + v * v}}};
  });
  const ScalarFunction one1 = constant_function(kAB, Complex{1, 0});
  const double residual =
      check_tensor_additivity(squared, one1, basis_vector(1, 0), one1, basis_vector(1, 0));
  CHECK(residual == doctest::Approx(2.0));  // |(2)^2 - 2 (1)^2|

  // a zero vector degenerates to the normalized identity T'(0) = 0
  CHECK(check_tensor_additivity(squared, one1, basis_vector(1, 0), one1, zero_vector(1)) == 0.0);
}

TEST_CASE("verify_composition is exact on generated instances") {
  Rng rng(13);
  const InstanceSpec spec = random_composition_spec(rng, 4, 3, 2, true);
  const MapUnderTest t = generate(spec);
  Rng sample_rng(14);
  const auto samples = sample_function_family(sample_rng, spec.x, spec.model, 200, true);
  const CompositionCheck check =
      verify_composition(t, *spec.symbol, *spec.offset, samples, 0.0);
  CHECK(check.residual == 0.0);
  CHECK_FALSE(check.witness.has_value());
}

TEST_CASE("verify_composition measures an epsilon bump exactly") {
  Rng rng(15);
  InstanceSpec spec = random_composition_spec(rng, 3, 2, 2, true);
  spec.kind = MapKind::PerturbedComposition;
  spec.epsilon = 1e-3;
  spec.trigger = PerturbTrigger::NonZero;
  const MapUnderTest t = generate(spec);
  Rng sample_rng(16);
  const auto samples = sample_function_family(sample_rng, spec.x, spec.model, 32, true);
  const CompositionCheck check =
      verify_composition(t, *spec.symbol, *spec.offset, samples, 1e-9);
  CHECK(check.residual == doctest::Approx(1e-3));
  REQUIRE(check.witness.has_value());
  CHECK(replay_witness(t, *check.witness, 1e-9));
}

TEST_CASE("verify_composition separates a wrong symbol via indicator samples") {
  const Symbol phi{kPQ, kAB, {0, 1}};
  const MapUnderTest t = composition_map(kAB, kPQ, kLine, phi, zero_function(kPQ, kLine));
  Symbol wrong = phi;
  wrong.table[0] = 1;
  std::vector<VectorFunction> samples;
  for (std::size_t x = 0; x < kAB.size(); ++x)
    samples.push_back(tensor(indicator_function(kAB, x), basis_vector(1, 0), kLine));
  const CompositionCheck check =
      verify_composition(t, wrong, zero_function(kPQ, kLine), samples, 1e-9);
  CHECK(check.residual >= 1.0);
}

TEST_CASE("preimage_construct extends by zero off the image") {
  const FiniteSpace x{{"a", "b", "c"}, {}};
  const Symbol phi{kPQ, x, {0, 2}};
  const VectorFunction h = scalar_table(kPQ, {Complex{7, 0}, Complex{9, 0}});
  const VectorFunction f = preimage_construct(phi, zero_function(kPQ, kLine), h);
  CHECK(f.values[0][0] == Complex{7, 0});
  CHECK(f.values[1][0] == Complex{0, 0});
  CHECK(f.values[2][0] == Complex{9, 0});

  const VectorFunction offset = scalar_table(kPQ, {Complex{1, 0}, Complex{2, 0}});
  CHECK(is_zero(preimage_construct(phi, offset, offset)));

  const Symbol collide{kPQ, x, {0, 0}};
  CHECK_THROWS_AS(preimage_construct(collide, zero_function(kPQ, kLine), h),
                  std::invalid_argument);
}

TEST_CASE("corollary diagnostics on bijective, non-surjective and non-injective symbols") {
  AnalyzerConfig config = exact_config(21);

  // bijective
  {
    const Symbol phi{kPQ, kAB, {0, 1}};
    const VectorFunction offset = scalar_table(kPQ, {Complex{1, 0}, Complex{-1, 0}});
    const MapUnderTest t = composition_map(kAB, kPQ, kLine, phi, offset);
    const CorollaryReport report = corollary_diagnostics(t, phi, offset, config);
    CHECK(report.t_injective);
    CHECK(report.t_surjective);
    CHECK(report.range_equality);
    CHECK(report.witnesses.at("range_equality").at("pass").get<bool>());
    CHECK(report.witnesses.at("surjectivity").at("pass").get<bool>());
  }

  // not surjective: x0 = b is missed, the indicator collapses to the offset
  {
    const Symbol phi{kP, kAB, {0}};
    const VectorFunction offset = scalar_table(kP, {Complex{2, 0}});
    const MapUnderTest t = composition_map(kAB, kP, kLine, phi, offset);
    const CorollaryReport report = corollary_diagnostics(t, phi, offset, config);
    CHECK_FALSE(report.t_injective);
    CHECK_FALSE(report.range_equality);
    const json& urysohn = report.witnesses.at("urysohn");
    CHECK(urysohn.at("x0").get<std::string>() == "b");
    CHECK(urysohn.at("f_nonzero").get<bool>());
    CHECK(urysohn.at("collapses").get<bool>());
    CHECK(report.witnesses.at("range_equality").at("pass").get<bool>());
  }

  // not injective: p and q collide, H deviating from the forced gap is unattainable
  {
    const Symbol phi{kPQ, kAB, {0, 0}};
    const VectorFunction offset = scalar_table(kPQ, {Complex{1, 0}, Complex{0, 2}});
    const MapUnderTest t = composition_map(kAB, kPQ, kLine, phi, offset);
    const CorollaryReport report = corollary_diagnostics(t, phi, offset, config);
    CHECK_FALSE(report.t_surjective);
    const json& surj = report.witnesses.at("surjectivity");
    CHECK(surj.at("y1").get<std::string>() == "p");
    CHECK(surj.at("y2").get<std::string>() == "q");
    CHECK(surj.at("unattainable").get<bool>());
  }
}

TEST_CASE("classify round-trips an exact composition instance") {
  Rng rng(31);
  const InstanceSpec spec = random_composition_spec(rng, 3, 2, 2, true);
  const AnalysisReport report = classify(generate(spec), exact_config(spec.seed));
  CHECK(report.composition_consistent);
  REQUIRE(report.extraction.symbol.has_value());
  CHECK(*report.extraction.symbol == *spec.symbol);
  CHECK(exact_equal(report.extraction.offset, *spec.offset));
  CHECK(report.residuals.max() == 0.0);
  CHECK(report.corollary.has_value());
}

TEST_CASE("classify rejects an averaging map with range and ambiguity witnesses") {
  Rng rng(33);
  const InstanceSpec spec = random_adversarial_spec(rng, MapKind::Averaging, 2, 2, 2);
  AnalyzerConfig config;
  config.seed = 33;
  const AnalysisReport report = classify(generate(spec), config);
  CHECK_FALSE(report.composition_consistent);
  CHECK(has_witness(report, WitnessKind::RangeViolation));
  CHECK(has_witness(report, WitnessKind::Ambiguity));
}

TEST_CASE("classify rejects a rotation map with a colinearity witness") {
  Rng rng(35);
  const InstanceSpec spec = random_adversarial_spec(rng, MapKind::Rotation, 2, 2, 2);
  AnalyzerConfig config;
  config.seed = 35;
  const AnalysisReport report = classify(generate(spec), config);
  CHECK_FALSE(report.composition_consistent);
  CHECK(has_witness(report, WitnessKind::Colinearity));
}

TEST_CASE("classify rejects a direction-dependent map with a u-dependence witness") {
  Rng rng(37);
  const InstanceSpec spec = random_adversarial_spec(rng, MapKind::DirectionDependent, 3, 2, 2);
  AnalyzerConfig config;
  config.seed = 37;
  const AnalysisReport report = classify(generate(spec), config);
  CHECK_FALSE(report.composition_consistent);
  CHECK(has_witness(report, WitnessKind::UDependence));
}

TEST_CASE("classify pins the perturbed composition by its representation residual") {
  Rng rng(39);
  const InstanceSpec spec =
      random_adversarial_spec(rng, MapKind::PerturbedComposition, 3, 2, 2);
  AnalyzerConfig config;
  config.seed = 39;
  const AnalysisReport report = classify(generate(spec), config);
  CHECK_FALSE(report.composition_consistent);
  REQUIRE(report.extraction.symbol.has_value());
  CHECK(*report.extraction.symbol == *spec.symbol);  // tensor probes dodge the bump
  CHECK(report.residuals.representation >= spec.epsilon - config.tol);
  CHECK(has_witness(report, WitnessKind::Representation));
}

TEST_CASE("every witness emitted on the catalog replays to a failure") {
  Rng rng(41);
  for (const MapKind kind : {MapKind::Constant, MapKind::Averaging, MapKind::Rotation,
                             MapKind::DirectionDependent, MapKind::PerturbedComposition}) {
    const InstanceSpec spec = random_adversarial_spec(rng, kind, 3, 2, 2);
    const MapUnderTest t = generate(spec);
    AnalyzerConfig config;
    config.seed = 41;
    const AnalysisReport report = classify(t, config);
    CAPTURE(map_kind_name(kind));
    CHECK_FALSE(report.composition_consistent);
    for (const auto& w : report.witnesses) {
      CAPTURE(witness_kind_name(w.kind));
      CHECK(replay_witness(t, w, config.tol));
    }
  }
}

TEST_CASE("an impure evaluator draws a purity witness") {
  const Symbol phi{kP, kAB, {0}};
  auto counter = std::make_shared<int>(0);
  const MapUnderTest t = lambda_map(kAB, kP, kLine, [phi, counter](const VectorFunction& f) {
    VectorFunction out = compose(f, phi);
    if (++*counter > 1) out.values[0][0] += Complex{1e-3, 0};
    return out;
  });
  AnalyzerConfig config;
  config.seed = 43;
  config.pair_budget = 16;
  const AnalysisReport report = classify(t, config);
  CHECK_FALSE(report.composition_consistent);
  CHECK(has_witness(report, WitnessKind::Purity));
}

TEST_CASE("purity witnesses from a noisy evaluator replay to failures") {
  auto state = std::make_shared<std::uint64_t>(99);
  const Symbol phi{kP, kAB, {0}};
  const MapUnderTest t = lambda_map(kAB, kP, kLine, [phi, state](const VectorFunction& f) {
    VectorFunction out = compose(f, phi);
    *state = *state * 6364136223846793005ULL + 1442695040888963407ULL;
    out.values[0][0] += Complex{static_cast<double>(*state >> 12) * 1e-22, 0};
    return out;
  });
  AnalyzerConfig config;
  config.seed = 45;
  config.pair_budget = 8;
  const AnalysisReport report = classify(t, config);
  REQUIRE(has_witness(report, WitnessKind::Purity));
  for (const auto& w : report.witnesses) {
    if (w.kind == WitnessKind::Purity) CHECK(replay_witness(t, w, config.tol));
  }
}

TEST_CASE("evaluator failures are recorded and the verdict is violated") {
  const MapUnderTest t = lambda_map(kAB, kP, kLine, [](const VectorFunction&) -> VectorFunction {
    throw std::runtime_error("backend unavailable");
  });
  AnalyzerConfig config;
  const AnalysisReport report = classify(t, config);
  CHECK_FALSE(report.composition_consistent);
  REQUIRE(report.evaluator_error.has_value());
  CHECK(*report.evaluator_error == "backend unavailable");
}

TEST_CASE("classify refuses a non-separating model") {
  MapUnderTest t{kAB, kP, VectorSpaceModel{2, {Seminorm::coordinate(2, 0)}},
                 [](const VectorFunction& f) { return f; }};
  CHECK_THROWS_AS(classify(t, AnalyzerConfig{}), std::invalid_argument);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  Rng rng(47);
  const InstanceSpec spec = random_composition_spec(rng, 3, 2, 2, false);
  const MapUnderTest t = generate(spec);
  AnalyzerConfig config;
  config.seed = spec.seed;

  const std::string first = report_to_json(classify(t, config)).dump();
  const std::string second = report_to_json(classify(t, config)).dump();
  CHECK(first == second);

  AnalyzerConfig threaded = config;
  threaded.threads = 4;
  const std::string parallel = report_to_json(classify(generate(spec), threaded)).dump();
  CHECK(parallel == first);

  // an adversarial report is deterministic too
  Rng rng2(49);
  const InstanceSpec bad = random_adversarial_spec(rng2, MapKind::Averaging, 3, 2, 2);
  AnalyzerConfig bad_config;
  bad_config.seed = bad.seed;
  const std::string bad_first = report_to_json(classify(generate(bad), bad_config)).dump();
  bad_config.threads = 4;
  const std::string bad_parallel = report_to_json(classify(generate(bad), bad_config)).dump();
  CHECK(bad_first == bad_parallel);
}
