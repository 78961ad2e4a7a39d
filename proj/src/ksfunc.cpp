#include "rpmap/ksfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rpmap/sampling.hpp"

namespace rpmap {

using jsonio::json;

SpectrumSet spectrum(const ScalarFunction& f, double tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");
  SpectrumSet s{{}, tol};
  for (const auto& z : f.values) {
    bool fresh = true;
    for (const auto& rep : s.values) {
      if (std::abs(rep - z) <= tol) {
        fresh = false;
        break;
      }
    }
    if (fresh) s.values.push_back(z);
  }
  return s;
}

SpectrumQuery spectrum_contains(const SpectrumSet& s, const Complex& z, double tol) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& rep : s.values) best = std::min(best, std::abs(rep - z));
  return SpectrumQuery{best <= tol, best};
}

KsHypothesisOutcome check_ks_hypothesis(
    const ScalarFunctional& delta,
    const std::vector<std::pair<ScalarFunction, ScalarFunction>>& pairs, double tol) {
  KsHypothesisOutcome outcome;
  const ScalarFunction zero = constant_function(delta.space, Complex{0.0, 0.0});
  const Complex at_zero = delta.evaluator(zero);
  if (std::abs(at_zero) > tol) {
    outcome.pass = false;
    outcome.max_distance = std::abs(at_zero);
    outcome.witness = json{{"zero", jsonio::encode(at_zero)}};
    return outcome;
  }
  for (const auto& [a, b] : pairs) {
    const Complex da = delta.evaluator(a);
    const Complex db = delta.evaluator(b);
    ScalarFunction diff = a;
    for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] = a.values[i] - b.values[i];
    const SpectrumQuery q = spectrum_contains(spectrum(diff, tol), da - db, tol);
    outcome.max_distance = std::max(outcome.max_distance, q.member ? 0.0 : q.distance);
    if (!q.member && outcome.pass) {
      outcome.pass = false;
      outcome.witness = json{{"a", jsonio::encode_scalar_function(a)},
                             {"b", jsonio::encode_scalar_function(b)},
                             {"distance", q.distance}};
    }
  }
  return outcome;
}

std::vector<std::pair<ScalarFunction, ScalarFunction>> ks_pair_family(const FiniteSpace& space,
                                                                      Rng& rng, int extra_random,
                                                                      bool integer) {
  std::vector<ScalarFunction> family;
  for (std::size_t x = 0; x < space.size(); ++x) family.push_back(indicator_function(space, x));
  for (std::size_t x = 0; x < space.size(); ++x)
    family.push_back(scale(Complex{0.0, 1.0}, indicator_function(space, x)));
  family.push_back(constant_function(space, Complex{1.0, 0.0}));
  family.push_back(constant_function(space, Complex{0.0, 0.0}));
  for (int k = 0; k < extra_random; ++k)
    family.push_back(random_scalar_function(rng, space, integer));

  std::vector<std::pair<ScalarFunction, ScalarFunction>> pairs;
  for (const auto& a : family) {
    for (const auto& b : family) pairs.emplace_back(a, b);
  }
  return pairs;
}

std::vector<std::pair<ScalarFunction, ScalarFunction>> ks_grid_pairs(const FiniteSpace& space) {
  const std::vector<Complex> grid{Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{-1.0, 0.0},
                                  Complex{0.0, 1.0}, Complex{0.0, -1.0}};
  const std::size_t n = space.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= grid.size();

  std::vector<ScalarFunction> family;
  family.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    ScalarFunction f{space, {}};
    std::size_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      f.values.push_back(grid[rest % grid.size()]);
      rest /= grid.size();
    }
    family.push_back(std::move(f));
  }
  std::vector<std::pair<ScalarFunction, ScalarFunction>> pairs;
  pairs.reserve(total * total);
  for (const auto& a : family) {
    for (const auto& b : family) pairs.emplace_back(a, b);
  }
  return pairs;
}

KsConclusionReport check_ks_conclusion(const ScalarFunctional& delta,
                                       const std::vector<ScalarFunction>& family,
                                       const std::vector<Complex>& lambdas, double tol) {
  KsConclusionReport report;
  const FiniteSpace& space = delta.space;
  const ScalarFunction one = constant_function(space, Complex{1.0, 0.0});
  const Complex at_one = delta.evaluator(one);
  report.unitality_gap = std::abs(at_one - Complex{1.0, 0.0});

  std::vector<Complex> values;
  values.reserve(family.size());
  for (const auto& f : family) values.push_back(delta.evaluator(f));

  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Complex dm = delta.evaluator(pointwise_mul(family[i], family[j]));
      report.multiplicativity =
          std::max(report.multiplicativity, std::abs(dm - values[i] * values[j]));
      for (const auto& lambda : lambdas) {
        const Complex dl = delta.evaluator(add(family[i], scale(lambda, family[j])));
        report.linearity =
            std::max(report.linearity, std::abs(dl - values[i] - lambda * values[j]));
      }
    }
  }

  bool all_zero = std::abs(at_one) <= tol;
  for (const auto& v : values) {
    if (std::abs(v) > tol) all_zero = false;
  }
  if (all_zero) {
    report.zero_functional = true;
    return report;
  }

  if (report.linearity <= tol && report.multiplicativity <= tol && report.unitality_gap <= tol) {
    std::vector<std::size_t> candidates;
    bool others_clean = true;
    std::vector<Complex> probe_values(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
      probe_values[x] = delta.evaluator(indicator_function(space, x));
      if (std::abs(probe_values[x] - Complex{1.0, 0.0}) <= tol) {
        candidates.push_back(x);
      } else if (std::abs(probe_values[x]) > tol) {
        others_clean = false;
      }
    }
    if (candidates.size() == 1 && others_clean) {
      report.representing_point = space.labels[candidates[0]];
      for (std::size_t i = 0; i < family.size(); ++i) {
        report.representation_residual =
            std::max(report.representation_residual,
                     std::abs(values[i] - family[i].values[candidates[0]]));
      }
    } else {
      json responses = json::object();
      for (std::size_t x = 0; x < space.size(); ++x)
        responses[space.labels[x]] = jsonio::encode(probe_values[x]);
      report.ambiguity = json{{"responses", responses}};
    }
  }
  return report;
}

bool functional_is_pure(const ScalarFunctional& delta,
                        const std::vector<ScalarFunction>& family) {
  for (const auto& f : family) {
    const Complex first = delta.evaluator(f);
    const Complex second = delta.evaluator(f);
    if (first != second) return false;
  }
  return true;
}

ScalarFunctional point_evaluation(const FiniteSpace& space, std::size_t x) {
  if (x >= space.size()) throw std::invalid_argument("point index out of range");
  return ScalarFunctional{space, [x](const ScalarFunction& f) { return f.values[x]; }};
}

ScalarFunctional averaging_functional(const FiniteSpace& space, std::vector<Complex> weights) {
  if (weights.size() != space.size())
    throw std::invalid_argument("averaging needs one weight per point");
  return ScalarFunctional{space, [weights](const ScalarFunction& f) {
                            Complex acc{0.0, 0.0};
                            for (std::size_t i = 0; i < weights.size(); ++i)
                              acc += weights[i] * f.values[i];
                            return acc;
                          }};
}

ScalarFunctional conjugation_functional(const FiniteSpace& space, std::size_t x) {
  if (x >= space.size()) throw std::invalid_argument("point index out of range");
  return ScalarFunctional{space,
                          [x](const ScalarFunction& f) { return std::conj(f.values[x]); }};
}

ScalarFunctional scaled_functional(const FiniteSpace& space, std::size_t x,
                                   const Complex& factor) {
  if (x >= space.size()) throw std::invalid_argument("point index out of range");
  return ScalarFunctional{space,
                          [x, factor](const ScalarFunction& f) { return factor * f.values[x]; }};
}

ScalarFunctional zero_scalar_functional(const FiniteSpace& space) {
  return ScalarFunctional{space, [](const ScalarFunction&) { return Complex{0.0, 0.0}; }};
}

}  // namespace rpmap
