#include "rpmap/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace rpmap {

using jsonio::json;

VectorFunction MapUnderTest::eval(const VectorFunction& f) const {
  if (!(f.space == domain)) throw std::invalid_argument("input function not on the domain space");
  if (f.model.dimension != model.dimension)
    throw std::invalid_argument("input function dimension mismatch");
  VectorFunction out = evaluator(f);
  if (!(out.space == codomain)) throw std::runtime_error("evaluator returned a wrong space");
  if (out.values.size() != codomain.size()) throw std::runtime_error("evaluator output not total");
  for (const auto& v : out.values) {
    if (v.dim() != model.dimension) throw std::runtime_error("evaluator output dimension mismatch");
  }
  return out;
}

const char* witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::RangeViolation: return "range-violation";
    case WitnessKind::Colinearity: return "colinearity";
    case WitnessKind::Ambiguity: return "ambiguity";
    case WitnessKind::Additivity: return "additivity";
    case WitnessKind::UDependence: return "u-dependence";
    case WitnessKind::Representation: return "representation";
    case WitnessKind::Purity: return "purity";
  }
  return "unknown";
}

double Residuals::max() const {
  double m = range_distance;
  m = std::fmax(m, nonexpansive_excess);
  m = std::fmax(m, colinearity);
  m = std::fmax(m, point_linearity);
  m = std::fmax(m, point_multiplicativity);
  m = std::fmax(m, point_unitality);
  m = std::fmax(m, u_independence);
  m = std::fmax(m, additivity);
  m = std::fmax(m, representation);
  return m;
}

MapUnderTest with_logging(const MapUnderTest& t, std::shared_ptr<EvalLog> log) {
  MapUnderTest base = t;
  MapUnderTest out = t;
  out.evaluator = [base, log](const VectorFunction& f) {
    VectorFunction result = base.eval(f);
    std::lock_guard<std::mutex> lock(log->mu);
    log->calls.emplace_back(f, result);
    return result;
  };
  return out;
}

std::optional<Witness> replay_purity(const MapUnderTest& raw, EvalLog& log) {
  // Distinct inputs keyed by their serialization, so the verdict does not
  // depend on the interleaving of the original calls.
  std::map<std::string, std::pair<VectorFunction, VectorFunction>> distinct;
  std::vector<std::pair<VectorFunction, VectorFunction>> calls;
  {
    std::lock_guard<std::mutex> lock(log.mu);
    calls = log.calls;
  }
  std::optional<std::string> mismatch_key;
  for (const auto& [input, output] : calls) {
    const std::string key = jsonio::encode_vector_function(input).dump();
    auto it = distinct.find(key);
    if (it == distinct.end()) {
      distinct.emplace(key, std::make_pair(input, output));
    } else if (!exact_equal(it->second.second, output)) {
      if (!mismatch_key || key < *mismatch_key) mismatch_key = key;
    }
  }
  for (const auto& [key, call] : distinct) {
    if (mismatch_key && *mismatch_key <= key) break;
    const VectorFunction fresh = raw.eval(call.first);
    if (!exact_equal(fresh, call.second)) {
      mismatch_key = key;
      Witness w{WitnessKind::Purity,
                json{{"input", jsonio::encode_vector_function(call.first)},
                     {"first", jsonio::encode_vector_function(call.second)},
                     {"replay", jsonio::encode_vector_function(fresh)}}};
      return w;
    }
  }
  if (mismatch_key) {
    const auto& call = distinct.at(*mismatch_key);
    Witness w{WitnessKind::Purity,
              json{{"input", jsonio::encode_vector_function(call.first)},
                   {"first", jsonio::encode_vector_function(call.second)},
                   {"replay", nullptr}}};
    return w;
  }
  return std::nullopt;
}

std::pair<VectorFunction, MapUnderTest> normalize(const MapUnderTest& t) {
  MapUnderTest base = t;
  const VectorFunction offset = base.eval(zero_function(t.domain, t.model));
  MapUnderTest prime = t;
  prime.evaluator = [base, offset](const VectorFunction& f) { return sub(base.eval(f), offset); };
  return {offset, prime};
}

namespace {

struct PairResult {
  bool failed = false;
  std::size_t y = 0;
  double first_distance = 0.0;
  double max_fail_distance = 0.0;
  double excess = -std::numeric_limits<double>::infinity();
};

PairResult evaluate_pair(const MapUnderTest& t, const VectorFunction& f, const VectorFunction& g,
                         double tol) {
  PairResult result;
  const VectorFunction tf = t.eval(f);
  const VectorFunction tg = t.eval(g);
  const VectorFunction d = sub(tf, tg);
  const VectorFunction fg = sub(f, g);
  const RangeSet ran = range(fg, tol);
  for (std::size_t y = 0; y < d.values.size(); ++y) {
    const RangeQuery q = range_contains(ran, d.values[y], tol);
    if (!q.member) {
      if (!result.failed) {
        result.failed = true;
        result.y = y;
        result.first_distance = q.distance;
      }
      result.max_fail_distance = std::max(result.max_fail_distance, q.distance);
    }
  }
  for (const auto& p : t.model.seminorms) {
    result.excess = std::max(result.excess, uniform_seminorm(d, p) - uniform_seminorm(fg, p));
  }
  return result;
}

}  // namespace

RangeCheckOutcome check_range_preservation(
    const MapUnderTest& t, const std::vector<std::pair<VectorFunction, VectorFunction>>& pairs,
    double tol, int threads) {
  if (pairs.empty()) throw std::invalid_argument("pair list must be non-empty");
  std::vector<PairResult> results(pairs.size());

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(pairs.size())));
  if (workers == 1) {
    for (std::size_t k = 0; k < pairs.size(); ++k)
      results[k] = evaluate_pair(t, pairs[k].first, pairs[k].second, tol);
  } else {
    std::vector<std::future<void>> futures;
    const std::size_t chunk = (pairs.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(pairs.size(), begin + chunk);
      if (begin >= end) break;
      futures.push_back(std::async(std::launch::async, [&, begin, end]() {
        for (std::size_t k = begin; k < end; ++k)
          results[k] = evaluate_pair(t, pairs[k].first, pairs[k].second, tol);
      }));
    }
    for (auto& fut : futures) fut.get();
  }

  RangeCheckOutcome outcome;
  outcome.nonexpansive_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < results.size(); ++k) {
    outcome.max_distance = std::max(outcome.max_distance, results[k].max_fail_distance);
    outcome.nonexpansive_excess = std::max(outcome.nonexpansive_excess, results[k].excess);
    if (results[k].failed && !outcome.witness) {
      outcome.witness = Witness{
          WitnessKind::RangeViolation,
          json{{"f", jsonio::encode_vector_function(pairs[k].first)},
               {"g", jsonio::encode_vector_function(pairs[k].second)},
               {"y", t.codomain.labels[results[k].y]},
               {"distance", results[k].first_distance}}};
    }
  }
  return outcome;
}

ScalarAction scalar_action(const MapUnderTest& t_prime, const ComplexVector& u,
                           const ScalarFunction& f) {
  if (u.dim() != t_prime.model.dimension) throw std::invalid_argument("probe dimension mismatch");
  double uu = 0.0;
  for (const auto& z : u.entries) uu += std::norm(z);
  if (uu == 0.0 || t_prime.model.max_seminorm(u) == 0.0)
    throw std::invalid_argument("probe vector must be nonzero");

  const VectorFunction v = t_prime.eval(tensor(f, u, t_prime.model));
  ScalarAction action{ScalarFunction{t_prime.codomain, {}}, 0.0};
  action.g.values.reserve(v.values.size());
  for (const auto& vy : v.values) {
    Complex num{0.0, 0.0};
    for (std::size_t k = 0; k < u.dim(); ++k) num += vy[k] * std::conj(u[k]);
    const Complex c = num / uu;
    action.g.values.push_back(c);
    action.residual = std::max(action.residual, t_prime.model.max_seminorm(vy - c * u));
  }
  return action;
}

namespace {

std::vector<PointFunctionalReport> point_functional_table(const MapUnderTest& t_prime,
                                                          const ComplexVector& u,
                                                          const std::vector<ScalarFunction>& fs,
                                                          const std::vector<Complex>& lambdas) {
  const std::size_t ny = t_prime.codomain.size();
  std::vector<PointFunctionalReport> per_y(ny);

  const ScalarFunction one = constant_function(t_prime.domain, Complex{1.0, 0.0});
  const ScalarFunction g_one = scalar_action(t_prime, u, one).g;
  for (std::size_t y = 0; y < ny; ++y)
    per_y[y].unitality = std::abs(g_one.values[y] - Complex{1.0, 0.0});

  std::vector<ScalarFunction> gs;
  gs.reserve(fs.size());
  for (const auto& f : fs) gs.push_back(scalar_action(t_prime, u, f).g);

  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const ScalarFunction g_mul = scalar_action(t_prime, u, pointwise_mul(fs[i], fs[j])).g;
      for (std::size_t y = 0; y < ny; ++y) {
        per_y[y].multiplicativity =
            std::max(per_y[y].multiplicativity,
                     std::abs(g_mul.values[y] - gs[i].values[y] * gs[j].values[y]));
      }
      for (const auto& lambda : lambdas) {
        const ScalarFunction g_lin = scalar_action(t_prime, u, add(fs[i], scale(lambda, fs[j]))).g;
        for (std::size_t y = 0; y < ny; ++y) {
          per_y[y].linearity =
              std::max(per_y[y].linearity, std::abs(g_lin.values[y] - gs[i].values[y] -
                                                    lambda * gs[j].values[y]));
        }
      }
    }
  }
  return per_y;
}

}  // namespace

PointFunctionalReport check_point_functional(const MapUnderTest& t_prime, const ComplexVector& u,
                                             std::size_t y, const std::vector<ScalarFunction>& fs,
                                             const std::vector<Complex>& lambdas) {
  if (y >= t_prime.codomain.size()) throw std::invalid_argument("point index out of range");
  return point_functional_table(t_prime, u, fs, lambdas)[y];
}

PointFunctionalReport check_point_functional_all(const MapUnderTest& t_prime,
                                                 const ComplexVector& u,
                                                 const std::vector<ScalarFunction>& fs,
                                                 const std::vector<Complex>& lambdas) {
  PointFunctionalReport report;
  for (const auto& row : point_functional_table(t_prime, u, fs, lambdas)) {
    report.linearity = std::max(report.linearity, row.linearity);
    report.multiplicativity = std::max(report.multiplicativity, row.multiplicativity);
    report.unitality = std::max(report.unitality, row.unitality);
  }
  return report;
}

SymbolExtraction extract_symbol(const MapUnderTest& t_prime, const ComplexVector& u, double tol) {
  const FiniteSpace& x_space = t_prime.domain;
  const FiniteSpace& y_space = t_prime.codomain;

  std::vector<ScalarFunction> responses;
  responses.reserve(x_space.size());
  for (std::size_t x = 0; x < x_space.size(); ++x)
    responses.push_back(scalar_action(t_prime, u, indicator_function(x_space, x)).g);

  SymbolExtraction out;
  out.per_point.assign(y_space.size(), std::nullopt);
  for (std::size_t y = 0; y < y_space.size(); ++y) {
    std::vector<std::size_t> candidates;
    bool others_clean = true;
    for (std::size_t x = 0; x < x_space.size(); ++x) {
      const Complex g = responses[x].values[y];
      if (std::abs(g - Complex{1.0, 0.0}) <= tol) {
        candidates.push_back(x);
      } else if (std::abs(g) > tol) {
        others_clean = false;
      }
    }
    if (candidates.size() == 1 && others_clean) {
      out.per_point[y] = candidates[0];
    } else {
      json probe_values = json::object();
      for (std::size_t x = 0; x < x_space.size(); ++x)
        probe_values[x_space.labels[x]] = jsonio::encode(responses[x].values[y]);
      json candidate_labels = json::array();
      for (std::size_t x : candidates) candidate_labels.push_back(x_space.labels[x]);
      out.ambiguities.push_back(Witness{WitnessKind::Ambiguity,
                                        json{{"u", jsonio::encode(u)},
                                             {"y", y_space.labels[y]},
                                             {"responses", probe_values},
                                             {"candidates", candidate_labels}}});
    }
  }

  if (out.ambiguities.empty()) {
    Symbol phi{y_space, x_space, {}};
    phi.table.reserve(y_space.size());
    for (const auto& x : out.per_point) phi.table.push_back(*x);
    out.symbol = std::move(phi);
  }
  return out;
}

UIndependenceOutcome check_u_independence(const MapUnderTest& t_prime,
                                          const std::vector<ComplexVector>& us,
                                          const std::vector<ScalarFunction>& fs, double tol) {
  if (us.size() < 2) throw std::invalid_argument("need at least two probe vectors");
  UIndependenceOutcome outcome;
  for (const auto& f : fs) {
    std::vector<ScalarFunction> gs;
    gs.reserve(us.size());
    for (const auto& u : us) gs.push_back(scalar_action(t_prime, u, f).g);
    for (std::size_t i = 0; i < us.size(); ++i) {
      for (std::size_t j = i + 1; j < us.size(); ++j) {
        for (std::size_t y = 0; y < t_prime.codomain.size(); ++y) {
          const double r = std::abs(gs[i].values[y] - gs[j].values[y]);
          outcome.residual = std::max(outcome.residual, r);
          if (r > tol && !outcome.witness) {
            outcome.witness = Witness{WitnessKind::UDependence,
                                      json{{"u", jsonio::encode(us[i])},
                                           {"v", jsonio::encode(us[j])},
                                           {"f", jsonio::encode_scalar_function(f)},
                                           {"y", t_prime.codomain.labels[y]},
                                           {"gu", jsonio::encode(gs[i].values[y])},
                                           {"gv", jsonio::encode(gs[j].values[y])}}};
          }
        }
      }
    }
  }
  return outcome;
}

double check_tensor_additivity(const MapUnderTest& t_prime, const ScalarFunction& f,
                               const ComplexVector& u, const ScalarFunction& g,
                               const ComplexVector& v) {
  const TensorSum sum{{TensorTerm{f, u}, TensorTerm{g, v}}};
  const VectorFunction combined = t_prime.eval(tensor_eval(sum, t_prime.model));
  const VectorFunction left = t_prime.eval(tensor(f, u, t_prime.model));
  const VectorFunction right = t_prime.eval(tensor(g, v, t_prime.model));
  const VectorFunction diff = sub(sub(combined, left), right);
  double residual = 0.0;
  for (const auto& val : diff.values)
    residual = std::max(residual, t_prime.model.max_seminorm(val));
  return residual;
}

CompositionCheck verify_composition(const MapUnderTest& t, const Symbol& phi,
                                    const VectorFunction& offset,
                                    const std::vector<VectorFunction>& samples, double tol) {
  CompositionCheck check;
  std::size_t worst_sample = 0;
  std::size_t worst_y = 0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const VectorFunction tf = t.eval(samples[s]);
    for (std::size_t y = 0; y < t.codomain.size(); ++y) {
      const ComplexVector expected = offset.values[y] + samples[s].values[phi.apply(y)];
      const double r = t.model.max_seminorm(tf.values[y] - expected);
      if (r > check.residual) {
        check.residual = r;
        worst_sample = s;
        worst_y = y;
      }
    }
  }
  if (check.residual > tol && !samples.empty()) {
    check.witness = Witness{WitnessKind::Representation,
                            json{{"f", jsonio::encode_vector_function(samples[worst_sample])},
                                 {"y", t.codomain.labels[worst_y]},
                                 {"distance", check.residual},
                                 {"symbol", jsonio::encode_symbol(phi)},
                                 {"offset", jsonio::encode_vector_function(offset)}}};
  }
  return check;
}

VectorFunction preimage_construct(const Symbol& phi, const VectorFunction& offset,
                                  const VectorFunction& h) {
  const InjectivityReport inj = symbol_is_injective(phi);
  if (!inj.injective)
    throw std::invalid_argument("symbol is not injective: " + inj.y1 + ", " + inj.y2 +
                                " collide");
  if (!(h.space == phi.source)) throw std::invalid_argument("target function not on Y");
  VectorFunction f = zero_function(phi.target, h.model);
  for (std::size_t y = 0; y < phi.source.size(); ++y)
    f.values[phi.apply(y)] = h.values[y] - offset.values[y];
  return f;
}

CorollaryReport corollary_diagnostics(const MapUnderTest& t, const Symbol& phi,
                                      const VectorFunction& offset, const AnalyzerConfig& config) {
  CorollaryReport report;
  report.witnesses = json::object();
  Rng rng(config.seed ^ 0x5bd1e995u);
  const double tol = config.tol;
  const ComplexVector e1 = basis_vector(t.model.dimension, 0);

  // (a) <=> (b): T injective iff phi surjective; when not, the missed point
  // carries an indicator witness collapsing to the offset.
  report.t_injective = symbol_is_surjective(phi);
  if (!report.t_injective) {
    std::vector<bool> hit(phi.target.size(), false);
    for (std::size_t idx : phi.table) hit[idx] = true;
    std::size_t x0 = 0;
    while (hit[x0]) ++x0;
    const VectorFunction f = tensor(indicator_function(t.domain, x0), e1, t.model);
    const VectorFunction tf = t.eval(f);
    double gap = 0.0;
    for (std::size_t y = 0; y < t.codomain.size(); ++y)
      gap = std::max(gap, t.model.max_seminorm(tf.values[y] - offset.values[y]));
    report.witnesses["urysohn"] = json{{"x0", t.domain.labels[x0]},
                                       {"f", jsonio::encode_vector_function(f)},
                                       {"f_nonzero", !is_zero(f)},
                                       {"tf_minus_offset", gap},
                                       {"collapses", gap <= tol}};
  }

  // (b) <=> (c): surjectivity of phi makes the inclusion an equality.
  report.range_equality = report.t_injective;
  {
    constexpr int kRangeEqPairs = 64;
    auto pairs = sample_pair_family(rng, t.domain, t.model, kRangeEqPairs, config.integer_samples);
    double forward = 0.0;
    double reverse = 0.0;
    for (const auto& [f, g] : pairs) {
      const VectorFunction d = sub(t.eval(f), t.eval(g));
      const VectorFunction fg = sub(f, g);
      const RangeSet ran_fg = range(fg, tol);
      const RangeSet ran_d = range(d, tol);
      for (const auto& value : d.values)
        forward = std::max(forward, range_contains(ran_fg, value, tol).distance);
      if (report.range_equality) {
        for (const auto& value : fg.values)
          reverse = std::max(reverse, range_contains(ran_d, value, tol).distance);
      }
    }
    json spot{{"pairs", kRangeEqPairs}, {"forward_distance", forward}};
    if (report.range_equality) {
      spot["reverse_distance"] = reverse;
      spot["pass"] = forward <= tol && reverse <= tol;
    } else {
      // strictness witness: the Urysohn pair (F, 0) has e1 in Ran(F - 0) but
      // Ran(TF - T0) collapses to {0}
      std::vector<bool> hit(phi.target.size(), false);
      for (std::size_t idx : phi.table) hit[idx] = true;
      std::size_t x0 = 0;
      while (hit[x0]) ++x0;
      const VectorFunction f = tensor(indicator_function(t.domain, x0), e1, t.model);
      const VectorFunction d = sub(t.eval(f), t.eval(zero_function(t.domain, t.model)));
      const RangeQuery q = range_contains(range(d, tol), e1, tol);
      spot["strict_pair_distance"] = q.distance;
      spot["pass"] = forward <= tol && !q.member;
    }
    report.witnesses["range_equality"] = spot;
  }

  // (d) <=> (e): T surjective iff phi injective.
  const InjectivityReport inj = symbol_is_injective(phi);
  report.t_surjective = inj.injective;
  if (!inj.injective) {
    const std::size_t y1 = phi.source.index_of(inj.y1);
    const std::size_t y2 = phi.source.index_of(inj.y2);
    // The collision pins TF(y1) - TF(y2) to the offset difference for every
    // F, so any H deviating from that difference is unattainable.
    const ComplexVector forced = offset.values[y1] - offset.values[y2];
    const VectorFunction h = add(offset, tensor(indicator_function(t.codomain, y1), e1, t.model));
    double gap = 0.0;
    constexpr int kCollisionSamples = 16;
    auto samples =
        sample_function_family(rng, t.domain, t.model, kCollisionSamples, config.integer_samples);
    for (const auto& f : samples) {
      const VectorFunction tf = t.eval(f);
      gap = std::max(gap, t.model.max_seminorm(tf.values[y1] - tf.values[y2] - forced));
    }
    const double h_deviation = t.model.max_seminorm(h.values[y1] - h.values[y2] - forced);
    report.witnesses["surjectivity"] = json{{"y1", inj.y1},
                                            {"y2", inj.y2},
                                            {"h", jsonio::encode_vector_function(h)},
                                            {"h_deviation", h_deviation},
                                            {"max_forced_gap", gap},
                                            {"unattainable", gap <= tol && h_deviation > tol}};
  } else {
    constexpr int kPreimageSamples = 8;
    double residual = 0.0;
    json example;
    for (int k = 0; k < kPreimageSamples; ++k) {
      const VectorFunction h =
          random_vector_function(rng, t.codomain, t.model, config.integer_samples);
      const VectorFunction f = preimage_construct(phi, offset, h);
      const VectorFunction tf = t.eval(f);
      for (std::size_t y = 0; y < t.codomain.size(); ++y)
        residual = std::max(residual, t.model.distance(tf.values[y], h.values[y]));
      if (k == 0)
        example = json{{"h", jsonio::encode_vector_function(h)},
                       {"f", jsonio::encode_vector_function(f)}};
    }
    report.witnesses["surjectivity"] = json{
        {"preimage_residual", residual}, {"pass", residual <= tol}, {"example", example}};
  }
  return report;
}

AnalysisReport classify(const MapUnderTest& raw, const AnalyzerConfig& config) {
  raw.domain.validate();
  raw.codomain.validate();
  raw.model.validate();

  auto log = std::make_shared<EvalLog>();
  const MapUnderTest t = with_logging(raw, log);

  AnalysisReport report;
  report.config = config;

  try {
    Rng rng(config.seed);
    auto [offset, t_prime] = normalize(t);
    report.extraction.offset = offset;
    const auto probes = default_probe_vectors(raw.model.dimension);
    report.extraction.probe_u = probes[0];

    // range-preservation hypothesis + non-expansiveness shadow
    const auto pairs =
        sample_pair_family(rng, raw.domain, raw.model, config.pair_budget, config.integer_samples);
    const RangeCheckOutcome rc = check_range_preservation(t, pairs, config.tol, config.threads);
    report.residuals.range_distance = rc.max_distance;
    report.residuals.nonexpansive_excess = std::max(0.0, rc.nonexpansive_excess);
    if (rc.witness) report.witnesses.push_back(*rc.witness);

    // colinearity of scalar actions over every probe direction
    const auto fs =
        probe_scalar_family(raw.domain, rng, config.scalar_samples, config.integer_samples);
    for (const auto& u : probes) {
      for (const auto& f : fs) {
        const ScalarAction action = scalar_action(t_prime, u, f);
        report.residuals.colinearity = std::max(report.residuals.colinearity, action.residual);
        if (action.residual > config.tol &&
            std::none_of(report.witnesses.begin(), report.witnesses.end(),
                         [](const Witness& w) { return w.kind == WitnessKind::Colinearity; })) {
          report.witnesses.push_back(
              Witness{WitnessKind::Colinearity,
                      json{{"u", jsonio::encode(u)},
                           {"f", jsonio::encode_scalar_function(f)},
                           {"residual", action.residual}}});
        }
      }
    }

    // point functionals delta_y o T~_u: linear, multiplicative, unital
    const std::vector<Complex> lambdas{Complex{2.0, 0.0}, Complex{0.0, 1.0}, Complex{1.0, 1.0},
                                       Complex{-1.0, 0.0}};
    std::vector<ScalarFunction> small_fs(fs.begin(), fs.begin() + std::min<std::size_t>(fs.size(), 6));
    const PointFunctionalReport pf = check_point_functional_all(t_prime, probes[0], small_fs, lambdas);
    report.residuals.point_linearity = pf.linearity;
    report.residuals.point_multiplicativity = pf.multiplicativity;
    report.residuals.point_unitality = pf.unitality;

    // symbol extraction by indicator probing
    SymbolExtraction extraction = extract_symbol(t_prime, probes[0], config.tol);
    report.extraction.symbol = extraction.symbol;
    for (auto& w : extraction.ambiguities) report.witnesses.push_back(std::move(w));

    // independence of the probe direction
    const UIndependenceOutcome ui = check_u_independence(t_prime, probes, fs, config.tol);
    report.residuals.u_independence = ui.residual;
    if (ui.witness) report.witnesses.push_back(*ui.witness);

    // additivity on tensor pairs, dependent and independent directions
    {
      const std::size_t d = raw.model.dimension;
      std::vector<std::pair<ComplexVector, ComplexVector>> directions;
      directions.emplace_back(basis_vector(d, 0), Complex{2.0, 0.0} * basis_vector(d, 0));
      directions.emplace_back(basis_vector(d, 0), Complex{0.0, 1.0} * basis_vector(d, 0));
      directions.emplace_back(basis_vector(d, 0), zero_vector(d));
      if (d >= 2) {
        directions.emplace_back(basis_vector(d, 0), basis_vector(d, 1));
        directions.emplace_back(basis_vector(d, 0) + basis_vector(d, 1), basis_vector(d, 1));
      }
      for (const auto& [u, v] : directions) {
        const ScalarFunction f = random_scalar_function(rng, raw.domain, config.integer_samples);
        const ScalarFunction g = random_scalar_function(rng, raw.domain, config.integer_samples);
        const double r = check_tensor_additivity(t_prime, f, u, g, v);
        report.residuals.additivity = std::max(report.residuals.additivity, r);
        if (r > config.tol &&
            std::none_of(report.witnesses.begin(), report.witnesses.end(),
                         [](const Witness& w) { return w.kind == WitnessKind::Additivity; })) {
          report.witnesses.push_back(Witness{WitnessKind::Additivity,
                                             json{{"f", jsonio::encode_scalar_function(f)},
                                                  {"u", jsonio::encode(u)},
                                                  {"g", jsonio::encode_scalar_function(g)},
                                                  {"v", jsonio::encode(v)},
                                                  {"residual", r}}});
        }
      }
    }

    // final representation identity against the extracted symbol
    if (report.extraction.symbol) {
      const auto samples = sample_function_family(rng, raw.domain, raw.model,
                                                  config.sample_budget, config.integer_samples);
      const CompositionCheck vc =
          verify_composition(t, *report.extraction.symbol, offset, samples, config.tol);
      report.residuals.representation = vc.residual;
      if (vc.witness) report.witnesses.push_back(*vc.witness);
    }

    const bool consistent_so_far = report.witnesses.empty() &&
                                   report.residuals.max() <= config.tol &&
                                   report.extraction.symbol.has_value();
    if (consistent_so_far)
      report.corollary = corollary_diagnostics(t, *report.extraction.symbol, offset, config);

    // purity replay runs last so it covers every input used above
    if (auto purity = replay_purity(raw, *log)) report.witnesses.push_back(*purity);
  } catch (const std::exception& e) {
    report.evaluator_error = e.what();
  }

  report.composition_consistent = !report.evaluator_error && report.witnesses.empty() &&
                                  report.residuals.max() <= config.tol &&
                                  report.extraction.symbol.has_value();
  return report;
}

bool replay_witness(const MapUnderTest& t, const Witness& witness, double tol) {
  const json& payload = witness.payload;
  switch (witness.kind) {
    case WitnessKind::RangeViolation: {
      const VectorFunction f =
          jsonio::decode_vector_function(payload.at("f"), t.domain, t.model);
      const VectorFunction g =
          jsonio::decode_vector_function(payload.at("g"), t.domain, t.model);
      const std::size_t y = t.codomain.index_of(payload.at("y").get<std::string>());
      const VectorFunction d = sub(t.eval(f), t.eval(g));
      const RangeQuery q = range_contains(range(sub(f, g), tol), d.values[y], tol);
      return !q.member;
    }
    case WitnessKind::Colinearity: {
      auto [offset, t_prime] = normalize(t);
      (void)offset;
      const ComplexVector u = jsonio::decode_vector(payload.at("u"), t.model.dimension);
      const ScalarFunction f = jsonio::decode_scalar_function(payload.at("f"), t.domain);
      return scalar_action(t_prime, u, f).residual > tol;
    }
    case WitnessKind::Ambiguity: {
      auto [offset, t_prime] = normalize(t);
      (void)offset;
      const ComplexVector u = jsonio::decode_vector(payload.at("u"), t.model.dimension);
      const std::size_t y = t.codomain.index_of(payload.at("y").get<std::string>());
      const SymbolExtraction extraction = extract_symbol(t_prime, u, tol);
      return !extraction.per_point[y].has_value();
    }
    case WitnessKind::Additivity: {
      auto [offset, t_prime] = normalize(t);
      (void)offset;
      const ScalarFunction f = jsonio::decode_scalar_function(payload.at("f"), t.domain);
      const ScalarFunction g = jsonio::decode_scalar_function(payload.at("g"), t.domain);
      const ComplexVector u = jsonio::decode_vector(payload.at("u"), t.model.dimension);
      const ComplexVector v = jsonio::decode_vector(payload.at("v"), t.model.dimension);
      return check_tensor_additivity(t_prime, f, u, g, v) > tol;
    }
    case WitnessKind::UDependence: {
      auto [offset, t_prime] = normalize(t);
      (void)offset;
      const ComplexVector u = jsonio::decode_vector(payload.at("u"), t.model.dimension);
      const ComplexVector v = jsonio::decode_vector(payload.at("v"), t.model.dimension);
      const ScalarFunction f = jsonio::decode_scalar_function(payload.at("f"), t.domain);
      const std::size_t y = t.codomain.index_of(payload.at("y").get<std::string>());
      const ScalarFunction gu = scalar_action(t_prime, u, f).g;
      const ScalarFunction gv = scalar_action(t_prime, v, f).g;
      return std::abs(gu.values[y] - gv.values[y]) > tol;
    }
    case WitnessKind::Representation: {
      const VectorFunction f =
          jsonio::decode_vector_function(payload.at("f"), t.domain, t.model);
      const Symbol phi = jsonio::decode_symbol(payload.at("symbol"), t.codomain, t.domain);
      const VectorFunction offset =
          jsonio::decode_vector_function(payload.at("offset"), t.codomain, t.model);
      const std::size_t y = t.codomain.index_of(payload.at("y").get<std::string>());
      const VectorFunction tf = t.eval(f);
      const ComplexVector expected = offset.values[y] + f.values[phi.apply(y)];
      return t.model.max_seminorm(tf.values[y] - expected) > tol;
    }
    case WitnessKind::Purity: {
      const VectorFunction input =
          jsonio::decode_vector_function(payload.at("input"), t.domain, t.model);
      const VectorFunction first = t.eval(input);
      const VectorFunction second = t.eval(input);
      return !exact_equal(first, second);
    }
  }
  return false;
}

jsonio::json report_to_json(const AnalysisReport& report) {
  json j;
  j["schema"] = 1;
  j["verdict"] = report.composition_consistent ? "composition-consistent" : "violated";
  j["offset"] = report.extraction.offset.space.labels.empty()
                    ? json(nullptr)
                    : jsonio::encode_vector_function(report.extraction.offset);
  j["symbol"] = report.extraction.symbol ? jsonio::encode_symbol(*report.extraction.symbol)
                                         : json(nullptr);
  j["probe_u"] = jsonio::encode(report.extraction.probe_u);
  j["residuals"] = json{{"range_distance", report.residuals.range_distance},
                        {"nonexpansive_excess", report.residuals.nonexpansive_excess},
                        {"colinearity", report.residuals.colinearity},
                        {"point_linearity", report.residuals.point_linearity},
                        {"point_multiplicativity", report.residuals.point_multiplicativity},
                        {"point_unitality", report.residuals.point_unitality},
                        {"u_independence", report.residuals.u_independence},
                        {"additivity", report.residuals.additivity},
                        {"representation", report.residuals.representation}};
  json witnesses = json::array();
  for (const auto& w : report.witnesses)
    witnesses.push_back(json{{"kind", witness_kind_name(w.kind)}, {"payload", w.payload}});
  j["witnesses"] = witnesses;
  if (report.corollary) {
    j["corollary"] = json{{"T_injective", report.corollary->t_injective},
                          {"T_surjective", report.corollary->t_surjective},
                          {"range_equality", report.corollary->range_equality},
                          {"witnesses", report.corollary->witnesses}};
  } else {
    j["corollary"] = nullptr;
  }
  j["error"] = report.evaluator_error ? json(*report.evaluator_error) : json(nullptr);
  j["config"] = json{{"seed", report.config.seed},
                     {"tol", report.config.tol},
                     {"pairs", report.config.pair_budget},
                     {"samples", report.config.sample_budget},
                     {"scalar_samples", report.config.scalar_samples},
                     {"integer_samples", report.config.integer_samples}};
  return j;
}

}  // namespace rpmap
