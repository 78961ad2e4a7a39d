#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rpmap/approx.hpp"
#include "rpmap/harness.hpp"
#include "rpmap/ksfunc.hpp"

namespace rpmap {

namespace {

using jsonio::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw jsonio::DecodeError("cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const std::exception& e) {
    throw jsonio::DecodeError(std::string("JSON parse failure in ") + path + ": " + e.what());
  }
}

void write_output(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw jsonio::DecodeError("cannot write file: " + path);
  out << text;
}

struct CommonOptions {
  std::string instance_path;
  std::string report_path;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int pairs = 0;
  int threads = 1;
  bool integer_samples = false;
};

AnalyzerConfig make_config(const InstanceSpec& spec, const CommonOptions& opts,
                           const CLI::App* cmd) {
  AnalyzerConfig config;
  config.seed = cmd->count("--seed") ? opts.seed : spec.seed;
  config.tol = cmd->count("--tol") ? opts.tol : spec.tol;
  config.pair_budget = cmd->count("--pairs") ? opts.pairs : spec.pairs;
  config.threads = opts.threads;
  config.integer_samples = opts.integer_samples;
  return config;
}

int run_verify(const CommonOptions& opts, const CLI::App* cmd) {
  const InstanceSpec spec = spec_from_json(read_json_file(opts.instance_path));
  const MapUnderTest t = generate(spec);
  const AnalysisReport report = classify(t, make_config(spec, opts, cmd));
  write_output(report_to_json(report), opts.report_path);
  return report.composition_consistent ? 0 : 1;
}

int run_extract(const CommonOptions& opts, const CLI::App* cmd) {
  const InstanceSpec spec = spec_from_json(read_json_file(opts.instance_path));
  const MapUnderTest t = generate(spec);
  const AnalyzerConfig config = make_config(spec, opts, cmd);
  auto [offset, t_prime] = normalize(t);
  const ComplexVector u = basis_vector(spec.model.dimension, 0);
  const SymbolExtraction extraction = extract_symbol(t_prime, u, config.tol);

  json out;
  out["schema"] = 1;
  out["offset"] = jsonio::encode_vector_function(offset);
  out["symbol"] =
      extraction.symbol ? jsonio::encode_symbol(*extraction.symbol) : json(nullptr);
  out["probe_u"] = jsonio::encode(u);
  json ambiguities = json::array();
  for (const auto& w : extraction.ambiguities) ambiguities.push_back(w.payload);
  out["ambiguities"] = ambiguities;
  write_output(out, opts.report_path);
  return extraction.symbol ? 0 : 1;
}

int run_oracle(const CommonOptions& opts, const CLI::App* cmd) {
  const InstanceSpec spec = spec_from_json(read_json_file(opts.instance_path));
  const MapUnderTest t = generate(spec);
  const AnalyzerConfig config = make_config(spec, opts, cmd);
  const ComplexVector u = basis_vector(spec.model.dimension, 0);

  auto [offset, t_prime] = normalize(t);
  (void)offset;
  const SymbolExtraction extraction = extract_symbol(t_prime, u, config.tol);
  const OracleResult oracle = oracle_extract(t, u, config.tol, config.seed);
  const bool agrees = oracle_agrees(oracle, extraction, spec.x);

  json per_y = json::array();
  for (std::size_t y = 0; y < oracle.per_y.size(); ++y) {
    const OraclePoint& point = oracle.per_y[y];
    json scores = json::object();
    for (std::size_t x = 0; x < spec.x.size(); ++x) scores[spec.x.labels[x]] = point.scores[x];
    json candidates = json::array();
    for (std::size_t x : point.candidates) candidates.push_back(spec.x.labels[x]);
    per_y.push_back(json{{"y", spec.y.labels[y]},
                         {"scores", scores},
                         {"candidates", candidates},
                         {"clean", point.clean},
                         {"analyzer", extraction.per_point[y]
                                          ? json(spec.x.labels[*extraction.per_point[y]])
                                          : json(nullptr)}});
  }
  write_output(json{{"schema", 1}, {"agrees", agrees}, {"per_y", per_y}}, opts.report_path);
  return agrees ? 0 : 1;
}

ScalarFunctional decode_functional(const json& j, const FiniteSpace& space) {
  const json& kind = jsonio::expect_field(j, "kind");
  if (!kind.is_string()) throw jsonio::DecodeError("functional kind must be a string");
  const std::string name = kind.get<std::string>();
  const auto point_of = [&](const char* field) {
    const json& p = jsonio::expect_field(j, field);
    if (!p.is_string()) throw jsonio::DecodeError("functional point must be a label");
    try {
      return space.index_of(p.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw jsonio::DecodeError(e.what());
    }
  };
  if (name == "point") return point_evaluation(space, point_of("point"));
  if (name == "conjugation") return conjugation_functional(space, point_of("point"));
  if (name == "scaled")
    return scaled_functional(space, point_of("point"),
                             jsonio::decode_complex(jsonio::expect_field(j, "factor")));
  if (name == "zero") return zero_scalar_functional(space);
  if (name == "averaging") {
    const json& w = jsonio::expect_field(j, "weights");
    if (!w.is_array() || w.size() != space.size())
      throw jsonio::DecodeError("averaging needs one weight per point");
    std::vector<Complex> weights;
    for (const auto& entry : w) weights.push_back(jsonio::decode_complex(entry));
    return averaging_functional(space, std::move(weights));
  }
  throw jsonio::DecodeError("unknown functional kind: " + name);
}

int run_ks_check(const CommonOptions& opts, const CLI::App* cmd) {
  const json j = read_json_file(opts.instance_path);
  const json& schema = jsonio::expect_field(j, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != 1)
    throw jsonio::DecodeError("unsupported schema version");
  const FiniteSpace space = jsonio::decode_space(jsonio::expect_field(j, "x"));
  const ScalarFunctional delta = decode_functional(jsonio::expect_field(j, "functional"), space);
  std::uint64_t seed = 1;
  if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
  double tol = 1e-9;
  if (j.contains("tol")) tol = jsonio::expect_number(j.at("tol"), "tol");
  if (cmd->count("--seed")) seed = opts.seed;
  if (cmd->count("--tol")) tol = opts.tol;

  Rng rng(seed);
  const auto pairs = ks_pair_family(space, rng, 8, false);
  const KsHypothesisOutcome hypothesis = check_ks_hypothesis(delta, pairs, tol);

  std::vector<ScalarFunction> family;
  for (std::size_t x = 0; x < space.size(); ++x) family.push_back(indicator_function(space, x));
  family.push_back(constant_function(space, Complex{1.0, 0.0}));
  for (int k = 0; k < 4; ++k) family.push_back(random_scalar_function(rng, space, false));
  const std::vector<Complex> lambdas{Complex{2.0, 0.0}, Complex{0.0, 1.0}, Complex{1.0, 1.0}};
  const KsConclusionReport conclusion = check_ks_conclusion(delta, family, lambdas, tol);
  const bool pure = functional_is_pure(delta, family);

  json out;
  out["schema"] = 1;
  out["hypothesis"] = json{{"pass", hypothesis.pass},
                           {"max_distance", hypothesis.max_distance},
                           {"witness", hypothesis.witness ? *hypothesis.witness : json(nullptr)}};
  out["conclusion"] =
      json{{"linearity", conclusion.linearity},
           {"multiplicativity", conclusion.multiplicativity},
           {"unitality_gap", conclusion.unitality_gap},
           {"zero_functional", conclusion.zero_functional},
           {"representing_point", conclusion.representing_point ? json(*conclusion.representing_point)
                                                                : json(nullptr)},
           {"representation_residual", conclusion.representation_residual},
           {"ambiguity", conclusion.ambiguity ? *conclusion.ambiguity : json(nullptr)}};
  out["pure"] = pure;
  const bool pass = hypothesis.pass && pure && conclusion.representing_point.has_value() &&
                    conclusion.linearity <= tol && conclusion.multiplicativity <= tol;
  out["verdict"] = pass ? "point-evaluation" : "violated";
  write_output(out, opts.report_path);
  return pass ? 0 : 1;
}

int run_approx(const CommonOptions& opts, const std::string& strategy_name) {
  const json j = read_json_file(opts.instance_path);
  const json& schema = jsonio::expect_field(j, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != 1)
    throw jsonio::DecodeError("unsupported schema version");
  const FiniteSpace space = jsonio::decode_space(jsonio::expect_field(j, "x"));
  const VectorSpaceModel model = jsonio::decode_model(jsonio::expect_field(j, "model"));
  const VectorFunction f =
      jsonio::decode_vector_function(jsonio::expect_field(j, "f"), space, model);
  const Neighborhood B =
      jsonio::decode_neighborhood(jsonio::expect_field(j, "neighborhood"), model);

  PouStrategy strategy = PouStrategy::Assignment;
  if (strategy_name == "hat") {
    strategy = PouStrategy::Hat;
  } else if (strategy_name != "assignment") {
    throw jsonio::DecodeError("unknown strategy: " + strategy_name);
  }

  ApproxResult result;
  try {
    result = tensor_approximate(f, B, strategy);
  } catch (const std::invalid_argument& e) {
    throw jsonio::DecodeError(e.what());
  }
  json out;
  out["schema"] = 1;
  out["cover_centers"] = result.certificate.cover_centers;
  out["in_V"] = result.certificate.in_v;
  out["errors_per_seminorm"] = result.certificate.errors_per_seminorm;
  out["g"] = jsonio::encode_tensor_sum(result.g);
  write_output(out, opts.report_path);
  return result.certificate.in_v ? 0 : 1;
}

int run_gen(const std::string& kind_name, std::size_t nx, std::size_t ny, std::size_t dim,
            std::uint64_t seed, bool integer, const std::string& out_path) {
  MapKind kind;
  try {
    kind = map_kind_from_name(kind_name);
  } catch (const std::invalid_argument& e) {
    throw jsonio::DecodeError(e.what());
  }
  Rng rng(seed);
  InstanceSpec spec;
  try {
    spec = (kind == MapKind::Composition)
               ? random_composition_spec(rng, nx, ny, dim, integer)
               : random_adversarial_spec(rng, kind, nx, ny, dim);
  } catch (const std::invalid_argument& e) {
    throw jsonio::DecodeError(e.what());
  }
  spec.seed = seed;
  write_output(spec_to_json(spec), out_path);
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"verification and extraction toolkit for range-preserving maps"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string strategy = "assignment";
  std::string gen_kind = "composition";
  std::size_t gen_nx = 2, gen_ny = 2, gen_dim = 2;
  std::uint64_t gen_seed = 1;
  bool gen_integer = false;

  const auto add_common = [&](CLI::App* cmd, bool with_analysis) {
    cmd->add_option("--instance", opts.instance_path, "instance JSON path")->required();
    cmd->add_option("--report", opts.report_path, "report output path (stdout when omitted)");
    cmd->add_option("--seed", opts.seed, "override the spec seed");
    cmd->add_option("--tol", opts.tol, "override the spec tolerance");
    if (with_analysis) {
      cmd->add_option("--pairs", opts.pairs, "override the range-check pair budget");
      cmd->add_option("--threads", opts.threads, "concurrent pair evaluation");
      cmd->add_flag("--integer", opts.integer_samples, "sample integer-valued functions only");
    }
  };

  CLI::App* verify = app.add_subcommand("verify", "full analysis with verdict and report");
  add_common(verify, true);
  CLI::App* extract = app.add_subcommand("extract", "offset and symbol extraction only");
  add_common(extract, false);
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force extraction oracle diff");
  add_common(oracle, false);
  CLI::App* ks = app.add_subcommand("ks-check", "scalar functional hypothesis/conclusion check");
  add_common(ks, false);
  CLI::App* approx = app.add_subcommand("approx", "tensor approximation with certificate");
  approx->add_option("--instance", opts.instance_path, "instance JSON path")->required();
  approx->add_option("--report", opts.report_path, "report output path (stdout when omitted)");
  approx->add_option("--strategy", strategy, "assignment | hat");

  CLI::App* gen = app.add_subcommand("gen", "emit a seeded instance spec");
  gen->add_option("--kind", gen_kind, "map kind");
  gen->add_option("--nx", gen_nx, "number of X points");
  gen->add_option("--ny", gen_ny, "number of Y points");
  gen->add_option("--dim", gen_dim, "model dimension");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_flag("--integer", gen_integer, "integer-valued offset");
  gen->add_option("--instance", opts.report_path, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(opts, verify);
    if (extract->parsed()) return run_extract(opts, extract);
    if (oracle->parsed()) return run_oracle(opts, oracle);
    if (ks->parsed()) return run_ks_check(opts, ks);
    if (approx->parsed()) return run_approx(opts, strategy);
    if (gen->parsed())
      return run_gen(gen_kind, gen_nx, gen_ny, gen_dim, gen_seed, gen_integer, opts.report_path);
  } catch (const jsonio::DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace rpmap
