#include "rpmap/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rpmap/external_map.hpp"

namespace rpmap {

using jsonio::json;

const char* map_kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::Composition: return "composition";
    case MapKind::Constant: return "constant";
    case MapKind::Averaging: return "averaging";
    case MapKind::Rotation: return "rotation";
    case MapKind::DirectionDependent: return "direction-dependent";
    case MapKind::PerturbedComposition: return "perturbed-composition";
    case MapKind::External: return "external";
  }
  return "unknown";
}

MapKind map_kind_from_name(const std::string& name) {
  if (name == "composition") return MapKind::Composition;
  if (name == "constant") return MapKind::Constant;
  if (name == "averaging") return MapKind::Averaging;
  if (name == "rotation") return MapKind::Rotation;
  if (name == "direction-dependent") return MapKind::DirectionDependent;
  if (name == "perturbed-composition") return MapKind::PerturbedComposition;
  if (name == "external") return MapKind::External;
  throw std::invalid_argument("unknown map kind: " + name);
}

const char* trigger_name(PerturbTrigger trigger) {
  switch (trigger) {
    case PerturbTrigger::NonZero: return "nonzero";
    case PerturbTrigger::NonConstant: return "nonconstant";
    case PerturbTrigger::NonTensor: return "nontensor";
  }
  return "unknown";
}

PerturbTrigger trigger_from_name(const std::string& name) {
  if (name == "nonzero") return PerturbTrigger::NonZero;
  if (name == "nonconstant") return PerturbTrigger::NonConstant;
  if (name == "nontensor") return PerturbTrigger::NonTensor;
  throw std::invalid_argument("unknown trigger: " + name);
}

bool spans_multiple_directions(const VectorFunction& f) {
  double scale = 0.0;
  for (const auto& v : f.values) {
    for (const auto& z : v.entries) scale = std::max(scale, std::abs(z));
  }
  if (scale == 0.0) return false;
  const double tol = 1e-9 * scale * scale;
  const std::size_t n = f.values.size();
  const std::size_t d = f.model.dimension;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = k + 1; l < d; ++l) {
          const Complex minor =
              f.values[i][k] * f.values[j][l] - f.values[i][l] * f.values[j][k];
          if (std::abs(minor) > tol) return true;
        }
      }
    }
  }
  return false;
}

namespace {

bool trigger_fires(PerturbTrigger trigger, const VectorFunction& f) {
  switch (trigger) {
    case PerturbTrigger::NonZero:
      return !is_zero(f);
    case PerturbTrigger::NonConstant:
      for (std::size_t i = 1; i < f.values.size(); ++i) {
        if (!(f.values[i] == f.values[0])) return true;
      }
      return false;
    case PerturbTrigger::NonTensor:
      return spans_multiple_directions(f);
  }
  return false;
}

void require(bool cond, const char* message) {
  if (!cond) throw std::invalid_argument(message);
}

}  // namespace

void InstanceSpec::validate() const {
  require(schema == 1, "unsupported schema version");
  x.validate();
  y.validate();
  model.validate();
  require(tol >= 0.0, "tolerance must be >= 0");
  require(pairs >= 1, "pair budget must be >= 1");

  const auto check_symbol = [&](const Symbol& phi, const char* what) {
    if (!(phi.source == y) || !(phi.target == x))
      throw std::invalid_argument(std::string(what) + " must map Y into X");
    phi.validate();
  };
  const auto check_on_y = [&](const VectorFunction& f, const char* what) {
    if (!(f.space == y) || f.model.dimension != model.dimension)
      throw std::invalid_argument(std::string(what) + " must live on Y with the model dimension");
    f.validate();
  };

  switch (kind) {
    case MapKind::Composition:
      require(symbol.has_value(), "composition needs a symbol");
      require(offset.has_value(), "composition needs an offset");
      check_symbol(*symbol, "symbol");
      check_on_y(*offset, "offset");
      break;
    case MapKind::Constant:
      require(constant.has_value(), "constant kind needs a value function");
      check_on_y(*constant, "constant value");
      break;
    case MapKind::Averaging:
      require(weights.size() == x.size(), "averaging needs one weight per X point");
      break;
    case MapKind::Rotation:
      require(model.dimension >= 2, "rotation needs model dimension >= 2");
      require(rotation.has_value(), "rotation kind needs a matrix");
      require(rotation->rows == model.dimension && rotation->cols == model.dimension,
              "rotation matrix must be d x d");
      break;
    case MapKind::DirectionDependent:
      require(model.dimension >= 2, "direction-dependent needs model dimension >= 2");
      require(symbol.has_value() && symbol2.has_value(),
              "direction-dependent needs two symbols");
      check_symbol(*symbol, "symbol1");
      check_symbol(*symbol2, "symbol2");
      break;
    case MapKind::PerturbedComposition:
      require(symbol.has_value(), "perturbed composition needs a symbol");
      require(offset.has_value(), "perturbed composition needs an offset");
      require(epsilon > 0.0, "perturbation size must be > 0");
      check_symbol(*symbol, "symbol");
      check_on_y(*offset, "offset");
      break;
    case MapKind::External:
      require(!command.empty(), "external kind needs a command");
      require(timeout_ms > 0, "timeout must be > 0");
      break;
  }
}

MapUnderTest generate(const InstanceSpec& spec) {
  spec.validate();
  MapUnderTest t{spec.x, spec.y, spec.model, nullptr};
  switch (spec.kind) {
    case MapKind::Composition: {
      const Symbol phi = *spec.symbol;
      const VectorFunction offset = *spec.offset;
      t.evaluator = [phi, offset](const VectorFunction& f) {
        return add(offset, compose(f, phi));
      };
      break;
    }
    case MapKind::Constant: {
      const VectorFunction k = *spec.constant;
      t.evaluator = [k](const VectorFunction&) { return k; };
      break;
    }
    case MapKind::Averaging: {
      const std::vector<Complex> weights = spec.weights;
      const FiniteSpace y_space = spec.y;
      const VectorSpaceModel model = spec.model;
      t.evaluator = [weights, y_space, model](const VectorFunction& f) {
        ComplexVector acc = zero_vector(model.dimension);
        for (std::size_t i = 0; i < f.values.size(); ++i) acc = acc + weights[i] * f.values[i];
        VectorFunction out{y_space, model, {}};
        out.values.assign(y_space.size(), acc);
        return out;
      };
      break;
    }
    case MapKind::Rotation: {
      const ComplexMatrix r = *spec.rotation;
      const FiniteSpace y_space = spec.y;
      const VectorSpaceModel model = spec.model;
      t.evaluator = [r, y_space, model](const VectorFunction& f) {
        const ComplexVector v = r.apply(f.values.front());
        VectorFunction out{y_space, model, {}};
        out.values.assign(y_space.size(), v);
        return out;
      };
      break;
    }
    case MapKind::DirectionDependent: {
      const Symbol phi1 = *spec.symbol;
      const Symbol phi2 = *spec.symbol2;
      const FiniteSpace y_space = spec.y;
      const VectorSpaceModel model = spec.model;
      t.evaluator = [phi1, phi2, y_space, model](const VectorFunction& f) {
        VectorFunction out = zero_function(y_space, model);
        for (std::size_t y = 0; y < y_space.size(); ++y) {
          for (std::size_t k = 0; k < model.dimension; ++k) {
            const Symbol& phi = (k == 0) ? phi1 : phi2;
            out.values[y][k] = f.values[phi.apply(y)][k];
          }
        }
        return out;
      };
      break;
    }
    case MapKind::PerturbedComposition: {
      const Symbol phi = *spec.symbol;
      const VectorFunction offset = *spec.offset;
      const double eps = spec.epsilon;
      const PerturbTrigger trigger = spec.trigger;
      t.evaluator = [phi, offset, eps, trigger](const VectorFunction& f) {
        VectorFunction out = add(offset, compose(f, phi));
        if (trigger_fires(trigger, f)) {
          out.values[0] = out.values[0] + Complex{eps, 0.0} * basis_vector(f.model.dimension, 0);
        }
        return out;
      };
      break;
    }
    case MapKind::External:
      return external_map(spec.x, spec.y, spec.model, spec.command, spec.timeout_ms);
  }
  return t;
}

// --- spec JSON ----------------------------------------------------------------

json spec_to_json(const InstanceSpec& spec) {
  json map{{"kind", map_kind_name(spec.kind)}};
  switch (spec.kind) {
    case MapKind::Composition:
      map["symbol"] = jsonio::encode_symbol(*spec.symbol);
      map["offset"] = jsonio::encode_vector_function(*spec.offset);
      break;
    case MapKind::Constant:
      map["value"] = jsonio::encode_vector_function(*spec.constant);
      break;
    case MapKind::Averaging: {
      json w = json::array();
      for (const auto& z : spec.weights) w.push_back(jsonio::encode(z));
      map["weights"] = w;
      break;
    }
    case MapKind::Rotation:
      map["matrix"] = jsonio::encode(*spec.rotation);
      break;
    case MapKind::DirectionDependent:
      map["symbol1"] = jsonio::encode_symbol(*spec.symbol);
      map["symbol2"] = jsonio::encode_symbol(*spec.symbol2);
      break;
    case MapKind::PerturbedComposition:
      map["symbol"] = jsonio::encode_symbol(*spec.symbol);
      map["offset"] = jsonio::encode_vector_function(*spec.offset);
      map["epsilon"] = spec.epsilon;
      map["trigger"] = trigger_name(spec.trigger);
      break;
    case MapKind::External:
      map["command"] = spec.command;
      map["timeout_ms"] = spec.timeout_ms;
      break;
  }
  return json{{"schema", spec.schema}, {"x", jsonio::encode(spec.x)},
              {"y", jsonio::encode(spec.y)}, {"model", jsonio::encode(spec.model)},
              {"map", map},                  {"seed", spec.seed},
              {"tol", spec.tol},             {"pairs", spec.pairs}};
}

InstanceSpec spec_from_json(const json& j) {
  InstanceSpec spec;
  const json& schema = jsonio::expect_field(j, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != 1)
    throw jsonio::DecodeError("unsupported schema version");
  spec.x = jsonio::decode_space(jsonio::expect_field(j, "x"));
  spec.y = jsonio::decode_space(jsonio::expect_field(j, "y"));
  spec.model = jsonio::decode_model(jsonio::expect_field(j, "model"));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw jsonio::DecodeError("seed must be unsigned");
    spec.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("tol")) spec.tol = jsonio::expect_number(j.at("tol"), "tol");
  if (j.contains("pairs")) {
    if (!j.at("pairs").is_number_integer()) throw jsonio::DecodeError("pairs must be an integer");
    spec.pairs = j.at("pairs").get<int>();
  }

  const json& map = jsonio::expect_field(j, "map");
  const json& kind = jsonio::expect_field(map, "kind");
  if (!kind.is_string()) throw jsonio::DecodeError("map kind must be a string");
  try {
    spec.kind = map_kind_from_name(kind.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw jsonio::DecodeError(e.what());
  }

  switch (spec.kind) {
    case MapKind::Composition:
      spec.symbol = jsonio::decode_symbol(jsonio::expect_field(map, "symbol"), spec.y, spec.x);
      spec.offset = jsonio::decode_vector_function(jsonio::expect_field(map, "offset"), spec.y,
                                                   spec.model);
      break;
    case MapKind::Constant:
      spec.constant = jsonio::decode_vector_function(jsonio::expect_field(map, "value"), spec.y,
                                                     spec.model);
      break;
    case MapKind::Averaging: {
      const json& w = jsonio::expect_field(map, "weights");
      if (!w.is_array()) throw jsonio::DecodeError("weights must be an array");
      for (const auto& entry : w) spec.weights.push_back(jsonio::decode_complex(entry));
      break;
    }
    case MapKind::Rotation:
      spec.rotation = jsonio::decode_matrix(jsonio::expect_field(map, "matrix"));
      break;
    case MapKind::DirectionDependent:
      spec.symbol = jsonio::decode_symbol(jsonio::expect_field(map, "symbol1"), spec.y, spec.x);
      spec.symbol2 = jsonio::decode_symbol(jsonio::expect_field(map, "symbol2"), spec.y, spec.x);
      break;
    case MapKind::PerturbedComposition:
      spec.symbol = jsonio::decode_symbol(jsonio::expect_field(map, "symbol"), spec.y, spec.x);
      spec.offset = jsonio::decode_vector_function(jsonio::expect_field(map, "offset"), spec.y,
                                                   spec.model);
      spec.epsilon = jsonio::expect_number(jsonio::expect_field(map, "epsilon"), "epsilon");
      try {
        spec.trigger =
            trigger_from_name(jsonio::expect_field(map, "trigger").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw jsonio::DecodeError(e.what());
      }
      break;
    case MapKind::External: {
      const json& cmd = jsonio::expect_field(map, "command");
      if (cmd.is_string()) {
        // single string: split on spaces
        std::string word;
        for (const char c : cmd.get<std::string>()) {
          if (c == ' ') {
            if (!word.empty()) spec.command.push_back(word);
            word.clear();
          } else {
            word.push_back(c);
          }
        }
        if (!word.empty()) spec.command.push_back(word);
      } else if (cmd.is_array()) {
        for (const auto& part : cmd) {
          if (!part.is_string()) throw jsonio::DecodeError("command parts must be strings");
          spec.command.push_back(part.get<std::string>());
        }
      } else {
        throw jsonio::DecodeError("command must be a string or an array of strings");
      }
      if (map.contains("timeout_ms")) {
        if (!map.at("timeout_ms").is_number_integer())
          throw jsonio::DecodeError("timeout_ms must be an integer");
        spec.timeout_ms = map.at("timeout_ms").get<int>();
      }
      break;
    }
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw jsonio::DecodeError(e.what());
  }
  return spec;
}

// --- seeded instance generators -----------------------------------------------

namespace {

const char* kXPool[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
const char* kYPool[] = {"p", "q", "r", "s", "t", "u", "v", "w"};

FiniteSpace make_space(const char* const* pool, std::size_t n) {
  FiniteSpace space;
  for (std::size_t i = 0; i < n; ++i) space.labels.push_back(pool[i]);
  return space;
}

VectorSpaceModel make_model(Rng& rng, std::size_t dim) {
  VectorSpaceModel model{dim, {Seminorm::identity(dim)}};
  // vary the family size; the identity member keeps it separating
  if (rng.uniform() < 0.5) model.seminorms.push_back(Seminorm::coordinate(dim, rng.index(dim)));
  if (rng.uniform() < 0.3) {
    ComplexMatrix m;
    m.rows = 1;
    m.cols = dim;
    for (std::size_t k = 0; k < dim; ++k) m.coeffs.push_back(rng.complex_int_box(-1, 1));
    model.seminorms.push_back(Seminorm{m});
  }
  return model;
}

Symbol random_symbol(Rng& rng, const FiniteSpace& y, const FiniteSpace& x) {
  Symbol phi{y, x, {}};
  for (std::size_t i = 0; i < y.size(); ++i) phi.table.push_back(rng.index(x.size()));
  return phi;
}

}  // namespace

InstanceSpec random_composition_spec(Rng& rng, std::size_t nx, std::size_t ny, std::size_t dim,
                                     bool integer) {
  if (nx == 0 || nx > 8 || ny == 0 || ny > 8) throw std::invalid_argument("space size out of range");
  InstanceSpec spec;
  spec.x = make_space(kXPool, nx);
  spec.y = make_space(kYPool, ny);
  spec.model = make_model(rng, dim);
  spec.kind = MapKind::Composition;
  spec.symbol = random_symbol(rng, spec.y, spec.x);
  spec.offset = random_vector_function(rng, spec.y, spec.model, integer);
  spec.seed = rng.next_u64();
  return spec;
}

InstanceSpec random_adversarial_spec(Rng& rng, MapKind kind, std::size_t nx, std::size_t ny,
                                     std::size_t dim) {
  InstanceSpec spec;
  spec.x = make_space(kXPool, nx);
  spec.y = make_space(kYPool, ny);
  spec.model = VectorSpaceModel{dim, {Seminorm::identity(dim)}};
  spec.kind = kind;
  spec.seed = rng.next_u64();
  switch (kind) {
    case MapKind::Composition:
      return random_composition_spec(rng, nx, ny, dim, false);
    case MapKind::Constant:
      spec.constant = random_vector_function(rng, spec.y, spec.model, false);
      break;
    case MapKind::Averaging: {
      if (nx < 2) throw std::invalid_argument("averaging catalog instance needs |X| >= 2");
      double total = 0.0;
      std::vector<double> raw(nx);
      for (auto& w : raw) {
        w = 1.0 + static_cast<double>(rng.uniform_int(0, 3));
        total += w;
      }
      for (double w : raw) spec.weights.push_back(Complex{w / total, 0.0});
      break;
    }
    case MapKind::Rotation: {
      if (dim < 2) throw std::invalid_argument("rotation catalog instance needs d >= 2");
      ComplexMatrix r = ComplexMatrix::identity(dim);
      // quarter-turn in the first two coordinates
      r.at(0, 0) = Complex{0.0, 0.0};
      r.at(0, 1) = Complex{-1.0, 0.0};
      r.at(1, 0) = Complex{1.0, 0.0};
      r.at(1, 1) = Complex{0.0, 0.0};
      spec.rotation = r;
      // a coordinate seminorm sees the turn; the full max-coordinate
      // seminorm alone would be rotation-invariant
      spec.model.seminorms.push_back(Seminorm::coordinate(dim, 0));
      break;
    }
    case MapKind::DirectionDependent: {
      if (nx < 2 || dim < 2)
        throw std::invalid_argument("direction-dependent catalog instance needs |X|, d >= 2");
      spec.symbol = random_symbol(rng, spec.y, spec.x);
      Symbol phi2 = *spec.symbol;
      const std::size_t flip = rng.index(ny);
      phi2.table[flip] = (phi2.table[flip] + 1 + rng.index(nx - 1)) % nx;
      spec.symbol2 = phi2;
      break;
    }
    case MapKind::PerturbedComposition:
      if (nx < 2 || dim < 2)
        throw std::invalid_argument("perturbed catalog instance needs |X|, d >= 2");
      spec.symbol = random_symbol(rng, spec.y, spec.x);
      spec.offset = random_vector_function(rng, spec.y, spec.model, true);
      spec.epsilon = 1e-3;
      spec.trigger = PerturbTrigger::NonTensor;
      break;
    case MapKind::External:
      throw std::invalid_argument("external instances cannot be generated randomly");
  }
  return spec;
}

// --- brute-force extraction oracle ---------------------------------------------

OracleResult oracle_extract(const MapUnderTest& t, const ComplexVector& u, double tol,
                            std::uint64_t seed) {
  if (t.domain.size() * t.codomain.size() > 64)
    throw std::invalid_argument("oracle guard exceeded: |X| * |Y| must be <= 64");
  auto [offset, t_prime] = normalize(t);
  (void)offset;

  Rng rng(seed);
  std::vector<ScalarFunction> family;
  for (std::size_t x = 0; x < t.domain.size(); ++x)
    family.push_back(indicator_function(t.domain, x));
  for (int k = 0; k < 50; ++k)
    family.push_back(random_scalar_function(rng, t.domain, false));

  std::vector<ScalarFunction> gs;
  gs.reserve(family.size());
  for (const auto& f : family) gs.push_back(scalar_action(t_prime, u, f).g);

  OracleResult result;
  result.per_y.resize(t.codomain.size());
  for (std::size_t y = 0; y < t.codomain.size(); ++y) {
    OraclePoint& point = result.per_y[y];
    point.scores.assign(t.domain.size(), 0.0);
    for (std::size_t x = 0; x < t.domain.size(); ++x) {
      for (std::size_t i = 0; i < family.size(); ++i) {
        point.scores[x] =
            std::max(point.scores[x], std::abs(gs[i].values[y] - family[i].values[x]));
      }
    }
    point.min_score = *std::min_element(point.scores.begin(), point.scores.end());
    for (std::size_t x = 0; x < t.domain.size(); ++x) {
      if (point.scores[x] <= point.min_score + tol) point.candidates.push_back(x);
    }
    point.clean = point.min_score <= tol;
  }
  return result;
}

bool oracle_agrees(const OracleResult& oracle, const SymbolExtraction& extraction,
                   const FiniteSpace& x_space) {
  (void)x_space;
  if (oracle.per_y.size() != extraction.per_point.size()) return false;
  for (std::size_t y = 0; y < oracle.per_y.size(); ++y) {
    const OraclePoint& point = oracle.per_y[y];
    const bool oracle_unique = point.clean && point.candidates.size() == 1;
    if (extraction.per_point[y].has_value()) {
      if (!oracle_unique || point.candidates[0] != *extraction.per_point[y]) return false;
    } else {
      if (oracle_unique) return false;
    }
  }
  return true;
}

}  // namespace rpmap
