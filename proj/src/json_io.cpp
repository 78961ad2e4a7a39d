#include "rpmap/json_io.hpp"

#include <cmath>

namespace rpmap::jsonio {

const json& expect_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw DecodeError(std::string("missing field: ") + key);
  return j.at(key);
}

double expect_number(const json& j, const char* what) {
  if (!j.is_number()) throw DecodeError(std::string(what) + " must be a number");
  return j.get<double>();
}

json encode(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex decode_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw DecodeError("complex scalar must be a [re, im] pair");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

json encode(const ComplexVector& u) {
  json out = json::array();
  for (const auto& z : u.entries) out.push_back(encode(z));
  return out;
}

ComplexVector decode_vector(const json& j, std::size_t dim) {
  if (!j.is_array()) throw DecodeError("vector must be an array of [re, im] pairs");
  if (j.size() != dim) throw DecodeError("vector has wrong dimension");
  ComplexVector u(dim);
  for (std::size_t k = 0; k < dim; ++k) u[k] = decode_complex(j[k]);
  if (!u.is_finite()) throw DecodeError("vector entries must be finite");
  return u;
}

json encode(const ComplexMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(encode(m.at(r, c)));
    out.push_back(row);
  }
  return out;
}

ComplexMatrix decode_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw DecodeError("matrix must be a non-empty array of rows");
  ComplexMatrix m;
  m.rows = j.size();
  m.cols = j[0].is_array() ? j[0].size() : 0;
  if (m.cols == 0) throw DecodeError("matrix rows must be non-empty arrays");
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != m.cols) throw DecodeError("matrix rows have uneven width");
    for (const auto& entry : row) m.coeffs.push_back(decode_complex(entry));
  }
  return m;
}

json encode(const Seminorm& p) { return encode(p.matrix); }

Seminorm decode_seminorm(const json& j, std::size_t dim) {
  Seminorm p{decode_matrix(j)};
  if (p.matrix.cols != dim) throw DecodeError("seminorm width != model dimension");
  return p;
}

json encode(const VectorSpaceModel& model) {
  json seminorms = json::array();
  for (const auto& p : model.seminorms) seminorms.push_back(encode(p));
  return json{{"dimension", model.dimension}, {"seminorms", seminorms}};
}

VectorSpaceModel decode_model(const json& j) {
  const json& dim = expect_field(j, "dimension");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() < 1)
    throw DecodeError("model dimension must be a positive integer");
  VectorSpaceModel model;
  model.dimension = dim.get<std::size_t>();
  const json& ps = expect_field(j, "seminorms");
  if (!ps.is_array() || ps.empty()) throw DecodeError("model needs a non-empty seminorm list");
  for (const auto& p : ps) model.seminorms.push_back(decode_seminorm(p, model.dimension));
  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    throw DecodeError(e.what());
  }
  return model;
}

json encode(const Neighborhood& B) {
  json bounds = json::array();
  for (const auto& b : B.bounds)
    bounds.push_back(json{{"seminorm", b.seminorm}, {"radius", b.radius}});
  return json{{"bounds", bounds}};
}

Neighborhood decode_neighborhood(const json& j, const VectorSpaceModel& model) {
  Neighborhood B;
  const json& bounds = expect_field(j, "bounds");
  if (!bounds.is_array()) throw DecodeError("bounds must be an array");
  for (const auto& b : bounds) {
    const json& idx = expect_field(b, "seminorm");
    if (!idx.is_number_unsigned()) throw DecodeError("bound seminorm index must be unsigned");
    const std::size_t i = idx.get<std::size_t>();
    if (i >= model.seminorms.size()) throw DecodeError("bound references unknown seminorm");
    const double r = expect_number(expect_field(b, "radius"), "bound radius");
    if (!(r > 0.0)) throw DecodeError("bound radius must be > 0");
    B.bounds.push_back(NeighborhoodBound{i, r});
  }
  return B;
}

json encode(const FiniteSpace& space) {
  json out{{"labels", space.labels}};
  if (space.metric) {
    const std::size_t n = space.size();
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < n; ++k) row.push_back((*space.metric)[i * n + k]);
      rows.push_back(row);
    }
    out["metric"] = rows;
  }
  return out;
}

FiniteSpace decode_space(const json& j) {
  FiniteSpace space;
  const json& labels = expect_field(j, "labels");
  if (!labels.is_array() || labels.empty()) throw DecodeError("labels must be a non-empty array");
  for (const auto& l : labels) {
    if (!l.is_string()) throw DecodeError("labels must be strings");
    space.labels.push_back(l.get<std::string>());
  }
  if (j.contains("metric") && !j.at("metric").is_null()) {
    const json& rows = j.at("metric");
    const std::size_t n = space.size();
    if (!rows.is_array() || rows.size() != n) throw DecodeError("metric must be n rows");
    std::vector<double> metric;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != n) throw DecodeError("metric rows must have n entries");
      for (const auto& e : row) metric.push_back(expect_number(e, "metric entry"));
    }
    space.metric = std::move(metric);
  }
  try {
    space.validate();
  } catch (const std::invalid_argument& e) {
    throw DecodeError(e.what());
  }
  return space;
}

json encode_symbol(const Symbol& phi) {
  json table = json::object();
  for (std::size_t y = 0; y < phi.source.size(); ++y)
    table[phi.source.labels[y]] = phi.target.labels[phi.table[y]];
  return json{{"table", table}};
}

Symbol decode_symbol(const json& j, const FiniteSpace& source, const FiniteSpace& target) {
  const json& table = expect_field(j, "table");
  if (!table.is_object()) throw DecodeError("symbol table must be an object");
  Symbol phi{source, target, {}};
  phi.table.resize(source.size());
  std::vector<bool> seen(source.size(), false);
  for (const auto& [key, value] : table.items()) {
    if (!value.is_string()) throw DecodeError("symbol images must be labels");
    std::size_t y = 0, x = 0;
    try {
      y = source.index_of(key);
      x = target.index_of(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw DecodeError(e.what());
    }
    phi.table[y] = x;
    seen[y] = true;
  }
  for (std::size_t y = 0; y < source.size(); ++y) {
    if (!seen[y]) throw DecodeError("symbol table must be total, missing: " + source.labels[y]);
  }
  return phi;
}

json encode_scalar_function(const ScalarFunction& f) {
  json values = json::object();
  for (std::size_t i = 0; i < f.space.size(); ++i) values[f.space.labels[i]] = encode(f.values[i]);
  return json{{"values", values}};
}

ScalarFunction decode_scalar_function(const json& j, const FiniteSpace& space) {
  const json& values = expect_field(j, "values");
  if (!values.is_object()) throw DecodeError("function values must be an object");
  ScalarFunction f{space, {}};
  f.values.assign(space.size(), Complex{0.0, 0.0});
  std::vector<bool> seen(space.size(), false);
  for (const auto& [key, value] : values.items()) {
    std::size_t i = 0;
    try {
      i = space.index_of(key);
    } catch (const std::invalid_argument& e) {
      throw DecodeError(e.what());
    }
    f.values[i] = decode_complex(value);
    seen[i] = true;
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!seen[i]) throw DecodeError("function table must be total, missing: " + space.labels[i]);
  }
  return f;
}

json encode_vector_function(const VectorFunction& f) {
  json values = json::object();
  for (std::size_t i = 0; i < f.space.size(); ++i) values[f.space.labels[i]] = encode(f.values[i]);
  return json{{"values", values}};
}

VectorFunction decode_vector_function(const json& j, const FiniteSpace& space,
                                      const VectorSpaceModel& model) {
  const json& values = expect_field(j, "values");
  if (!values.is_object()) throw DecodeError("function values must be an object");
  VectorFunction f{space, model, {}};
  f.values.assign(space.size(), zero_vector(model.dimension));
  std::vector<bool> seen(space.size(), false);
  for (const auto& [key, value] : values.items()) {
    std::size_t i = 0;
    try {
      i = space.index_of(key);
    } catch (const std::invalid_argument& e) {
      throw DecodeError(e.what());
    }
    f.values[i] = decode_vector(value, model.dimension);
    seen[i] = true;
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!seen[i]) throw DecodeError("function table must be total, missing: " + space.labels[i]);
  }
  return f;
}

json encode_tensor_sum(const TensorSum& sum) {
  json terms = json::array();
  for (const auto& term : sum.terms)
    terms.push_back(json{{"f", encode_scalar_function(term.f)}, {"u", encode(term.u)}});
  return json{{"terms", terms}};
}

TensorSum decode_tensor_sum(const json& j, const FiniteSpace& space, std::size_t dim) {
  const json& terms = expect_field(j, "terms");
  if (!terms.is_array() || terms.empty()) throw DecodeError("tensor sum needs terms");
  TensorSum sum;
  for (const auto& term : terms) {
    TensorTerm t{decode_scalar_function(expect_field(term, "f"), space),
                 decode_vector(expect_field(term, "u"), dim)};
    sum.terms.push_back(std::move(t));
  }
  return sum;
}

}  // namespace rpmap::jsonio
