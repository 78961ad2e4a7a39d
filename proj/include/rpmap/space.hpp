#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rpmap {

struct MetricViolation {
  std::string axiom;  // "shape" | "diagonal" | "symmetry" | "indiscernible" | "triangle" | "negative"
  std::vector<std::string> points;
};

// Finite point set standing in for a compact Hausdorff space.  A metric is
// optional and only consulted by cover/partition demos.
struct FiniteSpace {
  std::vector<std::string> labels;
  std::optional<std::vector<double>> metric;  // row-major n*n

  std::size_t size() const { return labels.size(); }
  std::size_t index_of(const std::string& label) const;  // throws on unknown label
  double dist(std::size_t i, std::size_t j) const;
  void validate() const;
};

bool operator==(const FiniteSpace& a, const FiniteSpace& b);

// Checks symmetry, identity of indiscernibles and the triangle inequality
// over all pairs/triples; first violated axiom wins.
std::optional<MetricViolation> validate_metric(const FiniteSpace& space);

// Total map from the source space (Y) into the target space (X), tabulated in
// source label order.  On finite discrete spaces every such map is continuous.
struct Symbol {
  FiniteSpace source;  // Y
  FiniteSpace target;  // X
  std::vector<std::size_t> table;  // source index -> target index

  std::size_t apply(std::size_t y) const { return table[y]; }
  const std::string& image_label(std::size_t y) const { return target.labels[table[y]]; }
  void validate() const;
};

bool operator==(const Symbol& a, const Symbol& b);

Symbol identity_symbol(const FiniteSpace& space);

bool symbol_is_surjective(const Symbol& phi);

struct InjectivityReport {
  bool injective = true;
  std::string y1;  // colliding pair when not injective, in label order
  std::string y2;
};

InjectivityReport symbol_is_injective(const Symbol& phi);

}  // namespace rpmap
