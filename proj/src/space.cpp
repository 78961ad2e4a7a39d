#include "rpmap/space.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace rpmap {

namespace {
constexpr double kMetricTol = 1e-12;
}

std::size_t FiniteSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  throw std::invalid_argument("unknown label: " + label);
}

double FiniteSpace::dist(std::size_t i, std::size_t j) const {
  if (!metric) throw std::logic_error("space has no metric");
  return (*metric)[i * labels.size() + j];
}

void FiniteSpace::validate() const {
  if (labels.empty()) throw std::invalid_argument("space must be non-empty");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw std::invalid_argument("labels must be pairwise distinct");
  if (metric) {
    if (metric->size() != labels.size() * labels.size())
      throw std::invalid_argument("metric must be an n-by-n matrix");
    if (auto violation = validate_metric(*this)) {
      throw std::invalid_argument("metric violates axiom: " + violation->axiom);
    }
  }
}

bool operator==(const FiniteSpace& a, const FiniteSpace& b) { return a.labels == b.labels; }

std::optional<MetricViolation> validate_metric(const FiniteSpace& space) {
  if (!space.metric) throw std::invalid_argument("validate_metric requires a metric");
  const std::size_t n = space.size();
  if (space.metric->size() != n * n) return MetricViolation{"shape", {}};
  const auto& d = *space.metric;
  const auto& lbl = space.labels;

  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d[i * n + i]) > kMetricTol) return MetricViolation{"diagonal", {lbl[i]}};
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i * n + j] < -kMetricTol) return MetricViolation{"negative", {lbl[i], lbl[j]}};
      if (std::abs(d[i * n + j] - d[j * n + i]) > kMetricTol)
        return MetricViolation{"symmetry", {lbl[i], lbl[j]}};
      if (i != j && d[i * n + j] <= kMetricTol)
        return MetricViolation{"indiscernible", {lbl[i], lbl[j]}};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i * n + k] > d[i * n + j] + d[j * n + k] + kMetricTol)
          return MetricViolation{"triangle", {lbl[i], lbl[j], lbl[k]}};
      }
    }
  }
  return std::nullopt;
}

void Symbol::validate() const {
  source.validate();
  target.validate();
  if (table.size() != source.size()) throw std::invalid_argument("symbol table must be total");
  for (std::size_t idx : table) {
    if (idx >= target.size()) throw std::invalid_argument("symbol image out of range");
  }
}

bool operator==(const Symbol& a, const Symbol& b) {
  return a.source == b.source && a.target == b.target && a.table == b.table;
}

Symbol identity_symbol(const FiniteSpace& space) {
  Symbol phi{space, space, {}};
  phi.table.resize(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) phi.table[i] = i;
  return phi;
}

bool symbol_is_surjective(const Symbol& phi) {
  std::vector<bool> hit(phi.target.size(), false);
  for (std::size_t idx : phi.table) hit[idx] = true;
  for (bool h : hit) {
    if (!h) return false;
  }
  return true;
}

InjectivityReport symbol_is_injective(const Symbol& phi) {
  for (std::size_t i = 0; i < phi.table.size(); ++i) {
    for (std::size_t j = i + 1; j < phi.table.size(); ++j) {
      if (phi.table[i] == phi.table[j]) {
        return InjectivityReport{false, phi.source.labels[i], phi.source.labels[j]};
      }
    }
  }
  return InjectivityReport{};
}

}  // namespace rpmap
