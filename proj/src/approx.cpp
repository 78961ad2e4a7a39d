#include "rpmap/approx.hpp"

#include <algorithm>
#include <stdexcept>

namespace rpmap {

Cover build_cover(const VectorFunction& f, const Neighborhood& B) {
  const std::size_t n = f.space.size();
  Cover cover;
  std::vector<bool> covered(n, false);
  for (std::size_t x0 = 0; x0 < n; ++x0) {
    if (covered[x0]) continue;
    std::vector<std::size_t> set;
    for (std::size_t x = 0; x < n; ++x) {
      if (nbr_contains(f.model, B, f.values[x] - f.values[x0])) {
        set.push_back(x);
        covered[x] = true;
      }
    }
    cover.centers.push_back(x0);
    cover.sets.push_back(std::move(set));
  }
  return cover;
}

bool cover_is_valid(const Cover& cover, std::size_t point_count) {
  if (cover.centers.size() != cover.sets.size()) return false;
  std::vector<bool> covered(point_count, false);
  for (std::size_t j = 0; j < cover.centers.size(); ++j) {
    bool self = false;
    for (std::size_t x : cover.sets[j]) {
      if (x >= point_count) return false;
      covered[x] = true;
      if (x == cover.centers[j]) self = true;
    }
    if (!self) return false;
  }
  return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

namespace {

PartitionOfUnity assignment_pou(const Cover& cover, const FiniteSpace& space) {
  const std::size_t n = space.size();
  PartitionOfUnity pou;
  pou.weights.assign(cover.centers.size(), constant_function(space, Complex{0.0, 0.0}));
  for (std::size_t x = 0; x < n; ++x) {
    bool assigned = false;
    for (std::size_t j = 0; j < cover.sets.size() && !assigned; ++j) {
      if (std::find(cover.sets[j].begin(), cover.sets[j].end(), x) != cover.sets[j].end()) {
        pou.weights[j].values[x] = Complex{1.0, 0.0};
        assigned = true;
      }
    }
    if (!assigned) throw std::invalid_argument("cover leaves a point uncovered");
  }
  return pou;
}

PartitionOfUnity hat_pou(const Cover& cover, const FiniteSpace& space) {
  if (!space.metric) throw std::invalid_argument("hat partition requires a metric");
  const std::size_t n = space.size();
  PartitionOfUnity pou;
  pou.weights.assign(cover.centers.size(), constant_function(space, Complex{0.0, 0.0}));

  std::vector<double> radius(cover.centers.size(), 0.0);
  for (std::size_t j = 0; j < cover.centers.size(); ++j) {
    for (std::size_t x : cover.sets[j])
      radius[j] = std::max(radius[j], space.dist(x, cover.centers[j]));
  }

  for (std::size_t x = 0; x < n; ++x) {
    std::vector<double> w(cover.centers.size(), 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < cover.centers.size(); ++j) {
      const bool inside =
          std::find(cover.sets[j].begin(), cover.sets[j].end(), x) != cover.sets[j].end();
      if (!inside) continue;
      if (radius[j] == 0.0) {
        w[j] = (x == cover.centers[j]) ? 1.0 : 0.0;
      } else {
        w[j] = std::max(0.0, 1.0 - space.dist(x, cover.centers[j]) / radius[j]);
      }
      total += w[j];
    }
    if (total > 0.0) {
      for (std::size_t j = 0; j < cover.centers.size(); ++j)
        pou.weights[j].values[x] = Complex{w[j] / total, 0.0};
    } else {
      // hat weights vanished at x; fall back to assignment for this point
      bool assigned = false;
      for (std::size_t j = 0; j < cover.sets.size() && !assigned; ++j) {
        if (std::find(cover.sets[j].begin(), cover.sets[j].end(), x) != cover.sets[j].end()) {
          pou.weights[j].values[x] = Complex{1.0, 0.0};
          assigned = true;
        }
      }
      if (!assigned) throw std::invalid_argument("cover leaves a point uncovered");
    }
  }
  return pou;
}

}  // namespace

PartitionOfUnity build_pou(const Cover& cover, const FiniteSpace& space, PouStrategy strategy) {
  if (!cover_is_valid(cover, space.size())) throw std::invalid_argument("invalid cover");
  switch (strategy) {
    case PouStrategy::Assignment:
      return assignment_pou(cover, space);
    case PouStrategy::Hat:
      return hat_pou(cover, space);
  }
  throw std::logic_error("unknown partition strategy");
}

ApproxResult tensor_approximate(const VectorFunction& f, const Neighborhood& B,
                                PouStrategy strategy) {
  ApproxResult result;
  result.cover = build_cover(f, B);
  result.pou = build_pou(result.cover, f.space, strategy);

  for (std::size_t j = 0; j < result.cover.centers.size(); ++j) {
    result.g.terms.push_back(TensorTerm{result.pou.weights[j], f.values[result.cover.centers[j]]});
  }

  const VectorFunction diff = sub(f, tensor_eval(result.g, f.model));
  result.certificate.in_v = in_V(diff, B);
  for (std::size_t c : result.cover.centers)
    result.certificate.cover_centers.push_back(f.space.labels[c]);
  for (const auto& p : f.model.seminorms)
    result.certificate.errors_per_seminorm.push_back(uniform_seminorm(diff, p));
  return result;
}

}  // namespace rpmap
