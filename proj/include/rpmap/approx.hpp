#pragma once

#include <string>
#include <vector>

#include "rpmap/funcspace.hpp"

namespace rpmap {

// Finite cover of the space by sets W_c = {x : F(x) - F(c) in B}.
struct Cover {
  std::vector<std::size_t> centers;            // point indices, in selection order
  std::vector<std::vector<std::size_t>> sets;  // one point-index set per center
};

// Greedy selection in label order: the first uncovered point becomes the next
// center.  Terminates because every point covers itself (0_E lies in B).
Cover build_cover(const VectorFunction& f, const Neighborhood& B);

bool cover_is_valid(const Cover& cover, std::size_t point_count);

// Nonnegative weights, one scalar function per center, summing to one at
// every point, each supported inside its cover set.
struct PartitionOfUnity {
  std::vector<ScalarFunction> weights;
};

enum class PouStrategy {
  Assignment,  // each point's full weight on its first covering center
  Hat,         // metric hat weights, assignment fallback where they vanish
};

PartitionOfUnity build_pou(const Cover& cover, const FiniteSpace& space,
                           PouStrategy strategy = PouStrategy::Assignment);

struct ApproxCertificate {
  std::vector<std::string> cover_centers;
  bool in_v = false;
  std::vector<double> errors_per_seminorm;  // uniform p_i(F - G), one per model seminorm
};

struct ApproxResult {
  Cover cover;
  PartitionOfUnity pou;
  TensorSum g;  // sum_j h_j (x) F(x_j)
  ApproxCertificate certificate;
};

// Constructive tensor approximation: cover, subordinate partition, then
// G = sum_j h_j (x) F(x_j), certified by checking F - G in V_X(B).
ApproxResult tensor_approximate(const VectorFunction& f, const Neighborhood& B,
                                PouStrategy strategy = PouStrategy::Assignment);

}  // namespace rpmap
