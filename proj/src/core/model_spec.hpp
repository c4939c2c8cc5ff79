#pragma once

#include <cstddef>
#include <string>

namespace svf {

/// Shape of the function algebra B_d(s) (x) Lambda(xi^1..xi^r): s even
/// coordinates truncated past total degree d, and r odd generators.
struct ModelSpec {
  int base_dim = 0;
  int truncation_order = 0;
  int odd_rank = 1;

  static constexpr int kMaxOddRank = 16;
  static constexpr int kMaxBaseDim = 8;

  /// Throws an input error when the spec is out of range.
  void validate() const;

  bool is_point() const { return base_dim == 0; }

  /// rk V = 1, or a point base with rk V <= 2.
  bool low_rank_exceptional() const {
    return odd_rank == 1 || (base_dim == 0 && odd_rank <= 2);
  }

  /// rk V > 2, or a positive-dimensional base with rk V > 1. Under this
  /// hypothesis the canonical filtration splits along the Euler grading.
  bool filtration_hypothesis() const {
    return odd_rank > 2 || (base_dim > 0 && odd_rank > 1);
  }

  std::string describe() const;

  bool operator==(const ModelSpec&) const = default;
};

}  // namespace svf
