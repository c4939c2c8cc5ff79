#include "core/model_spec.hpp"

#include "core/error.hpp"

namespace svf {

void ModelSpec::validate() const {
  if (odd_rank < 1)
    fail(ErrorKind::Input, "odd_rank must be >= 1 (rank 0 is the purely even case)");
  if (odd_rank > kMaxOddRank)
    fail(ErrorKind::Input, "odd_rank must be <= " + std::to_string(kMaxOddRank));
  if (base_dim < 0) fail(ErrorKind::Input, "base_dim must be >= 0");
  if (base_dim > kMaxBaseDim)
    fail(ErrorKind::Input, "base_dim must be <= " + std::to_string(kMaxBaseDim));
  if (truncation_order < 0) fail(ErrorKind::Input, "truncation_order must be >= 0");
}

std::string ModelSpec::describe() const {
  return "(" + std::to_string(base_dim) + "," + std::to_string(truncation_order) + "," +
         std::to_string(odd_rank) + ")";
}

}  // namespace svf
