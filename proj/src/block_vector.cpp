#include "stmhd/block_vector.hpp"

#include "stmhd/errors.hpp"

namespace stmhd {

BlockVector::BlockVector(FieldSizes sizes, int num_steps)
    : sizes_(sizes), nt_(num_steps), data_(Vector::Zero(static_cast<Eigen::Index>(num_steps) * sizes.slab())) {
  if (num_steps < 1) throw ConfigError("block vector needs at least one time step");
}

Vector BlockVector::gather(Field f) const {
  const int n = sizes_[f];
  Vector out(static_cast<Eigen::Index>(n) * nt_);
  for (int k = 0; k < nt_; ++k) out.segment(static_cast<Eigen::Index>(k) * n, n) = field(k, f);
  return out;
}

void BlockVector::scatter(Field f, const Vector& stacked) {
  const int n = sizes_[f];
  if (stacked.size() != static_cast<Eigen::Index>(n) * nt_) throw Error("scatter: size mismatch");
  for (int k = 0; k < nt_; ++k) field(k, f) = stacked.segment(static_cast<Eigen::Index>(k) * n, n);
}

}  // namespace stmhd
