#pragma once

#include <array>

#include "stmhd/sparse.hpp"

namespace stmhd {

enum class Field { U = 0, P = 1, J = 2, A = 3 };

struct FieldSizes {
  int u = 0, p = 0, j = 0, a = 0;

  int operator[](Field f) const {
    switch (f) {
      case Field::U: return u;
      case Field::P: return p;
      case Field::J: return j;
      case Field::A: return a;
    }
    return 0;
  }
  int slab() const { return u + p + j + a; }
  /// Offset of a field inside one slab (fields stored u, p, j, A).
  int offset(Field f) const {
    switch (f) {
      case Field::U: return 0;
      case Field::P: return u;
      case Field::J: return u + p;
      case Field::A: return u + p + j;
    }
    return 0;
  }
  bool operator==(const FieldSizes&) const = default;
};

/// N_t stacked slabs of (u, p, j, A). Views alias the flat storage.
class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(FieldSizes sizes, int num_steps);

  const FieldSizes& sizes() const { return sizes_; }
  int num_steps() const { return nt_; }
  Eigen::Index size() const { return data_.size(); }

  Vector& data() { return data_; }
  const Vector& data() const { return data_; }

  /// Slab k, 0-based (time level k + 1).
  auto slab(int k) { return data_.segment(static_cast<Eigen::Index>(k) * sizes_.slab(), sizes_.slab()); }
  auto slab(int k) const { return data_.segment(static_cast<Eigen::Index>(k) * sizes_.slab(), sizes_.slab()); }
  auto field(int k, Field f) {
    return data_.segment(static_cast<Eigen::Index>(k) * sizes_.slab() + sizes_.offset(f), sizes_[f]);
  }
  auto field(int k, Field f) const {
    return data_.segment(static_cast<Eigen::Index>(k) * sizes_.slab() + sizes_.offset(f), sizes_[f]);
  }

  /// All N_t copies of one field stacked contiguously.
  Vector gather(Field f) const;
  void scatter(Field f, const Vector& stacked);

  double norm() const { return data_.norm(); }

 private:
  FieldSizes sizes_{};
  int nt_ = 0;
  Vector data_;
};

}  // namespace stmhd
