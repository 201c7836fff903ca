#pragma once

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace stmhd {

enum class BoundaryTag { Left = 0, Right = 1, Bottom = 2, Top = 3 };

inline constexpr std::array<BoundaryTag, 4> kAllBoundaryTags = {
    BoundaryTag::Left, BoundaryTag::Right, BoundaryTag::Bottom, BoundaryTag::Top};

std::string_view to_string(BoundaryTag tag);
/// Throws ConfigError for anything but Left/Right/Bottom/Top (case-insensitive).
BoundaryTag parse_boundary_tag(std::string_view name);

using Point = std::array<double, 2>;

struct BoundaryFacet {
  int v0;
  int v1;
  BoundaryTag tag;
};

/// Structured triangulation of an axis-aligned rectangle. Every square cell
/// is split along its (x0,y0)-(x1,y1) diagonal into two counterclockwise
/// triangles. Immutable after construction.
class Mesh {
 public:
  Mesh(double x0, double x1, double y0, double y1, int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }
  double area() const { return (x1_ - x0_) * (y1_ - y0_); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<BoundaryFacet>& boundary_facets() const { return facets_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }

  /// Signed area, positive for counterclockwise triangles.
  double signed_area(int t) const;

  /// Debug dump with "vertices", "triangles" and "tags" sections.
  void write_text(std::ostream& os) const;

 private:
  double x0_, x1_, y0_, y1_;
  int nx_, ny_;
  double h_;
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<BoundaryFacet> facets_;
};

/// Builds the structured mesh with cell size dx. Both extents must be integer
/// multiples of dx (relative tolerance 1e-9), otherwise ConfigError.
Mesh build_rect_mesh(double x0, double x1, double y0, double y1, double dx);

}  // namespace stmhd
