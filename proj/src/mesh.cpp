#include "stmhd/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <string>

#include "stmhd/errors.hpp"

namespace stmhd {

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Left:
      return "Left";
    case BoundaryTag::Right:
      return "Right";
    case BoundaryTag::Bottom:
      return "Bottom";
    case BoundaryTag::Top:
      return "Top";
  }
  return "?";
}

BoundaryTag parse_boundary_tag(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "left") return BoundaryTag::Left;
  if (lower == "right") return BoundaryTag::Right;
  if (lower == "bottom") return BoundaryTag::Bottom;
  if (lower == "top") return BoundaryTag::Top;
  throw ConfigError("unknown boundary tag '" + std::string(name) + "'");
}

Mesh::Mesh(double x0, double x1, double y0, double y1, int nx, int ny)
    : x0_(x0), x1_(x1), y0_(y0), y1_(y1), nx_(nx), ny_(ny), h_((x1 - x0) / nx) {
  if (nx < 1 || ny < 1) throw ConfigError("mesh needs at least one cell per side");
  const double hy = (y1 - y0) / ny;
  vertices_.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      // snap the last row/column onto the exact extent
      const double x = (i == nx) ? x1 : x0 + i * h_;
      const double y = (j == ny) ? y1 : y0 + j * hy;
      vertices_.push_back({x, y});
    }

  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
  triangles_.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      triangles_.push_back({v00, v10, v11});
      triangles_.push_back({v00, v11, v01});
    }

  for (int i = 0; i < nx; ++i) facets_.push_back({vid(i, 0), vid(i + 1, 0), BoundaryTag::Bottom});
  for (int j = 0; j < ny; ++j) facets_.push_back({vid(nx, j), vid(nx, j + 1), BoundaryTag::Right});
  for (int i = nx; i > 0; --i) facets_.push_back({vid(i, ny), vid(i - 1, ny), BoundaryTag::Top});
  for (int j = ny; j > 0; --j) facets_.push_back({vid(0, j), vid(0, j - 1), BoundaryTag::Left});
}

double Mesh::signed_area(int t) const {
  const auto& tri = triangles_[static_cast<std::size_t>(t)];
  const Point& a = vertices_[tri[0]];
  const Point& b = vertices_[tri[1]];
  const Point& c = vertices_[tri[2]];
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

void Mesh::write_text(std::ostream& os) const {
  os << "vertices " << vertices_.size() << "\n";
  for (const auto& v : vertices_) os << v[0] << " " << v[1] << "\n";
  os << "triangles " << triangles_.size() << "\n";
  for (const auto& t : triangles_) os << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << "tags " << facets_.size() << "\n";
  for (const auto& f : facets_) os << f.v0 << " " << f.v1 << " " << to_string(f.tag) << "\n";
}

namespace {

int cells_along(double extent, double dx, const char* axis) {
  const double ratio = extent / dx;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError(std::string("extent along ") + axis + " is not an integer multiple of dx");
  return static_cast<int>(n);
}

}  // namespace

Mesh build_rect_mesh(double x0, double x1, double y0, double y1, double dx) {
  if (!(x1 > x0) || !(y1 > y0)) throw ConfigError("empty rectangle");
  if (!(dx > 0.0)) throw ConfigError("dx must be positive");
  const int nx = cells_along(x1 - x0, dx, "x");
  const int ny = cells_along(y1 - y0, dx, "y");
  return Mesh(x0, x1, y0, y1, nx, ny);
}

}  // namespace stmhd
