#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pgchroma/error.hpp"
#include "pgchroma/pg.hpp"

namespace pgchroma {

using Color = std::uint8_t;
inline constexpr int kMaxColors = 255;

/// A color for every point of a projective space. Proper when no t-dimensional
/// linear subspace (a (t-1)-dimensional projective subspace) is monochromatic.
struct Coloring {
  SpacePtr space;
  int t = 2;
  int k = 0;
  std::vector<Color> colors;  ///< indexed by PointId

  Coloring() = default;
  Coloring(SpacePtr s, int t_, int k_) : space(std::move(s)), t(t_), k(k_), colors(space->size(), 0) {}
  Coloring(SpacePtr s, int t_, int k_, std::vector<Color> c) : space(std::move(s)), t(t_), k(k_), colors(std::move(c)) {
    check();
  }

  Color operator[](PointId p) const noexcept { return colors[p.idx]; }
  Color& operator[](PointId p) noexcept { return colors[p.idx]; }

  int n() const noexcept { return space->n(); }
  int q() const noexcept { return space->q(); }

  /// Throws unless every point has a color below k.
  void check() const {
    if (!space) throw Error(ErrorKind::ParameterMismatch, "coloring has no space");
    if (colors.size() != space->size()) throw Error(ErrorKind::ParameterMismatch, "coloring does not cover every point");
    if (k < 1 || k > kMaxColors) throw Error(ErrorKind::ParameterMismatch, "k must be in [1,255]");
    if (t < 2) throw Error(ErrorKind::InvalidDimension, "t must be at least 2");
    for (Color c : colors)
      if (c >= k) throw Error(ErrorKind::ParameterMismatch, "color " + std::to_string(c) + " not below k=" + std::to_string(k));
  }

  std::vector<std::uint64_t> class_sizes() const {
    std::vector<std::uint64_t> sizes(static_cast<std::size_t>(k), 0);
    for (Color c : colors) ++sizes[c];
    return sizes;
  }

  /// Number of distinct colors that actually occur.
  int used_colors() const {
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (Color c : colors) seen[c] = true;
    return static_cast<int>(std::count(seen.begin(), seen.end(), true));
  }

  /// Color of the point spanned by every nonzero vector code; entry 0 is unused.
  std::vector<Color> color_by_code() const {
    std::vector<Color> table(space->vector_count(), 0);
    for (std::uint64_t c = 1; c < table.size(); ++c) table[c] = colors[space->index_of(c)];
    return table;
  }

  friend bool operator==(const Coloring& a, const Coloring& b) {
    return a.space->n() == b.space->n() && a.space->q() == b.space->q() && a.t == b.t && a.k == b.k &&
           a.colors == b.colors;
  }
};

/// The one-color coloring; proper exactly when n < t.
inline Coloring uniform_coloring(SpacePtr space, int t) { return Coloring(std::move(space), t, 1); }

/// True iff the set contains no line {x, y, x+y} of PG(n-1,2).
inline bool is_cap(std::span<const PointId> points, const ProjectiveSpace& space) {
  if (space.q() != 2) throw Error(ErrorKind::ParameterMismatch, "is_cap is the q = 2 line view");
  std::vector<bool> member(space.size(), false);
  for (PointId p : points) member[p.idx] = true;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const std::uint64_t z = space.code(points[i]) ^ space.code(points[j]);
      if (z != 0 && member[space.index_of(z)]) return false;
    }
  return true;
}

/// Points of a given color.
inline std::vector<PointId> color_class(const Coloring& c, Color color) {
  std::vector<PointId> out;
  for (std::uint32_t i = 0; i < c.colors.size(); ++i)
    if (c.colors[i] == color) out.push_back({i});
  return out;
}

}  // namespace pgchroma
