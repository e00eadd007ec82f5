#pragma once

// The projective space PG(n-1,q): canonical points, subspace enumeration in
// reduced row-echelon form, and the coordinate helpers used by the
// constructions.
//
// A vector of F_q^n is addressed by its code: sum of coordinate codes times
// q^(n-1-i), so the leftmost coordinate is most significant and lexicographic
// order on tuples equals numeric order on codes. Points are the normalized
// vectors (leftmost nonzero coordinate 1) sorted by code; PointId is the rank.

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pgchroma/error.hpp"
#include "pgchroma/gf.hpp"

namespace pgchroma {

inline constexpr int kMaxDimension = 16;
inline constexpr std::uint64_t kMaxVectorCount = std::uint64_t{1} << 26;

struct PointId {
  std::uint32_t idx = 0;

  friend constexpr auto operator<=>(PointId, PointId) = default;
};

using Coords = std::vector<FieldElement>;
using Digits = std::array<std::uint8_t, kMaxDimension>;

/// Normalizes a nonzero vector so its leftmost nonzero coordinate is 1.
inline Coords normalize(const Field& field, std::span<const FieldElement> v) {
  auto lead = std::find_if(v.begin(), v.end(), [](FieldElement x) { return x.code != 0; });
  if (lead == v.end()) throw Error(ErrorKind::ZeroVector, "cannot normalize the zero vector");
  const FieldElement scale = field.inv(*lead);
  Coords out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [&](FieldElement x) { return field.mul(scale, x); });
  return out;
}

class ProjectiveSpace;
using SpacePtr = std::shared_ptr<const ProjectiveSpace>;

class ProjectiveSpace {
 public:
  /// Builds PG(n-1,q) with its canonical point order.
  static SpacePtr create(int n, int q) { return std::make_shared<const ProjectiveSpace>(n, build_field(q)); }

  ProjectiveSpace(int n, Field field) : n_(n), field_(std::move(field)) {
    const int q = field_.q();
    if (n < 1 || n > kMaxDimension)
      throw Error(ErrorKind::InvalidDimension, "n must be in [1," + std::to_string(kMaxDimension) + "]");
    pow_.assign(static_cast<std::size_t>(n) + 1, 1);
    for (int i = 1; i <= n; ++i) {
      pow_[static_cast<std::size_t>(i)] = pow_[static_cast<std::size_t>(i) - 1] * static_cast<std::uint64_t>(q);
      if (pow_[static_cast<std::size_t>(i)] > kMaxVectorCount)
        throw Error(ErrorKind::TooLarge, "q^n exceeds the supported table size");
    }
    const std::uint64_t total = pow_[static_cast<std::size_t>(n)];
    index_.assign(total, -1);

    // Normalized vectors with leading coordinate at position i are exactly the
    // codes in [q^(n-1-i), 2 q^(n-1-i)); enumerate by descending i to stay sorted.
    points_.reserve(static_cast<std::size_t>((total - 1) / static_cast<std::uint64_t>(q - 1)));
    for (int i = n - 1; i >= 0; --i) {
      const std::uint64_t w = pow_[static_cast<std::size_t>(n - 1 - i)];
      for (std::uint64_t c = w; c < 2 * w; ++c) points_.push_back(c);
    }
    // Every nonzero vector resolves to the id of its normalization.
    Digits d{};
    for (std::size_t id = 0; id < points_.size(); ++id) {
      to_digits(points_[id], d);
      for (int lam = 1; lam < q; ++lam) {
        std::uint64_t code = 0;
        for (int j = 0; j < n; ++j) code = code * static_cast<std::uint64_t>(q) + field_.mul(static_cast<std::uint8_t>(lam), d[static_cast<std::size_t>(j)]);
        index_[code] = static_cast<std::int32_t>(id);
      }
    }
  }

  int n() const noexcept { return n_; }
  int q() const noexcept { return field_.q(); }
  const Field& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return points_.size(); }
  /// q^n, the number of vectors (codes) in F_q^n.
  std::uint64_t vector_count() const noexcept { return pow_[static_cast<std::size_t>(n_)]; }
  std::uint64_t power(int i) const noexcept { return pow_[static_cast<std::size_t>(i)]; }

  std::uint64_t code(PointId p) const noexcept { return points_[p.idx]; }
  const std::vector<std::uint64_t>& codes() const noexcept { return points_; }

  /// Id of the point spanned by a nonzero vector code (not necessarily normalized).
  PointId id_of_code(std::uint64_t code) const {
    if (code == 0 || code >= vector_count()) throw Error(ErrorKind::ZeroVector, "code does not name a point");
    return {static_cast<std::uint32_t>(index_[code])};
  }
  /// Unchecked variant for inner loops.
  std::uint32_t index_of(std::uint64_t code) const noexcept { return static_cast<std::uint32_t>(index_[code]); }
  bool is_normalized(std::uint64_t code) const noexcept {
    return code != 0 && code < vector_count() && points_[static_cast<std::size_t>(index_[code])] == code;
  }

  PointId id_of(std::span<const FieldElement> v) const { return id_of_code(code_of(v)); }

  std::uint64_t code_of(std::span<const FieldElement> v) const {
    if (static_cast<int>(v.size()) != n_) throw Error(ErrorKind::DimensionMismatch, "coordinate tuple has wrong length");
    std::uint64_t c = 0;
    for (FieldElement x : v) {
      if (!field_.contains(x)) throw Error(ErrorKind::ParameterMismatch, "coordinate outside the field");
      c = c * static_cast<std::uint64_t>(q()) + x.code;
    }
    return c;
  }

  Coords coords(PointId p) const { return coords_of_code(code(p)); }

  Coords coords_of_code(std::uint64_t code) const {
    Digits d{};
    to_digits(code, d);
    Coords out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = {d[static_cast<std::size_t>(i)]};
    return out;
  }

  void to_digits(std::uint64_t code, Digits& d) const noexcept {
    const auto q = static_cast<std::uint64_t>(field_.q());
    for (int i = n_ - 1; i >= 0; --i) {
      d[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code % q);
      code /= q;
    }
  }

  std::uint64_t from_digits(const Digits& d) const noexcept {
    std::uint64_t c = 0;
    const auto q = static_cast<std::uint64_t>(field_.q());
    for (int i = 0; i < n_; ++i) c = c * q + d[static_cast<std::size_t>(i)];
    return c;
  }

  /// Position of the leftmost nonzero coordinate of a nonzero code.
  int lead_position(std::uint64_t code) const noexcept {
    int i = 0;
    while (code < pow_[static_cast<std::size_t>(n_ - 1 - i)]) ++i;
    return i;
  }

  /// Digits of the point as a string of element codes, e.g. "0112".
  std::string label(PointId p) const {
    Digits d{};
    to_digits(code(p), d);
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) s[static_cast<std::size_t>(i)] = static_cast<char>('0' + d[static_cast<std::size_t>(i)]);
    return s;
  }

 private:
  int n_;
  Field field_;
  std::vector<std::uint64_t> pow_;
  std::vector<std::uint64_t> points_;
  std::vector<std::int32_t> index_;
};

inline SpacePtr build_space(int n, int q) { return ProjectiveSpace::create(n, q); }

/// Number of k-dimensional subspaces of F_q^n.
inline boost::multiprecision::cpp_int gaussian_binomial(int n, int k, int q) {
  using boost::multiprecision::cpp_int;
  if (k < 0 || k > n) return 0;
  cpp_int num = 1;
  cpp_int den = 1;
  const cpp_int Q = q;
  for (int i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(Q, static_cast<unsigned>(n - i)) - 1;
    den *= boost::multiprecision::pow(Q, static_cast<unsigned>(k - i)) - 1;
  }
  return num / den;
}

struct CoordinateSplit {
  Coords a;  ///< first n-d coordinates
  Coords b;  ///< last d coordinates
  bool in_a() const {
    return std::all_of(b.begin(), b.end(), [](FieldElement x) { return x.code == 0; });
  }
  bool in_b() const {
    return std::all_of(a.begin(), a.end(), [](FieldElement x) { return x.code == 0; });
  }
};

inline CoordinateSplit split(const ProjectiveSpace& space, PointId p, int d) {
  if (d < 1 || d > space.n() - 1) throw Error(ErrorKind::InvalidDimension, "split requires 1 <= d <= n-1");
  Coords c = space.coords(p);
  CoordinateSplit s;
  s.a.assign(c.begin(), c.end() - d);
  s.b.assign(c.end() - d, c.end());
  return s;
}

/// The third point x+y of the line through x and y in PG(n-1,2).
inline PointId third_point(const ProjectiveSpace& space, PointId x, PointId y) {
  if (space.q() != 2) throw Error(ErrorKind::ParameterMismatch, "third_point is defined for q = 2 only");
  if (x == y) throw Error(ErrorKind::SamePoint, "third_point needs two distinct points");
  return space.id_of_code(space.code(x) ^ space.code(y));
}

struct Subspace {
  int dim_projective = 0;
  std::vector<PointId> point_ids;  ///< sorted

  friend bool operator==(const Subspace&, const Subspace&) = default;
};

// Walks every t-dimensional subspace once, as the row space of a unique matrix
// in reduced row-echelon form. Rows are chosen from the largest pivot down;
// depth 0 is the row with the largest pivot, which is also the point of least
// code in the subspace. Within a depth, rows are visited in ascending code.
// This defines the canonical subspace order used by the verifier witness.
//
// Visitor interface:
//   bool root(std::size_t index, std::uint64_t code)  // false skips this depth-0 row
//   bool point(int depth, std::uint64_t code)         // false prunes the partial subspace
//   bool leaf(std::span<const std::uint64_t> codes)   // false stops the walk
//   void row(int depth)                               // optional, called per candidate row
// Points reach point() as soon as they are generated, so a visitor can
// reject a partial subspace after seeing a single new point.
template <class Visitor>
class SubspaceWalker {
 public:
  SubspaceWalker(const ProjectiveSpace& space, int t, Visitor& visitor)
      : s_(space), t_(t), n_(space.n()), q_(space.q()), v_(visitor) {
    if (t < 1 || t > space.n()) throw Error(ErrorKind::InvalidDimension, "subspace dimension must satisfy 1 <= t <= n");
    pivots_.assign(static_cast<std::size_t>(t), 0);
    span_.resize(static_cast<std::size_t>(t) + 1);
    span_[0].assign(1, Digits{});
  }

  void run() {
    std::size_t root_index = 0;
    for (int p = n_ - 1; p >= t_ - 1 && !stop_; --p) {
      for_each_row(0, p, [&](const Digits& row) {
        if (v_.root(root_index++, s_.from_digits(row))) visit_row(0, row);
      });
    }
  }

  bool stopped() const noexcept { return stop_; }

 private:
  template <class F>
  void for_each_row(int depth, int pivot, F&& f) {
    pivots_[static_cast<std::size_t>(depth)] = pivot;
    // Free positions: right of the pivot, excluding pivots already fixed.
    std::array<int, kMaxDimension> free{};
    int nfree = 0;
    for (int j = n_ - 1; j > pivot; --j) {
      bool is_pivot = false;
      for (int d = 0; d < depth; ++d) is_pivot |= pivots_[static_cast<std::size_t>(d)] == j;
      if (!is_pivot) free[static_cast<std::size_t>(nfree++)] = j;  // least significant first
    }
    Digits row{};
    row[static_cast<std::size_t>(pivot)] = 1;
    while (!stop_) {
      f(row);
      int k = 0;
      while (k < nfree) {
        auto& digit = row[static_cast<std::size_t>(free[static_cast<std::size_t>(k)])];
        if (++digit < q_) break;
        digit = 0;
        ++k;
      }
      if (k == nfree) break;
    }
  }

  void visit_row(int depth, const Digits& row) {
    if constexpr (requires { v_.row(depth); }) v_.row(depth);
    const Field& f = s_.field();
    const std::size_t mark = points_.size();
    const auto& span = span_[static_cast<std::size_t>(depth)];
    bool accepted = true;
    Digits w{};
    for (const Digits& s : span) {
      for (int j = 0; j < n_; ++j)
        w[static_cast<std::size_t>(j)] = f.add(row[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(j)]);
      const std::uint64_t code = s_.from_digits(w);
      points_.push_back(code);
      if (!v_.point(depth, code)) {
        accepted = false;
        break;
      }
    }
    if (accepted) {
      if (depth == t_ - 1) {
        if (!v_.leaf(std::span<const std::uint64_t>(points_))) stop_ = true;
      } else {
        auto& next = span_[static_cast<std::size_t>(depth) + 1];
        next.clear();
        for (int lam = 0; lam < q_; ++lam) {
          for (const Digits& s : span) {
            for (int j = 0; j < n_; ++j)
              w[static_cast<std::size_t>(j)] =
                  f.add(s[static_cast<std::size_t>(j)], f.mul(static_cast<std::uint8_t>(lam), row[static_cast<std::size_t>(j)]));
            next.push_back(w);
          }
        }
        const int lowest = t_ - 1 - (depth + 1);
        for (int p = pivots_[static_cast<std::size_t>(depth)] - 1; p >= lowest && !stop_; --p)
          for_each_row(depth + 1, p, [&](const Digits& r) { visit_row(depth + 1, r); });
      }
    }
    points_.resize(mark);
  }

  const ProjectiveSpace& s_;
  int t_;
  int n_;
  int q_;
  Visitor& v_;
  std::vector<int> pivots_;
  std::vector<std::vector<Digits>> span_;
  std::vector<std::uint64_t> points_;
  bool stop_ = false;
};

template <class Visitor>
void walk_subspaces(const ProjectiveSpace& space, int t, Visitor& visitor) {
  SubspaceWalker<Visitor> walker(space, t, visitor);
  walker.run();
}

inline Subspace make_subspace(const ProjectiveSpace& space, int t, std::span<const std::uint64_t> codes) {
  Subspace s;
  s.dim_projective = t - 1;
  s.point_ids.reserve(codes.size());
  for (std::uint64_t c : codes) s.point_ids.push_back({space.index_of(c)});
  std::sort(s.point_ids.begin(), s.point_ids.end());
  return s;
}

/// Streams every t-dimensional linear subspace (a (t-1)-dimensional projective
/// subspace) in canonical order. Return false from the callback to stop early.
inline void enumerate_subspaces(const ProjectiveSpace& space, int t, const std::function<bool(const Subspace&)>& sink) {
  struct Collect {
    const ProjectiveSpace& space;
    int t;
    const std::function<bool(const Subspace&)>& sink;
    bool root(std::size_t, std::uint64_t) { return true; }
    bool point(int, std::uint64_t) { return true; }
    bool leaf(std::span<const std::uint64_t> codes) { return sink(make_subspace(space, t, codes)); }
  } visitor{space, t, sink};
  walk_subspaces(space, t, visitor);
}

inline std::vector<Subspace> all_subspaces(const ProjectiveSpace& space, int t) {
  std::vector<Subspace> out;
  enumerate_subspaces(space, t, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

inline std::uint64_t count_subspaces(const ProjectiveSpace& space, int t) {
  struct Count {
    std::uint64_t n = 0;
    bool root(std::size_t, std::uint64_t) { return true; }
    bool point(int, std::uint64_t) { return true; }
    bool leaf(std::span<const std::uint64_t>) {
      ++n;
      return true;
    }
  } visitor;
  walk_subspaces(space, t, visitor);
  return visitor.n;
}

/// Number of points of PG(n-1,q), i.e. (q^n - 1)/(q - 1).
inline std::uint64_t point_count(int n, int q) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(q);
  return (total - 1) / static_cast<std::uint64_t>(q - 1);
}

}  // namespace pgchroma
