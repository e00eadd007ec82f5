#pragma once

// Properness verification: no t-dimensional linear subspace may be
// monochromatic.
//
// Three exact procedures, selected by VerifyMethod:
//  * Stream: walks every t-subspace in canonical order, abandoning a partial
//    subspace at the first point whose color differs.
//  * PairLoop (q = 2, t = 2): for every pair of same-colored points x < y
//    looks up the color of x+y; cost is the sum of squared class sizes.
//  * Auto: first tries to split the coloring along a coordinate cut
//    [a:b] where every point with b != 0 takes the color of [0:b] and the
//    palettes of {b = 0} and {a = 0} are disjoint. Such a coloring is proper
//    iff both restrictions are; a t-subspace either lies in {b = 0}, meets it
//    in a point of a palette not used elsewhere, or projects injectively onto
//    a t-subspace of {a = 0} with identical colors. Pieces that do not split
//    further are checked with PairLoop (q = 2, t = 2) or Stream.
// Whatever the method, an improper verdict reports the first monochromatic
// subspace in canonical order.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pgchroma/coloring.hpp"
#include "pgchroma/pg.hpp"

namespace pgchroma {

enum class VerifyMethod { Auto, Stream, PairLoop };

struct VerifyOptions {
  VerifyMethod method = VerifyMethod::Auto;
  int threads = 1;
};

struct VerificationReport {
  bool proper = false;
  std::optional<Subspace> witness;
  std::vector<std::uint64_t> class_sizes;
  /// Candidate subspaces (Stream) or same-color pairs (PairLoop) examined.
  std::uint64_t subspaces_checked = 0;
  /// How the verdict was reached, e.g. "split(6|4)[stream,stream]".
  std::string method;
};

namespace detail {

struct StreamResult {
  bool proper = true;
  std::vector<std::uint64_t> witness_codes;
  std::uint64_t checked = 0;
};

// Finds the first monochromatic t-subspace of a code-indexed color table.
// `only_color` restricts the search to subspaces of one color.
inline StreamResult stream_monochromatic(const ProjectiveSpace& space, int t, std::span<const Color> by_code,
                                         int threads, int only_color = -1) {
  StreamResult result;
  if (t > space.n()) return result;
  threads = std::max(1, threads);
  const std::uint64_t roots = point_count(space.n() - t + 1, space.q());
  std::vector<std::uint64_t> per_root(roots, 0);
  std::atomic<std::uint64_t> best_root{roots};

  struct Worker {
    std::span<const Color> by_code;
    int only_color;
    int worker;
    int threads;
    int t;
    std::vector<std::uint64_t>& per_root;
    std::atomic<std::uint64_t>& best_root;
    std::uint64_t current = 0;
    Color target = 0;
    std::uint64_t found_root = ~std::uint64_t{0};
    std::vector<std::uint64_t> witness;

    bool root(std::size_t index, std::uint64_t code) {
      if (static_cast<int>(index % static_cast<std::size_t>(threads)) != worker) return false;
      if (index > best_root.load(std::memory_order_relaxed)) return false;
      if (only_color >= 0 && by_code[code] != only_color) return false;
      current = index;
      return true;
    }
    void row(int depth) {
      if (depth == t - 1) ++per_root[current];
    }
    bool point(int depth, std::uint64_t code) {
      if (depth == 0) {
        target = by_code[code];
        return true;
      }
      return by_code[code] == target;
    }
    bool leaf(std::span<const std::uint64_t> codes) {
      found_root = current;
      witness.assign(codes.begin(), codes.end());
      std::uint64_t prev = best_root.load();
      while (current < prev && !best_root.compare_exchange_weak(prev, current)) {
      }
      return false;
    }
  };

  std::vector<Worker> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w)
    workers.push_back(Worker{by_code, only_color, w, threads, t, per_root, best_root, 0, 0, ~std::uint64_t{0}, {}});

  if (threads == 1) {
    walk_subspaces(space, t, workers[0]);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] { walk_subspaces(space, t, workers[static_cast<std::size_t>(w)]); });
  }

  const std::uint64_t best = best_root.load();
  for (const Worker& w : workers)
    if (w.found_root == best) result.witness_codes = w.witness;
  result.proper = best == roots;
  const std::uint64_t limit = result.proper ? roots : best + 1;
  for (std::uint64_t r = 0; r < limit; ++r) result.checked += per_root[r];
  return result;
}

struct PairLoopResult {
  bool proper = true;
  std::uint64_t y = 0;  // canonical key of the first monochromatic line
  std::uint64_t x = 0;
  std::uint64_t checked = 0;
};

// q = 2, t = 2. Lines are keyed by (least code y, the other point x with a 0
// at the lead bit of y), which is the canonical walk order.
inline PairLoopResult pair_loop(const ProjectiveSpace& space, std::span<const Color> by_code, int k) {
  PairLoopResult r;
  std::vector<std::vector<std::uint64_t>> classes(static_cast<std::size_t>(k));
  for (std::uint64_t c = 1; c < by_code.size(); ++c) classes[by_code[c]].push_back(c);
  std::uint64_t best_y = ~std::uint64_t{0};
  std::uint64_t best_x = ~std::uint64_t{0};
  for (std::size_t color = 0; color < classes.size(); ++color) {
    const auto& cls = classes[color];
    const auto target = static_cast<Color>(color);
    for (std::size_t i = 0; i < cls.size(); ++i) {
      const std::uint64_t a = cls[i];
      if (a > best_y) break;
      for (std::size_t j = i + 1; j < cls.size(); ++j) {
        const std::uint64_t b = cls[j];
        const std::uint64_t z = a ^ b;
        ++r.checked;
        if (z > b && by_code[z] == target) {
          const int lead = 63 - __builtin_clzll(a);
          const std::uint64_t x = ((b >> lead) & 1U) ? z : b;
          if (a < best_y || (a == best_y && x < best_x)) {
            best_y = a;
            best_x = x;
          }
        }
      }
    }
  }
  (void)space;
  if (best_y != ~std::uint64_t{0}) {
    r.proper = false;
    r.y = best_y;
    r.x = best_x;
  }
  return r;
}

// Coordinate cut at m: A = first m coordinates, B = last n-m.
inline bool splits_at(std::span<const Color> table, int q, int n, int m, int k) {
  std::uint64_t low = 1;
  for (int i = 0; i < n - m; ++i) low *= static_cast<std::uint64_t>(q);
  for (std::uint64_t x = 1; x < table.size(); ++x) {
    const std::uint64_t b = x % low;
    if (b != 0 && table[x] != table[b]) return false;
  }
  std::vector<bool> in_a(static_cast<std::size_t>(k), false);
  for (std::uint64_t a = low; a < table.size(); a += low) in_a[table[a]] = true;
  for (std::uint64_t b = 1; b < low; ++b)
    if (in_a[table[b]]) return false;
  return true;
}

struct SplitOutcome {
  bool proper = true;
  std::uint64_t checked = 0;
  std::string method;
};

inline SplitOutcome verify_leaf(const ProjectiveSpace* space_hint, int n, int q, int t, int k,
                                std::span<const Color> table, int threads) {
  SplitOutcome out;
  if (n < t) {
    out.method = "trivial";
    return out;
  }
  SpacePtr owned;
  const ProjectiveSpace* space = space_hint;
  if (space == nullptr || space->n() != n) {
    owned = ProjectiveSpace::create(n, q);
    space = owned.get();
  }
  if (q == 2 && t == 2) {
    auto r = pair_loop(*space, table, k);
    out.proper = r.proper;
    out.checked = r.checked;
    out.method = "pairs";
  } else {
    auto r = stream_monochromatic(*space, t, table, threads);
    out.proper = r.proper;
    out.checked = r.checked;
    out.method = "stream";
  }
  return out;
}

inline SplitOutcome verify_split(const ProjectiveSpace* space_hint, int n, int q, int t, int k,
                                 std::span<const Color> table, int threads) {
  if (n < t) return {true, 0, "trivial"};
  for (int m = 1; m < n; ++m) {
    if (!splits_at(table, q, n, m, k)) continue;
    std::uint64_t low = 1;
    for (int i = 0; i < n - m; ++i) low *= static_cast<std::uint64_t>(q);
    std::vector<Color> a_table(table.size() / low);
    for (std::uint64_t a = 1; a < a_table.size(); ++a) a_table[a] = table[a * low];
    std::vector<Color> b_table(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(low));
    SplitOutcome left = verify_split(nullptr, m, q, t, k, a_table, threads);
    SplitOutcome right;
    if (left.proper) right = verify_split(nullptr, n - m, q, t, k, b_table, threads);
    SplitOutcome out;
    out.proper = left.proper && right.proper;
    out.checked = left.checked + right.checked;
    out.method = "split(" + std::to_string(m) + "|" + std::to_string(n - m) + ")[" + left.method +
                 (left.proper ? "," + right.method : std::string()) + "]";
    return out;
  }
  return verify_leaf(space_hint, n, q, t, k, table, threads);
}

}  // namespace detail

inline VerificationReport verify(const Coloring& c, const VerifyOptions& options = {}) {
  c.check();
  const ProjectiveSpace& space = *c.space;
  if (c.t > space.n())
    throw Error(ErrorKind::DimensionMismatch, "t=" + std::to_string(c.t) + " exceeds n=" + std::to_string(space.n()));

  VerificationReport report;
  report.class_sizes = c.class_sizes();
  const std::vector<Color> table = c.color_by_code();
  const bool binary_lines = space.q() == 2 && c.t == 2;

  auto stream = [&] {
    auto r = detail::stream_monochromatic(space, c.t, table, options.threads);
    report.proper = r.proper;
    report.subspaces_checked += r.checked;
    if (!r.proper) report.witness = make_subspace(space, c.t, r.witness_codes);
  };
  auto pairs = [&] {
    auto r = detail::pair_loop(space, table, c.k);
    report.proper = r.proper;
    report.subspaces_checked += r.checked;
    if (!r.proper) {
      const std::uint64_t codes[3] = {r.y, r.x, r.x ^ r.y};
      report.witness = make_subspace(space, 2, codes);
    }
  };

  switch (options.method) {
    case VerifyMethod::Stream:
      report.method = "stream";
      stream();
      break;
    case VerifyMethod::PairLoop:
      if (!binary_lines) throw Error(ErrorKind::ParameterMismatch, "pair loop needs q = 2 and t = 2");
      report.method = "pairs";
      pairs();
      break;
    case VerifyMethod::Auto: {
      auto outcome = detail::verify_split(&space, space.n(), space.q(), c.t, c.k, table, options.threads);
      report.method = outcome.method;
      report.subspaces_checked = outcome.checked;
      report.proper = outcome.proper;
      if (!outcome.proper) {
        // Canonical witness over the whole space.
        report.subspaces_checked = 0;
        if (binary_lines) {
          pairs();
        } else {
          stream();
        }
      }
      break;
    }
  }
  return report;
}

/// True iff every line contains a point not of `color`, i.e. the class is line-free.
inline bool complement_is_blocking(const Coloring& c, Color color) {
  if (c.t != 2) throw Error(ErrorKind::ParameterMismatch, "blocking sets are defined with respect to lines (t = 2)");
  if (c.space->n() < 2) return true;
  const std::vector<Color> table = c.color_by_code();
  return detail::stream_monochromatic(*c.space, 2, table, 1, color).proper;
}

}  // namespace pgchroma
