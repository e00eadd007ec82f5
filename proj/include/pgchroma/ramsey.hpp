#pragma once

// Schur lift to edge colorings of K_{2^n}, triangle verification, and the
// bound ledgers that tie point colorings to Ramsey numbers.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pgchroma/coloring.hpp"
#include "pgchroma/error.hpp"
#include "pgchroma/schedule.hpp"
#include "pgchroma/verify.hpp"

namespace pgchroma {

/// Edge coloring of the complete graph on N vertices, stored lower-triangular.
class EdgeColoring {
 public:
  EdgeColoring(std::uint32_t vertex_count, int k) : n_(vertex_count), k_(k), colors_(pairs(vertex_count), 0) {}

  std::uint32_t vertex_count() const noexcept { return n_; }
  int k() const noexcept { return k_; }

  Color color(std::uint32_t u, std::uint32_t v) const {
    if (u == v) throw Error(ErrorKind::SamePoint, "no edge from a vertex to itself");
    return colors_[slot(u, v)];
  }
  void set(std::uint32_t u, std::uint32_t v, Color c) {
    if (u == v) throw Error(ErrorKind::SamePoint, "no edge from a vertex to itself");
    if (c >= k_) throw Error(ErrorKind::ParameterMismatch, "edge color not below k");
    colors_[slot(u, v)] = c;
  }

 private:
  static std::size_t pairs(std::uint64_t n) { return static_cast<std::size_t>(n * (n - (n > 0 ? 1 : 0)) / 2); }
  static std::size_t slot(std::uint32_t u, std::uint32_t v) {
    if (u < v) std::swap(u, v);
    return static_cast<std::size_t>(std::uint64_t{u} * (u - 1) / 2 + v);
  }

  std::uint32_t n_;
  int k_;
  std::vector<Color> colors_;
};

inline constexpr int kMaxLiftDimension = 13;

/// Edge {u,v} of K_{2^n} gets the color of the point u xor v. No properness check.
inline EdgeColoring schur_lift_unchecked(const Coloring& c) {
  if (c.q() != 2 || c.t != 2) throw Error(ErrorKind::ParameterMismatch, "the lift takes line colorings over GF(2)");
  if (c.n() > kMaxLiftDimension) throw Error(ErrorKind::TooLarge, "lift limited to n <= 13");
  const std::uint32_t N = std::uint32_t{1} << c.n();
  EdgeColoring e(N, c.k);
  for (std::uint32_t u = 1; u < N; ++u)
    for (std::uint32_t v = 0; v < u; ++v) e.set(u, v, c.colors[(u ^ v) - 1]);
  return e;
}

/// The lift of a proper coloring; throws ImproperSource otherwise.
inline EdgeColoring schur_lift(const Coloring& c) {
  if (c.q() != 2 || c.t != 2) throw Error(ErrorKind::ParameterMismatch, "the lift takes line colorings over GF(2)");
  if (!verify(c).proper) throw Error(ErrorKind::ImproperSource, "the source coloring has a monochromatic line");
  return schur_lift_unchecked(c);
}

struct TriangleReport {
  bool triangle_free = true;
  std::optional<std::array<std::uint32_t, 3>> witness;  ///< lexicographically least, ascending
  std::uint64_t triples = 0;                            ///< C(N,3), all covered by the check
  std::uint64_t edges_scanned = 0;
};

/// For every edge (a,b), a<b, of color c, intersects the color-c neighborhoods
/// of a and b above b. The first hit in (a,b) order is the least triangle.
inline TriangleReport verify_triangle_free(const EdgeColoring& e) {
  const std::uint32_t N = e.vertex_count();
  const std::size_t words = (N + 63) / 64;
  TriangleReport r;
  r.triples = N < 3 ? 0 : std::uint64_t{N} * (N - 1) * (N - 2) / 6;
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(e.k()) * N * words, 0);
  auto row = [&](int c, std::uint32_t v) { return adj.data() + (static_cast<std::size_t>(c) * N + v) * words; };
  for (std::uint32_t u = 1; u < N; ++u)
    for (std::uint32_t v = 0; v < u; ++v) {
      const int c = e.color(u, v);
      row(c, u)[v / 64] |= std::uint64_t{1} << (v % 64);
      row(c, v)[u / 64] |= std::uint64_t{1} << (u % 64);
    }
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = a + 1; b < N; ++b) {
      const int c = e.color(a, b);
      ++r.edges_scanned;
      const std::uint64_t* ra = row(c, a);
      const std::uint64_t* rb = row(c, b);
      const std::uint32_t start = b + 1;
      for (std::size_t w = start / 64; w < words; ++w) {
        std::uint64_t x = ra[w] & rb[w];
        if (w == start / 64) x &= start % 64 == 0 ? ~std::uint64_t{0} : ~((std::uint64_t{1} << (start % 64)) - 1);
        if (x != 0) {
          r.triangle_free = false;
          r.witness = std::array<std::uint32_t, 3>{a, b, static_cast<std::uint32_t>(w * 64 + std::countr_zero(x))};
          return r;
        }
      }
    }
  return r;
}

/// Triple loop; the reference check for small N.
inline TriangleReport naive_triangle_check(const EdgeColoring& e) {
  const std::uint32_t N = e.vertex_count();
  if (N > 64) throw Error(ErrorKind::TooLarge, "naive triangle check limited to N <= 64");
  TriangleReport r;
  r.triples = N < 3 ? 0 : std::uint64_t{N} * (N - 1) * (N - 2) / 6;
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = a + 1; b < N; ++b)
      for (std::uint32_t c = b + 1; c < N; ++c)
        if (e.color(a, b) == e.color(a, c) && e.color(a, b) == e.color(b, c)) {
          r.triangle_free = false;
          r.witness = std::array<std::uint32_t, 3>{a, b, c};
          return r;
        }
  return r;
}

/// Text export: `K n=<log2 N> k=<k>`, then row v lists colors of {v,0..v-1}.
inline void write_edge_coloring(const EdgeColoring& e, std::ostream& out) {
  static constexpr char digits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  if (e.k() > 36) throw Error(ErrorKind::TooLarge, "edge export supports at most 36 colors");
  out << "K n=" << std::countr_zero(e.vertex_count()) << " k=" << e.k() << '\n';
  std::string line;
  for (std::uint32_t v = 1; v < e.vertex_count(); ++v) {
    line.clear();
    for (std::uint32_t u = 0; u < v; ++u) line.push_back(digits[e.color(v, u)]);
    out << line << '\n';
  }
}

struct RamseyEntry {
  int k;
  int lower;
  int upper;
};

/// Frozen values and bounds for R(3;k), k = 1..6.
struct KnownRamseyTable {
  std::vector<RamseyEntry> entries;

  static KnownRamseyTable standard() {
    return {{{1, 3, 3}, {2, 6, 6}, {3, 17, 17}, {4, 51, 62}, {5, 162, 307}, {6, 538, 1838}}};
  }
};

struct RamseyLower {
  int value = 1;
  std::string source;
};

/// R(3;k) <= 2^n forces chi_2(n) > k; also chi_2(n) >= chi_2(n-1).
inline RamseyLower chi_lower_with_source(int n, const KnownRamseyTable& table) {
  RamseyLower best{1, "trivial"};
  for (int m = 1; m <= n; ++m) {
    const double vertices = std::ldexp(1.0, m);
    for (const auto& e : table.entries)
      if (e.upper <= vertices && e.k + 1 > best.value) {
        best.value = e.k + 1;
        best.source = "R(3;" + std::to_string(e.k) + ")<=" + std::to_string(e.upper) + "<=2^" + std::to_string(m);
        if (m < n) best.source += " (monotone from n=" + std::to_string(m) + ")";
      }
  }
  return best;
}

inline int chi_lower_from_ramsey(int n, const KnownRamseyTable& table = KnownRamseyTable::standard()) {
  return chi_lower_with_source(n, table).value;
}

struct LedgerRow {
  int n = 0;
  int lower = 0;
  std::string lower_source;
  int upper = 0;
  std::string upper_source;
  bool certified = false;  ///< the upper bound's coloring was built and verified
};

struct BoundLedger {
  std::vector<LedgerRow> rows;

  std::string text() const {
    std::vector<std::string> head{"n"}, body{"chi_2(n)"};
    for (const auto& r : rows) {
      head.push_back(std::to_string(r.n));
      body.push_back(r.lower == r.upper ? std::to_string(r.lower)
                                        : "[" + std::to_string(r.lower) + "," + std::to_string(r.upper) + "]");
    }
    std::ostringstream s;
    const std::size_t w0 = std::max(head[0].size(), body[0].size());
    s << std::left << std::setw(static_cast<int>(w0)) << head[0];
    for (std::size_t i = 1; i < head.size(); ++i)
      s << "  " << std::right << std::setw(static_cast<int>(std::max(head[i].size(), body[i].size()))) << head[i];
    s << '\n' << std::left << std::setw(static_cast<int>(w0)) << body[0];
    for (std::size_t i = 1; i < body.size(); ++i)
      s << "  " << std::right << std::setw(static_cast<int>(std::max(head[i].size(), body[i].size()))) << body[i];
    s << '\n';
    return s.str();
  }

  std::string csv() const {
    std::ostringstream s;
    s << "n,lower,upper,lower_source,upper_source,certified\n";
    for (const auto& r : rows)
      s << r.n << ',' << r.lower << ',' << r.upper << ",\"" << r.lower_source << "\",\"" << r.upper_source << "\","
        << (r.certified ? "yes" : "no") << '\n';
    return s.str();
  }
};

/// chi_2(n) bounds for 2 <= n <= n_max. Upper bounds come from the default
/// schedule; with `certify` each one is replayed and verified.
inline BoundLedger bound_table(int n_max, const BaseTable& bases, bool certify = true,
                               const KnownRamseyTable& ramsey = KnownRamseyTable::standard()) {
  if (n_max < 2 || n_max > kMaxDimension) throw Error(ErrorKind::InvalidDimension, "n_max must be in [2,16]");
  BoundLedger ledger;
  for (int n = 2; n <= n_max; ++n) {
    LedgerRow row;
    row.n = n;
    const RamseyLower lower = chi_lower_with_source(n, ramsey);
    row.lower = lower.value;
    row.lower_source = lower.source;
    const Schedule s = schedule(n, 2, 2, bases);
    row.upper = s.claimed_colors;
    std::ostringstream src;
    src << "schedule";
    for (const auto& step : s.steps)
      src << (step.kind == StepKind::Base ? " base" : step.kind == StepKind::Quotient ? " quotient" : " lift")
          << (step.kind == StepKind::Base ? "(n=" : "(d=") << step.factor.n << ")";
    row.upper_source = src.str();
    if (certify) {
      const Coloring c = replay(s, bases);
      row.certified = c.k == row.upper && verify(c).proper;
      if (!row.certified) throw Error(ErrorKind::CorruptCertificate, "schedule for n=" + std::to_string(n) + " failed");
    }
    if (row.lower > row.upper) throw Error(ErrorKind::ParameterMismatch, "ledger lower bound exceeds upper bound");
    ledger.rows.push_back(std::move(row));
  }
  return ledger;
}

struct RqBound {
  int q = 2;
  int t = 2;
  int k = 1;
  int guaranteed = 0;  ///< R_q(t;k) > (t-1)k
  int best = 0;        ///< R_q(t;k) > best: largest n whose schedule uses <= k colors
  std::string best_source;
  std::optional<int> closed_form;   ///< q = 2, t = 2: floor(3(k-1)/2)
  std::optional<double> asymptotic;  ///< q = 2, t = 2: k log2 k + log2 e + 1 (annotation only)

  std::string text() const {
    std::ostringstream s;
    s << "R_" << q << "(" << t << ";" << k << ") > " << best << "\n";
    s << "  guaranteed: R_" << q << "(" << t << ";" << k << ") > " << guaranteed << " = (t-1)k\n";
    s << "  best: " << best_source << "\n";
    if (closed_form) s << "  closed form: floor(3(k-1)/2) = " << *closed_form << "\n";
    if (asymptotic) s << "  annotation: upper bound k*log2(k)+log2(e)+1 = " << std::fixed << std::setprecision(3) << *asymptotic << " (not certified)\n";
    return s.str();
  }
};

/// chi_q(t;n) <= k is equivalent to R_q(t;k) > n, so each schedule with at
/// most k colors is a lower-bound witness.
inline RqBound rq_ledger(int q, int t, int k, const BaseTable& bases) {
  if (!is_supported_order(q)) throw Error(ErrorKind::UnsupportedOrder, "unsupported q=" + std::to_string(q));
  if (t < 2) throw Error(ErrorKind::InvalidDimension, "t must be at least 2");
  if (k < 1) throw Error(ErrorKind::ParameterMismatch, "k must be at least 1");
  RqBound r;
  r.q = q;
  r.t = t;
  r.k = k;
  r.guaranteed = (t - 1) * k;
  r.best = t - 1;
  r.best_source = "one color on PG(" + std::to_string(t - 2) + "," + std::to_string(q) + ")";
  const int horizon = 2 * (t - 1) * k + 16;
  for (int n = 1; n <= horizon; ++n) {
    const Schedule s = schedule(n, q, t, bases);
    if (s.claimed_colors <= k && n > r.best) {
      r.best = n;
      r.best_source = "schedule for n=" + std::to_string(n) + " uses " + std::to_string(s.claimed_colors) + " colors";
    }
  }
  if (q == 2 && t == 2) {
    r.closed_form = 3 * (k - 1) / 2;
    r.asymptotic = k * std::log2(static_cast<double>(k)) + std::log2(std::exp(1.0)) + 1.0;
  }
  return r;
}

}  // namespace pgchroma
