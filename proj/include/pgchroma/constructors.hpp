#pragma once

// Explicit colorings and the two recursive compositions.
//
// Coordinates of PG(n-1,q) are split as [a:b] with a the first n-d and b the
// last d coordinates, so a vector code factors as code = a * q^d + b.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pgchroma/coloring.hpp"
#include "pgchroma/error.hpp"
#include "pgchroma/pg.hpp"

namespace pgchroma {

/// Color i = position of the first nonzero coordinate. Proper for lines, every q.
inline Coloring iterated_hyperplane(SpacePtr space) {
  std::vector<Color> colors(space->size());
  for (std::uint32_t i = 0; i < colors.size(); ++i)
    colors[i] = static_cast<Color>(space->lead_position(space->code(PointId{i})));
  const int n = space->n();
  return Coloring(std::move(space), 2, n, std::move(colors));
}

namespace detail {

inline std::uint64_t ipow(int q, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(q);
  return r;
}

}  // namespace detail

/// c([a:b]) = cA([a]) when b = 0, otherwise kA + cB([b]).
inline Coloring quotient_compose(const Coloring& cA, const Coloring& cB, int n) {
  if (cA.q() != cB.q()) throw Error(ErrorKind::ParameterMismatch, "quotient_compose: factors over different fields");
  if (cA.t != cB.t) throw Error(ErrorKind::ParameterMismatch, "quotient_compose: factors for different t");
  if (cA.n() + cB.n() != n)
    throw Error(ErrorKind::ParameterMismatch, "quotient_compose: factor dimensions " + std::to_string(cA.n()) + "+" +
                                                  std::to_string(cB.n()) + " do not sum to n=" + std::to_string(n));
  if (cA.k + cB.k > kMaxColors) throw Error(ErrorKind::TooLarge, "quotient_compose: more than 255 colors");
  SpacePtr space = ProjectiveSpace::create(n, cA.q());
  const std::uint64_t low = detail::ipow(cA.q(), cB.n());
  std::vector<Color> colors(space->size());
  for (std::uint32_t i = 0; i < colors.size(); ++i) {
    const std::uint64_t x = space->code(PointId{i});
    const std::uint64_t b = x % low;
    colors[i] = b == 0 ? cA.colors[cA.space->index_of(x / low)]
                       : static_cast<Color>(cA.k + cB.colors[cB.space->index_of(b)]);
  }
  return Coloring(std::move(space), cA.t, cA.k + cB.k, std::move(colors));
}

/// Reserved-color lift over GF(2) for lines. With x = [a:u], u the last d bits:
///   c(x) = cU([u])              if u != 0 and cU([u]) != r
///   c(x) = cAplus([a : tbit])   otherwise, tbit = 1 iff u != 0
/// cU's colors other than r keep their order and come first; cAplus follows.
inline Coloring reserved_lift_compose(const Coloring& cU, const Coloring& cAplus, Color r, int n) {
  if (cU.q() != 2 || cAplus.q() != 2) throw Error(ErrorKind::ParameterMismatch, "reserved lift needs q = 2");
  if (cU.t != 2 || cAplus.t != 2) throw Error(ErrorKind::ParameterMismatch, "reserved lift needs t = 2");
  const int d = cU.n();
  if (cAplus.n() != n - d + 1)
    throw Error(ErrorKind::ParameterMismatch, "reserved lift: cAplus must color PG(" + std::to_string(n - d) + ",2)");
  if (r >= cU.k || cU.class_sizes()[r] == 0)
    throw Error(ErrorKind::ReservedColorUnused, "reserved color " + std::to_string(int{r}) + " does not occur in cU");
  const int k = cU.k - 1 + cAplus.k;
  if (k > kMaxColors) throw Error(ErrorKind::TooLarge, "reserved lift: more than 255 colors");

  SpacePtr space = ProjectiveSpace::create(n, 2);
  const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
  const auto offset = static_cast<Color>(cU.k - 1);
  std::vector<Color> colors(space->size());
  for (std::uint32_t i = 0; i < colors.size(); ++i) {
    const std::uint64_t x = space->code(PointId{i});
    const std::uint64_t u = x & mask;
    const std::uint64_t a = x >> d;
    if (u != 0) {
      const Color cu = cU.colors[u - 1];
      if (cu != r) {
        colors[i] = cu < r ? cu : static_cast<Color>(cu - 1);
        continue;
      }
    }
    const std::uint64_t aplus = (a << 1) | (u != 0 ? 1U : 0U);
    colors[i] = static_cast<Color>(offset + cAplus.colors[aplus - 1]);
  }
  return Coloring(std::move(space), 2, k, std::move(colors));
}

/// Iterates b(n) = (k_d - 1) + b(n - (d - 1)) down to b(r) = r for r < d.
inline int rate_from_base(int d, int k_d, int n) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "rate_from_base needs d >= 2");
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "rate_from_base needs n >= 1");
  int b = 0;
  while (n >= d) {
    b += k_d - 1;
    n -= d - 1;
  }
  return b + n;
}

/// Growth rate 2^{(d-1)/(k_d-1)} of R(3;k) implied by a base chi_2(d) <= k_d.
inline double growth_rate_from_base(int d, int k_d) {
  return std::pow(2.0, static_cast<double>(d - 1) / static_cast<double>(k_d - 1));
}

}  // namespace pgchroma
