#pragma once

// Table-driven arithmetic in GF(q) for the small prime powers used by the
// projective-space code (q <= 9).
//
// Element codes: an element of GF(p^e) is the polynomial c0 + c1 x + ... with
// coefficients in [0,p); its code is c0 + c1 p + c2 p^2 + ... . The moduli are
// fixed so codes are stable across runs:
//   GF(4) = GF(2)[x]/(x^2+x+1), GF(8) = GF(2)[x]/(x^3+x+1), GF(9) = GF(3)[x]/(x^2+1).

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "pgchroma/error.hpp"

namespace pgchroma {

inline constexpr int kMaxFieldOrder = 9;

struct FieldElement {
  std::uint8_t code = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

class Field {
 public:
  int p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  int q() const noexcept { return q_; }
  /// Coefficients of the monic modulus, constant term first. Empty for prime fields.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  FieldElement add(FieldElement a, FieldElement b) const noexcept { return {add_[a.code][b.code]}; }
  FieldElement sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept { return {mul_[a.code][b.code]}; }
  FieldElement neg(FieldElement a) const noexcept { return {neg_[a.code]}; }

  FieldElement inv(FieldElement a) const {
    if (a.code == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in GF(" + std::to_string(q_) + ")");
    return {inv_[a.code]};
  }

  // Raw code variants for inner loops; callers guarantee codes < q.
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept { return add_[a][b]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept { return mul_[a][b]; }
  std::uint8_t inv_code(std::uint8_t a) const noexcept { return inv_[a]; }

  bool contains(FieldElement a) const noexcept { return a.code < q_; }

  friend Field build_field(int q);

 private:
  using Table = std::array<std::array<std::uint8_t, kMaxFieldOrder>, kMaxFieldOrder>;

  int p_ = 0;
  int e_ = 0;
  int q_ = 0;
  std::vector<int> modulus_;
  Table add_{};
  Table mul_{};
  std::array<std::uint8_t, kMaxFieldOrder> neg_{};
  std::array<std::uint8_t, kMaxFieldOrder> inv_{};
};

namespace detail {

struct FieldShape {
  int p;
  int e;
  std::vector<int> modulus;
};

inline bool field_shape(int q, FieldShape& out) {
  switch (q) {
    case 2: out = {2, 1, {}}; return true;
    case 3: out = {3, 1, {}}; return true;
    case 4: out = {2, 2, {1, 1, 1}}; return true;
    case 5: out = {5, 1, {}}; return true;
    case 7: out = {7, 1, {}}; return true;
    case 8: out = {2, 3, {1, 1, 0, 1}}; return true;
    case 9: out = {3, 2, {1, 0, 1}}; return true;
    default: return false;
  }
}

inline std::vector<int> to_coeffs(int code, int p, int e) {
  std::vector<int> c(static_cast<std::size_t>(e));
  for (int i = 0; i < e; ++i) {
    c[static_cast<std::size_t>(i)] = code % p;
    code /= p;
  }
  return c;
}

inline int from_coeffs(const std::vector<int>& c, int p) {
  int code = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) code = code * p + *it;
  return code;
}

// Product of two polynomials of degree < e, reduced modulo the monic modulus.
inline std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& mod,
                                    int p) {
  const int e = static_cast<int>(a.size());
  std::vector<int> prod(static_cast<std::size_t>(2 * e - 1), 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]) % p;
  for (int deg = 2 * e - 2; deg >= e; --deg) {
    const int lead = prod[static_cast<std::size_t>(deg)];
    if (lead == 0) continue;
    // x^e = -(m_0 + m_1 x + ... + m_{e-1} x^{e-1})
    for (int i = 0; i < e; ++i) {
      const auto idx = static_cast<std::size_t>(deg - e + i);
      prod[idx] = ((prod[idx] - lead * mod[static_cast<std::size_t>(i)]) % p + p) % p;
    }
    prod[static_cast<std::size_t>(deg)] = 0;
  }
  prod.resize(static_cast<std::size_t>(e));
  return prod;
}

}  // namespace detail

/// Builds GF(q) for q in {2,3,4,5,7,8,9}, checking the field axioms exhaustively.
inline Field build_field(int q) {
  detail::FieldShape shape;
  if (!detail::field_shape(q, shape))
    throw Error(ErrorKind::UnsupportedOrder, "GF(" + std::to_string(q) + ") is not supported (q in {2,3,4,5,7,8,9})");

  Field f;
  f.p_ = shape.p;
  f.e_ = shape.e;
  f.q_ = q;
  f.modulus_ = shape.modulus;

  for (int a = 0; a < q; ++a) {
    const auto ca = detail::to_coeffs(a, f.p_, f.e_);
    for (int b = 0; b < q; ++b) {
      const auto cb = detail::to_coeffs(b, f.p_, f.e_);
      std::vector<int> sum(ca.size());
      for (std::size_t i = 0; i < ca.size(); ++i) sum[i] = (ca[i] + cb[i]) % f.p_;
      f.add_[a][b] = static_cast<std::uint8_t>(detail::from_coeffs(sum, f.p_));
      if (f.e_ == 1) {
        f.mul_[a][b] = static_cast<std::uint8_t>((a * b) % q);
      } else {
        f.mul_[a][b] = static_cast<std::uint8_t>(detail::from_coeffs(detail::poly_mulmod(ca, cb, f.modulus_, f.p_), f.p_));
      }
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (f.add_[a][b] == 0) f.neg_[a] = static_cast<std::uint8_t>(b);
      if (a != 0 && f.mul_[a][b] == 1) f.inv_[a] = static_cast<std::uint8_t>(b);
    }
  }

  // Exhaustive axiom check; q <= 9 keeps this at a few thousand lookups.
  for (int a = 0; a < q; ++a) {
    if (f.add_[a][0] != a || f.mul_[a][1] != a) throw Error(ErrorKind::UnsupportedOrder, "identity check failed");
    if (a != 0 && f.mul_[a][f.inv_[a]] != 1) throw Error(ErrorKind::UnsupportedOrder, "missing inverse");
    for (int b = 0; b < q; ++b) {
      if (f.add_[a][b] != f.add_[b][a] || f.mul_[a][b] != f.mul_[b][a])
        throw Error(ErrorKind::UnsupportedOrder, "commutativity check failed");
      for (int c = 0; c < q; ++c) {
        if (f.add_[f.add_[a][b]][c] != f.add_[a][f.add_[b][c]] || f.mul_[f.mul_[a][b]][c] != f.mul_[a][f.mul_[b][c]] ||
            f.mul_[a][f.add_[b][c]] != f.add_[f.mul_[a][b]][f.mul_[a][c]])
          throw Error(ErrorKind::UnsupportedOrder, "associativity/distributivity check failed");
      }
    }
  }
  return f;
}

inline bool is_supported_order(int q) {
  detail::FieldShape shape;
  return detail::field_shape(q, shape);
}

}  // namespace pgchroma
