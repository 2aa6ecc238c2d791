#pragma once

// Exact arithmetic in Z[w] for a primitive p-th root of unity w.
// Values are stored in the Z-basis {w, w^2, ..., w^(p-1)}; the rational
// integer m is represented through 1 = -(w + ... + w^(p-1)) as the
// constant coefficient vector (-m, ..., -m). Representation is unique,
// so equality is plain coefficient comparison.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shds/gf.hpp"

namespace shds {

class cyc_overflow : public std::overflow_error {
 public:
  cyc_overflow() : std::overflow_error("cyclotomic coefficient overflow") {}
};

namespace detail {
inline std::int64_t ck_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw cyc_overflow();
  return r;
}
inline std::int64_t ck_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw cyc_overflow();
  return r;
}
inline std::int64_t ck_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw cyc_overflow();
  return r;
}
}  // namespace detail

class CycInt {
 public:
  explicit CycInt(std::uint32_t p) : p_(p), c_(p - 1, 0) {}

  static CycInt zero(std::uint32_t p) { return CycInt(p); }

  static CycInt integer(std::uint32_t p, std::int64_t m) {
    CycInt r(p);
    for (auto& c : r.c_) c = -m;
    return r;
  }

  // w^t for t taken mod p
  static CycInt root_power(std::uint32_t p, std::uint64_t t) {
    t %= p;
    if (t == 0) return integer(p, 1);
    CycInt r(p);
    r.c_[t - 1] = 1;
    return r;
  }

  std::uint32_t p() const { return p_; }
  // coefficient of w^k, 1 <= k <= p-1
  std::int64_t coeff(std::uint32_t k) const { return c_[k - 1]; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  bool is_zero() const {
    for (auto c : c_)
      if (c != 0) return false;
    return true;
  }

  CycInt& operator+=(const CycInt& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k)
      c_[k] = detail::ck_add(c_[k], o.c_[k]);
    return *this;
  }
  CycInt& operator-=(const CycInt& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k)
      c_[k] = detail::ck_sub(c_[k], o.c_[k]);
    return *this;
  }
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator-(CycInt a) {
    for (auto& c : a.c_) c = detail::ck_sub(0, c);
    return a;
  }

  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    a.check(b);
    const std::uint32_t p = a.p_;
    // accumulate on exponents 0..p-1, then renormalize off the constant
    std::vector<std::int64_t> acc(p, 0);
    for (std::uint32_t i = 1; i < p; ++i) {
      if (a.c_[i - 1] == 0) continue;
      for (std::uint32_t j = 1; j < p; ++j) {
        std::uint32_t e = (i + j) % p;
        acc[e] = detail::ck_add(acc[e], detail::ck_mul(a.c_[i - 1], b.c_[j - 1]));
      }
    }
    CycInt r(p);
    for (std::uint32_t k = 1; k < p; ++k)
      r.c_[k - 1] = detail::ck_sub(acc[k], acc[0]);
    return r;
  }

  CycInt& operator*=(const CycInt& o) { return *this = *this * o; }

  friend CycInt operator*(std::int64_t m, CycInt a) {
    for (auto& c : a.c_) c = detail::ck_mul(c, m);
    return a;
  }

  friend bool operator==(const CycInt& a, const CycInt& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }
  friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

  // complex conjugation w^k -> w^(p-k)
  CycInt conj() const {
    CycInt r(p_);
    for (std::uint32_t k = 1; k < p_; ++k) r.c_[p_ - k - 1] = c_[k - 1];
    return r;
  }

 private:
  void check(const CycInt& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed cyclotomic orders");
  }

  std::uint32_t p_;
  std::vector<std::int64_t> c_;
};

inline CycInt conj(const CycInt& x) { return x.conj(); }

// z^sigma(a): identity when a is a square, conjugation otherwise.
inline CycInt sigma_apply(const FieldCtx& ctx, const CycInt& x, Fe a) {
  if (a == 0) throw std::invalid_argument("sigma undefined at zero");
  return ctx.is_square(a) ? x : x.conj();
}

// tau(a) = w^tr(a)
inline CycInt tau(const FieldCtx& ctx, Fe a) {
  return CycInt::root_power(ctx.p(), ctx.trace(a));
}

// zeta = sum of tau over the nonzero squares; satisfies
// zeta + conj(zeta) = -1 and (zeta - conj(zeta))^2 = -q.
inline CycInt zeta(const FieldCtx& ctx) {
  CycInt z(ctx.p());
  for (Fe a = 1; a < ctx.q(); ++a)
    if (ctx.is_square(a)) z += tau(ctx, a);
  return z;
}

inline CycInt delta(const FieldCtx& ctx) {
  CycInt z = zeta(ctx);
  return z - z.conj();
}

// a + b*zeta with integer a, b
struct QuadForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

inline CycInt quad_to_cyc(const QuadForm& f, const CycInt& zeta_val) {
  return CycInt::integer(zeta_val.p(), f.a) + f.b * zeta_val;
}

// Express x as a + b*zeta if possible.
inline std::optional<QuadForm> as_quad(const CycInt& x, const CycInt& zeta_val) {
  const std::uint32_t p = x.p();
  // coefficients satisfy x_k = -a + b*z_k; zeta has at least two distinct
  // coefficients (it is irrational), so b is determined by any such pair
  std::uint32_t k0 = 1, k1 = 0;
  for (std::uint32_t k = 2; k < p; ++k)
    if (zeta_val.coeff(k) != zeta_val.coeff(k0)) {
      k1 = k;
      break;
    }
  if (k1 == 0) return std::nullopt;
  std::int64_t dz = zeta_val.coeff(k0) - zeta_val.coeff(k1);
  std::int64_t dx = x.coeff(k0) - x.coeff(k1);
  if (dx % dz != 0) return std::nullopt;
  QuadForm f;
  f.b = dx / dz;
  f.a = detail::ck_sub(detail::ck_mul(f.b, zeta_val.coeff(k0)), x.coeff(k0));
  if (quad_to_cyc(f, zeta_val) != x) return std::nullopt;
  return f;
}

}  // namespace shds
