#pragma once

// Exact arithmetic for GF(p^n) with p = 3 (mod 4) and n odd.
// Elements are encoded as integers in [0, q) via the little-endian
// base-p value of their coefficient vector over the modulus basis.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace shds {

using Fe = std::uint32_t;

enum class gf_errc {
  not_prime,
  bad_residue,      // p = 1 (mod 4)
  even_degree,
  oversize,         // q > 2^16
  divide_by_zero,
};

class gf_error : public std::runtime_error {
 public:
  gf_error(gf_errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  gf_errc code() const { return code_; }

 private:
  gf_errc code_;
};

enum class Squareness : std::uint8_t { zero, square, nonsquare };

namespace detail {

inline bool is_prime_u32(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, little-endian coefficients.
using Poly = std::vector<std::uint32_t>;

inline Poly poly_trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod,
                         std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  // reduce by the monic modulus
  const std::size_t n = mod.size() - 1;
  for (std::size_t i = r.size(); i-- > n;) {
    std::uint32_t c = r[i];
    if (c == 0) continue;
    r[i] = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t sub = std::uint64_t(c) * mod[k] % p;
      r[i - n + k] = static_cast<std::uint32_t>((r[i - n + k] + p - sub) % p);
    }
  }
  r.resize(n);
  return poly_trim(r);
}

inline Poly poly_pow_x_mod(std::uint64_t e, const Poly& mod, std::uint32_t p) {
  Poly base{0, 1};           // x
  Poly acc{1};               // 1
  base = poly_mul_mod(base, Poly{1}, mod, p);  // reduce in case n == 1
  while (e) {
    if (e & 1) acc = poly_mul_mod(acc, base, mod, p);
    base = poly_mul_mod(base, base, mod, p);
    e >>= 1;
  }
  return acc;
}

inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  a = poly_trim(std::move(a));
  const Poly bt = poly_trim(b);
  // bt must be nonzero
  std::uint32_t lead_inv = 1;
  {
    // Fermat inverse of leading coefficient
    std::uint64_t base = bt.back(), acc = 1, e = p - 2;
    while (e) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    lead_inv = static_cast<std::uint32_t>(acc);
  }
  while (a.size() >= bt.size()) {
    std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - bt.size();
    for (std::size_t k = 0; k < bt.size(); ++k) {
      std::uint64_t sub = c * bt[k] % p;
      a[shift + k] = static_cast<std::uint32_t>((a[shift + k] + p - sub) % p);
    }
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// f monic of degree n: irreducible iff x^(p^n) = x (mod f) and
// gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n.
inline bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  std::uint64_t pn = 1;
  for (std::size_t i = 0; i < n; ++i) pn *= p;
  Poly xq = poly_pow_x_mod(pn, f, p);
  Poly x = poly_mul_mod(Poly{0, 1}, Poly{1}, f, p);
  if (poly_trim(xq) != poly_trim(x)) return false;
  std::size_t m = n;
  for (std::size_t r = 2; r * r <= m; ++r) {
    if (m % r) continue;
    while (m % r == 0) m /= r;
    std::uint64_t pd = 1;
    for (std::size_t i = 0; i < n / r; ++i) pd *= p;
    Poly g = poly_pow_x_mod(pd, f, p);
    // g - x
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (g[1] + p - 1) % p;
    g = poly_trim(std::move(g));
    if (!poly_gcd(f, g, p).empty() &&
        poly_gcd(f, g, p).size() > 1)
      return false;
  }
  if (m > 1) {
    std::uint64_t pd = 1;
    for (std::size_t i = 0; i < n / m; ++i) pd *= p;
    Poly g = poly_pow_x_mod(pd, f, p);
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (g[1] + p - 1) % p;
    g = poly_trim(std::move(g));
    if (poly_gcd(f, g, p).size() > 1) return false;
  }
  return true;
}

}  // namespace detail

// Immutable arithmetic context for GF(p^n). Construction builds the
// modulus polynomial, exp/log tables, trace table and square flags;
// afterwards the context is safe to share across threads.
class FieldCtx {
 public:
  static FieldCtx make(std::uint32_t p, std::uint32_t n) {
    if (!detail::is_prime_u32(p))
      throw gf_error(gf_errc::not_prime, "p must be prime");
    if (p % 4 != 3)
      throw gf_error(gf_errc::bad_residue, "p must be 3 (mod 4)");
    if (n == 0 || n % 2 == 0)
      throw gf_error(gf_errc::even_degree, "n must be odd");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      q *= p;
      if (q > (1u << 16))
        throw gf_error(gf_errc::oversize, "q exceeds table range 2^16");
    }
    return FieldCtx(p, n, static_cast<std::uint32_t>(q));
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Fe primitive() const { return primitive_; }

  Fe add(Fe a, Fe b) const {
    Fe r = 0, mul = 1;
    for (std::uint32_t k = 0; k < n_; ++k) {
      r += (a % p_ + b % p_) % p_ * mul;
      a /= p_;
      b /= p_;
      mul *= p_;
    }
    return r;
  }
  Fe neg(Fe a) const {
    Fe r = 0, mul = 1;
    for (std::uint32_t k = 0; k < n_; ++k) {
      r += (p_ - a % p_) % p_ * mul;
      a /= p_;
      mul *= p_;
    }
    return r;
  }
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe mul(Fe a, Fe b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  Fe inv(Fe a) const {
    if (a == 0) throw gf_error(gf_errc::divide_by_zero, "inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[static_cast<std::uint32_t>(std::uint64_t(log_[a]) * (e % (q_ - 1)) % (q_ - 1))];
  }
  // embed c in [0,p) as a field element; scalar of the prime subfield
  Fe from_prime(std::uint32_t c) const { return c % p_; }

  std::uint32_t trace(Fe a) const { return trace_[a]; }
  Squareness squareness(Fe a) const { return square_[a]; }
  bool is_square(Fe a) const { return square_[a] == Squareness::square; }

  Fe frobenius(Fe a, std::uint32_t k) const {
    if (a == 0) return 0;
    return exp_[static_cast<std::uint32_t>(
        std::uint64_t(log_[a]) * frob_exp_[k % n_] % (q_ - 1))];
  }

  // multiplicative element 2^{-1}, used by the unitriangular generators
  Fe half(Fe a) const { return mul(a, inv_two_); }

 private:
  FieldCtx(std::uint32_t p, std::uint32_t n, std::uint32_t q)
      : p_(p), n_(n), q_(q) {
    find_modulus();
    build_tables();
  }

  void find_modulus() {
    using detail::Poly;
    // smallest monic irreducible of degree n, ordered by the base-p
    // value of the non-leading coefficients
    for (std::uint32_t enc = 0; enc < q_; ++enc) {
      Poly f(n_ + 1, 0);
      std::uint32_t e = enc;
      for (std::uint32_t k = 0; k < n_; ++k) {
        f[k] = e % p_;
        e /= p_;
      }
      f[n_] = 1;
      if (n_ == 1 || detail::poly_irreducible(f, p_)) {
        modulus_ = f;
        return;
      }
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  Fe poly_mul_enc(Fe a, Fe b) const {
    detail::Poly pa, pb;
    for (Fe e = a; e; e /= p_) pa.push_back(e % p_);
    for (Fe e = b; e; e /= p_) pb.push_back(e % p_);
    detail::Poly r = detail::poly_mul_mod(pa, pb, modulus_, p_);
    Fe out = 0, mul = 1;
    for (std::size_t k = 0; k < r.size(); ++k) {
      out += r[k] * mul;
      mul *= p_;
    }
    return out;
  }

  void build_tables() {
    // primitive element: smallest encoding generating the whole group
    std::vector<std::uint32_t> fac;
    {
      std::uint32_t m = q_ - 1;
      for (std::uint32_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
          fac.push_back(d);
          while (m % d == 0) m /= d;
        }
      if (m > 1) fac.push_back(m);
    }
    auto pow_enc = [&](Fe a, std::uint32_t e) {
      Fe acc = 1, base = a;
      while (e) {
        if (e & 1) acc = poly_mul_enc(acc, base);
        base = poly_mul_enc(base, base);
        e >>= 1;
      }
      return acc;
    };
    primitive_ = 0;
    for (Fe g = 2; g < q_; ++g) {
      bool ok = true;
      for (std::uint32_t r : fac)
        if (pow_enc(g, (q_ - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        primitive_ = g;
        break;
      }
    }
    if (primitive_ == 0) throw std::logic_error("no primitive element");

    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    Fe cur = 1;
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
      exp_[k] = cur;
      log_[cur] = k;
      cur = poly_mul_enc(cur, primitive_);
    }

    square_.assign(q_, Squareness::nonsquare);
    square_[0] = Squareness::zero;
    for (std::uint32_t k = 0; k < q_ - 1; k += 2)
      square_[exp_[k]] = Squareness::square;

    trace_.assign(q_, 0);
    for (Fe a = 1; a < q_; ++a) {
      Fe s = 0;
      Fe t = a;
      for (std::uint32_t k = 0; k < n_; ++k) {
        s = add(s, t);
        t = pow_enc(t, p_);
      }
      trace_[a] = s;  // lies in the prime subfield, encoding < p
    }

    frob_exp_.assign(n_, 1);
    for (std::uint32_t k = 1; k < n_; ++k)
      frob_exp_[k] = frob_exp_[k - 1] * p_ % (q_ - 1);

    inv_two_ = 1;
    {
      Fe two = from_prime(2);
      inv_two_ = exp_[(q_ - 1 - log_[two]) % (q_ - 1)];
    }
  }

  std::uint32_t p_, n_, q_;
  std::vector<std::uint32_t> modulus_;
  Fe primitive_ = 0;
  std::vector<Fe> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> trace_;
  std::vector<Squareness> square_;
  std::vector<std::uint64_t> frob_exp_;
  Fe inv_two_ = 1;
};

inline FieldCtx make_field(std::uint32_t p, std::uint32_t n) {
  return FieldCtx::make(p, n);
}

// Legendre symbol (2/p) for an odd prime p: +1 iff p = ±1 (mod 8).
inline int legendre_two(std::uint32_t p) {
  std::uint64_t acc = 1, base = 2, e = (p - 1) / 2;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

}  // namespace shds
