#pragma once

// Candidate difference sets D_eps, the sign-vector filter of the main
// enumeration theorem, and two independent SHDS oracles: brute-force
// difference counting and the exact character criterion.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "shds/chartable.hpp"
#include "shds/cyclotomic.hpp"
#include "shds/orbits.hpp"

namespace shds {

// sign assignment on I = F_q U {inf, dot}; bit k set means eps = +1 at
// the k-th index in canonical order
class EpsFn {
 public:
  explicit EpsFn(std::uint32_t q) : q_(q), s_(q + 2, 1) {}

  static EpsFn from_bits(std::uint32_t q, const std::vector<int>& signs) {
    if (signs.size() != q + 2) throw std::invalid_argument("eps length");
    EpsFn e(q);
    for (std::size_t k = 0; k < signs.size(); ++k)
      e.s_[k] = signs[k] > 0 ? 1 : -1;
    return e;
  }

  std::uint32_t q() const { return q_; }
  int at(const OrbitIndex& i) const { return s_[i.pos(q_)]; }
  int at_pos(std::uint32_t pos) const { return s_[pos]; }
  void set(const OrbitIndex& i, int sign) { s_[i.pos(q_)] = sign > 0 ? 1 : -1; }

  EpsFn negated() const {
    EpsFn e = *this;
    for (auto& x : e.s_) x = -x;
    return e;
  }

  // J_eps = { i in F_q : eps(i) = +1 }
  std::vector<Fe> J() const {
    std::vector<Fe> j;
    for (Fe i = 0; i < q_; ++i)
      if (s_[i] > 0) j.push_back(i);
    return j;
  }
  // mu = sum of eps over F_q
  std::int64_t mu() const {
    std::int64_t m = 0;
    for (Fe i = 0; i < q_; ++i) m += s_[i];
    return m;
  }

  // '+'/'-' string in canonical index order
  std::string bits() const {
    std::string b;
    for (auto x : s_) b.push_back(x > 0 ? '+' : '-');
    return b;
  }

  friend bool operator==(const EpsFn&, const EpsFn&) = default;
  friend auto operator<=>(const EpsFn&, const EpsFn&) = default;

 private:
  std::uint32_t q_;
  std::vector<std::int8_t> s_;
};

// subset of V as a bitset over the q^3 point encodings
class DiffSet {
 public:
  explicit DiffSet(std::uint32_t num_points)
      : n_(num_points), words_((num_points + 63) / 64, 0) {}

  std::uint32_t universe() const { return n_; }
  std::uint32_t size() const { return count_; }

  bool test(std::uint32_t e) const {
    return (words_[e >> 6] >> (e & 63)) & 1;
  }
  void set(std::uint32_t e) {
    std::uint64_t& w = words_[e >> 6];
    std::uint64_t bit = 1ull << (e & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }

  std::vector<std::uint32_t> elements() const {
    std::vector<std::uint32_t> out;
    out.reserve(count_);
    for (std::uint32_t e = 0; e < n_; ++e)
      if (test(e)) out.push_back(e);
    return out;
  }

  friend bool operator==(const DiffSet&, const DiffSet&) = default;

 private:
  std::uint32_t n_;
  std::uint32_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

// D_eps = union over i of eps(i) O_i
inline DiffSet build_D(const OrbitTable& t, const EpsFn& eps) {
  DiffSet d(t.num_points());
  const std::uint32_t q = t.field().q();
  for (std::uint32_t pos = 0; pos < q + 2; ++pos) {
    SignedOrbit o{eps.at_pos(pos), OrbitIndex::from_pos(pos, q)};
    for (std::uint32_t e : t.members(o)) d.set(e);
  }
  return d;
}

// Enumeration-theorem filter: mu = +-1 and eps(dot) = (2/p) mu.
// eps(inf) is unconstrained.
inline bool filter_theorem(const FieldCtx& f, const EpsFn& eps) {
  std::int64_t m = eps.mu();
  if (m != 1 && m != -1) return false;
  return eps.at(OrbitIndex::bullet()) == legendre_two(f.p()) * m;
}

// difference-count array: counts[g] = #{(d,d') in D^2 : d - d' = g}
inline std::vector<std::uint32_t> diff_counts(const OrbitTable& t,
                                              const DiffSet& d) {
  const FieldCtx& f = t.field();
  const std::uint32_t q = f.q();
  // per-coordinate subtraction table
  std::vector<std::uint32_t> sub(std::size_t(q) * q);
  for (Fe a = 0; a < q; ++a)
    for (Fe b = 0; b < q; ++b) sub[std::size_t(a) * q + b] = f.sub(a, b);
  std::vector<std::uint32_t> c1(t.num_points()), c2(t.num_points()),
      c3(t.num_points());
  for (std::uint32_t e = 0; e < t.num_points(); ++e) {
    c1[e] = e % q;
    c2[e] = e / q % q;
    c3[e] = e / (q * q);
  }
  std::vector<std::uint32_t> counts(t.num_points(), 0);
  std::vector<std::uint32_t> elems = d.elements();
  for (std::uint32_t a : elems)
    for (std::uint32_t b : elems) {
      std::uint32_t g = sub[std::size_t(c1[a]) * q + c1[b]] +
                        q * sub[std::size_t(c2[a]) * q + c2[b]] +
                        q * q * sub[std::size_t(c3[a]) * q + c3[b]];
      ++counts[g];
    }
  return counts;
}

// Brute-force difference-set oracle: every nonzero g is hit exactly
// lambda = (q^3 - 3)/4 times. Independent of all character machinery.
inline bool is_shds_convolution(const OrbitTable& t, const DiffSet& d) {
  const std::uint64_t v = t.num_points();
  if (d.size() != (v - 1) / 2) return false;
  // skew condition: D and -D partition the nonzero points
  const FieldCtx& f = t.field();
  for (std::uint32_t e : d.elements()) {
    Vec3 w = t.decode(e);
    Vec3 m{{f.neg(w.v[0]), f.neg(w.v[1]), f.neg(w.v[2])}};
    if (d.test(t.encode(m))) return false;
  }
  const std::uint32_t lambda = static_cast<std::uint32_t>((v - 3) / 4);
  std::vector<std::uint32_t> counts = diff_counts(t, d);
  if (counts[0] != d.size()) return false;
  for (std::uint32_t g = 1; g < v; ++g)
    if (counts[g] != lambda) return false;
  return true;
}

// chi_v(D) as an exact cyclotomic integer
inline CycInt char_sum_over(const OrbitTable& t, const Covec3& v,
                            const DiffSet& d) {
  const FieldCtx& f = t.field();
  CycInt s(f.p());
  for (std::uint32_t e = 0; e < t.num_points(); ++e)
    if (d.test(e)) s += char_value(f, v, t.decode(e));
  return s;
}

// Character-criterion oracle: SH1/SH2 set-theoretically, then
// (chi_v(D) - conj)^2 = -q^3 for nonzero v. By A-invariance one dual
// representative per signed orbit suffices; full_sweep tests all v.
inline bool is_shds_character(const OrbitTable& t, const DiffSet& d,
                              bool full_sweep = false) {
  const FieldCtx& f = t.field();
  const std::uint64_t v = t.num_points();
  if (d.size() != (v - 1) / 2) return false;
  for (std::uint32_t e : d.elements()) {
    Vec3 w = t.decode(e);
    Vec3 m{{f.neg(w.v[0]), f.neg(w.v[1]), f.neg(w.v[2])}};
    if (d.test(t.encode(m))) return false;  // SH1; SH2 follows from size
  }
  const CycInt target =
      CycInt::integer(f.p(), -std::int64_t(v));  // -q^3
  auto check = [&](const Covec3& cv) {
    CycInt s = char_sum_over(t, cv, d);
    CycInt dd = s - s.conj();
    return dd * dd == target;
  };
  if (full_sweep) {
    for (std::uint32_t e = 1; e < v; ++e) {
      Vec3 w = t.decode(e);
      if (!check(Covec3{{w.v[0], w.v[1], w.v[2]}})) return false;
    }
    return true;
  }
  const std::uint32_t q = f.q();
  for (std::uint32_t pos = 0; pos < q + 2; ++pos) {
    OrbitIndex idx = OrbitIndex::from_pos(pos, q);
    Covec3 cv = dual_rep(t, idx);
    if (!check(cv)) return false;
    Covec3 nv{{f.neg(cv.v[0]), f.neg(cv.v[1]), f.neg(cv.v[2])}};
    if (!check(nv)) return false;
  }
  return true;
}

enum class EnumMode { exhaustive, sample };

struct EnumOptions {
  EnumMode mode = EnumMode::exhaustive;
  std::uint64_t budget = 1ull << 20;  // max 2^(q+2) scan size for exhaustive
  std::uint32_t sample_count = 0;
  std::uint64_t seed = 0;
};

// All filter-passing eps in lex order of the '+'/'-' bit vector
// ('-' < '+', index order Fin(0..q-1), inf, dot).
inline std::vector<EpsFn> enumerate_valid(const FieldCtx& f,
                                          const EnumOptions& opt = {}) {
  const std::uint32_t q = f.q();
  std::vector<EpsFn> out;
  if (opt.mode == EnumMode::exhaustive) {
    if (q + 2 > 63 || (1ull << (q + 2)) > opt.budget)
      throw std::runtime_error("exhaustive enumeration budget exceeded");
    const std::uint64_t total = 1ull << (q + 2);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      EpsFn e(q);
      for (std::uint32_t k = 0; k < q + 2; ++k)
        if (!(mask & (1ull << (q + 1 - k))))
          e.set(OrbitIndex::from_pos(k, q), -1);
      if (filter_theorem(f, e)) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // sample mode: choose mu, eps(inf), then J as a random (q+mu)/2-subset
  std::mt19937_64 rng(opt.seed);
  for (std::uint32_t k = 0; k < opt.sample_count; ++k) {
    int m = (rng() & 1) ? 1 : -1;
    int einf = (rng() & 1) ? 1 : -1;
    std::uint32_t jsize = (q + m) / 2;
    std::vector<Fe> pool(q);
    for (Fe i = 0; i < q; ++i) pool[i] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    EpsFn e(q);
    for (Fe i = 0; i < q; ++i) e.set(OrbitIndex::fin(i), -1);
    for (std::uint32_t t = 0; t < jsize; ++t)
      e.set(OrbitIndex::fin(pool[t]), 1);
    e.set(OrbitIndex::infinity(), einf);
    e.set(OrbitIndex::bullet(), legendre_two(f.p()) * m);
    out.push_back(e);
  }
  return out;
}

// Schur-partition check over the additive group V: S1, S2, S3.
// Classes are given as sorted point-encoding lists covering V.
inline bool schur_check(const OrbitTable& t,
                        const std::vector<std::vector<std::uint32_t>>& classes) {
  const FieldCtx& f = t.field();
  const std::uint32_t npts = t.num_points();
  std::vector<std::int32_t> cls(npts, -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::uint32_t e : classes[c]) {
      if (e >= npts || cls[e] != -1)
        throw std::invalid_argument("not a partition of V");
      cls[e] = static_cast<std::int32_t>(c);
    }
  for (std::uint32_t e = 0; e < npts; ++e)
    if (cls[e] == -1) throw std::invalid_argument("not a partition of V");

  // S1: {0} is a class
  if (classes[cls[0]].size() != 1) return false;

  auto neg_enc = [&](std::uint32_t e) {
    Vec3 w = t.decode(e);
    return t.encode(Vec3{{f.neg(w.v[0]), f.neg(w.v[1]), f.neg(w.v[2])}});
  };
  // S2: the class of -h is the negated class of h
  for (std::uint32_t e = 0; e < npts; ++e) {
    std::uint32_t ne = neg_enc(e);
    if (cls[classes[cls[e]][0]] != cls[e]) return false;  // sanity
    // class of -e must be exactly the negation of class of e
    if (classes[cls[ne]].size() != classes[cls[e]].size()) return false;
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<std::uint32_t> negd;
    negd.reserve(classes[c].size());
    for (std::uint32_t e : classes[c]) negd.push_back(neg_enc(e));
    std::sort(negd.begin(), negd.end());
    if (negd != classes[cls[neg_enc(classes[c][0])]]) return false;
  }

  // S3: for each pair of classes the sum-multiset counts are constant
  // on every class (integral structure constants)
  const std::uint32_t q = f.q();
  std::vector<std::uint32_t> add(std::size_t(q) * q);
  for (Fe a = 0; a < q; ++a)
    for (Fe b = 0; b < q; ++b) add[std::size_t(a) * q + b] = f.add(a, b);
  std::vector<std::uint32_t> counts(npts);
  for (std::size_t x = 0; x < classes.size(); ++x)
    for (std::size_t y = 0; y < classes.size(); ++y) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::uint32_t a : classes[x])
        for (std::uint32_t b : classes[y]) {
          std::uint32_t g = add[std::size_t(a % q) * q + b % q] +
                            q * add[std::size_t(a / q % q) * q + b / q % q] +
                            q * q * add[std::size_t(a / (q * q)) * q + b / (q * q)];
          ++counts[g];
        }
      for (const auto& zc : classes) {
        std::uint32_t c0 = counts[zc[0]];
        for (std::uint32_t e : zc)
          if (counts[e] != c0) return false;
      }
    }
  return true;
}

}  // namespace shds
