#pragma once

// Principal character table of the orbit Schur ring: entries [O*_i, O_j]
// computed by direct exact summation, the closed forms they must match,
// and the difference matrix T with its block structure.

#include <cstdint>
#include <string>
#include <vector>

#include "shds/cyclotomic.hpp"
#include "shds/orbits.hpp"

namespace shds {

inline CycInt char_value(const FieldCtx& f, const Covec3& v, const Vec3& w) {
  return tau(f, dot(f, v, w));
}

// the fixed dual representative of O*_i: star of the orbit representative
inline Covec3 dual_rep(const OrbitTable& t, const OrbitIndex& idx) {
  return star(t.rep(idx));
}

inline CycInt orbit_char_sum(const OrbitTable& t, const OrbitIndex& i,
                             const OrbitIndex& j) {
  const FieldCtx& f = t.field();
  Covec3 v = dual_rep(t, i);
  CycInt s(f.p());
  for (std::uint32_t enc : t.members({1, j}))
    s += char_value(f, v, t.decode(enc));
  return s;
}

// Closed-form table entry for [O*_i, O_j].
inline CycInt closed_form(const FieldCtx& f, const OrbitIndex& i,
                          const OrbitIndex& j, const CycInt& z) {
  const std::uint32_t p = f.p();
  const std::int64_t q = f.q();
  const std::int64_t half = (q - 1) / 2;
  CycInt one = CycInt::integer(p, 1);
  CycInt z2 = sigma_apply(f, z, f.from_prime(2));
  if (i.kind == OrbitKind::fin && j.kind == OrbitKind::fin) {
    CycInt base = one + 2 * z2;
    Fe sum = f.add(i.i, j.i);
    if (sum == 0) return half * base;
    return sigma_apply(f, z, sum) * base;
  }
  if (i.kind == OrbitKind::fin && j.kind == OrbitKind::inf)
    return CycInt::zero(p);
  if (i.kind == OrbitKind::fin && j.kind == OrbitKind::dot) return z;
  if (i.kind == OrbitKind::inf && j.kind == OrbitKind::fin)
    return CycInt::zero(p);
  if (i.kind == OrbitKind::inf && j.kind == OrbitKind::inf) return q * z;
  if (i.kind == OrbitKind::inf && j.kind == OrbitKind::dot)
    return CycInt::integer(p, half);
  if (i.kind == OrbitKind::dot && j.kind == OrbitKind::fin) return q * z;
  if (i.kind == OrbitKind::dot && j.kind == OrbitKind::inf)
    return CycInt::integer(p, q * half);
  return CycInt::integer(p, half);  // dot, dot
}

class CharTable {
 public:
  explicit CharTable(const OrbitTable& t) : t_(&t), q_(t.field().q()) {
    const std::uint32_t m = q_ + 2;
    entries_.reserve(std::size_t(m) * m);
    for (std::uint32_t a = 0; a < m; ++a)
      for (std::uint32_t b = 0; b < m; ++b)
        entries_.push_back(orbit_char_sum(t, OrbitIndex::from_pos(a, q_),
                                          OrbitIndex::from_pos(b, q_)));
  }

  const OrbitTable& orbits() const { return *t_; }

  const CycInt& principal(const OrbitIndex& i, const OrbitIndex& j) const {
    return entries_[std::size_t(i.pos(q_)) * (q_ + 2) + j.pos(q_)];
  }

  // full signed entry [sign_r * O*_i, sign_o * O_j] via the conjugation rules
  CycInt entry(int sign_r, const OrbitIndex& i, int sign_o,
               const OrbitIndex& j) const {
    CycInt e = principal(i, j);
    if (sign_r * sign_o < 0) return e.conj();
    return e;
  }

 private:
  const OrbitTable* t_;
  std::uint32_t q_;
  std::vector<CycInt> entries_;
};

struct TableMismatch {
  OrbitIndex i, j;
  CycInt computed, expected;
};

struct TableReport {
  bool ok = true;
  std::vector<TableMismatch> mismatches;
};

// Check every principal entry against its closed form, plus the
// reciprocity identity |O_i| [O*_i,O_j] = |O_j| [O*_j,O_i].
inline TableReport verify_table(const CharTable& ct) {
  const OrbitTable& t = ct.orbits();
  const FieldCtx& f = t.field();
  CycInt z = zeta(f);
  TableReport rep;
  const std::uint32_t m = f.q() + 2;
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) {
      OrbitIndex i = OrbitIndex::from_pos(a, f.q());
      OrbitIndex j = OrbitIndex::from_pos(b, f.q());
      CycInt got = ct.principal(i, j);
      CycInt want = closed_form(f, i, j, z);
      if (got != want) {
        rep.ok = false;
        rep.mismatches.push_back({i, j, got, want});
      }
      CycInt lhs = std::int64_t(t.orbit_size(i)) * got;
      CycInt rhs = std::int64_t(t.orbit_size(j)) * ct.principal(j, i);
      if (lhs != rhs) {
        rep.ok = false;
        rep.mismatches.push_back({i, j, lhs, rhs});
      }
    }
  return rep;
}

// T_{i,j} = chi_v(O_j) - conj(chi_v(O_j)), v in O*_i
class TMatrix {
 public:
  explicit TMatrix(const CharTable& ct)
      : q_(ct.orbits().field().q()) {
    const std::uint32_t m = q_ + 2;
    for (std::uint32_t a = 0; a < m; ++a)
      for (std::uint32_t b = 0; b < m; ++b) {
        const CycInt& e = ct.principal(OrbitIndex::from_pos(a, q_),
                                       OrbitIndex::from_pos(b, q_));
        entries_.push_back(e - e.conj());
      }
  }

  const CycInt& at(const OrbitIndex& i, const OrbitIndex& j) const {
    return entries_[std::size_t(i.pos(q_)) * (q_ + 2) + j.pos(q_)];
  }

 private:
  std::uint32_t q_;
  std::vector<CycInt> entries_;
};

// Entrywise check of T against the closed block form (stated through the
// row-permuted matrix T': row i of T' is row -i of T for i in F_q).
inline TableReport verify_T(const TMatrix& T, const FieldCtx& f) {
  const std::int64_t q = f.q();
  CycInt d = delta(f);
  CycInt d2 = sigma_apply(f, d, f.from_prime(2));
  TableReport rep;
  auto expect = [&](const OrbitIndex& i, const OrbitIndex& j, const CycInt& want) {
    const CycInt& got = T.at(i, j);
    if (got != want) {
      rep.ok = false;
      rep.mismatches.push_back({i, j, got, want});
    }
  };
  for (Fe i = 0; i < f.q(); ++i) {
    for (Fe j = 0; j < f.q(); ++j) {
      // T'_{i,j} = Delta^sigma(2) (q I - J)_{i,j} with T'_i = T_{-i}
      bool diag = (f.add(i, j) == 0);
      expect(OrbitIndex::fin(i), OrbitIndex::fin(j),
             diag ? (q - 1) * d2 : -d2);
    }
    expect(OrbitIndex::fin(i), OrbitIndex::infinity(), CycInt::zero(f.p()));
    expect(OrbitIndex::fin(i), OrbitIndex::bullet(), d);
    expect(OrbitIndex::infinity(), OrbitIndex::fin(i), CycInt::zero(f.p()));
    expect(OrbitIndex::bullet(), OrbitIndex::fin(i), q * d);
  }
  expect(OrbitIndex::infinity(), OrbitIndex::infinity(), q * d);
  expect(OrbitIndex::infinity(), OrbitIndex::bullet(), CycInt::zero(f.p()));
  expect(OrbitIndex::bullet(), OrbitIndex::infinity(), CycInt::zero(f.p()));
  expect(OrbitIndex::bullet(), OrbitIndex::bullet(), CycInt::zero(f.p()));
  return rep;
}

}  // namespace shds
