#pragma once

// The normalizer N(SE) = FKEU inside the semilinear group of V, its
// induced signed-permutation action on the orbit index set I, and the
// classification of valid eps functions into design-equivalence classes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "shds/orbits.hpp"
#include "shds/shds.hpp"

namespace shds {

// semilinear map v -> M . frob^k(v), frob applied coordinatewise first
struct SemiLin {
  Mat3 m;
  std::uint32_t frob = 0;
  friend bool operator==(const SemiLin&, const SemiLin&) = default;
  friend auto operator<=>(const SemiLin&, const SemiLin&) = default;
};

inline Vec3 apply(const FieldCtx& f, const SemiLin& g, const Vec3& w) {
  Vec3 t{{f.frobenius(w.v[0], g.frob), f.frobenius(w.v[1], g.frob),
          f.frobenius(w.v[2], g.frob)}};
  return mul(f, g.m, t);
}

// (a o b)(v) = a(b(v)): matrix part a.m * frob_a(b.m), exponents add
inline SemiLin compose(const FieldCtx& f, const SemiLin& a, const SemiLin& b) {
  Mat3 fb;
  for (int k = 0; k < 9; ++k) fb.m[k] = f.frobenius(b.m.m[k], a.frob);
  return SemiLin{mul(f, a.m, fb), (a.frob + b.frob) % f.n()};
}

// K(alpha, beta) = diag(alpha, alpha beta, alpha beta^2)
inline Mat3 gen_K(const FieldCtx& f, Fe alpha, Fe beta) {
  Mat3 r;
  r.at(0, 0) = alpha;
  r.at(1, 1) = f.mul(alpha, beta);
  r.at(2, 2) = f.mul(alpha, f.mul(beta, beta));
  return r;
}

// u-hat(gamma): identity with top-right corner gamma
inline Mat3 gen_U(const FieldCtx& f, Fe gamma) {
  (void)f;
  Mat3 r = Mat3::identity();
  r.at(0, 2) = gamma;
  return r;
}

// f^k K(alpha,beta) E(x) u-hat(gamma) as a semilinear map
struct NormElem {
  std::uint32_t frob = 0;
  Fe alpha = 1, beta = 1;
  Fe x = 0;
  Fe gamma = 0;

  SemiLin to_semilin(const FieldCtx& f) const {
    Mat3 m = mul(f, gen_K(f, alpha, beta), mul(f, gen_E(f, x), gen_U(f, gamma)));
    // frobenius acts first: f^k . M = (f^k M f^-k) . f^k, and we store
    // the matrix left of the frobenius, so conjugate the entries
    Mat3 fm;
    for (int k = 0; k < 9; ++k) fm.m[k] = f.frobenius(m.m[k], frob);
    return SemiLin{fm, frob};
  }
};

// the matrix group SE as an explicit element list
inline std::vector<Mat3> build_group_SE(const FieldCtx& f) {
  std::vector<Mat3> out = build_group_A(f);  // A = ES = SE
  std::sort(out.begin(), out.end());
  return out;
}

// does g normalize the linear group SE? (conjugation of every element
// stays in the set; for semilinear g conjugation maps matrices to
// frob-twisted conjugates, still linear)
inline bool normalizes_SE(const FieldCtx& f, const SemiLin& g,
                          const std::vector<Mat3>& se_sorted) {
  Mat3 minv = inverse(f, g.m);
  for (const Mat3& s : se_sorted) {
    Mat3 fs;
    for (int k = 0; k < 9; ++k) fs.m[k] = f.frobenius(s.m[k], g.frob);
    Mat3 c = mul(f, g.m, mul(f, fs, minv));
    if (!std::binary_search(se_sorted.begin(), se_sorted.end(), c))
      return false;
  }
  return true;
}

// Generators of FKEU; construction verifies each normalizes SE.
inline std::vector<NormElem> normalizer_gens(const FieldCtx& f) {
  std::vector<NormElem> gens;
  Fe prim = f.primitive();
  if (f.n() > 1) gens.push_back(NormElem{1, 1, 1, 0, 0});      // frobenius
  gens.push_back(NormElem{0, prim, 1, 0, 0});                  // K(a0, 1)
  gens.push_back(NormElem{0, 1, prim, 0, 0});                  // K(1, b0)
  gens.push_back(NormElem{0, 1, 1, 1, 0});                     // E(1)
  gens.push_back(NormElem{0, 1, 1, 0, 1});                     // u-hat(1)
  std::vector<Mat3> se = build_group_SE(f);
  for (const NormElem& g : gens)
    if (!normalizes_SE(f, g.to_semilin(f), se))
      throw std::logic_error("normalizer generator fails to normalize SE");
  return gens;
}

// All n (q-1)^2 q^2 products f^k K(alpha,beta) E(x) u-hat(gamma);
// asserts they are pairwise distinct.
inline std::vector<SemiLin> fkeu_elements(const FieldCtx& f) {
  std::set<SemiLin> out;
  for (std::uint32_t k = 0; k < f.n(); ++k)
    for (Fe a = 1; a < f.q(); ++a)
      for (Fe b = 1; b < f.q(); ++b)
        for (Fe x = 0; x < f.q(); ++x)
          for (Fe g = 0; g < f.q(); ++g)
            out.insert(NormElem{k, a, b, x, g}.to_semilin(f));
  std::uint64_t expect = std::uint64_t(f.n()) * (f.q() - 1) * (f.q() - 1) *
                         f.q() * f.q();
  if (out.size() != expect)
    throw std::logic_error("FKEU product set has unexpected size");
  return {out.begin(), out.end()};
}

// Exhaustive oracle, q = 3 only: every invertible semilinear map
// normalizing SE.
inline std::vector<SemiLin> brute_normalizer(const FieldCtx& f) {
  if (f.q() != 3)
    throw std::runtime_error("brute normalizer is only feasible at q = 3");
  std::vector<Mat3> se = build_group_SE(f);
  std::vector<SemiLin> out;
  const std::uint32_t q = f.q();
  std::uint64_t total = 1;
  for (int k = 0; k < 9; ++k) total *= q;
  for (std::uint32_t fr = 0; fr < f.n(); ++fr)
    for (std::uint64_t code = 0; code < total; ++code) {
      Mat3 m;
      std::uint64_t c = code;
      for (int k = 0; k < 9; ++k) {
        m.m[k] = c % q;
        c /= q;
      }
      if (det(f, m) == 0) continue;
      SemiLin g{m, fr};
      if (normalizes_SE(f, g, se)) out.push_back(g);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// induced action on I: g maps O_i to sign(i) O_pi(i)
struct SignedIndexPerm {
  std::vector<std::uint32_t> perm;  // position -> position
  std::vector<std::int8_t> sign;

  friend bool operator==(const SignedIndexPerm&, const SignedIndexPerm&) = default;
};

inline SignedIndexPerm compose(const SignedIndexPerm& a,
                               const SignedIndexPerm& b) {
  // (a o b)(i) = a(b(i))
  SignedIndexPerm r;
  r.perm.resize(a.perm.size());
  r.sign.resize(a.sign.size());
  for (std::size_t i = 0; i < a.perm.size(); ++i) {
    r.perm[i] = a.perm[b.perm[i]];
    r.sign[i] = static_cast<std::int8_t>(a.sign[b.perm[i]] * b.sign[i]);
  }
  return r;
}

// Locate the images of two points of every orbit; inconsistent images
// mean g does not permute the A-orbits.
inline SignedIndexPerm induced_perm(const OrbitTable& t, const SemiLin& g) {
  const FieldCtx& f = t.field();
  const std::uint32_t q = f.q();
  SignedIndexPerm r;
  r.perm.resize(q + 2);
  r.sign.resize(q + 2);
  for (std::uint32_t pos = 0; pos < q + 2; ++pos) {
    OrbitIndex idx = OrbitIndex::from_pos(pos, q);
    auto img = t.locate(apply(f, g, t.rep(idx)));
    if (!img) throw std::logic_error("orbit representative mapped to zero");
    const auto& mem = t.members({1, idx});
    auto img2 = t.locate(apply(f, g, t.decode(mem.back())));
    if (!img2 || !(*img == *img2))
      throw std::logic_error("map does not permute A-orbits");
    r.perm[pos] = img->idx.pos(q);
    r.sign[pos] = static_cast<std::int8_t>(img->sign);
  }
  return r;
}

// eps' with D_eps' = g . D_eps: eps'(pi(i)) = sign(i) eps(i)
inline EpsFn act_on_eps(const SignedIndexPerm& p, const EpsFn& eps) {
  EpsFn out(eps.q());
  for (std::uint32_t pos = 0; pos < p.perm.size(); ++pos)
    out.set(OrbitIndex::from_pos(p.perm[pos], eps.q()),
            p.sign[pos] * eps.at_pos(pos));
  return out;
}

// Coset representatives of A in FKEU: f^k, alpha mod squares,
// beta in F_q^*, u-hat(gamma). Size 2 n (q-1) q.
inline std::vector<SemiLin> coset_reps(const FieldCtx& f) {
  Fe nonsq = 0;
  for (Fe a = 1; a < f.q(); ++a)
    if (!f.is_square(a)) {
      nonsq = a;
      break;
    }
  std::vector<SemiLin> reps;
  for (std::uint32_t k = 0; k < f.n(); ++k)
    for (Fe alpha : {Fe(1), nonsq})
      for (Fe beta = 1; beta < f.q(); ++beta)
        for (Fe g = 0; g < f.q(); ++g)
          reps.push_back(NormElem{k, alpha, beta, 0, g}.to_semilin(f));
  return reps;
}

struct EquivClasses {
  struct Class {
    EpsFn rep;       // lex-min member
    std::uint64_t size = 0;
  };
  std::vector<Class> classes;
  std::uint64_t total = 0;
};

// Orbits of the FKEU action on the given valid eps functions, via the
// canonical-form map (lex-min image over all coset representatives).
inline EquivClasses classify(const OrbitTable& t,
                             const std::vector<EpsFn>& valid) {
  const FieldCtx& f = t.field();
  std::vector<SignedIndexPerm> perms;
  for (const SemiLin& g : coset_reps(f)) perms.push_back(induced_perm(t, g));
  std::map<EpsFn, std::uint64_t> by_canon;
  for (const EpsFn& e : valid) {
    EpsFn canon = e;
    for (const auto& p : perms) {
      EpsFn img = act_on_eps(p, e);
      if (img < canon) canon = img;
    }
    ++by_canon[canon];
  }
  EquivClasses out;
  for (const auto& [rep, size] : by_canon) {
    out.classes.push_back({rep, size});
    out.total += size;
  }
  return out;
}

// stabilizer of D_eps in U F_p: pairs (gamma, frobenius exponent k with
// frob^k in the Sylow p-part of Gal) with frob^k(J) + gamma = J
struct QElem {
  Fe gamma = 0;
  std::uint32_t frob = 0;
  friend bool operator==(const QElem&, const QElem&) = default;
};

inline std::vector<QElem> stabilizer_Q(const FieldCtx& f, const EpsFn& eps) {
  // p-part of the cyclic Galois group of order n: generated by frob^(n/p^a)
  std::uint32_t pa = 1;
  while ((f.n() / pa) % f.p() == 0) pa *= f.p();
  std::uint32_t step = f.n() / pa;  // frob^step generates the p-part

  std::vector<Fe> j = eps.J();
  std::set<Fe> jset(j.begin(), j.end());
  std::vector<QElem> out;
  for (std::uint32_t a = 0; a < pa; ++a) {
    std::uint32_t k = a * step % f.n();
    for (Fe g = 0; g < f.q(); ++g) {
      bool ok = true;
      for (Fe i : j)
        if (!jset.count(f.add(f.frobenius(i, k), g))) {
          ok = false;
          break;
        }
      if (ok) out.push_back({g, k});
    }
  }
  return out;
}

}  // namespace shds
