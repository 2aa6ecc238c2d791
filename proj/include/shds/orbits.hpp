#pragma once

// V = F_q^3, the matrix group A = ES and its signed-orbit decomposition
// of V \ {0}, indexed by I = F_q U {inf, dot}. Orbits come in pairs
// (O_i, -O_i); a constant-time lookup classifies every point.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shds/gf.hpp"

namespace shds {

struct Vec3 {
  std::array<Fe, 3> v{};
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct Covec3 {
  std::array<Fe, 3> v{};
  friend bool operator==(const Covec3&, const Covec3&) = default;
};

// star map: (w1,w2,w3)^t -> (w3,w2,w1), an involution V <-> V*
inline Covec3 star(const Vec3& w) { return Covec3{{w.v[2], w.v[1], w.v[0]}}; }
inline Vec3 star(const Covec3& v) { return Vec3{{v.v[2], v.v[1], v.v[0]}}; }

inline Fe dot(const FieldCtx& f, const Covec3& v, const Vec3& w) {
  Fe s = 0;
  for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(v.v[k], w.v[k]));
  return s;
}

struct Mat3 {
  // row-major entries
  std::array<Fe, 9> m{};

  static Mat3 identity() {
    Mat3 r;
    r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return r;
  }
  Fe at(int r, int c) const { return m[3 * r + c]; }
  Fe& at(int r, int c) { return m[3 * r + c]; }

  friend bool operator==(const Mat3&, const Mat3&) = default;
  friend auto operator<=>(const Mat3&, const Mat3&) = default;
};

inline Mat3 mul(const FieldCtx& f, const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Fe s = 0;
      for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

inline Vec3 mul(const FieldCtx& f, const Mat3& a, const Vec3& w) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    Fe s = 0;
    for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(a.at(i, k), w.v[k]));
    r.v[i] = s;
  }
  return r;
}

inline Covec3 mul(const FieldCtx& f, const Covec3& v, const Mat3& a) {
  Covec3 r;
  for (int j = 0; j < 3; ++j) {
    Fe s = 0;
    for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(v.v[k], a.at(k, j)));
    r.v[j] = s;
  }
  return r;
}

inline Fe det(const FieldCtx& f, const Mat3& a) {
  auto m2 = [&](Fe a11, Fe a12, Fe a21, Fe a22) {
    return f.sub(f.mul(a11, a22), f.mul(a12, a21));
  };
  Fe d = 0;
  d = f.add(d, f.mul(a.at(0, 0), m2(a.at(1, 1), a.at(1, 2), a.at(2, 1), a.at(2, 2))));
  d = f.sub(d, f.mul(a.at(0, 1), m2(a.at(1, 0), a.at(1, 2), a.at(2, 0), a.at(2, 2))));
  d = f.add(d, f.mul(a.at(0, 2), m2(a.at(1, 0), a.at(1, 1), a.at(2, 0), a.at(2, 1))));
  return d;
}

inline Mat3 inverse(const FieldCtx& f, const Mat3& a) {
  Fe d = det(f, a);
  if (d == 0) throw std::invalid_argument("singular matrix");
  Fe di = f.inv(d);
  auto m2 = [&](Fe a11, Fe a12, Fe a21, Fe a22) {
    return f.sub(f.mul(a11, a22), f.mul(a12, a21));
  };
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // cofactor transpose, cyclic index form avoids sign bookkeeping
      r.at(j, i) = f.mul(di, m2(a.at(r0, c0), a.at(r0, c1), a.at(r1, c0), a.at(r1, c1)));
    }
  return r;
}

// E(x): unitriangular with first row (1, x, x^2/2)
inline Mat3 gen_E(const FieldCtx& f, Fe x) {
  Mat3 r = Mat3::identity();
  r.at(0, 1) = x;
  r.at(0, 2) = f.half(f.mul(x, x));
  r.at(1, 2) = x;
  return r;
}

// A = ES: all E(x) * sI with s a nonzero square; order q(q-1)/2
inline std::vector<Mat3> build_group_A(const FieldCtx& f) {
  std::vector<Mat3> out;
  out.reserve(std::size_t(f.q()) * (f.q() - 1) / 2);
  for (Fe x = 0; x < f.q(); ++x) {
    Mat3 e = gen_E(f, x);
    for (Fe s = 1; s < f.q(); ++s) {
      if (!f.is_square(s)) continue;
      Mat3 m = e;
      for (auto& c : m.m) c = f.mul(c, s);
      out.push_back(m);
    }
  }
  return out;
}

enum class OrbitKind : std::uint8_t { fin, inf, dot };

struct OrbitIndex {
  OrbitKind kind = OrbitKind::fin;
  Fe i = 0;  // meaningful only for fin

  static OrbitIndex fin(Fe i) { return {OrbitKind::fin, i}; }
  static OrbitIndex infinity() { return {OrbitKind::inf, 0}; }
  static OrbitIndex bullet() { return {OrbitKind::dot, 0}; }

  // canonical position in I: Fin(0..q-1) by encoding, then inf, then dot
  std::uint32_t pos(std::uint32_t q) const {
    switch (kind) {
      case OrbitKind::fin: return i;
      case OrbitKind::inf: return q;
      case OrbitKind::dot: return q + 1;
    }
    return 0;
  }
  static OrbitIndex from_pos(std::uint32_t pos, std::uint32_t q) {
    if (pos < q) return fin(pos);
    if (pos == q) return infinity();
    return bullet();
  }

  friend bool operator==(const OrbitIndex&, const OrbitIndex&) = default;
};

struct SignedOrbit {
  int sign = 1;  // +1 or -1
  OrbitIndex idx;
  friend bool operator==(const SignedOrbit&, const SignedOrbit&) = default;
};

class OrbitTable {
 public:
  explicit OrbitTable(const FieldCtx& f) : f_(&f), q_(f.q()) {
    build();
  }

  std::uint32_t encode(const Vec3& w) const {
    return w.v[0] + q_ * w.v[1] + q_ * q_ * w.v[2];
  }
  Vec3 decode(std::uint32_t e) const {
    return Vec3{{Fe(e % q_), Fe(e / q_ % q_), Fe(e / (q_ * q_))}};
  }
  std::uint32_t num_points() const { return q_ * q_ * q_; }
  std::uint32_t num_indices() const { return q_ + 2; }

  // nullopt means the zero vector
  std::optional<SignedOrbit> locate(const Vec3& w) const {
    std::int32_t id = lookup_[encode(w)];
    if (id < 0) return std::nullopt;
    return from_id(static_cast<std::uint32_t>(id));
  }

  const std::vector<std::uint32_t>& members(const SignedOrbit& o) const {
    return members_[to_id(o)];
  }

  // canonical representative of +O_idx
  Vec3 rep(const OrbitIndex& idx) const {
    switch (idx.kind) {
      case OrbitKind::fin: return Vec3{{idx.i, 0, 1}};
      case OrbitKind::inf: return Vec3{{0, 1, 0}};
      case OrbitKind::dot: return Vec3{{1, 0, 0}};
    }
    return {};
  }

  std::uint32_t orbit_size(const OrbitIndex& idx) const {
    return static_cast<std::uint32_t>(members_[idx.pos(q_)].size());
  }

  std::uint32_t to_id(const SignedOrbit& o) const {
    return o.idx.pos(q_) + (o.sign > 0 ? 0 : q_ + 2);
  }
  SignedOrbit from_id(std::uint32_t id) const {
    if (id < q_ + 2) return {1, OrbitIndex::from_pos(id, q_)};
    return {-1, OrbitIndex::from_pos(id - (q_ + 2), q_)};
  }

  const FieldCtx& field() const { return *f_; }

 private:
  void build() {
    const FieldCtx& f = *f_;
    lookup_.assign(num_points(), -1);
    members_.assign(2 * (q_ + 2), {});

    auto fill = [&](const SignedOrbit& o) {
      Vec3 r = rep(o.idx);
      if (o.sign < 0)
        for (auto& c : r.v) c = f.neg(c);
      std::uint32_t id = to_id(o);
      // direct action of the (x, s) parametrization of A
      for (Fe x = 0; x < q_; ++x) {
        Mat3 e = gen_E(f, x);
        for (Fe s = 1; s < q_; ++s) {
          if (!f.is_square(s)) continue;
          Vec3 w = mul(f, e, r);
          for (auto& c : w.v) c = f.mul(c, s);
          std::uint32_t enc = encode(w);
          if (lookup_[enc] == static_cast<std::int32_t>(id)) continue;
          if (lookup_[enc] != -1)
            throw std::logic_error("orbit overlap: field/matrix inconsistency");
          lookup_[enc] = static_cast<std::int32_t>(id);
          members_[id].push_back(enc);
        }
      }
      std::sort(members_[id].begin(), members_[id].end());
    };

    for (int sign : {1, -1}) {
      for (Fe i = 0; i < q_; ++i) fill({sign, OrbitIndex::fin(i)});
      fill({sign, OrbitIndex::infinity()});
      fill({sign, OrbitIndex::bullet()});
    }

    // every nonzero point classified exactly once
    std::uint64_t total = 0;
    for (const auto& m : members_) total += m.size();
    if (total != std::uint64_t(num_points()) - 1 || lookup_[0] != -1)
      throw std::logic_error("orbit partition incomplete");
  }

  const FieldCtx* f_;
  std::uint32_t q_;
  std::vector<std::int32_t> lookup_;
  std::vector<std::vector<std::uint32_t>> members_;
};

}  // namespace shds
