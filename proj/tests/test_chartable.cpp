#include <catch_amalgamated.hpp>

#include <random>

#include "shds/chartable.hpp"

using namespace shds;

TEST_CASE("char_value basics") {
  FieldCtx f = make_field(7, 1);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Vec3 w{{Fe(rng() % 7), Fe(rng() % 7), Fe(rng() % 7)}};
    CHECK(char_value(f, Covec3{{0, 0, 0}}, w) == CycInt::integer(7, 1));
  }
  for (int trial = 0; trial < 100; ++trial) {
    Covec3 v{{Fe(rng() % 7), Fe(rng() % 7), Fe(rng() % 7)}};
    Vec3 w{{Fe(rng() % 7), Fe(rng() % 7), Fe(rng() % 7)}};
    Vec3 w2{{Fe(rng() % 7), Fe(rng() % 7), Fe(rng() % 7)}};
    Vec3 sum{{f.add(w.v[0], w2.v[0]), f.add(w.v[1], w2.v[1]),
              f.add(w.v[2], w2.v[2])}};
    CHECK(char_value(f, v, Vec3{{0, 0, 0}}) == CycInt::integer(7, 1));
    CHECK(char_value(f, v, w) * char_value(f, v, w2) ==
          char_value(f, v, sum));
  }
}

TEST_CASE("named table entries at q=7") {
  FieldCtx f = make_field(7, 1);
  OrbitTable t(f);
  for (Fe j = 0; j < 7; ++j)
    CHECK(orbit_char_sum(t, OrbitIndex::infinity(), OrbitIndex::fin(j)) ==
          CycInt::zero(7));
  CHECK(orbit_char_sum(t, OrbitIndex::bullet(), OrbitIndex::infinity()) ==
        CycInt::integer(7, 21));  // q(q-1)/2
  CHECK(orbit_char_sum(t, OrbitIndex::bullet(), OrbitIndex::bullet()) ==
        CycInt::integer(7, 3));  // (q-1)/2
}

TEST_CASE("closed-form spot checks") {
  FieldCtx f = make_field(7, 1);
  CycInt z = zeta(f);
  CycInt z2 = sigma_apply(f, z, 2);
  CycInt base = CycInt::integer(7, 1) + 2 * z2;
  CHECK(closed_form(f, OrbitIndex::fin(3), OrbitIndex::fin(4), z) ==
        3 * base);  // i + j = 0, (q-1)/2 = 3
  CHECK(closed_form(f, OrbitIndex::fin(2), OrbitIndex::bullet(), z) == z);
  CHECK(closed_form(f, OrbitIndex::infinity(), OrbitIndex::infinity(), z) ==
        7 * z);
}

TEST_CASE("sum is independent of the dual representative, q=3") {
  FieldCtx f = make_field(3, 1);
  OrbitTable t(f);
  for (std::uint32_t a = 0; a < 5; ++a) {
    OrbitIndex i = OrbitIndex::from_pos(a, 3);
    for (std::uint32_t b = 0; b < 5; ++b) {
      OrbitIndex j = OrbitIndex::from_pos(b, 3);
      CycInt want = orbit_char_sum(t, i, j);
      // every element of O*_i = (O_i)* must give the same sum
      for (std::uint32_t enc : t.members({1, i})) {
        Covec3 v = star(t.decode(enc));
        CycInt s(f.p());
        for (std::uint32_t we : t.members({1, j}))
          s += char_value(f, v, t.decode(we));
        CHECK(s == want);
      }
    }
  }
}

TEST_CASE("full table matches closed forms, q in {3,7}") {
  for (std::uint32_t p : {3u, 7u}) {
    FieldCtx f = make_field(p, 1);
    OrbitTable t(f);
    CharTable ct(t);
    TableReport rep = verify_table(ct);
    CHECK(rep.ok);
    CHECK(rep.mismatches.empty());
  }
}

TEST_CASE("conjugation symmetry of signed entries") {
  // Direct summation over signed orbits: all three stated variants
  // [R,-O] = conj([R,O]), [-R,O] = conj([R,O]), [-R,-O] = [R,O].
  for (std::uint32_t p : {3u, 11u}) {
    FieldCtx f = make_field(p, 1);
    OrbitTable t(f);
    auto signed_sum = [&](int sr, const OrbitIndex& i, int so,
                          const OrbitIndex& j) {
      Covec3 v = dual_rep(t, i);
      if (sr < 0)
        for (auto& c : v.v) c = f.neg(c);
      CycInt s(f.p());
      for (std::uint32_t enc : t.members({so, j}))
        s += char_value(f, v, t.decode(enc));
      return s;
    };
    for (std::uint32_t a = 0; a < f.q() + 2; ++a)
      for (std::uint32_t b = 0; b < f.q() + 2; ++b) {
        OrbitIndex i = OrbitIndex::from_pos(a, f.q());
        OrbitIndex j = OrbitIndex::from_pos(b, f.q());
        CycInt base = signed_sum(1, i, 1, j);
        CHECK(signed_sum(1, i, -1, j) == conj(base));
        CHECK(signed_sum(-1, i, 1, j) == conj(base));
        CHECK(signed_sum(-1, i, -1, j) == base);
      }
  }
}

TEST_CASE("CharTable signed accessor agrees with direct sums") {
  FieldCtx f = make_field(7, 1);
  OrbitTable t(f);
  CharTable ct(t);
  OrbitIndex i = OrbitIndex::fin(2), j = OrbitIndex::fin(5);
  CHECK(ct.entry(1, i, -1, j) == conj(ct.principal(i, j)));
  CHECK(ct.entry(-1, i, -1, j) == ct.principal(i, j));
}

TEST_CASE("row sums over all signed orbits equal -1") {
  for (std::uint32_t p : {3u, 7u}) {
    FieldCtx f = make_field(p, 1);
    OrbitTable t(f);
    CharTable ct(t);
    for (std::uint32_t a = 0; a < f.q() + 2; ++a) {
      OrbitIndex i = OrbitIndex::from_pos(a, f.q());
      CycInt s(f.p());
      for (std::uint32_t b = 0; b < f.q() + 2; ++b) {
        OrbitIndex j = OrbitIndex::from_pos(b, f.q());
        s += ct.entry(1, i, 1, j);
        s += ct.entry(1, i, -1, j);
      }
      CHECK(s == CycInt::integer(f.p(), -1));
    }
  }
}

TEST_CASE("T matrix") {
  for (std::uint32_t p : {3u, 7u}) {
    FieldCtx f = make_field(p, 1);
    OrbitTable t(f);
    CharTable ct(t);
    TMatrix T(ct);
    CHECK(verify_T(T, f).ok);

    CycInt d = delta(f);
    CycInt d2 = sigma_apply(f, d, f.from_prime(2));
    for (Fe i = 0; i < f.q(); ++i) {
      CHECK(T.at(OrbitIndex::fin(i), OrbitIndex::fin(f.neg(i))) ==
            std::int64_t(f.q() - 1) * d2);
      CHECK(T.at(OrbitIndex::fin(i), OrbitIndex::infinity()) ==
            CycInt::zero(p));
    }
    CHECK(T.at(OrbitIndex::infinity(), OrbitIndex::infinity()) ==
          std::int64_t(f.q()) * d);

    // purely imaginary in the sign-symmetric sense
    for (std::uint32_t a = 0; a < f.q() + 2; ++a)
      for (std::uint32_t b = 0; b < f.q() + 2; ++b) {
        const CycInt& e = T.at(OrbitIndex::from_pos(a, f.q()),
                               OrbitIndex::from_pos(b, f.q()));
        CHECK(conj(e) == -e);
      }
  }
}
