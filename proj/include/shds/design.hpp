#pragma once

// Translation design des(V, D) = { D + w : w in V } and its symmetric
// 2-design verification.

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "shds/orbits.hpp"
#include "shds/shds.hpp"

namespace shds {

struct Design {
  std::uint32_t v = 0;       // number of points
  std::uint32_t k = 0;       // block size
  std::uint32_t lambda = 0;  // pair count
  // blocks[w] = D + w, indexed by the translation encoding
  std::vector<DiffSet> blocks;
};

inline DiffSet translate(const OrbitTable& t, const DiffSet& d,
                         std::uint32_t w_enc) {
  const FieldCtx& f = t.field();
  Vec3 w = t.decode(w_enc);
  DiffSet out(d.universe());
  for (std::uint32_t e : d.elements()) {
    Vec3 x = t.decode(e);
    out.set(t.encode(Vec3{{f.add(x.v[0], w.v[0]), f.add(x.v[1], w.v[1]),
                           f.add(x.v[2], w.v[2])}}));
  }
  return out;
}

inline Design build_design(const OrbitTable& t, const DiffSet& d) {
  Design out;
  out.v = t.num_points();
  out.k = d.size();
  out.lambda = (out.v - 3) / 4;
  out.blocks.reserve(out.v);
  for (std::uint32_t w = 0; w < out.v; ++w)
    out.blocks.push_back(translate(t, d, w));
  return out;
}

struct PairWitness {
  std::uint32_t x = 0, y = 0;
  std::uint32_t count = 0;
};

struct DesignCheck {
  bool ok = false;
  std::uint32_t v = 0, k = 0, lambda = 0;
  std::optional<PairWitness> witness;
};

// Verify the 2-(v, k, lambda) property. The number of blocks containing
// a pair {x, y} equals the difference count at x - y, so the check runs
// over difference values; full_sweep does the quadratic pair scan too.
inline DesignCheck verify_2design(const OrbitTable& t, const Design& d,
                                  bool full_sweep = false) {
  DesignCheck out;
  out.v = d.v;
  out.k = d.k;
  out.lambda = (d.v - 3) / 4;
  if (d.blocks.size() != d.v) return out;
  for (const auto& b : d.blocks)
    if (b.size() != d.k) return out;
  // distinct blocks
  for (std::uint32_t w = 1; w < d.v; ++w)
    if (d.blocks[w] == d.blocks[0]) return out;

  std::vector<std::uint32_t> counts = diff_counts(t, d.blocks[0]);
  for (std::uint32_t g = 1; g < d.v; ++g)
    if (counts[g] != out.lambda) {
      // witness pair: {g, 0} lies in counts[g] blocks
      out.witness = PairWitness{g, 0, counts[g]};
      return out;
    }

  if (full_sweep) {
    for (std::uint32_t x = 0; x < d.v; ++x)
      for (std::uint32_t y = x + 1; y < d.v; ++y) {
        std::uint32_t c = 0;
        for (const auto& b : d.blocks)
          if (b.test(x) && b.test(y)) ++c;
        if (c != out.lambda) {
          out.witness = PairWitness{x, y, c};
          return out;
        }
      }
  }
  out.ok = true;
  return out;
}

enum class IncidenceFormat { dense01, sparse };

// rows = blocks in translation-encoding order, columns = points in
// encoding order; bit-exact and deterministic
inline void export_incidence(const Design& d, IncidenceFormat fmt,
                             std::ostream& os) {
  if (fmt == IncidenceFormat::dense01) {
    for (const auto& b : d.blocks) {
      std::string line(d.v, '0');
      for (std::uint32_t e = 0; e < d.v; ++e)
        if (b.test(e)) line[e] = '1';
      os << line << '\n';
    }
    return;
  }
  for (const auto& b : d.blocks) {
    bool first = true;
    for (std::uint32_t e : b.elements()) {
      if (!first) os << ' ';
      os << e;
      first = false;
    }
    os << '\n';
  }
}

}  // namespace shds
