#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inflate_kit/complex.hpp"
#include "inflate_kit/error.hpp"
#include "inflate_kit/poset.hpp"
#include "inflate_kit/simplicial.hpp"
#include "inflate_kit/smith.hpp"

namespace inflate_kit {

/// Augmented simplicial chain complex. `boundary[k]` is ∂_k from k-chains to
/// (k-1)-chains, stored with one row per k-face; ∂_0 is the augmentation.
struct ChainComplex {
  int dimension = -1;
  std::vector<std::size_t> ranks;     // ranks[k] = number of k-faces
  std::vector<SparseMatrix> boundary;  // boundary[k], k = 0..dimension

  /// Number of (k)-cells, with a single (-1)-cell.
  std::size_t cells(int k) const {
    if (k == -1) return 1;
    if (k < -1 || k > dimension) return 0;
    return ranks[static_cast<std::size_t>(k)];
  }
};

/// Signs come from the sorted vertex order of each face: removing the i-th
/// vertex contributes (-1)^i.
inline ChainComplex chain_complex(const SimplicialComplex& k) {
  ChainComplex c;
  c.dimension = k.dimension();
  for (int d = 0; d <= c.dimension; ++d) {
    const auto& faces = k.faces_of_dimension(d);
    c.ranks.push_back(faces.size());
    SparseMatrix m;
    m.rows = faces.size();
    m.cols = d == 0 ? 1 : k.count_of_dimension(d - 1);
    m.entries.resize(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (d == 0) {
        m.entries[f].emplace_back(0, 1);
        continue;
      }
      for (std::size_t i = 0; i < faces[f].size(); ++i) {
        Face smaller = faces[f];
        smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
        m.entries[f].emplace_back(*k.position(smaller), i % 2 == 0 ? 1 : -1);
      }
      std::sort(m.entries[f].begin(), m.entries[f].end());
    }
    c.boundary.push_back(std::move(m));
  }
  return c;
}

/// ∂_{k-1} ∘ ∂_k = 0 for every k, augmentation included.
inline bool boundary_squared_zero(const ChainComplex& c) {
  for (int d = 1; d <= c.dimension; ++d) {
    const auto& upper = c.boundary[static_cast<std::size_t>(d)];
    const auto& lower = c.boundary[static_cast<std::size_t>(d - 1)];
    for (const auto& row : upper.entries) {
      std::map<Index, std::int64_t> sum;
      for (auto [mid, a] : row)
        for (auto [low, b] : lower.entries[mid]) sum[low] += a * b;
      for (const auto& [col, v] : sum)
        if (v != 0) return false;
    }
  }
  return true;
}

/// Reduced integral homology. `betti` has an entry for every degree from -1
/// to the dimension; `torsion` lists only degrees with invariant factors > 1.
struct HomologyReport {
  std::map<int, long long> betti;
  std::map<int, std::vector<BigInt>> torsion;

  long long betti_at(int k) const {
    auto it = betti.find(k);
    return it == betti.end() ? 0 : it->second;
  }
  bool torsion_free() const { return torsion.empty(); }

  friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

inline HomologyReport homology(const ChainComplex& c) {
  std::vector<SmithSummary> snf;
  for (const auto& m : c.boundary) snf.push_back(smith_summary(m));
  auto rank = [&](int k) -> long long {
    if (k < 0 || k > c.dimension) return 0;
    return static_cast<long long>(snf[static_cast<std::size_t>(k)].rank);
  };
  HomologyReport r;
  for (int k = -1; k <= std::max(c.dimension, -1); ++k) {
    r.betti[k] = static_cast<long long>(c.cells(k)) - rank(k) - rank(k + 1);
    if (k + 1 <= c.dimension && k + 1 >= 0) {
      const auto& t = snf[static_cast<std::size_t>(k + 1)].torsion;
      if (!t.empty()) r.torsion[k] = t;
    }
  }
  return r;
}

inline HomologyReport homology(const SimplicialComplex& k, const Limits& limits = {}) {
  if (k.face_count() > limits.max_faces)
    throw Error(ErrorKind::TooLarge, "complex has " + std::to_string(k.face_count()) + " faces, limit " +
                                         std::to_string(limits.max_faces));
  return homology(chain_complex(k));
}

/// Homology of the realization of a poset, through its order complex.
inline HomologyReport poset_homology(const Poset& p, const Limits& limits = {}) {
  return homology(order_complex(p, limits), limits);
}

/// Cellular chains of a simplicial poset, one cell per element. Each lower
/// interval is Boolean, so a cover τ ⋖ σ drops exactly one vertex of σ; the
/// sign is (-1)^(position of that vertex among σ's vertices, by index).
inline ChainComplex chain_complex(const SimplicialPoset& sp) {
  const Poset& p = sp.poset();
  ChainComplex c;
  c.dimension = sp.dimension();
  const auto atoms = sp.vertices();
  std::vector<std::vector<Index>> by_dim(static_cast<std::size_t>(c.dimension + 1));
  std::vector<std::size_t> slot(p.size());
  for (Index i = 0; i < p.size(); ++i) {
    auto& bucket = by_dim[static_cast<std::size_t>(sp.dimension(i))];
    slot[i] = bucket.size();
    bucket.push_back(i);
  }
  auto vertices_below = [&](Index i) {
    std::vector<Index> out;
    for (Index a : atoms)
      if (p.leq(a, i)) out.push_back(a);
    return out;
  };
  for (int d = 0; d <= c.dimension; ++d) {
    const auto& cells = by_dim[static_cast<std::size_t>(d)];
    c.ranks.push_back(cells.size());
    SparseMatrix m;
    m.rows = cells.size();
    m.cols = d == 0 ? 1 : by_dim[static_cast<std::size_t>(d - 1)].size();
    m.entries.resize(cells.size());
    for (std::size_t f = 0; f < cells.size(); ++f) {
      if (d == 0) {
        m.entries[f].emplace_back(0, 1);
        continue;
      }
      const auto mine = vertices_below(cells[f]);
      for (Index lower : p.lower_covers(cells[f])) {
        std::size_t pos = 0;
        while (pos < mine.size() && p.leq(mine[pos], lower)) ++pos;
        m.entries[f].emplace_back(slot[lower], pos % 2 == 0 ? 1 : -1);
      }
      std::sort(m.entries[f].begin(), m.entries[f].end());
    }
    c.boundary.push_back(std::move(m));
  }
  return c;
}

/// Same answer as `poset_homology(sp.poset())`, without subdividing.
inline HomologyReport homology(const SimplicialPoset& sp, const Limits& limits = {}) {
  if (sp.size() > limits.max_faces)
    throw Error(ErrorKind::TooLarge, "simplicial poset has " + std::to_string(sp.size()) + " cells, limit " +
                                         std::to_string(limits.max_faces));
  return homology(chain_complex(sp));
}

/// χ̃ = -1 + Σ_k (-1)^k f_k; -1 for the empty complex.
inline long long euler_characteristic(const SimplicialComplex& k) {
  long long chi = -1;
  for (int d = 0; d <= k.dimension(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(k.count_of_dimension(d));
  return chi;
}

/// χ̃ from the cell counts of a simplicial poset.
inline long long euler_characteristic(const SimplicialPoset& sp) {
  long long chi = -1;
  for (Index i = 0; i < sp.size(); ++i) chi += sp.dimension(i) % 2 == 0 ? 1 : -1;
  return chi;
}

/// Σ_{k ≥ -1} (-1)^k β̃_k, which equals the reduced Euler characteristic.
inline long long alternating_betti_sum(const HomologyReport& r) {
  long long sum = 0;
  for (const auto& [k, b] : r.betti) sum += ((k % 2 + 2) % 2 == 0 ? 1 : -1) * b;
  return sum;
}

struct WedgeCertificate {
  int dimension = 0;
  long long count = 0;
  bool passed = false;
  std::optional<std::string> failure_reason;
};

/// Homology-level check for "wedge of d-spheres". d = -1 stands for the empty
/// space (β̃_{-1} = 1), which shows up as the link of a facet.
inline WedgeCertificate wedge_certificate(const HomologyReport& r, int d) {
  WedgeCertificate cert;
  cert.dimension = d;
  cert.count = r.betti_at(d);
  if (d < -1) {
    cert.failure_reason = "degree below -1";
    return cert;
  }
  if (!r.torsion.empty()) {
    cert.failure_reason = "torsion in degree " + std::to_string(r.torsion.begin()->first);
    return cert;
  }
  for (const auto& [k, b] : r.betti) {
    if (k != d && b != 0) {
      cert.failure_reason = "betti(" + std::to_string(k) + ") = " + std::to_string(b) + " outside degree " +
                            std::to_string(d);
      return cert;
    }
  }
  cert.passed = true;
  return cert;
}

struct CMFailure {
  std::string element;  // empty when the whole poset failed
  int expected_degree = 0;
  std::string reason;
};

struct CMVerdict {
  bool cohen_macaulay = false;
  int dimension = -1;
  bool pure = false;
  WedgeCertificate whole;
  std::optional<CMFailure> failure;
};

/// Homological Cohen–Macaulay test: pure, the whole poset and every link are
/// homology wedges of spheres of the complementary dimension.
inline CMVerdict cm_check(const SimplicialPoset& p, const Limits& limits = {}) {
  CMVerdict v;
  v.dimension = p.dimension();
  v.pure = p.is_pure();
  if (!v.pure) {
    v.failure = CMFailure{"", v.dimension, "not pure"};
    return v;
  }
  v.whole = wedge_certificate(homology(p, limits), v.dimension);
  if (!v.whole.passed) {
    v.failure = CMFailure{"", v.dimension, *v.whole.failure_reason};
    return v;
  }
  for (Index i = 0; i < p.size(); ++i) {
    const int expected = v.dimension - 1 - p.dimension(i);
    auto cert = wedge_certificate(homology(link(p, i), limits), expected);
    if (!cert.passed) {
      v.failure = CMFailure{p.poset().name(i), expected, *cert.failure_reason};
      return v;
    }
  }
  v.cohen_macaulay = true;
  return v;
}

}  // namespace inflate_kit
