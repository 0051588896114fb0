#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "inflate_kit/complex.hpp"
#include "inflate_kit/error.hpp"
#include "inflate_kit/poset.hpp"
#include "inflate_kit/sheaf.hpp"

namespace inflate_kit {

namespace detail {

/// Why `p` is not a geometric simplicial poset, or nullopt if it is. Writes
/// the rank (number of atoms below) of every element into `rank`.
inline std::optional<std::string> simplicial_violation(const Poset& p, std::vector<int>& rank) {
  rank.assign(p.size(), 0);
  const auto atoms = p.minimal_elements();
  for (Index top = 0; top < p.size(); ++top) {
    std::vector<Index> cone_atoms;
    for (Index a : atoms)
      if (p.leq(a, top)) cone_atoms.push_back(a);
    const std::size_t r = cone_atoms.size();
    if (r >= 31) return "lower cone of " + p.name(top) + " is too large";
    std::vector<Index> cone = down_set(p, top);
    if (cone.size() != (std::size_t{1} << r) - 1)
      return "lower cone of " + p.name(top) + " has " + std::to_string(cone.size()) + " elements, expected " +
             std::to_string((std::size_t{1} << r) - 1);
    // Each cone element is identified by the atoms below it.
    std::map<std::size_t, Index> seen;
    std::vector<std::size_t> code(cone.size(), 0);
    for (std::size_t i = 0; i < cone.size(); ++i) {
      for (std::size_t k = 0; k < r; ++k)
        if (p.leq(cone_atoms[k], cone[i])) code[i] |= std::size_t{1} << k;
      if (code[i] == 0 || !seen.emplace(code[i], cone[i]).second)
        return "lower cone of " + p.name(top) + " is not Boolean (at " + p.name(cone[i]) + ")";
    }
    for (std::size_t i = 0; i < cone.size(); ++i)
      for (std::size_t j = 0; j < cone.size(); ++j)
        if (p.leq(cone[i], cone[j]) != ((code[i] & code[j]) == code[i]))
          return "lower cone of " + p.name(top) + " is not Boolean (" + p.name(cone[i]) + ", " + p.name(cone[j]) + ")";
    rank[top] = static_cast<int>(r);
  }
  return std::nullopt;
}

}  // namespace detail

/// Geometric simplicial poset: every lower cone is a Boolean lattice with its
/// bottom removed. rank(I) is the number of vertices of I; dim(I) = rank - 1.
class SimplicialPoset {
 public:
  SimplicialPoset() = default;

  static SimplicialPoset from_poset(Poset p) {
    SimplicialPoset sp;
    if (auto why = detail::simplicial_violation(p, sp.rank_)) throw Error(ErrorKind::NotSimplicial, *why);
    sp.poset_ = std::move(p);
    return sp;
  }

  static bool is_simplicial(const Poset& p) {
    std::vector<int> rank;
    return !detail::simplicial_violation(p, rank).has_value();
  }

  const Poset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  int rank(Index i) const { return rank_.at(i); }
  int dimension(Index i) const { return rank_.at(i) - 1; }

  /// -1 when empty.
  int dimension() const {
    int d = -1;
    for (int r : rank_) d = std::max(d, r - 1);
    return d;
  }

  bool is_pure() const {
    const int d = dimension();
    for (Index f : poset_.maximal_elements())
      if (dimension(f) != d) return false;
    return true;
  }

  std::vector<Index> facets() const { return poset_.maximal_elements(); }
  std::vector<Index> vertices() const { return poset_.minimal_elements(); }

  bool is_connected() const { return connected_components(poset_).size() <= 1; }

 private:
  Poset poset_;
  std::vector<int> rank_;
};

/// Nonempty faces ordered by inclusion, named by `SimplicialComplex::face_name`.
inline SimplicialPoset face_poset(const SimplicialComplex& k) {
  std::vector<std::string> names;
  std::vector<std::pair<Index, Index>> relations;
  std::map<Face, Index> index;
  for (const auto& face : k.faces()) {
    index.emplace(face, names.size());
    names.push_back(k.face_name(face));
  }
  for (const auto& [face, id] : index) {
    if (face.size() < 2) continue;
    for (std::size_t drop = 0; drop < face.size(); ++drop) {
      Face smaller = face;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
      relations.emplace_back(index.at(smaller), id);
    }
  }
  return SimplicialPoset::from_poset(Poset::from_relations(std::move(names), relations));
}

/// P_{>I} with ranks counted from the covers of I.
inline SimplicialPoset link(const SimplicialPoset& p, Index i) {
  if (i >= p.size()) throw Error(ErrorKind::UnknownElement, "simplex index out of range");
  return SimplicialPoset::from_poset(p.poset().induced(p.poset().strictly_above(i)));
}

inline SimplicialPoset link(const SimplicialPoset& p, std::string_view name) {
  return link(p, p.poset().index_of(name));
}

/// K(I) on vertices 1..n: nonempty subsets of [n] that do not contain I.
/// `forbidden` holds 1-based vertex numbers.
inline SimplicialComplex forbidden_subcomplex(std::size_t n, const std::vector<std::size_t>& forbidden) {
  if (forbidden.empty()) throw Error(ErrorKind::EmptySimplex, "K(I) needs a nonempty simplex I");
  if (n >= 31) throw Error(ErrorKind::TooLarge, "simplex too large");
  std::size_t mask_i = 0;
  for (std::size_t v : forbidden) {
    if (v < 1 || v > n) throw Error(ErrorKind::UnknownElement, "vertex " + std::to_string(v) + " is not in [n]");
    mask_i |= std::size_t{1} << (v - 1);
  }
  std::vector<Face> faces;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    if ((mask & mask_i) == mask_i) continue;
    Face face;
    for (Index v = 0; v < n; ++v)
      if (mask & (std::size_t{1} << v)) face.push_back(v);
    faces.push_back(std::move(face));
  }
  return SimplicialComplex::from_faces_unchecked(numbered_vertices(n), std::move(faces));
}

/// A factor of a product diagram: `size` labelled copies attached to the
/// simplex `simplex`; every simplex above it carries the factor.
struct ProductFactor {
  Index simplex;
  std::string tag;
  int size;
};

/// Diagram on the dual of `p` whose stalk at I is the product of the factors
/// attached to faces of I, with projections as structure maps. Stalk
/// elements render as "(tag:copy,...)" in factor order.
inline Diagram product_diagram(const SimplicialPoset& p, const std::vector<ProductFactor>& factors) {
  const Poset& base = p.poset();
  const Poset dual = base.dual();
  std::vector<std::vector<std::size_t>> carried(base.size());
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (factors[f].size < 1) throw Error(ErrorKind::NonPositiveCount, "factor '" + factors[f].tag + "' is empty");
    for (Index i = 0; i < base.size(); ++i)
      if (base.leq(factors[f].simplex, i)) carried[i].push_back(f);
  }
  std::vector<std::vector<std::vector<int>>> tuples(base.size());
  std::vector<std::vector<std::string>> stalks(base.size());
  std::vector<std::map<std::vector<int>, Index>> lookup(base.size());
  for (Index i = 0; i < base.size(); ++i) {
    std::vector<int> tuple(carried[i].size(), 0);
    while (true) {
      std::string name = "(";
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        if (k) name += ',';
        name += factors[carried[i][k]].tag + ":" + std::to_string(tuple[k]);
      }
      lookup[i].emplace(tuple, stalks[i].size());
      stalks[i].push_back(name + ")");
      tuples[i].push_back(tuple);
      std::size_t k = 0;
      while (k < tuple.size() && ++tuple[k] == factors[carried[i][k]].size) tuple[k++] = 0;
      if (k == tuple.size()) break;
    }
  }
  std::map<std::pair<Index, Index>, std::vector<Index>> maps;
  for (auto [big, small] : dual.covers()) {
    std::vector<Index> table;
    for (const auto& tuple : tuples[big]) {
      std::vector<int> projected;
      for (std::size_t k = 0; k < carried[big].size(); ++k)
        if (base.leq(factors[carried[big][k]].simplex, small)) projected.push_back(tuple[k]);
      table.push_back(lookup[small].at(projected));
    }
    maps.emplace(std::pair{big, small}, std::move(table));
  }
  return Diagram::from_indices(dual, std::move(stalks), maps);
}

/// Vertex inflation: stalk at I is the product of N_i over vertices i of I.
inline Diagram vertex_inflation_diagram(const SimplicialComplex& k, const std::map<std::string, int>& counts) {
  SimplicialPoset p = face_poset(k);
  std::vector<ProductFactor> factors;
  for (Index v : k.used_vertices()) {
    const auto& name = k.vertices()[v];
    auto it = counts.find(name);
    if (it == counts.end()) throw Error(ErrorKind::MissingCount, "no count for vertex '" + name + "'");
    if (it->second < 1) throw Error(ErrorKind::NonPositiveCount, "count for vertex '" + name + "' must be positive");
    factors.push_back({p.poset().index_of(k.face_name(Face{v})), name, it->second});
  }
  return product_diagram(p, factors);
}

/// Counts given in the complex's vertex order.
inline Diagram vertex_inflation_diagram(const SimplicialComplex& k, const std::vector<int>& counts) {
  if (counts.size() != k.vertices().size())
    throw Error(ErrorKind::MissingCount, "expected " + std::to_string(k.vertices().size()) + " counts, got " +
                                             std::to_string(counts.size()));
  std::map<std::string, int> named;
  for (Index v = 0; v < counts.size(); ++v) named[k.vertices()[v]] = counts[v];
  return vertex_inflation_diagram(k, named);
}

/// Simple graph with edge multiplicities. No loops; each pair listed once.
struct Multigraph {
  struct Edge {
    std::string u;
    std::string v;
    int multiplicity = 1;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  static Multigraph build(std::vector<std::string> vertices, std::vector<Edge> edges) {
    std::set<std::string> names(vertices.begin(), vertices.end());
    if (names.size() != vertices.size()) throw Error(ErrorKind::InvariantViolation, "duplicate vertex");
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& e : edges) {
      if (!names.count(e.u) || !names.count(e.v))
        throw Error(ErrorKind::UnknownElement, "edge " + e.u + "-" + e.v + " uses an unlisted vertex");
      if (e.u == e.v) throw Error(ErrorKind::InvariantViolation, "loop at vertex '" + e.u + "'");
      if (e.multiplicity < 1)
        throw Error(ErrorKind::NonPositiveCount, "edge " + e.u + "-" + e.v + " has multiplicity < 1");
      if (!pairs.insert(std::minmax(e.u, e.v)).second)
        throw Error(ErrorKind::InvariantViolation, "edge " + e.u + "-" + e.v + " listed twice");
    }
    return Multigraph{std::move(vertices), std::move(edges)};
  }
};

struct MulticliqueData {
  SimplicialComplex clique_complex;  // of the underlying simple graph
  Diagram diagram;                   // on the dual of its face poset
};

/// Clique complex of the simple graph plus the edge-product diagram whose
/// inflation is the multiclique complex.
inline MulticliqueData multiclique_diagram(const Multigraph& g) {
  const std::size_t n = g.vertices.size();
  std::map<std::string, Index> index;
  for (Index i = 0; i < n; ++i) index.emplace(g.vertices[i], i);
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges) adjacent[index.at(e.u)][index.at(e.v)] = adjacent[index.at(e.v)][index.at(e.u)] = 1;

  std::vector<Face> cliques;
  std::vector<Index> current;
  std::function<void(Index)> grow = [&](Index from) {
    for (Index v = from; v < n; ++v) {
      bool ok = true;
      for (Index u : current)
        if (!adjacent[u][v]) ok = false;
      if (!ok) continue;
      current.push_back(v);
      cliques.push_back(current);
      grow(v + 1);
      current.pop_back();
    }
  };
  grow(0);
  SimplicialComplex complex = SimplicialComplex::from_faces_unchecked(g.vertices, std::move(cliques));
  SimplicialPoset p = face_poset(complex);

  std::vector<ProductFactor> factors;
  std::vector<std::pair<Face, ProductFactor>> ordered;
  for (const auto& e : g.edges) {
    Face f{index.at(e.u), index.at(e.v)};
    std::sort(f.begin(), f.end());
    const std::string tag = g.vertices[f[0]] + "-" + g.vertices[f[1]];
    ordered.push_back({f, ProductFactor{p.poset().index_of(complex.face_name(f)), tag, e.multiplicity}});
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [face, factor] : ordered) factors.push_back(std::move(factor));
  return {std::move(complex), product_diagram(p, factors)};
}

/// Vertex map between complexes, validated to be simplicial. The
/// nondegenerate and surjective properties are reported, not required.
class SimplicialMap {
 public:
  static SimplicialMap build(SimplicialComplex source, SimplicialComplex target,
                             const std::map<std::string, std::string>& vertex_map) {
    std::vector<Index> image(source.vertices().size());
    for (Index v = 0; v < image.size(); ++v) {
      auto it = vertex_map.find(source.vertices()[v]);
      if (it == vertex_map.end())
        throw Error(ErrorKind::UnknownElement, "vertex map misses '" + source.vertices()[v] + "'");
      auto w = target.find_vertex(it->second);
      if (!w) throw Error(ErrorKind::UnknownElement, "vertex map sends to unknown vertex '" + it->second + "'");
      image[v] = *w;
    }
    return from_indices(std::move(source), std::move(target), std::move(image));
  }

  static SimplicialMap from_indices(SimplicialComplex source, SimplicialComplex target, std::vector<Index> image) {
    SimplicialMap f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.image_ = std::move(image);
    for (const auto& face : f.source_.faces()) {
      Face img = f.image_of(face);
      if (!f.target_.contains(img))
        throw Error(ErrorKind::InvariantViolation, "image of " + f.source_.face_name(face) + " is not a face");
    }
    return f;
  }

  const SimplicialComplex& source() const { return source_; }
  const SimplicialComplex& target() const { return target_; }
  const std::vector<Index>& vertex_image() const { return image_; }

  Face image_of(const Face& face) const {
    Face img;
    for (Index v : face) img.push_back(image_.at(v));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
  }

  /// A face whose image has fewer vertices, if any.
  std::optional<Face> degenerate_face() const {
    for (const auto& face : source_.faces())
      if (image_of(face).size() != face.size()) return face;
    return std::nullopt;
  }

  /// A target face that is not the image of any source face, if any.
  std::optional<Face> missed_face() const {
    std::set<Face> hit;
    for (const auto& face : source_.faces()) hit.insert(image_of(face));
    for (const auto& face : target_.faces())
      if (!hit.count(face)) return face;
    return std::nullopt;
  }

  std::map<std::string, std::string> named() const {
    std::map<std::string, std::string> out;
    for (Index v = 0; v < image_.size(); ++v) out[source_.vertices()[v]] = target_.vertices()[image_[v]];
    return out;
  }

 private:
  SimplicialComplex source_;
  SimplicialComplex target_;
  std::vector<Index> image_;
};

/// D_f on the dual of the target's face poset: the stalk at I lists the source
/// faces mapped onto I (by their face names); I <= J sends a face over J to
/// its unique face over I.
inline Diagram diagram_from_map(const SimplicialMap& f) {
  if (auto bad = f.degenerate_face())
    throw Error(ErrorKind::DegenerateMap, "face " + f.source().face_name(*bad) + " collapses");
  if (auto missed = f.missed_face())
    throw Error(ErrorKind::NotSurjective, "face " + f.target().face_name(*missed) + " has an empty preimage");
  SimplicialPoset p = face_poset(f.target());
  const Poset& base = p.poset();
  const Poset dual = base.dual();
  std::vector<std::vector<std::string>> stalks(base.size());
  std::vector<std::vector<Face>> members(base.size());
  for (const auto& face : f.source().faces()) {
    const Index over = base.index_of(f.target().face_name(f.image_of(face)));
    members[over].push_back(face);
    stalks[over].push_back(f.source().face_name(face));
  }
  std::map<std::pair<Index, Index>, std::vector<Index>> maps;
  for (auto [big, small] : dual.covers()) {
    // The face named `small` in the target, as vertex indices.
    const Face small_face = f.image_of(members[small].front());
    std::vector<Index> table;
    for (const auto& sigma : members[big]) {
      Face tau;
      for (Index v : sigma)
        if (std::binary_search(small_face.begin(), small_face.end(), f.vertex_image()[v])) tau.push_back(v);
      auto it = std::find(members[small].begin(), members[small].end(), tau);
      if (it == members[small].end())
        throw Error(ErrorKind::InvariantViolation, "no face of " + f.source().face_name(sigma) + " lies over " +
                                                       base.name(small));
      table.push_back(static_cast<Index>(it - members[small].begin()));
    }
    maps.emplace(std::pair{big, small}, std::move(table));
  }
  return Diagram::from_indices(dual, std::move(stalks), maps);
}

}  // namespace inflate_kit
