#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inflate_kit/error.hpp"

namespace inflate_kit {

using Index = std::size_t;

/// A face is a sorted list of vertex indices.
using Face = std::vector<Index>;

/// Finite abstract simplicial complex. Faces are stored grouped by dimension,
/// each group sorted lexicographically; vertex indices refer to `vertices()`.
/// A listed vertex that lies in no face is allowed and simply not a face.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Closure of the given facets. Facet entries are vertex names.
  static SimplicialComplex from_facets(std::vector<std::string> vertices,
                                       const std::vector<std::vector<std::string>>& facets) {
    check_distinct(vertices);
    std::map<std::string, Index, std::less<>> lookup;
    for (Index i = 0; i < vertices.size(); ++i) lookup.emplace(vertices[i], i);
    std::vector<Face> index_facets;
    index_facets.reserve(facets.size());
    for (const auto& facet : facets) {
      Face face;
      for (const auto& name : facet) {
        auto it = lookup.find(name);
        if (it == lookup.end())
          throw Error(ErrorKind::UnknownElement, "facet mentions unlisted vertex '" + name + "'");
        face.push_back(it->second);
      }
      index_facets.push_back(std::move(face));
    }
    return from_index_facets(std::move(vertices), std::move(index_facets));
  }

  static SimplicialComplex from_index_facets(std::vector<std::string> vertices, std::vector<Face> facets,
                                             std::size_t face_limit = static_cast<std::size_t>(-1)) {
    std::vector<Face> faces;
    for (auto& facet : facets) {
      std::sort(facet.begin(), facet.end());
      if (std::adjacent_find(facet.begin(), facet.end()) != facet.end())
        throw Error(ErrorKind::InvariantViolation, "facet repeats a vertex");
      if (facet.empty()) continue;
      for (Index v : facet)
        if (v >= vertices.size()) throw Error(ErrorKind::UnknownElement, "facet vertex index out of range");
      if (facet.size() >= 31) throw Error(ErrorKind::TooLarge, "facet dimension too large to close");
      const std::size_t subsets = (std::size_t{1} << facet.size()) - 1;
      for (std::size_t mask = 1; mask <= subsets; ++mask) {
        Face face;
        for (std::size_t bit = 0; bit < facet.size(); ++bit)
          if (mask & (std::size_t{1} << bit)) face.push_back(facet[bit]);
        faces.push_back(std::move(face));
      }
      if (faces.size() > face_limit * 4 + 1024) dedupe(faces);
      if (faces.size() > face_limit)
        throw Error(ErrorKind::TooLarge, "complex exceeds " + std::to_string(face_limit) + " faces");
    }
    return from_faces_unchecked(std::move(vertices), std::move(faces), face_limit);
  }

  /// Builds from a family that is already closed under nonempty subsets;
  /// each face must be sorted.
  static SimplicialComplex from_faces_unchecked(std::vector<std::string> vertices, std::vector<Face> faces,
                                                std::size_t face_limit = static_cast<std::size_t>(-1)) {
    SimplicialComplex k;
    k.vertices_ = std::move(vertices);
    dedupe(faces);
    if (faces.size() > face_limit)
      throw Error(ErrorKind::TooLarge, "complex exceeds " + std::to_string(face_limit) + " faces");
    for (auto& face : faces) {
      const std::size_t dim = face.size() - 1;
      if (k.by_dim_.size() <= dim) k.by_dim_.resize(dim + 1);
      k.by_dim_[dim].push_back(std::move(face));
    }
    for (auto& group : k.by_dim_) std::sort(group.begin(), group.end());
    return k;
  }

  const std::vector<std::string>& vertices() const { return vertices_; }

  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

  const std::vector<Face>& faces_of_dimension(int k) const {
    static const std::vector<Face> none;
    if (k < 0 || k > dimension()) return none;
    return by_dim_[static_cast<std::size_t>(k)];
  }

  std::size_t face_count() const {
    std::size_t total = 0;
    for (const auto& group : by_dim_) total += group.size();
    return total;
  }

  std::size_t count_of_dimension(int k) const { return faces_of_dimension(k).size(); }

  /// All faces, ordered by size then lexicographically.
  std::vector<Face> faces() const {
    std::vector<Face> all;
    for (const auto& group : by_dim_) all.insert(all.end(), group.begin(), group.end());
    return all;
  }

  bool contains(std::span<const Index> face) const {
    if (face.empty()) return false;
    const auto& group = faces_of_dimension(static_cast<int>(face.size()) - 1);
    Face key(face.begin(), face.end());
    return std::binary_search(group.begin(), group.end(), key);
  }

  /// Position of the face inside its dimension group.
  std::optional<std::size_t> position(std::span<const Index> face) const {
    if (face.empty()) return std::nullopt;
    const auto& group = faces_of_dimension(static_cast<int>(face.size()) - 1);
    Face key(face.begin(), face.end());
    auto it = std::lower_bound(group.begin(), group.end(), key);
    if (it == group.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - group.begin());
  }

  /// Maximal faces, ordered by size then lexicographically.
  std::vector<Face> facets() const {
    std::vector<Face> result;
    for (int k = 0; k <= dimension(); ++k) {
      for (const auto& face : faces_of_dimension(k)) {
        bool maximal = true;
        if (k < dimension()) {
          for (const auto& bigger : faces_of_dimension(k + 1)) {
            if (std::includes(bigger.begin(), bigger.end(), face.begin(), face.end())) {
              maximal = false;
              break;
            }
          }
        }
        if (maximal) result.push_back(face);
      }
    }
    return result;
  }

  /// Vertices (as indices) occurring in some face.
  std::vector<Index> used_vertices() const {
    std::vector<Index> used;
    for (const auto& face : faces_of_dimension(0)) used.push_back(face.front());
    return used;
  }

  std::string face_name(std::span<const Index> face) const {
    std::string out = "{";
    for (std::size_t i = 0; i < face.size(); ++i) {
      if (i) out += ',';
      out += vertices_[face[i]];
    }
    return out + "}";
  }

  std::optional<Index> find_vertex(std::string_view name) const {
    for (Index i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] == name) return i;
    return std::nullopt;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertices_ == b.vertices_ && a.by_dim_ == b.by_dim_;
  }

 private:
  static void dedupe(std::vector<Face>& faces) {
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  }

  static void check_distinct(const std::vector<std::string>& vertices) {
    std::vector<std::string> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw Error(ErrorKind::InvariantViolation, "duplicate vertex '" + *dup + "'");
  }

  std::vector<std::string> vertices_;
  std::vector<std::vector<Face>> by_dim_;
};

/// Vertex names "1".."n".
inline std::vector<std::string> numbered_vertices(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return names;
}

/// The full simplex on vertices 1..n (dimension n-1).
inline SimplicialComplex simplex_complex(std::size_t n) {
  Face all(n);
  for (Index i = 0; i < n; ++i) all[i] = i;
  return SimplicialComplex::from_index_facets(numbered_vertices(n), {all});
}

/// Boundary of the (n-1)-simplex: every proper nonempty subset of [n].
inline SimplicialComplex simplex_boundary(std::size_t n) {
  std::vector<Face> facets;
  for (Index skip = 0; skip < n; ++skip) {
    Face f;
    for (Index i = 0; i < n; ++i)
      if (i != skip) f.push_back(i);
    facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_index_facets(numbered_vertices(n), std::move(facets));
}

}  // namespace inflate_kit
