#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inflate_kit/complex.hpp"
#include "inflate_kit/error.hpp"

namespace inflate_kit {

/// Finite partial order. Elements are opaque strings kept in lexicographic
/// order, so an element's index doubles as its canonical rank. Values are
/// immutable and cheap to copy.
class Poset {
 public:
  Poset() : data_(std::make_shared<Data>()) {}

  /// Validates and reduces a cover list. `covers` entries (a, b) mean a < b.
  /// Redundant pairs are dropped and flagged by `redundant_covers_dropped()`.
  static Poset build(std::vector<std::string> elements,
                     const std::vector<std::pair<std::string, std::string>>& covers) {
    std::map<std::string, Index, std::less<>> lookup;
    for (Index i = 0; i < elements.size(); ++i) {
      if (!lookup.emplace(elements[i], i).second)
        throw Error(ErrorKind::InvariantViolation, "duplicate element '" + elements[i] + "'");
    }
    std::vector<std::pair<Index, Index>> relations;
    relations.reserve(covers.size());
    for (const auto& [lo, hi] : covers) {
      auto a = lookup.find(lo);
      if (a == lookup.end()) throw Error(ErrorKind::UnknownElement, "cover mentions unlisted element '" + lo + "'");
      auto b = lookup.find(hi);
      if (b == lookup.end()) throw Error(ErrorKind::UnknownElement, "cover mentions unlisted element '" + hi + "'");
      relations.emplace_back(a->second, b->second);
    }
    return from_relations(std::move(elements), relations);
  }

  /// Like `build`, with relations given as indices into `elements`. The
  /// relations may be any generating set of the order.
  static Poset from_relations(std::vector<std::string> elements,
                              const std::vector<std::pair<Index, Index>>& relations) {
    return assemble(std::move(elements), relations, true);
  }

  /// Builds the order on `elements` given by a comparison predicate
  /// `less(i, j)` (strict, already transitive).
  template <class Less>
  static Poset from_order(std::vector<std::string> elements, Less less) {
    std::vector<std::pair<Index, Index>> relations;
    for (Index i = 0; i < elements.size(); ++i)
      for (Index j = 0; j < elements.size(); ++j)
        if (i != j && less(i, j)) relations.emplace_back(i, j);
    return assemble(std::move(elements), relations, false);
  }

  std::size_t size() const { return data_->names.size(); }
  bool empty() const { return data_->names.empty(); }
  const std::vector<std::string>& elements() const { return data_->names; }
  const std::string& name(Index i) const { return data_->names.at(i); }

  std::optional<Index> find(std::string_view name) const {
    const auto& names = data_->names;
    auto it = std::lower_bound(names.begin(), names.end(), name,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == names.end() || *it != name) return std::nullopt;
    return static_cast<Index>(it - names.begin());
  }

  Index index_of(std::string_view name) const {
    auto found = find(name);
    if (!found) throw Error(ErrorKind::UnknownElement, "no element '" + std::string(name) + "'");
    return *found;
  }

  bool leq(Index a, Index b) const {
    const std::size_t words = data_->words;
    return (data_->up[a * words + b / 64] >> (b % 64)) & 1U;
  }
  bool lt(Index a, Index b) const { return a != b && leq(a, b); }
  bool comparable(Index a, Index b) const { return leq(a, b) || leq(b, a); }

  /// Cover pairs (a, b), a covered by b, sorted.
  const std::vector<std::pair<Index, Index>>& covers() const { return data_->covers; }
  const std::vector<Index>& upper_covers(Index i) const { return data_->upper_covers[i]; }
  const std::vector<Index>& lower_covers(Index i) const { return data_->lower_covers[i]; }
  bool is_cover(Index a, Index b) const {
    return std::binary_search(data_->covers.begin(), data_->covers.end(), std::pair{a, b});
  }

  /// Set when the input contained pairs implied by others (or duplicates).
  bool redundant_covers_dropped() const { return data_->dropped; }

  /// Elements bottom-up; ties broken by index.
  const std::vector<Index>& linear_extension() const { return data_->topo; }

  std::vector<Index> strictly_above(Index i) const {
    std::vector<Index> out;
    for (Index j = 0; j < size(); ++j)
      if (lt(i, j)) out.push_back(j);
    return out;
  }
  std::vector<Index> strictly_below(Index i) const {
    std::vector<Index> out;
    for (Index j = 0; j < size(); ++j)
      if (lt(j, i)) out.push_back(j);
    return out;
  }

  std::vector<Index> minimal_elements() const {
    std::vector<Index> out;
    for (Index i = 0; i < size(); ++i)
      if (lower_covers(i).empty()) out.push_back(i);
    return out;
  }
  std::vector<Index> maximal_elements() const {
    std::vector<Index> out;
    for (Index i = 0; i < size(); ++i)
      if (upper_covers(i).empty()) out.push_back(i);
    return out;
  }

  Poset dual() const {
    auto data = std::make_shared<Data>();
    data->names = data_->names;
    std::vector<std::pair<Index, Index>> edges;
    edges.reserve(data_->covers.size());
    for (auto [a, b] : data_->covers) edges.emplace_back(b, a);
    std::sort(edges.begin(), edges.end());
    data->finish(std::move(edges), false);
    return Poset(std::move(data));
  }

  /// Subposet on `subset` (indices into this poset) with the inherited order.
  Poset induced(std::span<const Index> subset) const {
    std::vector<std::string> names;
    names.reserve(subset.size());
    for (Index i : subset) names.push_back(name(i));
    std::vector<Index> members(subset.begin(), subset.end());
    return from_order(std::move(names), [&](Index a, Index b) { return lt(members[a], members[b]); });
  }

  friend bool operator==(const Poset& a, const Poset& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->names == b.data_->names && a.data_->covers == b.data_->covers;
  }

 private:
  struct Data {
    std::vector<std::string> names;
    std::vector<std::pair<Index, Index>> covers;
    std::vector<std::vector<Index>> upper_covers;
    std::vector<std::vector<Index>> lower_covers;
    std::vector<Index> topo;
    std::vector<std::uint64_t> up;  // row a, bit b: a <= b
    std::size_t words = 0;
    bool dropped = false;

    void finish(std::vector<std::pair<Index, Index>> edges, bool had_duplicates) {
      const std::size_t n = names.size();
      std::vector<std::vector<Index>> out(n);
      std::vector<std::size_t> indegree(n, 0);
      for (auto [a, b] : edges) {
        out[a].push_back(b);
        ++indegree[b];
      }
      // Kahn with a min-heap keeps the linear extension deterministic.
      std::priority_queue<Index, std::vector<Index>, std::greater<>> ready;
      for (Index i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push(i);
      topo.clear();
      while (!ready.empty()) {
        Index v = ready.top();
        ready.pop();
        topo.push_back(v);
        for (Index w : out[v])
          if (--indegree[w] == 0) ready.push(w);
      }
      if (topo.size() != n) throw Error(ErrorKind::CycleDetected, describe_cycle(out, indegree));

      words = (n + 63) / 64;
      up.assign(n * words, 0);
      for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        const Index v = *it;
        std::uint64_t* row = &up[v * words];
        row[v / 64] |= std::uint64_t{1} << (v % 64);
        for (Index w : out[v]) {
          const std::uint64_t* other = &up[w * words];
          for (std::size_t k = 0; k < words; ++k) row[k] |= other[k];
        }
      }

      covers.clear();
      bool reduced = false;
      for (auto [a, b] : edges) {
        bool between = false;
        for (Index c : out[a]) {
          if (c != b && (up[c * words + b / 64] >> (b % 64) & 1U)) {
            between = true;
            break;
          }
        }
        if (between)
          reduced = true;
        else
          covers.emplace_back(a, b);
      }
      dropped = had_duplicates || reduced;
      upper_covers.assign(n, {});
      lower_covers.assign(n, {});
      for (auto [a, b] : covers) {
        upper_covers[a].push_back(b);
        lower_covers[b].push_back(a);
      }
    }

    // Every element left over by Kahn's algorithm still has an unprocessed
    // predecessor, so walking predecessors must close a cycle.
    std::string describe_cycle(const std::vector<std::vector<Index>>& out,
                               const std::vector<std::size_t>& indegree) const {
      const std::size_t n = names.size();
      std::vector<std::vector<Index>> in(n);
      for (Index v = 0; v < n; ++v)
        for (Index w : out[v]) in[w].push_back(v);
      Index start = 0;
      while (start < n && indegree[start] == 0) ++start;
      std::vector<int> seen(n, -1);
      std::vector<Index> path;
      Index v = start;
      while (seen[v] < 0) {
        seen[v] = static_cast<int>(path.size());
        path.push_back(v);
        for (Index u : in[v]) {
          if (indegree[u] > 0) {
            v = u;
            break;
          }
        }
      }
      std::vector<Index> cycle(path.begin() + seen[v], path.end());
      std::reverse(cycle.begin(), cycle.end());
      std::string text = "cycle ";
      for (Index c : cycle) text += names[c] + " < ";
      return text + names[cycle.front()];
    }
  };

  explicit Poset(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  static Poset assemble(std::vector<std::string> elements, const std::vector<std::pair<Index, Index>>& relations,
                        bool report_dropped) {
    const std::size_t n = elements.size();
    std::vector<Index> perm(n);
    std::iota(perm.begin(), perm.end(), Index{0});
    std::sort(perm.begin(), perm.end(), [&](Index a, Index b) { return elements[a] < elements[b]; });
    std::vector<Index> rank(n);
    for (Index i = 0; i < n; ++i) rank[perm[i]] = i;

    auto data = std::make_shared<Data>();
    data->names.reserve(n);
    for (Index i = 0; i < n; ++i) data->names.push_back(std::move(elements[perm[i]]));
    for (Index i = 1; i < n; ++i)
      if (data->names[i] == data->names[i - 1])
        throw Error(ErrorKind::InvariantViolation, "duplicate element '" + data->names[i] + "'");

    std::vector<std::pair<Index, Index>> edges;
    edges.reserve(relations.size());
    for (auto [a, b] : relations) {
      if (a >= n || b >= n) throw Error(ErrorKind::UnknownElement, "relation index out of range");
      if (a == b) throw Error(ErrorKind::CycleDetected, "element '" + data->names[rank[a]] + "' is below itself");
      edges.emplace_back(rank[a], rank[b]);
    }
    std::sort(edges.begin(), edges.end());
    bool dropped = std::adjacent_find(edges.begin(), edges.end()) != edges.end();
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    data->finish(std::move(edges), dropped);
    if (!report_dropped) data->dropped = false;
    return Poset(std::move(data));
  }

  std::shared_ptr<const Data> data_;
};

/// Upward-closed subset of a fixed poset, stored as sorted indices.
struct OpenSet {
  std::vector<Index> members;

  bool contains(Index i) const { return std::binary_search(members.begin(), members.end(), i); }
  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }

  friend bool operator==(const OpenSet&, const OpenSet&) = default;
  /// Canonical order: size first, then lexicographic.
  friend bool operator<(const OpenSet& a, const OpenSet& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  }
};

inline bool is_upward_closed(const Poset& p, std::span<const Index> subset) {
  std::vector<char> in(p.size(), 0);
  for (Index i : subset) in[i] = 1;
  for (Index i : subset)
    for (Index j : p.upper_covers(i))
      if (!in[j]) return false;
  return true;
}

/// Validates and canonicalises a subset as an open set.
inline OpenSet make_open(const Poset& p, std::vector<Index> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (Index i : subset)
    if (i >= p.size()) throw Error(ErrorKind::UnknownElement, "index out of range");
  if (!is_upward_closed(p, subset)) throw Error(ErrorKind::NotOpen, "subset is not upward closed");
  return OpenSet{std::move(subset)};
}

inline OpenSet make_open(const Poset& p, const std::vector<std::string>& names) {
  std::vector<Index> subset;
  for (const auto& n : names) subset.push_back(p.index_of(n));
  return make_open(p, std::move(subset));
}

inline OpenSet full_open(const Poset& p) {
  OpenSet all;
  all.members.resize(p.size());
  std::iota(all.members.begin(), all.members.end(), Index{0});
  return all;
}

inline OpenSet set_union(const OpenSet& a, const OpenSet& b) {
  OpenSet out;
  std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                 std::back_inserter(out.members));
  return out;
}

inline OpenSet set_intersection(const OpenSet& a, const OpenSet& b) {
  OpenSet out;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(out.members));
  return out;
}

/// Minimal open neighbourhood of s: the upper cone.
inline OpenSet up_set(const Poset& p, Index s) {
  if (s >= p.size()) throw Error(ErrorKind::UnknownElement, "index out of range");
  OpenSet cone;
  for (Index j = 0; j < p.size(); ++j)
    if (p.leq(s, j)) cone.members.push_back(j);
  return cone;
}

inline OpenSet up_set(const Poset& p, std::string_view s) { return up_set(p, p.index_of(s)); }

inline std::vector<Index> down_set(const Poset& p, Index s) {
  std::vector<Index> cone;
  for (Index j = 0; j < p.size(); ++j)
    if (p.leq(j, s)) cone.push_back(j);
  return cone;
}

namespace detail {

/// All upper ideals in canonical order, or TooLarge once `cap` is exceeded.
inline std::vector<OpenSet> upper_ideals(const Poset& p, std::size_t cap) {
  const auto& topo = p.linear_extension();
  std::vector<char> in(p.size(), 0);
  std::vector<OpenSet> result;
  // Walk top-down: an element may join only if all of its upper covers did.
  std::function<void(std::size_t)> walk = [&](std::size_t depth) {
    if (depth == topo.size()) {
      OpenSet u;
      for (Index i = 0; i < p.size(); ++i)
        if (in[i]) u.members.push_back(i);
      result.push_back(std::move(u));
      if (result.size() > cap) throw Error(ErrorKind::TooLarge, "open-set family exceeds " + std::to_string(cap));
      return;
    }
    const Index v = topo[topo.size() - 1 - depth];
    walk(depth + 1);
    bool allowed = true;
    for (Index w : p.upper_covers(v))
      if (!in[w]) allowed = false;
    if (allowed) {
      in[v] = 1;
      walk(depth + 1);
      in[v] = 0;
    }
  };
  walk(0);
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace detail

/// Every open set of the Alexandrov topology, including the empty and the
/// full set, sorted by size then lexicographically.
inline std::vector<OpenSet> enumerate_opens(const Poset& p, const Limits& limits = {}) {
  if (p.size() > limits.max_open_elements)
    throw Error(ErrorKind::TooLarge, "open-set enumeration limited to " + std::to_string(limits.max_open_elements) +
                                         " elements, poset has " + std::to_string(p.size()));
  return detail::upper_ideals(p, static_cast<std::size_t>(-1));
}

/// Order complex: vertices are the elements, faces are the nonempty chains.
/// Chains are stored with vertices sorted by index.
inline SimplicialComplex order_complex(const Poset& p, const Limits& limits = {}) {
  std::vector<std::vector<Index>> above(p.size());
  for (Index i = 0; i < p.size(); ++i) above[i] = p.strictly_above(i);
  std::vector<Face> chains;
  std::vector<Index> chain;
  std::function<void(Index)> extend = [&](Index top) {
    Face face = chain;
    std::sort(face.begin(), face.end());
    chains.push_back(std::move(face));
    if (chains.size() > limits.max_faces)
      throw Error(ErrorKind::TooLarge, "order complex exceeds " + std::to_string(limits.max_faces) + " faces");
    for (Index next : above[top]) {
      chain.push_back(next);
      extend(next);
      chain.pop_back();
    }
  };
  for (Index i = 0; i < p.size(); ++i) {
    chain.assign(1, i);
    extend(i);
  }
  return SimplicialComplex::from_faces_unchecked(p.elements(), std::move(chains), limits.max_faces);
}

/// Monotone map between posets.
class PosetMap {
 public:
  PosetMap() = default;

  static PosetMap from_indices(Poset source, Poset target, std::vector<Index> image) {
    if (image.size() != source.size())
      throw Error(ErrorKind::InvariantViolation, "map must assign every source element");
    for (Index v : image)
      if (v >= target.size()) throw Error(ErrorKind::UnknownElement, "map target index out of range");
    for (auto [a, b] : source.covers()) {
      if (!target.leq(image[a], image[b]))
        throw Error(ErrorKind::InvariantViolation, "map is not monotone on " + source.name(a) + " < " + source.name(b));
    }
    PosetMap f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.image_ = std::move(image);
    return f;
  }

  static PosetMap build(Poset source, Poset target, const std::map<std::string, std::string>& mapping) {
    std::vector<Index> image(source.size());
    for (Index i = 0; i < source.size(); ++i) {
      auto it = mapping.find(source.name(i));
      if (it == mapping.end()) throw Error(ErrorKind::UnknownElement, "map misses element '" + source.name(i) + "'");
      image[i] = target.index_of(it->second);
    }
    return from_indices(std::move(source), std::move(target), std::move(image));
  }

  static PosetMap identity(const Poset& p) {
    std::vector<Index> image(p.size());
    std::iota(image.begin(), image.end(), Index{0});
    return from_indices(p, p, std::move(image));
  }

  /// Inclusion of an induced subposet given by member indices of `target`.
  static PosetMap inclusion(const Poset& target, std::span<const Index> members) {
    Poset sub = target.induced(members);
    std::vector<Index> image(sub.size());
    for (Index i = 0; i < sub.size(); ++i) image[i] = target.index_of(sub.name(i));
    return from_indices(std::move(sub), target, std::move(image));
  }

  const Poset& source() const { return source_; }
  const Poset& target() const { return target_; }
  Index operator()(Index s) const { return image_.at(s); }
  const std::vector<Index>& image() const { return image_; }

  bool is_injective() const {
    std::vector<Index> sorted = image_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  /// Injective and order-reflecting.
  bool is_exact_embedding() const {
    if (!is_injective()) return false;
    for (Index a = 0; a < source_.size(); ++a)
      for (Index b = 0; b < source_.size(); ++b)
        if (target_.leq(image_[a], image_[b]) && !source_.leq(a, b)) return false;
    return true;
  }

  OpenSet preimage(const OpenSet& u) const {
    OpenSet out;
    for (Index s = 0; s < source_.size(); ++s)
      if (u.contains(image_[s])) out.members.push_back(s);
    return out;
  }

 private:
  Poset source_;
  Poset target_;
  std::vector<Index> image_;
};

/// True iff `mapping` (indices of a -> indices of b) is an order isomorphism.
inline bool is_isomorphism(const Poset& a, const Poset& b, std::span<const Index> mapping) {
  if (a.size() != b.size() || mapping.size() != a.size()) return false;
  std::vector<char> hit(b.size(), 0);
  for (Index v : mapping) {
    if (v >= b.size() || hit[v]) return false;
    hit[v] = 1;
  }
  for (Index x = 0; x < a.size(); ++x)
    for (Index y = 0; y < a.size(); ++y)
      if (a.leq(x, y) != b.leq(mapping[x], mapping[y])) return false;
  return true;
}

/// Backtracking isomorphism search, pruned by cone sizes and cover degrees.
/// Intended for desk-scale posets.
inline std::optional<std::vector<Index>> find_isomorphism(const Poset& a, const Poset& b) {
  if (a.size() != b.size() || a.covers().size() != b.covers().size()) return std::nullopt;
  const std::size_t n = a.size();
  using Signature = std::array<std::size_t, 4>;
  auto signature = [](const Poset& p, Index i) {
    std::size_t ups = 0, downs = 0;
    for (Index j = 0; j < p.size(); ++j) {
      if (p.lt(i, j)) ++ups;
      if (p.lt(j, i)) ++downs;
    }
    return Signature{ups, downs, p.upper_covers(i).size(), p.lower_covers(i).size()};
  };
  std::vector<Signature> sig_a(n), sig_b(n);
  for (Index i = 0; i < n; ++i) {
    sig_a[i] = signature(a, i);
    sig_b[i] = signature(b, i);
  }
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  const auto& order = a.linear_extension();
  std::vector<Index> mapping(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> place = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const Index x = order[depth];
    for (Index y = 0; y < n; ++y) {
      if (used[y] || sig_b[y] != sig_a[x]) continue;
      bool consistent = true;
      for (std::size_t k = 0; k < depth && consistent; ++k) {
        const Index u = order[k];
        if (a.leq(x, u) != b.leq(y, mapping[u]) || a.leq(u, x) != b.leq(mapping[u], y)) consistent = false;
      }
      if (!consistent) continue;
      mapping[x] = y;
      used[y] = 1;
      if (place(depth + 1)) return true;
      used[y] = 0;
    }
    mapping[x] = n;
    return false;
  };
  if (!place(0)) return std::nullopt;
  return mapping;
}

/// Connected components of the comparability graph, each sorted.
inline std::vector<std::vector<Index>> connected_components(const Poset& p) {
  std::vector<Index> parent(p.size());
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> root = [&](Index x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (auto [a, b] : p.covers()) parent[root(a)] = root(b);
  std::map<Index, std::vector<Index>> groups;
  for (Index i = 0; i < p.size(); ++i) groups[root(i)].push_back(i);
  std::vector<std::vector<Index>> out;
  for (auto& [r, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace inflate_kit
