#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "inflate_kit/error.hpp"
#include "inflate_kit/poset.hpp"

namespace inflate_kit {

/// One structure map of a diagram as written in input files: the cover
/// `from < to` and the function stalk(from) -> stalk(to) by element names.
struct EdgeMapSpec {
  std::string from;
  std::string to;
  std::map<std::string, std::string> map;
};

/// Functor from a finite poset to finite sets. Stalks are kept sorted by
/// name; stalk elements are referred to by their index in that order.
/// Composite maps D(s <= t) are computed (and functoriality checked) once at
/// construction.
class Diagram {
 public:
  Diagram() = default;

  static Diagram build(Poset base, const std::map<std::string, std::vector<std::string>>& stalks,
                       const std::vector<EdgeMapSpec>& maps) {
    std::vector<std::vector<std::string>> stalk_list(base.size());
    std::vector<char> seen(base.size(), 0);
    for (const auto& [name, members] : stalks) {
      auto s = base.find(name);
      if (!s) throw Error(ErrorKind::UnknownElement, "stalk given for unknown element '" + name + "'");
      stalk_list[*s] = members;
      seen[*s] = 1;
    }
    for (Index s = 0; s < base.size(); ++s)
      if (!seen[s]) throw Error(ErrorKind::MissingStalk, "no stalk for element '" + base.name(s) + "'");
    for (Index s = 0; s < base.size(); ++s) check_distinct(base.name(s), stalk_list[s]);

    std::map<std::pair<Index, Index>, std::vector<Index>> edge_maps;
    for (const auto& spec : maps) {
      const Index a = base.index_of(spec.from);
      const Index b = base.index_of(spec.to);
      if (!base.is_cover(a, b))
        throw Error(ErrorKind::InvariantViolation, "map given for non-cover pair " + spec.from + " < " + spec.to);
      if (edge_maps.count({a, b}))
        throw Error(ErrorKind::InvariantViolation, "duplicate map for cover " + spec.from + " < " + spec.to);
      const auto& source = stalk_list[a];
      const auto& target = stalk_list[b];
      std::vector<Index> table(source.size());
      for (Index x = 0; x < source.size(); ++x) {
        auto it = spec.map.find(source[x]);
        if (it == spec.map.end())
          throw Error(ErrorKind::PartialMap, "map " + spec.from + " < " + spec.to + " does not assign '" + source[x] + "'");
        auto hit = std::find(target.begin(), target.end(), it->second);
        if (hit == target.end())
          throw Error(ErrorKind::InvariantViolation, "map " + spec.from + " < " + spec.to + " sends '" + source[x] +
                                                         "' outside the target stalk ('" + it->second + "')");
        table[x] = static_cast<Index>(hit - target.begin());
      }
      for (const auto& [key, value] : spec.map)
        if (std::find(source.begin(), source.end(), key) == source.end())
          throw Error(ErrorKind::InvariantViolation,
                      "map " + spec.from + " < " + spec.to + " assigns '" + key + "' which is not in the source stalk");
      edge_maps.emplace(std::pair{a, b}, std::move(table));
    }
    return from_indices(std::move(base), std::move(stalk_list), edge_maps);
  }

  /// `edge_maps[{a, b}]` is the map for cover a < b, expressed in the index
  /// order of the given (not necessarily sorted) stalk lists.
  static Diagram from_indices(Poset base, std::vector<std::vector<std::string>> stalks,
                              const std::map<std::pair<Index, Index>, std::vector<Index>>& edge_maps) {
    const std::size_t n = base.size();
    if (stalks.size() != n) throw Error(ErrorKind::MissingStalk, "stalk count does not match the base");
    // Canonicalise stalk order; rank[s][old] = new index.
    std::vector<std::vector<Index>> rank(n);
    for (Index s = 0; s < n; ++s) {
      check_distinct(base.name(s), stalks[s]);
      std::vector<Index> perm(stalks[s].size());
      for (Index i = 0; i < perm.size(); ++i) perm[i] = i;
      std::sort(perm.begin(), perm.end(), [&](Index a, Index b) { return stalks[s][a] < stalks[s][b]; });
      rank[s].resize(perm.size());
      std::vector<std::string> sorted;
      sorted.reserve(perm.size());
      for (Index i = 0; i < perm.size(); ++i) {
        rank[s][perm[i]] = i;
        sorted.push_back(std::move(stalks[s][perm[i]]));
      }
      stalks[s] = std::move(sorted);
    }

    Diagram d;
    d.base_ = std::move(base);
    d.stalks_ = std::move(stalks);
    d.canonical_.assign(n * n, {});
    std::vector<std::vector<Index>> cover_maps(n * n);
    for (auto [a, b] : d.base_.covers()) {
      auto it = edge_maps.find({a, b});
      if (it == edge_maps.end())
        throw Error(ErrorKind::PartialMap, "no map for cover " + d.base_.name(a) + " < " + d.base_.name(b));
      const auto& old = it->second;
      if (old.size() != d.stalks_[a].size())
        throw Error(ErrorKind::PartialMap, "map for cover " + d.base_.name(a) + " < " + d.base_.name(b) +
                                               " is not defined on the whole stalk");
      std::vector<Index> table(old.size());
      for (Index x = 0; x < old.size(); ++x) {
        if (old[x] >= d.stalks_[b].size())
          throw Error(ErrorKind::InvariantViolation, "map for cover " + d.base_.name(a) + " < " + d.base_.name(b) +
                                                         " leaves the target stalk");
        table[rank[a][x]] = rank[b][old[x]];
      }
      cover_maps[a * n + b] = std::move(table);
    }
    for (const auto& [pair, table] : edge_maps)
      if (!d.base_.is_cover(pair.first, pair.second))
        throw Error(ErrorKind::InvariantViolation, "map given for a pair that is not a cover");

    for (Index s = 0; s < n; ++s) {
      auto& id = d.canonical_[s * n + s];
      id.resize(d.stalks_[s].size());
      for (Index x = 0; x < id.size(); ++x) id[x] = x;
      for (Index t : d.base_.linear_extension()) {
        if (!d.base_.lt(s, t)) continue;
        auto& slot = d.canonical_[s * n + t];
        std::optional<Index> first_via;
        for (Index u : d.base_.lower_covers(t)) {
          if (!d.base_.leq(s, u)) continue;
          const auto& lower = d.canonical_[s * n + u];
          const auto& step = cover_maps[u * n + t];
          std::vector<Index> composite(lower.size());
          for (Index x = 0; x < lower.size(); ++x) composite[x] = step[lower[x]];
          if (!first_via) {
            slot = std::move(composite);
            first_via = u;
            continue;
          }
          for (Index x = 0; x < composite.size(); ++x) {
            if (composite[x] != slot[x]) {
              throw Error(ErrorKind::NotFunctorial,
                          "paths from " + d.base_.name(s) + " to " + d.base_.name(t) + " disagree on '" +
                              d.stalks_[s][x] + "': via " + d.base_.name(*first_via) + " it goes to '" +
                              d.stalks_[t][slot[x]] + "', via " + d.base_.name(u) + " to '" +
                              d.stalks_[t][composite[x]] + "'");
            }
          }
        }
      }
    }
    return d;
  }

  /// Every stalk a singleton "*".
  static Diagram trivial(const Poset& base) {
    std::vector<std::vector<std::string>> stalks(base.size(), std::vector<std::string>{"*"});
    std::map<std::pair<Index, Index>, std::vector<Index>> maps;
    for (auto cover : base.covers()) maps.emplace(cover, std::vector<Index>{0});
    return from_indices(base, std::move(stalks), maps);
  }

  const Poset& base() const { return base_; }
  const std::vector<std::string>& stalk(Index s) const { return stalks_.at(s); }
  std::size_t stalk_size(Index s) const { return stalks_.at(s).size(); }

  std::optional<Index> find_stalk_element(Index s, std::string_view name) const {
    const auto& stalk = stalks_.at(s);
    auto it = std::lower_bound(stalk.begin(), stalk.end(), name,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == stalk.end() || *it != name) return std::nullopt;
    return static_cast<Index>(it - stalk.begin());
  }

  Index stalk_index(Index s, std::string_view name) const {
    auto found = find_stalk_element(s, name);
    if (!found)
      throw Error(ErrorKind::UnknownElement,
                  "stalk of '" + base_.name(s) + "' has no element '" + std::string(name) + "'");
    return *found;
  }

  /// D(s <= t) as an index table.
  const std::vector<Index>& canonical_map(Index s, Index t) const {
    if (!base_.leq(s, t))
      throw Error(ErrorKind::InvariantViolation, base_.name(s) + " is not below " + base_.name(t));
    return canonical_[s * base_.size() + t];
  }

  Index apply(Index s, Index t, Index x) const { return canonical_map(s, t).at(x); }

  friend bool operator==(const Diagram& a, const Diagram& b) {
    if (!(a.base_ == b.base_) || a.stalks_ != b.stalks_) return false;
    const std::size_t n = a.base_.size();
    for (auto [s, t] : a.base_.covers())
      if (a.canonical_[s * n + t] != b.canonical_[s * n + t]) return false;
    return true;
  }

 private:
  static void check_distinct(const std::string& owner, const std::vector<std::string>& members) {
    std::vector<std::string> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw Error(ErrorKind::InvariantViolation, "stalk of '" + owner + "' repeats '" + *dup + "'");
  }

  Poset base_;
  std::vector<std::vector<std::string>> stalks_;
  std::vector<std::vector<Index>> canonical_;  // n*n, empty unless s <= t
};

/// Compatible family over an open set: `choice[i]` is the stalk index chosen
/// at `domain.members[i]`.
struct Section {
  OpenSet domain;
  std::vector<Index> choice;

  std::optional<Index> at(Index s) const {
    auto it = std::lower_bound(domain.members.begin(), domain.members.end(), s);
    if (it == domain.members.end() || *it != s) return std::nullopt;
    return choice[static_cast<std::size_t>(it - domain.members.begin())];
  }

  friend bool operator==(const Section&, const Section&) = default;
  friend bool operator<(const Section& a, const Section& b) {
    if (!(a.domain == b.domain)) return a.domain < b.domain;
    return a.choice < b.choice;
  }
};

/// Canonical text form "{s:x,t:y}".
inline std::string render_section(const Diagram& d, const Section& section) {
  std::string out = "{";
  for (std::size_t i = 0; i < section.domain.members.size(); ++i) {
    if (i) out += ',';
    const Index s = section.domain.members[i];
    out += d.base().name(s) + ":" + d.stalk(s)[section.choice[i]];
  }
  return out + "}";
}

namespace detail {

inline void require_open(const Poset& p, const OpenSet& u) {
  for (Index i : u.members)
    if (i >= p.size()) throw Error(ErrorKind::UnknownElement, "open set index out of range");
  if (!std::is_sorted(u.members.begin(), u.members.end()) ||
      std::adjacent_find(u.members.begin(), u.members.end()) != u.members.end())
    throw Error(ErrorKind::InvariantViolation, "open set members must be sorted and distinct");
  if (!is_upward_closed(p, u.members)) throw Error(ErrorKind::NotOpen, "subset is not upward closed");
}

/// Enumerates sections over `u` by choosing values on the minimal elements of
/// `u` and propagating them upwards through the composite maps; a branch is
/// cut as soon as two minimal elements force different values on a common
/// upper bound. `visit` returns false to stop early.
template <class Visit>
void for_each_section(const Diagram& d, const OpenSet& u, Visit&& visit) {
  const Poset& p = d.base();
  const std::size_t m = u.members.size();
  std::vector<std::size_t> position(p.size(), m);
  for (std::size_t i = 0; i < m; ++i) position[u.members[i]] = i;

  std::vector<Index> minimal;
  for (Index x : u.members) {
    bool is_minimal = true;
    for (Index y : p.lower_covers(x))
      if (position[y] < m) is_minimal = false;
    if (is_minimal) minimal.push_back(x);
  }
  std::vector<std::vector<Index>> reach(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k)
    for (Index t : u.members)
      if (p.leq(minimal[k], t)) reach[k].push_back(t);

  std::vector<Index> value(m, 0);
  std::vector<int> owner(m, -1);
  bool stop = false;
  std::function<void(std::size_t)> descend = [&](std::size_t k) {
    if (stop) return;
    if (k == minimal.size()) {
      if (!visit(Section{u, value})) stop = true;
      return;
    }
    const Index base_elem = minimal[k];
    const std::size_t options = d.stalk_size(base_elem);
    for (Index c = 0; c < options && !stop; ++c) {
      bool consistent = true;
      std::vector<std::size_t> changed;
      for (Index t : reach[k]) {
        const Index v = d.canonical_map(base_elem, t)[c];
        const std::size_t pos = position[t];
        if (owner[pos] < 0) {
          owner[pos] = static_cast<int>(k);
          value[pos] = v;
          changed.push_back(pos);
        } else if (value[pos] != v) {
          consistent = false;
          break;
        }
      }
      if (consistent) descend(k + 1);
      for (std::size_t pos : changed) owner[pos] = -1;
    }
  };
  descend(0);
}

}  // namespace detail

/// All sections over a nonempty open set, in lexicographic order of choices.
inline std::vector<Section> sections(const Diagram& d, const OpenSet& u) {
  if (u.empty()) throw Error(ErrorKind::EmptyOpenSet, "sections are defined on nonempty open sets only");
  detail::require_open(d.base(), u);
  std::vector<Section> out;
  detail::for_each_section(d, u, [&](Section s) {
    out.push_back(std::move(s));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<Section> first_section(const Diagram& d, const OpenSet& u) {
  if (u.empty()) throw Error(ErrorKind::EmptyOpenSet, "sections are defined on nonempty open sets only");
  detail::require_open(d.base(), u);
  std::optional<Section> found;
  detail::for_each_section(d, u, [&](Section s) {
    found = std::move(s);
    return false;
  });
  return found;
}

inline Section restrict_section(const Diagram& d, const Section& s, const OpenSet& v) {
  if (v.empty()) throw Error(ErrorKind::EmptyOpenSet, "cannot restrict to the empty set");
  detail::require_open(d.base(), v);
  Section out;
  out.domain = v;
  for (Index x : v.members) {
    auto chosen = s.at(x);
    if (!chosen) throw Error(ErrorKind::NotSubset, "'" + d.base().name(x) + "' is outside the section's domain");
    out.choice.push_back(*chosen);
  }
  return out;
}

/// Every nonempty open set carries a section.
inline bool is_inhabited(const Diagram& d, const Limits& limits = {}) {
  for (const auto& u : enumerate_opens(d.base(), limits)) {
    if (u.empty()) continue;
    if (!first_section(d, u)) return false;
  }
  return true;
}

struct FlabbinessWitness {
  OpenSet larger;
  OpenSet smaller;
  Section section;  // on `smaller`, with no extension to `larger`
};

struct FlabbinessVerdict {
  bool flabby = true;
  std::optional<FlabbinessWitness> witness;
};

/// Flabbiness, checked locally. Any nested pair of opens is bridged by adding
/// one element s at a time, top down, so that the strict upper cone of s is
/// already present. Such a step extends every section exactly when D(s)
/// surjects onto the sections over that cone; for a maximal s the cone is
/// empty and the step only needs D(s) nonempty (or no section to extend).
inline FlabbinessVerdict is_flabby(const Diagram& d, const Limits& limits = {}) {
  const Poset& p = d.base();
  for (Index s = 0; s < p.size(); ++s) {
    OpenSet cone = up_set(p, s);
    OpenSet above;
    for (Index t : cone.members)
      if (t != s) above.members.push_back(t);
    if (above.empty()) continue;
    std::set<std::vector<Index>> lifted;
    for (Index x = 0; x < d.stalk_size(s); ++x) {
      std::vector<Index> image;
      image.reserve(above.members.size());
      for (Index t : above.members) image.push_back(d.apply(s, t, x));
      lifted.insert(std::move(image));
    }
    std::optional<Section> stuck;
    detail::for_each_section(d, above, [&](Section section) {
      if (lifted.count(section.choice)) return true;
      stuck = std::move(section);
      return false;
    });
    if (stuck) return FlabbinessVerdict{false, FlabbinessWitness{std::move(cone), std::move(above), std::move(*stuck)}};
  }

  std::vector<Index> bare;
  for (Index s : p.maximal_elements())
    if (d.stalk_size(s) == 0) bare.push_back(s);
  if (bare.empty()) return FlabbinessVerdict{true, std::nullopt};
  for (const auto& v : enumerate_opens(p, limits)) {
    if (v.empty()) continue;
    for (Index s : bare) {
      if (v.contains(s)) continue;
      if (auto section = first_section(d, v)) {
        OpenSet w = v;
        w.members.insert(std::lower_bound(w.members.begin(), w.members.end(), s), s);
        return FlabbinessVerdict{false, FlabbinessWitness{std::move(w), v, std::move(*section)}};
      }
    }
  }
  return FlabbinessVerdict{true, std::nullopt};
}

inline bool is_trivial(const Diagram& d) {
  for (Index s = 0; s < d.base().size(); ++s)
    if (d.stalk_size(s) != 1) return false;
  return true;
}

/// Values of the direct image sheaf on every nonempty open of the target.
/// An open with empty preimage carries the single empty section.
struct DirectImage {
  Poset target;
  std::vector<OpenSet> opens;
  std::vector<OpenSet> preimages;
  std::vector<std::vector<Section>> values;
  Diagram collapsed;  // values on minimal neighbourhoods with induced maps

  std::size_t position(const OpenSet& u) const {
    auto it = std::lower_bound(opens.begin(), opens.end(), u);
    if (it == opens.end() || !(*it == u)) throw Error(ErrorKind::NotOpen, "not a nonempty open of the target");
    return static_cast<std::size_t>(it - opens.begin());
  }

  /// Restriction map values[from] -> values[to] as an index table.
  std::vector<std::size_t> restriction(std::size_t from, std::size_t to) const {
    const auto& big = opens.at(from);
    const auto& small = opens.at(to);
    if (!std::includes(big.members.begin(), big.members.end(), small.members.begin(), small.members.end()))
      throw Error(ErrorKind::NotSubset, "restriction requires nested open sets");
    const auto& pre = preimages[to];
    std::vector<std::size_t> table;
    for (const auto& section : values[from]) {
      Section image;
      image.domain = pre;
      for (Index x : pre.members) image.choice.push_back(*section.at(x));
      auto it = std::lower_bound(values[to].begin(), values[to].end(), image);
      table.push_back(static_cast<std::size_t>(it - values[to].begin()));
    }
    return table;
  }
};

inline DirectImage direct_image(const PosetMap& f, const Diagram& d, const Limits& limits = {}) {
  if (!(f.source() == d.base())) throw Error(ErrorKind::BaseMismatch, "diagram is not based on the map's source");
  DirectImage image;
  image.target = f.target();
  for (auto& u : enumerate_opens(f.target(), limits)) {
    if (u.empty()) continue;
    OpenSet pre = f.preimage(u);
    if (pre.empty())
      image.values.push_back({Section{}});
    else
      image.values.push_back(sections(d, pre));
    image.preimages.push_back(std::move(pre));
    image.opens.push_back(std::move(u));
  }
  const Poset& t = image.target;
  std::vector<std::vector<std::string>> stalks(t.size());
  std::vector<std::size_t> cone_pos(t.size());
  for (Index s = 0; s < t.size(); ++s) {
    cone_pos[s] = image.position(up_set(t, s));
    for (const auto& section : image.values[cone_pos[s]]) stalks[s].push_back(render_section(d, section));
  }
  std::map<std::pair<Index, Index>, std::vector<Index>> maps;
  for (auto [a, b] : t.covers()) {
    auto table = image.restriction(cone_pos[a], cone_pos[b]);
    maps.emplace(std::pair{a, b}, std::vector<Index>(table.begin(), table.end()));
  }
  image.collapsed = Diagram::from_indices(t, std::move(stalks), maps);
  return image;
}

/// f^*G: stalk(s) = G(f(s)), maps G(f(s1) <= f(s2)).
inline Diagram inverse_image(const PosetMap& f, const Diagram& g) {
  if (!(f.target() == g.base())) throw Error(ErrorKind::BaseMismatch, "diagram is not based on the map's target");
  const Poset& s = f.source();
  std::vector<std::vector<std::string>> stalks(s.size());
  for (Index x = 0; x < s.size(); ++x) stalks[x] = g.stalk(f(x));
  std::map<std::pair<Index, Index>, std::vector<Index>> maps;
  for (auto [a, b] : s.covers()) maps.emplace(std::pair{a, b}, g.canonical_map(f(a), f(b)));
  return Diagram::from_indices(s, std::move(stalks), maps);
}

namespace detail {

inline Diagram restrict_unchecked(const Diagram& d, const OpenSet& a) {
  Poset sub = d.base().induced(a.members);
  std::vector<std::vector<std::string>> stalks(sub.size());
  for (Index i = 0; i < sub.size(); ++i) stalks[i] = d.stalk(a.members[i]);
  std::map<std::pair<Index, Index>, std::vector<Index>> maps;
  for (auto [x, y] : sub.covers()) maps.emplace(std::pair{x, y}, d.canonical_map(a.members[x], a.members[y]));
  return Diagram::from_indices(std::move(sub), std::move(stalks), maps);
}

}  // namespace detail

/// Restriction of the diagram (and its sheaf) to a nonempty open subset.
inline Diagram restrict_to_open(const Diagram& d, const OpenSet& a) {
  if (a.empty()) throw Error(ErrorKind::EmptyOpenSet, "cannot restrict to the empty set");
  detail::require_open(d.base(), a);
  return detail::restrict_unchecked(d, a);
}

struct SplitResult {
  Diagram first;         // elements restricting into the first part at i0
  Diagram second;        // elements restricting into the second part at i0
  Diagram intersection;  // restriction to the region not below i0 (may be empty)
  OpenSet region;        // that region, as an open set of the base
};

/// Splits a diagram at i0 along a partition of its stalk. Elements J below
/// i0 in the base order keep only the members that map into the chosen part;
/// all other stalks are unchanged. Proper neighbours above i0 must carry
/// singleton stalks.
inline SplitResult split_diagram(const Diagram& d, Index i0, const std::vector<std::string>& part1,
                                 const std::vector<std::string>& part2) {
  const Poset& p = d.base();
  if (i0 >= p.size()) throw Error(ErrorKind::UnknownElement, "split element out of range");
  if (part1.empty() || part2.empty()) throw Error(ErrorKind::BadPartition, "both parts must be nonempty");
  std::vector<int> part_of(d.stalk_size(i0), 0);
  for (int which = 1; which <= 2; ++which) {
    for (const auto& name : which == 1 ? part1 : part2) {
      auto x = d.find_stalk_element(i0, name);
      if (!x) throw Error(ErrorKind::BadPartition, "'" + name + "' is not in the stalk of " + p.name(i0));
      if (part_of[*x] != 0) throw Error(ErrorKind::BadPartition, "'" + name + "' appears twice");
      part_of[*x] = which;
    }
  }
  for (Index x = 0; x < part_of.size(); ++x)
    if (part_of[x] == 0) throw Error(ErrorKind::BadPartition, "'" + d.stalk(i0)[x] + "' is in neither part");
  for (Index j = 0; j < p.size(); ++j)
    if (p.lt(i0, j) && d.stalk_size(j) != 1)
      throw Error(ErrorKind::MinimalityViolated,
                  "stalk of " + p.name(j) + " has " + std::to_string(d.stalk_size(j)) + " elements");

  auto subdiagram = [&](int which) {
    std::vector<std::vector<std::string>> stalks(p.size());
    std::vector<std::vector<Index>> kept(p.size());
    for (Index j = 0; j < p.size(); ++j) {
      for (Index x = 0; x < d.stalk_size(j); ++x) {
        if (!p.leq(j, i0) || part_of[d.apply(j, i0, x)] == which) {
          kept[j].push_back(x);
          stalks[j].push_back(d.stalk(j)[x]);
        }
      }
    }
    std::map<std::pair<Index, Index>, std::vector<Index>> maps;
    for (auto [a, b] : p.covers()) {
      std::vector<Index> table;
      for (Index x : kept[a]) {
        const Index y = d.apply(a, b, x);
        table.push_back(static_cast<Index>(std::lower_bound(kept[b].begin(), kept[b].end(), y) - kept[b].begin()));
      }
      maps.emplace(std::pair{a, b}, std::move(table));
    }
    return Diagram::from_indices(p, std::move(stalks), maps);
  };

  SplitResult result;
  result.first = subdiagram(1);
  result.second = subdiagram(2);
  for (Index j = 0; j < p.size(); ++j)
    if (!p.leq(j, i0)) result.region.members.push_back(j);
  result.intersection = detail::restrict_unchecked(d, result.region);
  return result;
}

}  // namespace inflate_kit
