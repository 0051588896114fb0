#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "inflate_kit/error.hpp"
#include "inflate_kit/poset.hpp"
#include "inflate_kit/sheaf.hpp"

namespace inflate_kit {

/// Canonical name of the completion element (s, d).
inline std::string pair_name(const std::string& element, const std::string& member) {
  return "(" + element + "," + member + ")";
}

/// The completion S^D (or, for `inflate`, the inflation P_D) together with
/// its projection onto the base.
struct CompletedPoset {
  Poset base;
  Diagram diagram;
  Poset result;
  PosetMap projection;
  /// origin[r] = (base element, stalk index) of result element r.
  std::vector<std::pair<Index, Index>> origin;

  Index element_of(Index s, Index member) const {
    return result.index_of(pair_name(base.name(s), diagram.stalk(s).at(member)));
  }
};

/// Sum of stalk sizes.
inline std::size_t complexity(const Diagram& d) {
  std::size_t total = 0;
  for (Index s = 0; s < d.base().size(); ++s) total += d.stalk_size(s);
  return total;
}

namespace detail {

/// Completion over `d.base()`; pairs (s1, x) < (s2, D(s1<s2) x). Covers of
/// the completion are exactly the lifts of base covers.
inline std::pair<Poset, std::vector<std::pair<Index, Index>>> complete(const Diagram& d) {
  const Poset& s = d.base();
  std::vector<std::string> names;
  std::vector<std::vector<Index>> slot(s.size());
  std::vector<std::pair<Index, Index>> origin_raw;
  for (Index e = 0; e < s.size(); ++e) {
    for (Index x = 0; x < d.stalk_size(e); ++x) {
      slot[e].push_back(names.size());
      names.push_back(pair_name(s.name(e), d.stalk(e)[x]));
      origin_raw.emplace_back(e, x);
    }
  }
  std::vector<std::pair<Index, Index>> relations;
  for (auto [a, b] : s.covers())
    for (Index x = 0; x < d.stalk_size(a); ++x) relations.emplace_back(slot[a][x], slot[b][d.apply(a, b, x)]);
  std::vector<std::string> copy = names;
  Poset result = Poset::from_relations(std::move(copy), relations);
  std::vector<std::pair<Index, Index>> origin(result.size());
  for (Index raw = 0; raw < names.size(); ++raw) origin[result.index_of(names[raw])] = origin_raw[raw];
  return {std::move(result), std::move(origin)};
}

}  // namespace detail

inline CompletedPoset completion(const Poset& s, const Diagram& d) {
  if (!(d.base() == s)) throw Error(ErrorKind::BaseMismatch, "diagram is not based on the given poset");
  auto [result, origin] = detail::complete(d);
  std::vector<Index> image(result.size());
  for (Index r = 0; r < result.size(); ++r) image[r] = origin[r].first;
  CompletedPoset c;
  c.base = s;
  c.diagram = d;
  c.projection = PosetMap::from_indices(result, s, std::move(image));
  c.result = std::move(result);
  c.origin = std::move(origin);
  return c;
}

/// P_D: complete the dual of `p` along `d` (a diagram on the dual) and
/// reverse the order again. The projection lands in `p`.
inline CompletedPoset inflate(const Poset& p, const Diagram& d) {
  if (!(d.base() == p.dual())) throw Error(ErrorKind::BaseMismatch, "diagram is not based on the dual poset");
  auto [completed, origin] = detail::complete(d);
  Poset result = completed.dual();
  std::vector<Index> image(result.size());
  for (Index r = 0; r < result.size(); ++r) image[r] = origin[r].first;
  CompletedPoset c;
  c.base = p;
  c.diagram = d;
  c.projection = PosetMap::from_indices(result, p, std::move(image));
  c.result = std::move(result);
  c.origin = std::move(origin);
  return c;
}

/// Compares the topology generated by the étale base sets
/// U_v = {(x, v_x) : x in U} with the Alexandrov topology of the completion,
/// both as explicit families of subsets.
inline bool etale_check(const Poset& s, const Diagram& d, const Limits& limits = {}) {
  CompletedPoset c = completion(s, d);
  const std::size_t n = c.result.size();
  using Mask = boost::dynamic_bitset<>;
  const std::size_t cap = limits.max_family();

  std::vector<Mask> base_sets;
  for (const auto& u : enumerate_opens(s, limits)) {
    if (u.empty()) continue;
    for (const auto& section : sections(d, u)) {
      Mask m(n);
      for (std::size_t i = 0; i < u.members.size(); ++i) m.set(c.element_of(u.members[i], section.choice[i]));
      base_sets.push_back(std::move(m));
    }
  }

  std::set<Mask> generated{Mask(n)};
  for (const auto& b : base_sets) {
    if (generated.count(b)) continue;  // already a union of earlier base sets
    std::vector<Mask> fresh;
    for (const auto& f : generated) {
      Mask joined = f | b;
      if (!generated.count(joined)) fresh.push_back(std::move(joined));
    }
    generated.insert(fresh.begin(), fresh.end());
    if (generated.size() > cap) throw Error(ErrorKind::TooLarge, "generated topology exceeds " + std::to_string(cap));
  }

  std::set<Mask> alexandrov;
  for (const auto& u : detail::upper_ideals(c.result, cap)) {
    Mask m(n);
    for (Index i : u.members) m.set(i);
    alexandrov.insert(std::move(m));
  }
  return generated == alexandrov;
}

}  // namespace inflate_kit
