#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inflate_kit/error.hpp"
#include "inflate_kit/homology.hpp"
#include "inflate_kit/inflation.hpp"
#include "inflate_kit/poset.hpp"
#include "inflate_kit/sheaf.hpp"
#include "inflate_kit/simplicial.hpp"

namespace inflate_kit {

inline constexpr const char* kVersion = "0.1.0";

/// Human-readable witness for a failed flabbiness check.
inline std::string describe_witness(const Diagram& d, const FlabbinessWitness& w) {
  auto names = [&](const OpenSet& u) {
    std::string out = "{";
    for (std::size_t i = 0; i < u.members.size(); ++i) out += (i ? "," : "") + d.base().name(u.members[i]);
    return out + "}";
  };
  return "section " + render_section(d, w.section) + " on " + names(w.smaller) + " does not extend to " +
         names(w.larger);
}

/// First nonempty open set without sections, if any.
inline std::optional<OpenSet> empty_open(const Diagram& d, const Limits& limits = {}) {
  for (const auto& u : enumerate_opens(d.base(), limits))
    if (!u.empty() && !first_section(d, u)) return u;
  return std::nullopt;
}

namespace detail {

inline void require_hypotheses(const Diagram& d, const Limits& limits) {
  if (auto u = empty_open(d, limits)) {
    std::string names;
    for (Index i : u->members) names += (names.empty() ? "" : ",") + d.base().name(i);
    throw Error(ErrorKind::HypothesisViolated, "diagram is not inhabited: no section on {" + names + "}");
  }
  auto flabby = is_flabby(d, limits);
  if (!flabby.flabby)
    throw Error(ErrorKind::HypothesisViolated, "diagram is not flabby: " + describe_witness(d, *flabby.witness));
}

}  // namespace detail

struct SphereCount {
  int dimension = 0;  // n - 1
  long long count = 0;
  long long euler_count = 0;
  WedgeCertificate certificate;
  HomologyReport homology;
};

/// n(D) for a diagram on the dual of the face poset of a simplex: the top
/// reduced Betti number of the inflation, required to agree with the count
/// derived from the Euler characteristic.
inline SphereCount sphere_count_over_simplex(const Diagram& d, const Limits& limits = {}) {
  const Poset faces = d.base().dual();
  if (!SimplicialPoset::is_simplicial(faces))
    throw Error(ErrorKind::NotSimplicial, "base is not the dual of a simplicial poset");
  const SimplicialPoset sp = SimplicialPoset::from_poset(faces);
  const auto tops = sp.facets();
  if (tops.size() != 1 || sp.size() != (std::size_t{1} << sp.rank(tops.front())) - 1)
    throw Error(ErrorKind::HypothesisViolated, "base is not the face poset of a single simplex");
  detail::require_hypotheses(d, limits);

  SphereCount out;
  out.dimension = sp.dimension();
  const CompletedPoset inflated = inflate(faces, d);
  const SimplicialPoset cells = SimplicialPoset::from_poset(inflated.result);
  out.homology = homology(cells, limits);
  out.certificate = wedge_certificate(out.homology, out.dimension);
  if (!out.certificate.passed)
    throw Error(ErrorKind::CertificateFailed, "inflation over a simplex is not a homology wedge of " +
                                                  std::to_string(out.dimension) + "-spheres (" +
                                                  *out.certificate.failure_reason + ")");
  out.count = out.certificate.count;
  out.euler_count = (out.dimension % 2 == 0 ? 1 : -1) * euler_characteristic(cells);
  if (out.euler_count != out.count)
    throw Error(ErrorKind::CertificateFailed, "Betti count " + std::to_string(out.count) +
                                                  " disagrees with Euler count " + std::to_string(out.euler_count));
  return out;
}

/// Contribution of one simplex I to the wedge decomposition.
struct SimplexTerm {
  std::string element;
  int dimension = 0;
  long long spheres = 0;  // n(D_I)
  std::map<int, long long> link_betti;
};

struct Prediction {
  std::map<int, long long> betti;
  HomologyReport base;
  std::vector<SimplexTerm> terms;
};

/// β̃_k(P) + Σ_I n(D_I) β̃_{k - dim I - 1}(link I) for a connected base.
inline Prediction predict(const SimplicialPoset& p, const Diagram& d, const Limits& limits = {}) {
  if (!(d.base() == p.poset().dual())) throw Error(ErrorKind::BaseMismatch, "diagram is not based on the dual poset");
  if (p.size() == 0 || !p.is_connected()) throw Error(ErrorKind::NotConnected, "base poset is not connected");
  detail::require_hypotheses(d, limits);

  Prediction out;
  out.base = homology(p, limits);
  out.betti = out.base.betti;
  for (Index i = 0; i < p.size(); ++i) {
    SimplexTerm term;
    term.element = p.poset().name(i);
    term.dimension = p.dimension(i);
    OpenSet below;
    below.members = down_set(p.poset(), i);
    term.spheres = sphere_count_over_simplex(restrict_to_open(d, below), limits).count;
    term.link_betti = homology(link(p, i), limits).betti;
    for (const auto& [k, b] : term.link_betti)
      if (b != 0 && term.spheres != 0) out.betti[k + term.dimension + 1] += term.spheres * b;
    out.terms.push_back(std::move(term));
  }
  return out;
}

inline std::map<int, long long> predicted_betti(const SimplicialPoset& p, const Diagram& d,
                                                const Limits& limits = {}) {
  return predict(p, d, limits).betti;
}

struct HypothesisFlags {
  bool simplicial = false;
  bool inhabited = false;
  bool flabby = false;
  bool connected = false;
  std::size_t components = 0;
};

struct DecompositionReport {
  HypothesisFlags flags;
  bool applicable = false;
  bool match = false;
  std::vector<std::string> notes;  // witnesses for failed hypotheses
  HomologyReport base_betti;
  std::vector<SimplexTerm> per_simplex;
  std::map<int, long long> predicted_betti;
  HomologyReport actual_betti;
  std::size_t inflation_size = 0;
  std::optional<bool> base_cm;
  std::optional<bool> inflation_cm;
};

inline bool same_betti(const std::map<int, long long>& a, const std::map<int, long long>& b) {
  auto at = [](const std::map<int, long long>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  };
  for (const auto& [k, v] : a)
    if (at(b, k) != v) return false;
  for (const auto& [k, v] : b)
    if (at(a, k) != v) return false;
  return true;
}

/// Checks the hypotheses, predicts the Betti numbers of the inflation from
/// the wedge decomposition (component by component) and compares them with
/// its directly computed homology. Hypothesis failures make the report
/// non-applicable rather than failed.
inline DecompositionReport verify_inflation(const Poset& p, const Diagram& d, const Limits& limits = {}) {
  if (!(d.base() == p.dual())) throw Error(ErrorKind::BaseMismatch, "diagram is not based on the dual poset");
  DecompositionReport r;
  const auto components = connected_components(p);
  r.flags.components = components.size();
  r.flags.connected = components.size() == 1;
  r.flags.simplicial = SimplicialPoset::is_simplicial(p);
  if (auto u = empty_open(d, limits)) {
    r.notes.push_back("not inhabited: an open set of " + std::to_string(u->size()) + " elements has no section");
  } else {
    r.flags.inhabited = true;
  }
  auto flabby = is_flabby(d, limits);
  r.flags.flabby = flabby.flabby;
  if (!flabby.flabby) r.notes.push_back("not flabby: " + describe_witness(d, *flabby.witness));
  if (!r.flags.simplicial) r.notes.push_back("base is not a simplicial poset");

  const CompletedPoset inflated = inflate(p, d);
  r.inflation_size = inflated.result.size();
  r.base_betti = poset_homology(p, limits);
  r.actual_betti = poset_homology(inflated.result, limits);
  r.applicable = r.flags.simplicial && r.flags.inhabited && r.flags.flabby;
  if (!r.applicable) return r;

  if (components.empty()) {
    r.predicted_betti = {{-1, 1}};
  } else {
    const Poset dual = p.dual();
    for (const auto& members : components) {
      const SimplicialPoset part = SimplicialPoset::from_poset(p.induced(members));
      OpenSet region;
      region.members = members;
      std::sort(region.members.begin(), region.members.end());
      const Diagram piece = detail::restrict_unchecked(d, region);
      Prediction pr = predict(part, piece, limits);
      for (const auto& [k, b] : pr.betti)
        if (k >= 0) r.predicted_betti[k] += b;
      for (auto& term : pr.terms) r.per_simplex.push_back(std::move(term));
    }
    r.predicted_betti[-1] += 0;
    r.predicted_betti[0] += static_cast<long long>(components.size()) - 1;
  }
  r.match = same_betti(r.predicted_betti, r.actual_betti.betti) && r.actual_betti.torsion_free();

  const SimplicialPoset base_sp = SimplicialPoset::from_poset(p);
  r.base_cm = cm_check(base_sp, limits).cohen_macaulay;
  if (*r.base_cm) {
    if (SimplicialPoset::is_simplicial(inflated.result))
      r.inflation_cm = cm_check(SimplicialPoset::from_poset(inflated.result), limits).cohen_macaulay;
    else
      r.inflation_cm = false;
  }
  return r;
}

}  // namespace inflate_kit
