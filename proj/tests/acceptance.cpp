// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Every check is an exact integer comparison.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"

using namespace inflate_kit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void run(int number, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s criterion %d: %s (%.2fs)%s%s\n", out.ok ? "PASS" : "FAIL", number, title, secs,
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
  if (!out.ok) ++failures;
}

std::string show(const std::vector<int>& v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ')';
  return s.str();
}

// All count vectors of length n with entries >= 1 and product <= bound.
void count_vectors(std::size_t n, long long bound, std::vector<int>& cur, const std::function<void()>& visit) {
  if (cur.size() == n) {
    visit();
    return;
  }
  long long prod = 1;
  for (int c : cur) prod *= c;
  for (int k = 1; prod * k <= bound; ++k) {
    cur.push_back(k);
    count_vectors(n, bound, cur, visit);
    cur.pop_back();
  }
}

std::set<std::string> names_of(const Poset& p) { return {p.elements().begin(), p.elements().end()}; }

}  // namespace

int main() {
  run(1, "sphere count over a simplex is the product of (k_i - 1)", [](Outcome& out) {
    int cases = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<int> k;
      count_vectors(n, 64, k, [&] {
        ++cases;
        long long expected = 1;
        for (int c : k) expected *= c - 1;
        auto sc = sphere_count_over_simplex(vertex_inflation_diagram(simplex_complex(n), k));
        if (sc.count != expected) out.fail(show(k) + ": count " + std::to_string(sc.count));
        if (!sc.certificate.passed) out.fail(show(k) + ": certificate failed");
        if (sc.euler_count != expected) out.fail(show(k) + ": Euler count " + std::to_string(sc.euler_count));
        // Independent Euler oracle: the inflation has prod_{i in S} k_i cells
        // over each nonempty face S.
        long long chi = -1;
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
          long long cells = 1;
          int size = 0;
          for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) cells *= k[i], ++size;
          chi += (size % 2 == 1 ? 1 : -1) * cells;
        }
        if ((n % 2 == 1 ? chi : -chi) != expected) out.fail(show(k) + ": Euler oracle " + std::to_string(chi));
      });
    }
    out.detail += " [" + std::to_string(cases) + " count vectors]";
  });

  run(2, "a point with m stalk members has m - 1 zero-spheres", [](Outcome& out) {
    for (int m = 1; m <= 6; ++m) {
      std::vector<std::string> stalk;
      for (int i = 0; i < m; ++i) stalk.push_back("p" + std::to_string(i));
      auto d = Diagram::build(Poset::build({"{1}"}, {}), {{"{1}", stalk}}, {});
      auto sc = sphere_count_over_simplex(d);
      if (sc.homology.betti_at(0) != m - 1 || sc.count != m - 1) out.fail("m = " + std::to_string(m));
    }
  });

  run(3, "trivial diagram inflates to an isomorphic poset", [](Outcome& out) {
    gen::Rng rng(3001);
    for (int trial = 0; trial < 50; ++trial) {
      auto p = gen::random_poset(rng, gen::uniform(rng, 1, 10));
      auto infl = inflate(p, Diagram::trivial(p.dual()));
      if (!find_isomorphism(infl.result, p)) out.fail("trial " + std::to_string(trial));
    }
  });

  run(4, "etale space agrees with the completion", [](Outcome& out) {
    gen::Rng rng(4001);
    for (int trial = 0; trial < 100; ++trial) {
      auto p = gen::random_poset(rng, gen::uniform(rng, 1, 8));
      auto d = gen::random_diagram(rng, p, 2, 0.3);
      if (!etale_check(p, d)) out.fail("trial " + std::to_string(trial));
    }
  });

  run(5, "predicted Betti numbers match the inflation", [](Outcome& out) {
    auto check = [&](const std::string& label, const Poset& base, const Diagram& d) {
      auto r = verify_inflation(base, d);
      if (!r.applicable) out.fail(label + ": hypotheses not met");
      if (!same_betti(r.predicted_betti, r.actual_betti.betti)) out.fail(label + ": Betti mismatch");
      if (!r.actual_betti.torsion_free()) out.fail(label + ": torsion");
      if (!r.match) out.fail(label + ": no match");
    };
    auto edge = simplex_complex(2);
    check("edge (2,2)", face_poset(edge).poset(), vertex_inflation_diagram(edge, std::vector<int>{2, 2}));
    auto circle = simplex_boundary(3);
    check("circle (2,1,1)", face_poset(circle).poset(), vertex_inflation_diagram(circle, std::vector<int>{2, 1, 1}));
    auto tri = simplex_complex(3);
    check("triangle (2,2,2)", face_poset(tri).poset(), vertex_inflation_diagram(tri, std::vector<int>{2, 2, 2}));
    auto mc = multiclique_diagram(Multigraph::build({"1", "2", "3"}, {{"1", "2", 2}, {"1", "3", 1}, {"2", "3", 1}}));
    check("multigraph (2,1,1)", face_poset(mc.clique_complex).poset(), mc.diagram);

    gen::Rng rng(5001);
    auto path = SimplicialComplex::from_facets({"1", "2", "3", "4"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}});
    auto path_sp = face_poset(path);
    check("path", path_sp.poset(), gen::random_flabby_diagram(rng, path_sp));
    for (int trial = 0; trial < 50; ++trial) {
      auto k = gen::random_complex(rng, 4, 8, true);
      auto sp = face_poset(k);
      check("random " + std::to_string(trial), sp.poset(), gen::random_flabby_diagram(rng, sp));
    }
  });

  run(6, "inflations of Cohen-Macaulay bases stay Cohen-Macaulay", [](Outcome& out) {
    std::vector<std::pair<std::string, SimplicialComplex>> bases = {
        {"simplex", simplex_complex(3)}, {"triangle boundary", simplex_boundary(3)}, {"tetrahedron boundary", simplex_boundary(4)}};
    for (std::size_t mask = 1; mask < 8; ++mask) {
      std::vector<std::size_t> forbidden;
      for (std::size_t j = 0; j < 3; ++j)
        if (mask >> j & 1) forbidden.push_back(j + 1);
      bases.emplace_back("K" + std::to_string(mask), forbidden_subcomplex(3, forbidden));
    }
    gen::Rng rng(6001);
    for (const auto& [label, k] : bases) {
      auto sp = face_poset(k);
      if (!cm_check(sp).cohen_macaulay) out.fail(label + ": base not CM");
      for (int trial = 0; trial < 5; ++trial) {
        auto d = gen::random_flabby_diagram(rng, sp);
        auto infl = SimplicialPoset::from_poset(inflate(sp.poset(), d).result);
        if (!cm_check(infl).cohen_macaulay) out.fail(label + ": inflation not CM");
      }
    }
  });

  run(7, "splitting a diagram", [](Outcome& out) {
    gen::Rng rng(7001);
    int done = 0;
    while (done < 50) {
      auto k = gen::random_complex(rng, 4, 8, true);
      auto sp = face_poset(k);
      auto d = gen::random_flabby_diagram(rng, sp);
      const Poset& p = d.base();
      // Split at a face of least dimension whose stalk has several members.
      std::optional<Index> at;
      for (Index i = 0; i < p.size(); ++i)
        if (d.stalk_size(i) > 1 && (!at || sp.dimension(i) < sp.dimension(*at))) at = i;
      if (!at) continue;
      ++done;
      const std::string label = "split " + std::to_string(done);
      std::vector<std::string> one, two;
      const auto& stalk = d.stalk(*at);
      const std::size_t cut = static_cast<std::size_t>(gen::uniform(rng, 1, static_cast<int>(stalk.size()) - 1));
      std::vector<std::string> shuffled = stalk;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      one.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(cut));
      two.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(cut), shuffled.end());
      auto s = split_diagram(d, *at, one, two);

      const Poset faces = p.dual();
      auto whole = names_of(inflate(faces, d).result);
      auto u1 = names_of(inflate(faces, s.first).result);
      auto u2 = names_of(inflate(faces, s.second).result);
      std::set<std::string> joined = u1;
      joined.insert(u2.begin(), u2.end());
      if (joined != whole) out.fail(label + ": union");
      std::set<std::string> meet;
      std::set_intersection(u1.begin(), u1.end(), u2.begin(), u2.end(), std::inserter(meet, meet.end()));
      std::set<std::string> inter;
      if (!s.region.empty()) inter = names_of(inflate(s.intersection.base().dual(), s.intersection).result);
      if (meet != inter) out.fail(label + ": intersection");
      for (const Diagram* part : {&s.first, &s.second}) {
        if (!is_inhabited(*part) || !is_flabby(*part).flabby) out.fail(label + ": part not inhabited and flabby");
        if (complexity(*part) >= complexity(d)) out.fail(label + ": complexity did not drop");
      }
    }
  });

  run(8, "K(I) is Cohen-Macaulay of dimension n - 2", [](Outcome& out) {
    for (std::size_t n = 1; n <= 5; ++n)
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> forbidden;
        for (std::size_t j = 0; j < n; ++j)
          if (mask >> j & 1) forbidden.push_back(j + 1);
        auto k = forbidden_subcomplex(n, forbidden);
        auto v = cm_check(face_poset(k));
        const std::string label = "n=" + std::to_string(n) + " mask=" + std::to_string(mask);
        if (!v.cohen_macaulay) out.fail(label + ": not CM");
        if (v.dimension != static_cast<int>(n) - 2) out.fail(label + ": dimension " + std::to_string(v.dimension));
        if (mask + 1 == (std::size_t{1} << n) && homology(k).betti_at(static_cast<int>(n) - 2) != 1)
          out.fail(label + ": top Betti number");
      }
  });

  run(9, "inflation along a map's diagram recovers the source", [](Outcome& out) {
    auto cycle = SimplicialComplex::from_facets({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}});
    auto f = SimplicialMap::build(cycle, simplex_complex(2), {{"a", "1"}, {"b", "2"}, {"c", "1"}, {"d", "2"}});
    auto d = diagram_from_map(f);
    if (!find_isomorphism(inflate(d.base().dual(), d).result, face_poset(cycle).poset())) out.fail("4-cycle");
    gen::Rng rng(9001);
    for (int trial = 0; trial < 20; ++trial) {
      auto target = gen::random_complex(rng, 3, 6, false);
      auto g = gen::random_cover_map(rng, target);
      auto dg = diagram_from_map(g);
      if (!find_isomorphism(inflate(dg.base().dual(), dg).result, face_poset(g.source()).poset()))
        out.fail("trial " + std::to_string(trial));
    }
  });

  run(10, "single-step flabbiness agrees with all nested pairs", [](Outcome& out) {
    gen::Rng rng(10001);
    int flabby = 0;
    for (int trial = 0; trial < 100; ++trial) {
      auto p = gen::random_poset(rng, gen::uniform(rng, 1, 7));
      auto d = gen::random_diagram(rng, p, 2, 0.4);
      const bool fast = is_flabby(d).flabby;
      if (fast != oracle::flabby(d)) out.fail("trial " + std::to_string(trial) + ": all nested pairs");
      if (fast != oracle::flabby_single_step(d)) out.fail("trial " + std::to_string(trial) + ": single-step form");
      flabby += fast;
    }
    out.detail += " [" + std::to_string(flabby) + "/100 flabby]";
  });

  run(11, "homology engine sanity", [](Outcome& out) {
    std::vector<SimplicialComplex> fixtures;
    for (std::size_t k = 1; k <= 5; ++k) {
      auto sphere = simplex_boundary(k + 1);
      if (homology(sphere).betti_at(static_cast<int>(k) - 1) != 1) out.fail("sphere of dimension " + std::to_string(k - 1));
      fixtures.push_back(sphere);
      fixtures.push_back(simplex_complex(k));
    }
    auto rp2 = parse_complex(load_json_file(TEST_DATA_DIR "/rp2.json"));
    auto h = homology(rp2);
    if (h.torsion != std::map<int, std::vector<BigInt>>{{1, {2}}}) out.fail("projective plane torsion");
    fixtures.push_back(rp2);
    fixtures.push_back(SimplicialComplex{});
    gen::Rng rng(11001);
    for (int i = 0; i < 20; ++i) fixtures.push_back(gen::random_complex(rng, 6, 40, false));
    for (const auto& k : fixtures) {
      const long long chi = euler_characteristic(k);
      if (chi != alternating_betti_sum(homology(k)) || chi != oracle::reduced_euler_from_facets(k))
        out.fail("Euler identity");
    }
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
