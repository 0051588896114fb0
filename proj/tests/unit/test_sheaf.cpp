#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "oracles.hpp"

using namespace inflate_kit;

namespace {

bool has_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

/// Vertex inflation of the edge with two copies per vertex: stalks 2, 2, 4.
Diagram edge_22() { return vertex_inflation_diagram(simplex_complex(2), std::vector<int>{2, 2}); }

Diagram not_flabby() {
  auto p = Poset::build({"{1,2}", "{1}", "{2}"}, {{"{1,2}", "{1}"}, {"{1,2}", "{2}"}});
  return Diagram::build(p, {{"{1,2}", {"x"}}, {"{1}", {"a", "b"}}, {"{2}", {"c"}}},
                        {{"{1,2}", "{1}", {{"x", "a"}}}, {"{1,2}", "{2}", {{"x", "c"}}}});
}

}  // namespace

TEST_CASE("diagram validation") {
  auto p = Poset::build({"a", "b"}, {{"a", "b"}});
  CHECK(has_kind(ErrorKind::MissingStalk, [&] { Diagram::build(p, {{"a", {"x"}}}, {}); }));
  CHECK(has_kind(ErrorKind::PartialMap, [&] { Diagram::build(p, {{"a", {"x"}}, {"b", {"y"}}}, {}); }));
  CHECK(has_kind(ErrorKind::PartialMap,
                 [&] { Diagram::build(p, {{"a", {"x", "z"}}, {"b", {"y"}}}, {{"a", "b", {{"x", "y"}}}}); }));
  CHECK(has_kind(ErrorKind::UnknownElement, [&] { Diagram::build(p, {{"a", {"x"}}, {"q", {"y"}}}, {}); }));
  CHECK(has_kind(ErrorKind::InvariantViolation,
                 [&] { Diagram::build(p, {{"a", {"x"}}, {"b", {"y"}}}, {{"a", "b", {{"x", "w"}}}}); }));

  SECTION("broken diamond is not functorial") {
    auto faces = face_poset(simplex_complex(3)).poset().dual();
    std::map<std::string, std::vector<std::string>> stalks;
    for (const auto& name : faces.elements()) stalks[name] = {"u"};
    stalks["{1}"] = {"p", "q"};
    std::vector<EdgeMapSpec> maps;
    for (auto [a, b] : faces.covers()) {
      EdgeMapSpec spec{faces.name(a), faces.name(b), {}};
      for (const auto& x : stalks[faces.name(a)]) spec.map[x] = stalks[faces.name(b)].front();
      if (spec.from == "{1,3}" && spec.to == "{1}") spec.map["u"] = "q";
      maps.push_back(spec);
    }
    try {
      Diagram::build(faces, stalks, maps);
      FAIL("expected NotFunctorial");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotFunctorial);
      CHECK(std::string(e.what()).find("{1,2,3}") != std::string::npos);
    }
  }
}

TEST_CASE("sections of the doubled edge") {
  auto d = edge_22();
  const Poset& p = d.base();
  CHECK(d.stalk_size(p.index_of("{1,2}")) == 4);
  CHECK(sections(d, full_open(p)).size() == 4);
  auto vertices = make_open(p, std::vector<std::string>{"{1}", "{2}"});
  CHECK(sections(d, vertices).size() == 4);
  CHECK(has_kind(ErrorKind::EmptyOpenSet, [&] { sections(d, OpenSet{}); }));
  CHECK(has_kind(ErrorKind::NotOpen, [&] { sections(d, OpenSet{{p.index_of("{1,2}")}}); }));

  auto trivial = Diagram::trivial(p);
  for (const auto& u : enumerate_opens(p))
    if (!u.empty()) CHECK(sections(trivial, u).size() == 1);
}

TEST_CASE("section enumeration matches brute force") {
  gen::Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    auto p = gen::random_poset(rng, gen::uniform(rng, 1, 6));
    auto d = gen::random_diagram(rng, p, 2, 0.3);
    for (const auto& u : enumerate_opens(p)) {
      if (u.empty()) continue;
      std::set<std::vector<Index>> fast;
      for (const auto& s : sections(d, u)) fast.insert(s.choice);
      CHECK(fast == oracle::all_sections(d, u.members));
    }
  }
}

TEST_CASE("restriction of sections") {
  auto d = edge_22();
  const Poset& p = d.base();
  auto full = full_open(p);
  auto one = up_set(p, "{1}");
  for (const auto& s : sections(d, full)) {
    CHECK(restrict_section(d, s, full) == s);
    auto r = restrict_section(d, s, one);
    CHECK(r.choice.size() == 1);
    auto mid = restrict_section(d, s, make_open(p, std::vector<std::string>{"{1}", "{2}"}));
    CHECK(restrict_section(d, mid, one) == r);
  }
  auto small = sections(d, one).front();
  CHECK(has_kind(ErrorKind::NotSubset, [&] { restrict_section(d, small, full); }));
}

TEST_CASE("inhabited, flabby, trivial") {
  CHECK(is_inhabited(edge_22()));
  CHECK(is_flabby(edge_22()).flabby);
  CHECK_FALSE(is_trivial(edge_22()));
  auto p = edge_22().base();
  CHECK(is_trivial(Diagram::trivial(p)));
  CHECK(is_flabby(Diagram::trivial(p)).flabby);

  auto empty_stalk = Diagram::from_indices(Poset::build({"a"}, {}), {{}}, {});
  CHECK_FALSE(is_inhabited(empty_stalk));

  auto bad = not_flabby();
  auto verdict = is_flabby(bad);
  REQUIRE_FALSE(verdict.flabby);
  REQUIRE(verdict.witness);
  const auto& w = *verdict.witness;
  CHECK(w.larger == full_open(bad.base()));
  CHECK(w.smaller == make_open(bad.base(), std::vector<std::string>{"{1}", "{2}"}));
  CHECK(render_section(bad, w.section) == "{{1}:b,{2}:c}");
  // The witness is checkable: no section on the larger set restricts to it.
  for (const auto& s : sections(bad, w.larger)) CHECK_FALSE(restrict_section(bad, s, w.smaller) == w.section);
}

TEST_CASE("single-step flabbiness agrees with the definition") {
  gen::Rng rng(23);
  int flabby = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto p = gen::random_poset(rng, gen::uniform(rng, 1, 6));
    auto d = gen::random_diagram(rng, p, 2, 0.4);
    const bool fast = is_flabby(d).flabby;
    CHECK(fast == oracle::flabby(d));
    CHECK(fast == oracle::flabby_single_step(d));
    CHECK(is_inhabited(d) == oracle::inhabited(d));
    flabby += fast;
    // Any witness is checkable.
    if (auto w = is_flabby(d).witness) {
      CHECK(is_upward_closed(p, w->larger.members));
      CHECK(is_upward_closed(p, w->smaller.members));
      for (const auto& s : sections(d, w->larger)) CHECK_FALSE(restrict_section(d, s, w->smaller) == w->section);
    }
  }
  CHECK(flabby > 5);
  CHECK(flabby < 75);
}

TEST_CASE("direct image") {
  auto d = edge_22();
  const Poset& p = d.base();
  SECTION("identity") {
    auto img = direct_image(PosetMap::identity(p), d);
    for (std::size_t i = 0; i < img.opens.size(); ++i) CHECK(img.values[i] == sections(d, img.opens[i]));
    CHECK(img.collapsed.stalk(p.index_of("{1,2}")).size() == 4);
  }
  SECTION("to a point gives global sections") {
    auto point = Poset::build({"*"}, {});
    auto f = PosetMap::build(p, point, {{"{1}", "*"}, {"{2}", "*"}, {"{1,2}", "*"}});
    auto img = direct_image(f, d);
    REQUIRE(img.values.size() == 1);
    CHECK(img.values[0] == sections(d, full_open(p)));
  }
  SECTION("inclusion of an open") {
    auto a = make_open(p, std::vector<std::string>{"{1}", "{2}"});
    auto f = PosetMap::inclusion(p, a.members);
    auto sub = restrict_to_open(d, a);
    auto img = direct_image(f, sub);
    for (std::size_t i = 0; i < img.opens.size(); ++i) {
      auto meet = set_intersection(img.opens[i], a);
      if (meet.empty()) {
        CHECK(img.values[i].size() == 1);
        continue;
      }
      CHECK(img.values[i].size() == sections(d, meet).size());
    }
  }
}

TEST_CASE("inverse image") {
  auto d = edge_22();
  const Poset& p = d.base();
  CHECK(inverse_image(PosetMap::identity(p), d) == d);

  auto point = Poset::build({"*"}, {});
  auto g = Diagram::build(point, {{"*", {"x", "y"}}}, {});
  auto f = PosetMap::build(p, point, {{"{1}", "*"}, {"{2}", "*"}, {"{1,2}", "*"}});
  auto pulled = inverse_image(f, g);
  for (Index s = 0; s < p.size(); ++s) CHECK(pulled.stalk(s) == std::vector<std::string>{"x", "y"});
  for (auto [a, b] : p.covers()) CHECK(pulled.canonical_map(a, b) == std::vector<Index>{0, 1});

  auto a = make_open(p, std::vector<std::string>{"{1}", "{2}"});
  CHECK(inverse_image(PosetMap::inclusion(p, a.members), d) == restrict_to_open(d, a));
  CHECK(has_kind(ErrorKind::BaseMismatch, [&] { inverse_image(f, d); }));
}

TEST_CASE("restriction keeps flabbiness") {
  gen::Rng rng(29);
  auto sp = face_poset(simplex_complex(3));
  for (int trial = 0; trial < 10; ++trial) {
    auto d = gen::random_flabby_diagram(rng, sp);
    for (const auto& u : enumerate_opens(d.base())) {
      if (u.empty()) continue;
      auto r = restrict_to_open(d, u);
      CHECK(is_flabby(r).flabby);
      CHECK(is_inhabited(r));
    }
  }
  auto d = vertex_inflation_diagram(simplex_complex(3), std::vector<int>{2, 3, 2});
  const Poset& p = d.base();
  OpenSet below;
  below.members = down_set(p.dual(), p.index_of("{1,2}"));
  auto r = restrict_to_open(d, below);
  auto edge = vertex_inflation_diagram(simplex_complex(2), std::vector<int>{2, 3});
  CHECK(r == edge);
}

TEST_CASE("gluing over singleton overlaps") {
  auto d = vertex_inflation_diagram(simplex_complex(3), std::vector<int>{2, 1, 3});
  const Poset& p = d.base();
  auto u1 = up_set(p, "{1,2}");
  auto u2 = up_set(p, "{2,3}");
  for (Index s : set_intersection(u1, u2).members) REQUIRE(d.stalk_size(s) == 1);
  CHECK(sections(d, set_union(u1, u2)).size() == sections(d, u1).size() * sections(d, u2).size());
  CHECK(sections(d, set_union(u1, u2)).size() == 6);
}

TEST_CASE("split") {
  auto d = edge_22();
  const Poset& p = d.base();
  const Index v1 = p.index_of("{1}");
  CHECK(has_kind(ErrorKind::MinimalityViolated,
                 [&] { split_diagram(d, p.index_of("{1,2}"), {"(1:0,2:0)"}, {"(1:0,2:1)", "(1:1,2:0)", "(1:1,2:1)"}); }));
  CHECK(has_kind(ErrorKind::BadPartition, [&] { split_diagram(d, v1, {"(1:0)"}, {}); }));
  CHECK(has_kind(ErrorKind::BadPartition, [&] { split_diagram(d, v1, {"(1:0)"}, {"(1:0)", "(1:1)"}); }));
  auto s = split_diagram(d, v1, {"(1:0)"}, {"(1:1)"});
  CHECK(s.first.stalk_size(v1) == 1);
  CHECK(s.first.stalk_size(p.index_of("{2}")) == 2);
  CHECK(s.first.stalk_size(p.index_of("{1,2}")) == 2);
  CHECK(complexity(s.first) == 5);
  CHECK(complexity(d) == 8);
  CHECK(s.intersection.base().size() == 1);
  CHECK(is_flabby(s.first).flabby);
  CHECK(is_inhabited(s.second));
}
