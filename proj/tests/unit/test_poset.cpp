#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "oracles.hpp"

using namespace inflate_kit;

namespace {

Poset chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(names[i], names[i + 1]);
  return Poset::build(names, covers);
}

Poset diamond() {
  return Poset::build({"bot", "l", "r", "top"}, {{"bot", "l"}, {"bot", "r"}, {"l", "top"}, {"r", "top"}});
}

}  // namespace

TEST_CASE("build keeps covers and rejects bad input") {
  auto p = diamond();
  CHECK(p.size() == 4);
  CHECK(p.covers().size() == 4);
  CHECK(p.leq(p.index_of("bot"), p.index_of("top")));
  CHECK_FALSE(p.comparable(p.index_of("l"), p.index_of("r")));
  CHECK_FALSE(p.redundant_covers_dropped());

  SECTION("redundant pair is dropped and flagged") {
    auto q = Poset::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
    CHECK(q.covers().size() == 2);
    CHECK(q.redundant_covers_dropped());
  }
  SECTION("cycle") {
    try {
      Poset::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
      FAIL("expected a cycle error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CycleDetected);
      const std::string msg = e.what();
      CHECK(msg.find("a") != std::string::npos);
      CHECK(msg.find("c") != std::string::npos);
    }
  }
  SECTION("unknown element and duplicates") {
    CHECK_THROWS_MATCHES(Poset::build({"a"}, {{"a", "z"}}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrorKind::UnknownElement;
                         }));
    CHECK_THROWS_AS(Poset::build({"a", "a"}, {}), Error);
  }
}

TEST_CASE("dual reverses the order and is an involution") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = gen::random_poset(rng, gen::uniform(rng, 0, 8));
    auto q = p.dual();
    for (Index a = 0; a < p.size(); ++a)
      for (Index b = 0; b < p.size(); ++b) CHECK(p.leq(a, b) == q.leq(b, a));
    CHECK(q.dual() == p);
  }
}

TEST_CASE("opens are the upper sets") {
  auto p = chain(3);
  auto opens = enumerate_opens(p);
  CHECK(opens.size() == 4);  // ∅, {c2}, {c1,c2}, all

  auto anti = Poset::build({"a", "b", "c"}, {});
  CHECK(enumerate_opens(anti).size() == 8);

  gen::Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto q = gen::random_poset(rng, gen::uniform(rng, 0, 9));
    auto fast = enumerate_opens(q);
    auto slow = oracle::all_opens(q);
    std::vector<std::vector<Index>> fast_sets;
    for (const auto& u : fast) fast_sets.push_back(u.members);
    std::sort(fast_sets.begin(), fast_sets.end());
    std::sort(slow.begin(), slow.end());
    CHECK(fast_sets == slow);
    for (const auto& u : fast) CHECK(is_upward_closed(q, u.members));
  }
}

TEST_CASE("open-set helpers") {
  auto p = diamond();
  CHECK(up_set(p, "l").members == std::vector<Index>{p.index_of("l"), p.index_of("top")});
  CHECK_THROWS_AS(make_open(p, std::vector<std::string>{"l"}), Error);
  auto u = make_open(p, std::vector<std::string>{"l", "top"});
  auto v = make_open(p, std::vector<std::string>{"r", "top"});
  CHECK(set_union(u, v).size() == 3);
  CHECK(set_intersection(u, v).size() == 1);
  CHECK(full_open(p).size() == 4);

  Poset big = chain(21);
  CHECK_THROWS_MATCHES(enumerate_opens(big), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::TooLarge;
                       }));
  Limits wide;
  wide.max_open_elements = 22;
  CHECK(enumerate_opens(big, wide).size() == 22);
}

TEST_CASE("order complex counts chains") {
  CHECK(order_complex(chain(3)).face_count() == 7);
  auto k = order_complex(diamond());
  CHECK(k.count_of_dimension(0) == 4);
  CHECK(k.count_of_dimension(1) == 5);
  CHECK(k.count_of_dimension(2) == 2);
  Limits tiny;
  tiny.max_faces = 5;
  CHECK_THROWS_AS(order_complex(diamond(), tiny), Error);
}

TEST_CASE("poset maps") {
  auto p = diamond();
  auto point = Poset::build({"*"}, {});
  std::map<std::string, std::string> to_point{{"bot", "*"}, {"l", "*"}, {"r", "*"}, {"top", "*"}};
  auto f = PosetMap::build(p, point, to_point);
  CHECK_FALSE(f.is_injective());
  CHECK(f.preimage(full_open(point)).size() == 4);

  auto flip = chain(2).dual();
  CHECK_THROWS_AS(PosetMap::from_indices(chain(2), flip, {0, 1}), Error);

  auto inc = PosetMap::inclusion(p, up_set(p, "l").members);
  CHECK(inc.is_exact_embedding());
  CHECK(PosetMap::identity(p).is_exact_embedding());
}

TEST_CASE("isomorphism search") {
  auto a = Poset::build({"x", "y", "z"}, {{"x", "y"}, {"x", "z"}});
  auto b = Poset::build({"p", "q", "r"}, {{"q", "p"}, {"q", "r"}});
  auto iso = find_isomorphism(a, b);
  REQUIRE(iso);
  CHECK(is_isomorphism(a, b, *iso));
  CHECK_FALSE(find_isomorphism(a, b.dual()));

  gen::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = gen::random_poset(rng, gen::uniform(rng, 1, 8));
    // Relabel through a random permutation and search back.
    std::vector<Index> perm(p.size());
    std::iota(perm.begin(), perm.end(), Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> names;
    for (Index i = 0; i < p.size(); ++i) names.push_back("n" + std::to_string(perm[i]));
    std::vector<std::pair<Index, Index>> rel;
    for (auto [x, y] : p.covers()) rel.emplace_back(x, y);
    auto q = Poset::from_relations(names, rel);
    auto found = find_isomorphism(p, q);
    REQUIRE(found);
    CHECK(is_isomorphism(p, q, *found));
  }
}

TEST_CASE("components") {
  auto p = Poset::build({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
  CHECK(connected_components(p).size() == 2);
  CHECK(connected_components(diamond()).size() == 1);
  CHECK(connected_components(Poset{}).empty());
}
