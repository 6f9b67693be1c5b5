#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "latdeck/swap.hpp"
#include "latdeck/swap_graph.hpp"
#include "support/fixtures.hpp"

using namespace latdeck;
using namespace latdeck::testing;

TEST_CASE("swap construction and validation") {
  CHECK_THROWS_AS(Swap({1, 1, 2}), InvalidSwapError);
  CHECK_THROWS_AS(Swap({0, 1}), InvalidSwapError);
  CHECK_THROWS_AS(Swap({1, 3}), InvalidSwapError);
  CHECK(Swap::identity(4).is_identity());
  const auto t = Swap::transposition(5, 2, 5);
  CHECK_FALSE(t.is_identity());
  CHECK(t.image(2) == 5);
  CHECK(t.image(5) == 2);
  CHECK(t.image(1) == 1);
  CHECK(t.moved_count() == 2);
}

TEST_CASE("cycle decomposition") {
  const auto t = Swap::transposition(5, 2, 5);
  CHECK(cycle_decomposition(t) ==
        std::vector<std::vector<int>>{{1}, {2, 5}, {3}, {4}});
  CHECK(cycle_decomposition(Swap::identity(3)) ==
        std::vector<std::vector<int>>{{1}, {2}, {3}});
  // 1 -> 2 -> 3 -> 1
  CHECK(cycle_decomposition(Swap({2, 3, 1, 4})) ==
        std::vector<std::vector<int>>{{1, 2, 3}, {4}});
}

TEST_CASE("contest graph of a cross-contest transposition") {
  const auto style = fig2_style();
  const auto graph = build_swap_graph(style, Swap::transposition(5, 2, 5));
  CHECK(graph.vertices == std::vector<int>{0, 1});
  CHECK(graph.edges == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(graph.component_count() == 1);
  CHECK(is_minimal(style, Swap::transposition(5, 2, 5)));
  CHECK_THROWS_AS(build_swap_graph(style, Swap::identity(5)), InvalidSwapError);
}

TEST_CASE("contest graph of a within-contest cycle") {
  const auto style = fig2_style();
  // 3-cycle inside the presidential contest
  const Swap sigma({2, 3, 1, 4, 5});
  const auto graph = build_swap_graph(style, sigma);
  CHECK(graph.vertices == std::vector<int>{0});
  CHECK(graph.edges.empty());
  CHECK(graph.component_count() == 1);
  CHECK(is_minimal(style, sigma));
}

TEST_CASE("disconnected swaps are not minimal and split per component") {
  // Five contests; swaps touching {0,1} and {3,4} give two components.
  const BallotStyle style("five",
                          {{"c1", {1, 2}, 1},
                           {"c2", {3, 4}, 1},
                           {"c3", {5, 6}, 1},
                           {"c4", {7, 8}, 1},
                           {"c5", {9, 10}, 1}});
  auto image = Swap::identity(10).image_vector();
  image[0] = 3;  // 1 -> 3 (contest 0 -> 1)
  image[2] = 1;
  image[6] = 9;  // 7 -> 9 (contest 3 -> 4)
  image[8] = 7;
  const Swap sigma(image);
  CHECK_FALSE(is_minimal(style, sigma));
  const auto graph = build_swap_graph(style, sigma);
  CHECK(graph.component_count() == 2);
  CHECK(graph.components[0] == std::vector<int>{0, 1});
  CHECK(graph.components[1] == std::vector<int>{3, 4});

  const auto parts = split_by_components(style, sigma);
  REQUIRE(parts.size() == 2);
  for (const auto& part : parts) {
    CHECK(is_minimal(style, part));
    CHECK_FALSE(part.is_identity());
  }
  // minimal swaps split into themselves
  const auto self = split_by_components(style, parts[0]);
  REQUIRE(self.size() == 1);
  CHECK(self[0] == parts[0]);
}

TEST_CASE("component split partitions moved points and recomposes") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto style = random_style(rng, n);
    const auto sigma = random_swap(rng, n);
    const auto parts = split_by_components(style, sigma);
    const auto graph = build_swap_graph(style, sigma);
    REQUIRE(static_cast<int>(parts.size()) == graph.component_count());

    std::set<int> moved_union;
    std::size_t moved_total = 0;
    for (const auto& part : parts) {
      CHECK(is_minimal(style, part));
      const auto moved = part.moved_points();
      moved_total += moved.size();
      moved_union.insert(moved.begin(), moved.end());
    }
    const auto all_moved = sigma.moved_points();
    CHECK(moved_union == std::set<int>(all_moved.begin(), all_moved.end()));
    CHECK(moved_total == all_moved.size());  // disjoint

    // parts commute pairwise and compose back to sigma
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b)
        CHECK(Swap::compose(parts[a], parts[b]) == Swap::compose(parts[b], parts[a]));
    Swap acc = Swap::identity(n);
    for (const auto& part : parts) acc = Swap::compose(acc, part);
    CHECK(acc == sigma);

    // every edge stays inside one component
    for (const auto& [u, v] : graph.edges) {
      bool within = false;
      for (const auto& comp : graph.components)
        within = within || (std::count(comp.begin(), comp.end(), u) &&
                            std::count(comp.begin(), comp.end(), v));
      CHECK(within);
    }
  }
}

TEST_CASE("undetected swaps stay undetected after splitting") {
  std::mt19937 rng(57);
  int undetected_cases = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto style = random_style(rng, n);
    const auto deck = random_feasible_deck(rng, style, static_cast<int>(rng() % 4));
    const auto sigma = random_swap(rng, n);
    if (detects(style, deck, sigma)) continue;
    ++undetected_cases;
    for (const auto& part : split_by_components(style, sigma))
      CHECK_FALSE(detects(style, deck, part));
  }
  CHECK(undetected_cases > 20);  // the sweep exercised the property
}
