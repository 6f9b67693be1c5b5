#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "latdeck/ballot.hpp"
#include "latdeck/swap.hpp"

namespace latdeck {

/// The contest graph of a non-identity swap: vertices are the contests that
/// contain a moved candidate, and two contests are joined whenever the swap
/// maps a candidate of one onto a target of the other.
struct SwapGraph {
  std::vector<int> vertices;                 // contest positions, ascending
  std::vector<std::pair<int, int>> edges;    // cross-contest pairs, c < c'
  std::vector<std::vector<int>> components;  // each ascending; ordered by min

  int component_count() const { return static_cast<int>(components.size()); }
};

inline SwapGraph build_swap_graph(const BallotStyle& style, const Swap& sigma) {
  if (sigma.size() != style.candidate_count())
    throw InvalidSwapError("swap size does not match candidate count");
  if (sigma.is_identity())
    throw InvalidSwapError("the contest graph is defined for non-identity swaps");

  const int num_contests = style.contest_count();
  std::vector<char> is_vertex(static_cast<std::size_t>(num_contests), 0);
  for (int i = 1; i <= style.candidate_count(); ++i)
    if (sigma.image(i) != i)
      is_vertex[static_cast<std::size_t>(style.contest_of(i))] = 1;

  SwapGraph graph;
  for (int c = 0; c < num_contests; ++c)
    if (is_vertex[static_cast<std::size_t>(c)]) graph.vertices.push_back(c);

  // Union-find over contests.
  std::vector<int> parent(static_cast<std::size_t>(num_contests));
  for (int c = 0; c < num_contests; ++c) parent[static_cast<std::size_t>(c)] = c;
  auto find = [&](int c) {
    while (parent[static_cast<std::size_t>(c)] != c) {
      parent[static_cast<std::size_t>(c)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(c)])];
      c = parent[static_cast<std::size_t>(c)];
    }
    return c;
  };

  for (int i = 1; i <= style.candidate_count(); ++i) {
    const int j = sigma.image(i);
    const int c = style.contest_of(i);
    const int cj = style.contest_of(j);
    if (c == cj) continue;
    graph.edges.emplace_back(std::min(c, cj), std::max(c, cj));
    parent[static_cast<std::size_t>(find(c))] = find(cj);
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());

  // Components over the vertex set, ordered by smallest contained contest.
  std::vector<int> root_order;
  std::vector<std::vector<int>> by_root(static_cast<std::size_t>(num_contests));
  for (int c : graph.vertices) {
    const int r = find(c);
    if (by_root[static_cast<std::size_t>(r)].empty()) root_order.push_back(r);
    by_root[static_cast<std::size_t>(r)].push_back(c);
  }
  std::sort(root_order.begin(), root_order.end(),
            [&](int a, int b) { return by_root[static_cast<std::size_t>(a)].front() <
                                       by_root[static_cast<std::size_t>(b)].front(); });
  for (int r : root_order) graph.components.push_back(by_root[static_cast<std::size_t>(r)]);
  return graph;
}

/// A non-identity swap is minimal when its contest graph is connected.
/// Minimal swaps make the strongest cuts: splitting a swap per component
/// never loses information.
inline bool is_minimal(const BallotStyle& style, const Swap& sigma) {
  return build_swap_graph(style, sigma).component_count() == 1;
}

/// Restrict sigma to each connected component of its contest graph. Every
/// returned swap is minimal and non-identity, and together they move exactly
/// the candidates moved by sigma.
inline std::vector<Swap> split_by_components(const BallotStyle& style, const Swap& sigma) {
  const SwapGraph graph = build_swap_graph(style, sigma);
  std::vector<Swap> parts;
  parts.reserve(graph.components.size());
  for (const auto& component : graph.components) {
    std::vector<char> in_component(static_cast<std::size_t>(style.contest_count()), 0);
    for (int c : component) in_component[static_cast<std::size_t>(c)] = 1;
    std::vector<int> image(static_cast<std::size_t>(sigma.size()));
    for (int i = 1; i <= sigma.size(); ++i)
      image[static_cast<std::size_t>(i - 1)] =
          in_component[static_cast<std::size_t>(style.contest_of(i))] ? sigma.image(i) : i;
    parts.emplace_back(std::move(image));
  }
  return parts;
}

}  // namespace latdeck
