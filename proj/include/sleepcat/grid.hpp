// Copyright 2026 The sleepcat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLEEPCAT_GRID_HPP
#define SLEEPCAT_GRID_HPP

#include <sleepcat/core.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

/**
 * \file
 * \brief Directed grid graph for the online shortest-path problem.
 *
 * Nodes are indexed `row * cols + col` with row 0 at the bottom. The source is the lower-left
 * node and the sink the upper-right one. Edges point rightward or upward, so node indices strictly
 * increase along every edge and ascending node order is a topological order. Rightward edges are
 * numbered first (row-major), then upward edges (row-major).
 */

namespace sleepcat {

/// Per-edge boolean mask, one byte per edge.
using EdgeMask = std::vector<std::uint8_t>;

class GridWorld {
 public:
  struct Edge {
    int tail;
    int head;
  };

  GridWorld(int rows, int cols, double edge_avail_prob = 1.0)
      : rows_(rows), cols_(cols), edge_avail_prob_(edge_avail_prob) {
    if (rows < 1 || cols < 1 || rows * cols < 2) {
      throw std::invalid_argument("grid needs at least two nodes");
    }
    if (!(edge_avail_prob >= 0.0 && edge_avail_prob <= 1.0)) {
      throw std::invalid_argument("edge availability probability outside [0, 1]");
    }
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c + 1 < cols; ++c) {
        edges_.push_back({node(r, c), node(r, c + 1)});
      }
    }
    for (int r = 0; r + 1 < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        edges_.push_back({node(r, c), node(r + 1, c)});
      }
    }
    out_.resize(static_cast<std::size_t>(num_nodes()));
    for (int e = 0; e < num_edges(); ++e) {
      out_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].tail)].push_back(e);
    }
  }

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] double edge_avail_prob() const { return edge_avail_prob_; }
  [[nodiscard]] int num_nodes() const { return rows_ * cols_; }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges_.size()); }
  /// Every source-sink path has exactly this many edges.
  [[nodiscard]] int path_length() const { return rows_ + cols_ - 2; }
  [[nodiscard]] int node(int r, int c) const { return r * cols_ + c; }
  [[nodiscard]] int source() const { return 0; }
  [[nodiscard]] int sink() const { return num_nodes() - 1; }
  [[nodiscard]] const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  [[nodiscard]] std::span<const int> out_edges(int node) const { return out_[static_cast<std::size_t>(node)]; }

  [[nodiscard]] ProblemDims dims(long horizon) const { return {num_edges(), path_length(), horizon}; }

  /// Edges of `kept` whose tail is reachable from the source through kept edges.
  [[nodiscard]] EdgeMask forward_reachable(const EdgeMask& kept) const {
    std::vector<std::uint8_t> reach(static_cast<std::size_t>(num_nodes()), 0);
    reach[static_cast<std::size_t>(source())] = 1;
    EdgeMask result(kept.size(), 0);
    for (int u = 0; u < num_nodes(); ++u) {
      if (!reach[static_cast<std::size_t>(u)]) continue;
      for (int e : out_edges(u)) {
        if (kept[static_cast<std::size_t>(e)]) {
          result[static_cast<std::size_t>(e)] = 1;
          reach[static_cast<std::size_t>(edge(e).head)] = 1;
        }
      }
    }
    return result;
  }

  /// Edges of `kept` lying on at least one source-sink path made of kept edges. Empty when the
  /// sink is unreachable.
  [[nodiscard]] EdgeMask path_support(const EdgeMask& kept) const {
    EdgeMask reachable = forward_reachable(kept);
    std::vector<std::uint8_t> coreach(static_cast<std::size_t>(num_nodes()), 0);
    coreach[static_cast<std::size_t>(sink())] = 1;
    for (int u = num_nodes() - 1; u >= 0; --u) {
      for (int e : out_edges(u)) {
        if (reachable[static_cast<std::size_t>(e)] && coreach[static_cast<std::size_t>(edge(e).head)]) {
          coreach[static_cast<std::size_t>(u)] = 1;
        }
      }
    }
    EdgeMask support(kept.size(), 0);
    for (int e = 0; e < num_edges(); ++e) {
      support[static_cast<std::size_t>(e)] =
          reachable[static_cast<std::size_t>(e)] && coreach[static_cast<std::size_t>(edge(e).head)];
    }
    return support;
  }

 private:
  int rows_;
  int cols_;
  double edge_avail_prob_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
};

namespace detail {

inline std::vector<int> trace_path(const GridWorld& world, std::span<const int> next_edge, int from) {
  std::vector<int> path;
  for (int u = from; u != world.sink();) {
    const int e = next_edge[static_cast<std::size_t>(u)];
    path.push_back(e);
    u = world.edge(e).head;
  }
  std::sort(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Minimum-weight source-sink path over the edges in `available`.
/**
 * Dynamic program over the reverse topological order, exact for negative weights. Among paths of
 * equal total weight the lexicographically smallest sorted edge set wins; the choice decomposes
 * because inserting a common edge into two equal-length sets preserves their order.
 *
 * Throws Infeasible when no path exists.
 */
inline Action grid_argmin(const GridWorld& world, const EdgeMask& available, std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != world.num_edges() ||
      static_cast<int>(available.size()) != world.num_edges()) {
    throw std::invalid_argument("grid_argmin: dimension mismatch");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::size_t>(world.num_nodes());
  std::vector<double> cost(n, kInf);
  std::vector<int> next_edge(n, -1);
  cost[static_cast<std::size_t>(world.sink())] = 0.0;
  for (int u = world.sink() - 1; u >= 0; --u) {
    const auto ui = static_cast<std::size_t>(u);
    for (int e : world.out_edges(u)) {
      const auto ei = static_cast<std::size_t>(e);
      const auto v = static_cast<std::size_t>(world.edge(e).head);
      if (!available[ei] || cost[v] == kInf) continue;
      const double candidate = weights[ei] + cost[v];
      if (candidate < cost[ui]) {
        cost[ui] = candidate;
        next_edge[ui] = e;
      } else if (candidate == cost[ui]) {
        const int previous = next_edge[ui];
        next_edge[ui] = e;
        auto with_e = detail::trace_path(world, next_edge, u);
        next_edge[ui] = previous;
        if (with_e < detail::trace_path(world, next_edge, u)) next_edge[ui] = e;
      }
    }
  }
  if (cost[static_cast<std::size_t>(world.source())] == kInf) {
    throw Infeasible("grid_argmin: sink unreachable from source");
  }
  return Action(detail::trace_path(world, next_edge, world.source()));
}

/// Number of source-sink paths from every node using only `available` edges.
inline std::vector<double> count_paths_to_sink(const GridWorld& world, const EdgeMask& available) {
  std::vector<double> count(static_cast<std::size_t>(world.num_nodes()), 0.0);
  count[static_cast<std::size_t>(world.sink())] = 1.0;
  for (int u = world.sink() - 1; u >= 0; --u) {
    for (int e : world.out_edges(u)) {
      if (available[static_cast<std::size_t>(e)]) {
        count[static_cast<std::size_t>(u)] += count[static_cast<std::size_t>(world.edge(e).head)];
      }
    }
  }
  return count;
}

}  // namespace sleepcat

#endif
