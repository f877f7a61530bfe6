#pragma once

#include <cstdint>
#include <vector>

namespace gq {

/// Dinic max-flow on an explicit graph.
class MaxFlow {
 public:
  static constexpr std::int64_t kInf = std::int64_t{1} << 60;

  explicit MaxFlow(int nodes);

  int add_node();
  /// Returns an edge handle usable with flow().
  int add_edge(int from, int to, std::int64_t cap);
  std::int64_t run(int s, int t);
  std::int64_t flow(int edge) const;
  int nodes() const { return static_cast<int>(head_.size()); }

 private:
  struct Edge {
    int to;
    std::int64_t cap;
    std::int64_t orig;
  };

  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t pushed);

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> head_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

/// Feasible s-t flow with lower and upper bounds on edges.
class BoundedFlow {
 public:
  explicit BoundedFlow(int nodes);

  int add_edge(int from, int to, std::int64_t lower, std::int64_t upper);
  /// True when some flow from s to t meets every bound.
  bool feasible(int s, int t);
  /// Flow on the edge in the feasible solution, lower bound included.
  std::int64_t flow(int edge) const;

 private:
  struct Bounded {
    int from;
    int to;
    std::int64_t lower;
    int handle;
  };

  int nodes_;
  MaxFlow net_;
  std::vector<std::int64_t> excess_;
  std::vector<Bounded> edges_;
};

}  // namespace gq
