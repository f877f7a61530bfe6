#include "gq/maxflow.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace gq {

MaxFlow::MaxFlow(int nodes) : head_(static_cast<std::size_t>(nodes)) {}

int MaxFlow::add_node() {
  head_.emplace_back();
  return nodes() - 1;
}

int MaxFlow::add_edge(int from, int to, std::int64_t cap) {
  if (cap < 0) {
    throw std::invalid_argument("negative capacity");
  }
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({to, cap, cap});
  edges_.push_back({from, 0, 0});
  head_[from].push_back(id);
  head_[to].push_back(id + 1);
  return id;
}

std::int64_t MaxFlow::flow(int edge) const { return edges_[edge].orig - edges_[edge].cap; }

bool MaxFlow::bfs(int s, int t) {
  level_.assign(head_.size(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int id : head_[v]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t pushed) {
  if (v == t) {
    return pushed;
  }
  for (auto& it = iter_[v]; it < head_[v].size(); ++it) {
    const int id = head_[v][it];
    Edge& e = edges_[id];
    if (e.cap <= 0 || level_[e.to] != level_[v] + 1) {
      continue;
    }
    const std::int64_t got = dfs(e.to, t, std::min(pushed, e.cap));
    if (got > 0) {
      e.cap -= got;
      edges_[id ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int s, int t) {
  std::int64_t total = 0;
  while (bfs(s, t)) {
    iter_.assign(head_.size(), 0);
    while (std::int64_t got = dfs(s, t, kInf)) {
      total += got;
    }
  }
  return total;
}

BoundedFlow::BoundedFlow(int nodes)
    : nodes_(nodes), net_(nodes + 2), excess_(static_cast<std::size_t>(nodes), 0) {}

int BoundedFlow::add_edge(int from, int to, std::int64_t lower, std::int64_t upper) {
  if (lower < 0 || upper < lower) {
    throw std::invalid_argument("invalid edge bounds");
  }
  excess_[to] += lower;
  excess_[from] -= lower;
  edges_.push_back({from, to, lower, net_.add_edge(from, to, upper - lower)});
  return static_cast<int>(edges_.size()) - 1;
}

bool BoundedFlow::feasible(int s, int t) {
  const int ss = nodes_;
  const int tt = nodes_ + 1;
  net_.add_edge(t, s, MaxFlow::kInf);
  std::int64_t demand = 0;
  for (int v = 0; v < nodes_; ++v) {
    if (excess_[v] > 0) {
      net_.add_edge(ss, v, excess_[v]);
      demand += excess_[v];
    } else if (excess_[v] < 0) {
      net_.add_edge(v, tt, -excess_[v]);
    }
  }
  return net_.run(ss, tt) == demand;
}

std::int64_t BoundedFlow::flow(int edge) const {
  const auto& e = edges_[edge];
  return e.lower + net_.flow(e.handle);
}

}  // namespace gq
