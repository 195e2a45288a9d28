#include "detlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>

namespace detlab::graph {

Components strongly_connected_components(const BoolMatrix& adj) {
  const std::size_t n = adj.dim();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  Components out;
  out.component.assign(n, 0);
  std::size_t counter = 0;

  // Iterative Tarjan: frames hold (vertex, next neighbour to scan).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      bool descended = false;
      while (next < n) {
        const std::size_t w = next++;
        if (!adj.get(v, w)) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      const std::size_t done = v;
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = out.count;
        } while (w != done);
        ++out.count;
      }
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return out;
}

namespace {

// Residual network for unit-capacity flow with vertex splitting:
// in(x) = 2x, out(x) = 2x + 1.
class SplitNetwork {
 public:
  SplitNetwork(const BoolMatrix& adj, std::size_t source, std::size_t sink) : n_(adj.dim()), head_(2 * adj.dim(), -1) {
    for (std::size_t x = 0; x < n_; ++x)
      if (x != source && x != sink) add_edge(2 * x, 2 * x + 1);
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (x != y && adj.get(x, y)) add_edge(2 * x + 1, 2 * y);
  }

  // One BFS augmentation; returns false when no augmenting path exists.
  bool augment(std::size_t s, std::size_t t) {
    std::vector<int> via(head_.size(), -1);
    std::vector<bool> seen(head_.size(), false);
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty() && !seen[t]) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (int e = head_[x]; e != -1; e = next_[e]) {
        const std::size_t y = to_[e];
        if (cap_[e] > 0 && !seen[y]) {
          seen[y] = true;
          via[y] = e;
          queue.push_back(y);
        }
      }
    }
    if (!seen[t]) return false;
    for (std::size_t y = t; y != s;) {
      const int e = via[y];
      --cap_[e];
      ++cap_[e ^ 1];
      y = to_[e ^ 1];
    }
    return true;
  }

 private:
  void add_edge(std::size_t from, std::size_t to) {
    to_.push_back(to);
    cap_.push_back(1);
    next_.push_back(head_[from]);
    head_[from] = static_cast<int>(to_.size() - 1);
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[to]);
    head_[to] = static_cast<int>(to_.size() - 1);
  }

  std::size_t n_;
  std::vector<int> head_;
  std::vector<std::size_t> to_;
  std::vector<int> cap_;
  std::vector<int> next_;
};

}  // namespace

std::size_t vertex_disjoint_paths(const BoolMatrix& adj, std::size_t u, std::size_t v, std::size_t limit) {
  if (u == v) throw std::invalid_argument("vertex_disjoint_paths: endpoints must differ");
  SplitNetwork net(adj, u, v);
  std::size_t flow = 0;
  while (flow < limit && net.augment(2 * u + 1, 2 * v)) ++flow;
  return flow;
}

bool is_r_connected(const BoolMatrix& adj, std::size_t r) {
  const std::size_t n = adj.dim();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v || adj.get(u, v)) continue;
      if (vertex_disjoint_paths(adj, u, v, r) < r) return false;
    }
  return true;
}

std::optional<std::vector<std::size_t>> perfect_matching(const BoolMatrix& m) {
  const std::size_t n = m.dim();
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> row_of_col(n, kFree);
  std::vector<bool> visited;
  std::function<bool(std::size_t)> try_row = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!m.get(i, j) || visited[j]) continue;
      visited[j] = true;
      if (row_of_col[j] == kFree || try_row(row_of_col[j])) {
        row_of_col[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    visited.assign(n, false);
    if (!try_row(i)) return std::nullopt;
  }
  std::vector<std::size_t> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[row_of_col[j]] = j;
  return sigma;
}

}  // namespace detlab::graph
