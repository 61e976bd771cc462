#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace monoembed {

/// Left-to-right adjacency in compressed rows.
struct BipartiteGraph {
  int left = 0;
  int right = 0;
  std::vector<int> offsets{0};
  std::vector<int> targets;

  void add_row(const std::vector<int>& row) {
    targets.insert(targets.end(), row.begin(), row.end());
    offsets.push_back(static_cast<int>(targets.size()));
    ++left;
  }
};

/// Hopcroft-Karp. match_left[u] = partner or -1.
struct MatchingResult {
  std::vector<int> match_left;
  std::vector<int> match_right;
  int size = 0;
};

inline MatchingResult hopcroft_karp(const BipartiteGraph& g) {
  constexpr int kInf = std::numeric_limits<int>::max();
  MatchingResult res;
  res.match_left.assign(static_cast<std::size_t>(g.left), -1);
  res.match_right.assign(static_cast<std::size_t>(g.right), -1);
  std::vector<int> dist(static_cast<std::size_t>(g.left));
  std::vector<int> it(static_cast<std::size_t>(g.left));

  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < g.left; ++u) {
      if (res.match_left[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = 0;
        q.push(u);
      } else {
        dist[static_cast<std::size_t>(u)] = kInf;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int k = g.offsets[static_cast<std::size_t>(u)]; k < g.offsets[static_cast<std::size_t>(u) + 1]; ++k) {
        const int w = res.match_right[static_cast<std::size_t>(g.targets[static_cast<std::size_t>(k)])];
        if (w < 0) {
          found = true;
        } else if (dist[static_cast<std::size_t>(w)] == kInf) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the layered graph.
  auto dfs = [&](int root) {
    std::vector<int> stack{root};
    std::vector<int> via;  // right vertex used to reach stack[i+1]
    while (!stack.empty()) {
      const int u = stack.back();
      bool advanced = false;
      for (int& k = it[static_cast<std::size_t>(u)]; k < g.offsets[static_cast<std::size_t>(u) + 1]; ++k) {
        const int v = g.targets[static_cast<std::size_t>(k)];
        const int w = res.match_right[static_cast<std::size_t>(v)];
        if (w < 0) {
          // Augment along the stack.
          via.push_back(v);
          for (std::size_t i = 0; i < stack.size(); ++i) {
            res.match_left[static_cast<std::size_t>(stack[i])] = via[i];
            res.match_right[static_cast<std::size_t>(via[i])] = stack[i];
          }
          return true;
        }
        if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1) {
          via.push_back(v);
          stack.push_back(w);
          ++k;
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[static_cast<std::size_t>(u)] = kInf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    for (int u = 0; u < g.left; ++u) it[static_cast<std::size_t>(u)] = g.offsets[static_cast<std::size_t>(u)];
    for (int u = 0; u < g.left; ++u)
      if (res.match_left[static_cast<std::size_t>(u)] < 0 && dfs(u)) ++res.size;
  }
  return res;
}

}  // namespace monoembed
