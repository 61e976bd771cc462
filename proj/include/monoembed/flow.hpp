#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace monoembed {

/// Dinic max-flow over an integral capacity type (std::int64_t or BigInt).
template <class Cap>
class MaxFlow {
 public:
  explicit MaxFlow(int vertices) : head_(static_cast<std::size_t>(vertices), -1) {}

  int vertices() const noexcept { return static_cast<int>(head_.size()); }

  /// Returns the arc id of u -> v; its reverse is id ^ 1.
  int add_edge(int u, int v, const Cap& cap) {
    const int id = static_cast<int>(to_.size());
    push_arc(u, v, cap);
    push_arc(v, u, Cap(0));
    return id;
  }

  Cap max_flow(int s, int t) {
    if (s == t) throw std::invalid_argument("max_flow: source equals sink");
    Cap total = 0;
    level_.assign(head_.size(), -1);
    while (bfs(s, t)) {
      iter_.assign(head_.begin(), head_.end());
      while (true) {
        Cap pushed = augment(s, t);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  /// Flow currently on arc id (original direction).
  Cap flow(int id) const { return cap_[static_cast<std::size_t>(id ^ 1)]; }
  Cap residual(int id) const { return cap_[static_cast<std::size_t>(id)]; }

  /// Vertices reachable from s in the residual graph; the minimal min-cut source side.
  std::vector<char> source_side(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
        const int v = to_[static_cast<std::size_t>(e)];
        if (!seen[static_cast<std::size_t>(v)] && cap_[static_cast<std::size_t>(e)] > 0) {
          seen[static_cast<std::size_t>(v)] = 1;
          stack.push_back(v);
        }
      }
    }
    return seen;
  }

 private:
  void push_arc(int u, int v, const Cap& cap) {
    to_.push_back(v);
    cap_.push_back(cap);
    next_.push_back(head_[static_cast<std::size_t>(u)]);
    head_[static_cast<std::size_t>(u)] = static_cast<int>(to_.size()) - 1;
  }

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
        const int v = to_[static_cast<std::size_t>(e)];
        if (level_[static_cast<std::size_t>(v)] < 0 && cap_[static_cast<std::size_t>(e)] > 0) {
          level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(v);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  // One blocking-flow augmenting path, iterative DFS with current-arc pointers.
  Cap augment(int s, int t) {
    std::vector<int>& path = path_;
    path.clear();
    int u = s;
    while (true) {
      if (u == t) {
        Cap bottleneck = cap_[static_cast<std::size_t>(path[0])];
        for (int e : path)
          if (cap_[static_cast<std::size_t>(e)] < bottleneck) bottleneck = cap_[static_cast<std::size_t>(e)];
        for (int e : path) {
          cap_[static_cast<std::size_t>(e)] -= bottleneck;
          cap_[static_cast<std::size_t>(e ^ 1)] += bottleneck;
        }
        return bottleneck;
      }
      int& e = iter_[static_cast<std::size_t>(u)];
      while (e != -1) {
        const int v = to_[static_cast<std::size_t>(e)];
        if (cap_[static_cast<std::size_t>(e)] > 0 && level_[static_cast<std::size_t>(v)] == level_[static_cast<std::size_t>(u)] + 1) break;
        e = next_[static_cast<std::size_t>(e)];
      }
      if (e == -1) {
        if (path.empty()) return Cap(0);
        level_[static_cast<std::size_t>(u)] = -1;  // dead end
        const int back = path.back();
        path.pop_back();
        u = to_[static_cast<std::size_t>(back ^ 1)];
        iter_[static_cast<std::size_t>(u)] = next_[static_cast<std::size_t>(iter_[static_cast<std::size_t>(u)])];
        continue;
      }
      path.push_back(e);
      u = to_[static_cast<std::size_t>(e)];
    }
  }

  std::vector<int> head_, next_, to_;
  std::vector<Cap> cap_;
  std::vector<int> level_, iter_, path_;
};

}  // namespace monoembed
