#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cantordiff {

enum class Verdict { In, Out, Unknown };

const char* verdict_name(Verdict v);

struct MembershipResult {
  Verdict verdict = Verdict::Unknown;
  // Out: length of the longest surviving operator sequence plus one (0 when
  // the start itself is outside the hull).
  int escape_depth = 0;
  // In: labels from the start into a cycle, then the cycle itself.
  std::vector<std::string> witness_prefix;
  std::vector<std::string> witness_cycle;
  std::size_t states = 0;
};

/// Explores the graph of surviving states reachable from `start`.
///
/// `expand(state, out)` appends (label, successor) for every successor that
/// survives. A reachable cycle means an infinite surviving orbit (In); a
/// finite acyclic reachable graph means every orbit dies (Out). Exploration
/// stops after `budget` expanded states (Unknown unless a cycle is already
/// closed among expanded states).
template <class State, class Hash, class Expand>
MembershipResult orbit_search(const State& start, Expand expand, std::size_t budget) {
  std::unordered_map<State, std::size_t, Hash> index;
  std::vector<State> states;
  std::vector<std::vector<std::pair<std::size_t, std::string>>> edges;
  std::vector<bool> expanded;

  auto intern = [&](const State& s) {
    auto [it, fresh] = index.try_emplace(s, states.size());
    if (fresh) {
      states.push_back(s);
      edges.emplace_back();
      expanded.push_back(false);
    }
    return it->second;
  };

  intern(start);
  std::deque<std::size_t> frontier{0};
  std::vector<std::pair<std::string, State>> succ;
  std::size_t done = 0;
  while (!frontier.empty() && done < budget) {
    std::size_t id = frontier.front();
    frontier.pop_front();
    succ.clear();
    expand(states[id], succ);
    for (auto& [label, s] : succ) {
      std::size_t before = states.size();
      std::size_t j = intern(s);
      if (j == before) frontier.push_back(j);
      edges[id].emplace_back(j, std::move(label));
    }
    expanded[id] = true;
    ++done;
  }

  // Iterative DFS over expanded states: detect a cycle, else longest path.
  const std::size_t n = states.size();
  std::vector<int> color(n, 0);
  std::vector<int> height(n, 0);
  std::vector<std::size_t> parent(n, n);
  std::vector<std::string> parent_label(n);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  color[0] = 1;
  MembershipResult result;
  result.states = n;
  while (!stack.empty()) {
    auto& [v, k] = stack.back();
    if (!expanded[v]) {
      color[v] = 2;
      stack.pop_back();
      continue;
    }
    if (k < edges[v].size()) {
      auto [w, label] = edges[v][k++];
      if (color[w] == 1) {
        // Back edge v -> w closes a cycle.
        std::vector<std::string> cyc{label};
        for (std::size_t x = v; x != w; x = parent[x]) cyc.push_back(parent_label[x]);
        std::vector<std::string> pre;
        for (std::size_t x = w; x != 0; x = parent[x]) pre.push_back(parent_label[x]);
        result.verdict = Verdict::In;
        result.witness_prefix.assign(pre.rbegin(), pre.rend());
        result.witness_cycle.assign(cyc.rbegin(), cyc.rend());
        return result;
      }
      if (color[w] == 0) {
        color[w] = 1;
        parent[w] = v;
        parent_label[w] = label;
        stack.emplace_back(w, 0);
      }
      continue;
    }
    int h = 0;
    for (const auto& e : edges[v]) h = std::max(h, height[e.first]);
    height[v] = h + 1;
    color[v] = 2;
    stack.pop_back();
  }
  if (!frontier.empty()) return result;
  result.verdict = Verdict::Out;
  result.escape_depth = height[0];
  return result;
}

}  // namespace cantordiff
