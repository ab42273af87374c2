#include "traintrack/universe.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace traintrack {

namespace {

using Matrix = std::vector<std::vector<int>>;  // symmetric; diagonal counts loops

std::string edge_label(int i) { return i < 26 ? std::string(1, static_cast<char>('a' + i)) : "e" + std::to_string(i); }

bool connected(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w) {
      if (!seen[w] && m[v][w] > 0) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::vector<int> encode(const Matrix& m, const std::vector<int>& perm) {
  const int n = static_cast<int>(m.size());
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) out.push_back(m[perm[i]][perm[j]]);
  }
  return out;
}

// Vertex colors refined by neighbourhood multisets; permutations only mix
// vertices of equal color.
std::vector<int> refined_colors(const Matrix& m, const std::vector<int>& degrees) {
  const int n = static_cast<int>(m.size());
  std::vector<int> color(n);
  for (int v = 0; v < n; ++v) color[v] = degrees[v] * 8 + m[v][v];
  for (int round = 0; round < n; ++round) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].push_back(color[v]);
      std::vector<int> nb;
      for (int w = 0; w < n; ++w) {
        if (w != v && m[v][w] > 0) nb.push_back(color[w] * 8 + m[v][w]);
      }
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    }
    const bool stable = std::set<int>(next.begin(), next.end()).size() == std::set<int>(color.begin(), color.end()).size();
    color = next;
    if (stable) break;
  }
  return color;
}

std::vector<int> canonical_code(const Matrix& m, const std::vector<int>& degrees) {
  const int n = static_cast<int>(m.size());
  const auto color = refined_colors(m, degrees);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int x, int y) { return color[x] != color[y] ? color[x] < color[y] : x < y; });
  // blocks of equal color
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && color[perm[j]] == color[perm[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::vector<int> best;
  std::vector<int> cur = perm;
  auto recurse = [&](auto&& self, std::size_t b) -> void {
    if (b == blocks.size()) {
      auto code = encode(m, cur);
      if (best.empty() || code < best) best = std::move(code);
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(cur.begin() + lo, cur.begin() + hi);
    do {
      self(self, b + 1);
    } while (std::next_permutation(cur.begin() + lo, cur.begin() + hi));
  };
  recurse(recurse, 0);
  return best;
}

OrientedGraph to_graph(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < m[i][j]; ++k) {
        edges.push_back({edge_label(static_cast<int>(edges.size())), i, j});
      }
    }
  }
  return OrientedGraph(n, edges);
}

}  // namespace

std::vector<OrientedGraph> enumerate_multigraphs(const std::vector<int>& degrees) {
  if (!std::is_sorted(degrees.rbegin(), degrees.rend())) throw StructuralError("valences must be sorted descending");
  const int n = static_cast<int>(degrees.size());
  if (n == 0) return {};
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) slots.emplace_back(i, j);
  }
  Matrix m(n, std::vector<int>(n, 0));
  std::vector<int> left = degrees;
  std::set<std::vector<int>> seen;
  std::vector<OrientedGraph> out;

  auto dfs = [&](auto&& self, std::size_t s) -> void {
    if (s == slots.size()) {
      if (std::any_of(left.begin(), left.end(), [](int x) { return x != 0; })) return;
      if (!connected(m)) return;
      if (seen.insert(canonical_code(m, degrees)).second) out.push_back(to_graph(m));
      return;
    }
    const auto [i, j] = slots[s];
    // once row i is finished its remaining valence must be used up
    const bool last_in_row = j == n - 1;
    const int cost = i == j ? 2 : 1;
    const int max_k = i == j ? left[i] / 2 : std::min(left[i], left[j]);
    for (int k = max_k; k >= 0; --k) {
      if (last_in_row && left[i] - cost * k != 0) continue;
      m[i][j] = m[j][i] = k;
      left[i] -= cost * k;
      if (i != j) left[j] -= k;
      self(self, s + 1);
      left[i] += cost * k;
      if (i != j) left[j] += k;
    }
    m[i][j] = m[j][i] = 0;
  };
  dfs(dfs, 0);
  return out;
}

std::vector<OrientedGraph> build_universe(int rank) {
  if (rank < 3 || rank > 5) throw DomainError("universe rank must be 3, 4 or 5");
  std::vector<int> degrees(2 * rank - 3, 3);
  degrees[0] = 4;
  return enumerate_multigraphs(degrees);
}

std::vector<OrientedGraph> trivalent_graphs(int rank) {
  if (rank < 2) throw DomainError("trivalent graphs need rank at least 2");
  return enumerate_multigraphs(std::vector<int>(2 * rank - 2, 3));
}

}  // namespace traintrack
