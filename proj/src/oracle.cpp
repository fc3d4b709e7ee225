#include "dyncut/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace dyncut::oracle {

namespace {

void check_enum(int n, const Budget& b) {
  if (n > b.max_enum_vertices || n > 62)
    throw BudgetExceeded("cut enumeration over budget: n=" + std::to_string(n));
}

void check_partition(int n, const Budget& b) {
  if (n > b.max_partition_vertices)
    throw BudgetExceeded("partition enumeration over budget: n=" +
                         std::to_string(n));
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), mat_(n, std::vector<Weight>(n, 0)) {
  for (const auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v)
      throw std::invalid_argument("oracle: bad edge");
    mat_[e.u][e.v] += e.cap;
    mat_[e.v][e.u] += e.cap;
  }
}

Weight cut_value(const Graph& g, const std::vector<bool>& side) {
  Weight total = 0;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (side[u] != side[v]) total += g.cap(u, v);
  return total;
}

Weight cut_value_mask(const Graph& g, std::uint64_t mask) {
  Weight total = 0;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (((mask >> u) & 1) != ((mask >> v) & 1)) total += g.cap(u, v);
  return total;
}

void enumerate_cuts(const Graph& g,
                    const std::function<void(std::uint64_t, Weight)>& f,
                    const Budget& b) {
  check_enum(g.n(), b);
  if (g.n() < 2) return;
  std::uint64_t limit = 1ULL << (g.n() - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask)
    f(mask, cut_value_mask(g, mask));
}

FlowResult max_flow(const Graph& g, int s, int t, const Budget& b) {
  if (static_cast<int>(g.edges().size()) > b.max_flow_edges)
    throw BudgetExceeded("max-flow over budget");
  int n = g.n();
  std::vector<std::vector<Weight>> res(n, std::vector<Weight>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) res[u][v] = g.cap(u, v);
  FlowResult out;
  if (s == t) throw std::invalid_argument("oracle: s == t");
  for (;;) {
    std::vector<int> parent(n, -1);
    parent[s] = s;
    std::deque<int> q{s};
    while (!q.empty() && parent[t] < 0) {
      int u = q.front();
      q.pop_front();
      for (int v = 0; v < n; ++v)
        if (parent[v] < 0 && res[u][v] > 0) {
          parent[v] = u;
          q.push_back(v);
        }
    }
    if (parent[t] < 0) {
      out.source_side.assign(n, false);
      for (int v = 0; v < n; ++v) out.source_side[v] = parent[v] >= 0;
      return out;
    }
    Weight aug = std::numeric_limits<Weight>::max();
    for (int v = t; v != s; v = parent[v])
      aug = std::min(aug, res[parent[v]][v]);
    for (int v = t; v != s; v = parent[v]) {
      res[parent[v]][v] -= aug;
      res[v][parent[v]] += aug;
    }
    out.value += aug;
  }
}

Weight exact_min_cut(const Graph& g, int s, int t, const Budget& b) {
  return max_flow(g, s, t, b).value;
}

Weight min_cut_by_enumeration(const Graph& g, int s, int t, const Budget& b) {
  Weight best = std::numeric_limits<Weight>::max();
  enumerate_cuts(
      g,
      [&](std::uint64_t mask, Weight val) {
        if (((mask >> s) & 1) != ((mask >> t) & 1)) best = std::min(best, val);
      },
      b);
  return best;
}

Weight edge_connectivity(const Graph& g, std::size_t edge_index,
                         const Budget& b) {
  const auto& e = g.edges().at(edge_index);
  return exact_min_cut(g, e.u, e.v, b);
}

bool less(const Ratio& a, const Ratio& b) {
  return static_cast<__int128>(a.num) * b.den <
         static_cast<__int128>(b.num) * a.den;
}

SparsestCut exact_sparsest_cut(const Graph& g, const std::vector<Weight>& w,
                               const Budget& b) {
  Weight total = std::accumulate(w.begin(), w.end(), Weight{0});
  SparsestCut best;
  bool have = false;
  enumerate_cuts(
      g,
      [&](std::uint64_t mask, Weight val) {
        Weight ws = 0;
        for (int v = 0; v < g.n(); ++v)
          if ((mask >> v) & 1) ws += w[v];
        Weight den = std::min(ws, total - ws);
        if (den <= 0) return;
        Ratio r{val, den};
        if (!have || less(r, best.psi)) {
          best.psi = r;
          best.mask = mask;
          have = true;
        }
      },
      b);
  if (!have) throw std::invalid_argument("oracle: no weighted cut");
  return best;
}

Weight partition_cost(const Graph& g, const std::vector<int>& block) {
  Weight total = 0;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (block[u] != block[v]) total += g.cap(u, v);
  return total;
}

namespace {

// Assigns every non-terminal to one of `blocks` blocks in all possible ways;
// terminals are fixed by `fixed` (-1 for free vertices).
void assign_rest(const Graph& g, std::vector<int>& block,
                 const std::vector<int>& free_vertices, std::size_t idx,
                 int blocks, PartitionCut& best, bool& have) {
  if (idx == free_vertices.size()) {
    Weight c = partition_cost(g, block);
    if (!have || c < best.value) {
      best.value = c;
      best.block = block;
      have = true;
    }
    return;
  }
  for (int b = 0; b < blocks; ++b) {
    block[free_vertices[idx]] = b;
    assign_rest(g, block, free_vertices, idx + 1, blocks, best, have);
  }
}

}  // namespace

PartitionCut exact_multiway(const Graph& g, const std::vector<int>& terminals,
                            const Budget& b) {
  check_partition(g.n(), b);
  std::vector<int> block(g.n(), -1);
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    if (block[terminals[i]] >= 0)
      throw std::invalid_argument("oracle: repeated terminal");
    block[terminals[i]] = static_cast<int>(i);
  }
  std::vector<int> rest;
  for (int v = 0; v < g.n(); ++v)
    if (block[v] < 0) rest.push_back(v);
  PartitionCut best;
  bool have = false;
  assign_rest(g, block, rest, 0, static_cast<int>(terminals.size()), best,
              have);
  return best;
}

PartitionCut exact_multicut(const Graph& g,
                            const std::vector<std::pair<int, int>>& pairs,
                            const Budget& b) {
  check_partition(g.n(), b);
  // An optimal solution can be taken to have every block contain a terminal,
  // so enumerate feasible groupings of the terminals and then the rest.
  std::vector<int> terms;
  for (auto [s, t] : pairs) {
    if (s == t) throw std::invalid_argument("oracle: pair with s == t");
    terms.push_back(s);
    terms.push_back(t);
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  std::vector<int> rest;
  for (int v = 0; v < g.n(); ++v)
    if (!std::binary_search(terms.begin(), terms.end(), v)) rest.push_back(v);

  PartitionCut best;
  bool have = false;
  std::vector<int> block(g.n(), -1);
  std::function<void(std::size_t, int)> group = [&](std::size_t i, int used) {
    if (i == terms.size()) {
      for (auto [s, t] : pairs)
        if (block[s] == block[t]) return;
      assign_rest(g, block, rest, 0, used, best, have);
      return;
    }
    for (int b2 = 0; b2 <= used; ++b2) {
      block[terms[i]] = b2;
      group(i + 1, std::max(used, b2 + 1));
    }
    block[terms[i]] = -1;
  };
  group(0, 0);
  return best;
}

std::vector<std::uint64_t> kruskal_msf(
    int n, const std::vector<Edge>& edges,
    const std::function<std::pair<std::uint64_t, std::uint64_t>(const Edge&)>&
        key) {
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key(edges[a]) < key(edges[b]);
  });
  Dsu dsu(n);
  std::vector<std::uint64_t> out;
  for (auto i : order)
    if (dsu.unite(edges[i].u, edges[i].v)) out.push_back(edges[i].id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> tree_path(int n, const std::vector<Edge>& tree, int u,
                                   int v) {
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < tree.size(); ++i) {
    adj[tree[i].u].push_back({tree[i].v, i});
    adj[tree[i].v].push_back({tree[i].u, i});
  }
  std::vector<int> prev(n, -1);
  std::vector<std::size_t> prev_edge(n, 0);
  prev[u] = u;
  std::deque<int> q{u};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto [y, i] : adj[x])
      if (prev[y] < 0) {
        prev[y] = x;
        prev_edge[y] = i;
        q.push_back(y);
      }
  }
  if (prev[v] < 0) throw std::invalid_argument("oracle: not connected in tree");
  std::vector<std::size_t> path;
  for (int x = v; x != u; x = prev[x]) path.push_back(prev_edge[x]);
  return path;
}

double naive_average_stretch(int n, const std::vector<Edge>& tree,
                             const std::vector<Edge>& edges,
                             const std::map<std::uint64_t, double>& length) {
  if (edges.empty()) return 0;
  double total = 0;
  for (const auto& e : edges) {
    double pl = 0;
    for (auto i : tree_path(n, tree, e.u, e.v)) pl += length.at(tree[i].id);
    total += pl / length.at(e.id);
  }
  return total / static_cast<double>(edges.size());
}

std::map<std::uint64_t, Weight> naive_tree_capacities(
    int n, const std::vector<Edge>& tree, const std::vector<Edge>& edges) {
  std::map<std::uint64_t, Weight> out;
  for (const auto& t : tree) out[t.id] = 0;
  for (const auto& e : edges)
    for (auto i : tree_path(n, tree, e.u, e.v)) out[tree[i].id] += e.cap;
  return out;
}

std::vector<std::tuple<std::uint64_t, int, int, Weight>>
contract_from_definition(int n, const std::vector<Edge>& edges,
                         const std::vector<Edge>& forest,
                         const std::vector<int>& roots) {
  Dsu dsu(n);
  for (const auto& f : forest)
    if (!dsu.unite(f.u, f.v))
      throw std::invalid_argument("oracle: forest has a cycle");
  std::vector<int> root_of_comp(n, -1);
  for (int r : roots) {
    int c = dsu.find(r);
    if (root_of_comp[c] >= 0)
      throw std::invalid_argument("oracle: two roots in one component");
    root_of_comp[c] = r;
  }
  std::vector<std::tuple<std::uint64_t, int, int, Weight>> out;
  for (const auto& e : edges) {
    int a = dsu.find(e.u), b = dsu.find(e.v);
    if (a == b) continue;
    int ra = root_of_comp[a], rb = root_of_comp[b];
    if (ra < 0 || rb < 0)
      throw std::invalid_argument("oracle: component without a root");
    out.emplace_back(e.id, std::min(ra, rb), std::max(ra, rb), e.cap);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool connected_without(int n, const std::vector<Edge>& edges,
                       const std::vector<bool>& removed, int s, int t) {
  Dsu dsu(n);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (!removed[i]) dsu.unite(edges[i].u, edges[i].v);
  return dsu.find(s) == dsu.find(t);
}

}  // namespace dyncut::oracle
