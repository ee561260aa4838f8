#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "graphhom/chain_complex.hpp"
#include "graphhom/ribbon.hpp"

namespace graphhom {

// Q-linear combination of canonical oriented generators.
using GraphChain = std::map<RibbonGraph, Rational>;

inline void chain_add(GraphChain& chain, const RibbonGraph& g, const Rational& c) {
  if (c == 0) return;
  auto it = chain.find(g);
  if (it == chain.end())
    chain[g] = c;
  else {
    it->second += c;
    if (it->second == 0) chain.erase(it);
  }
}

struct ContractedEdge {
  RibbonGraph graph; // canonical form
  int sign;
};

// Contracts a non-loop edge of a canonical generator. The orientation rule is
// "move e to the last slot, contract, compare edge orders": the sign is the
// parity of that move times the parity relating the inherited edge order to
// the canonical order of the image. Returns nullopt when the image class is
// killed by an odd automorphism.
inline std::optional<ContractedEdge> contract_edge(const RibbonGraph& g, int edge_index) {
  auto edges = canonical_edges(g);
  if (edge_index < 0 || edge_index >= static_cast<int>(edges.size()))
    throw validation_error("edge index out of range");
  const int h = edges[edge_index].first;
  const int k = edges[edge_index].second;

  // loop test: k in the sigma-cycle of h
  for (int x = g.sigma[h]; ; x = g.sigma[x]) {
    if (x == k) throw validation_error("cannot contract a loop");
    if (x == h) break;
  }

  const int N = g.darts();
  // splice the two vertex cycles
  std::vector<int> sigma = g.sigma;
  int pre_h = -1, pre_k = -1;
  for (int x = 0; x < N; ++x) {
    if (sigma[x] == h) pre_h = x;
    if (sigma[x] == k) pre_k = x;
  }
  int sh = sigma[h], sk = sigma[k];
  sigma[pre_h] = sk;
  sigma[pre_k] = sh;

  // drop darts h, k and renumber
  std::vector<int> newid(N, -1);
  int next = 0;
  for (int x = 0; x < N; ++x)
    if (x != h && x != k) newid[x] = next++;
  RibbonGraph out;
  out.sigma.resize(N - 2);
  out.iota.resize(N - 2);
  out.label.resize(N - 2);
  for (int x = 0; x < N; ++x) {
    if (x == h || x == k) continue;
    out.sigma[newid[x]] = newid[sigma[x]];
    out.iota[newid[x]] = newid[g.iota[x]];
    out.label[newid[x]] = g.label[x];
  }

  // boundary structure must carry over labels unchanged
  for (const auto& orbit : out.boundary_cycles())
    for (int x : orbit)
      if (out.label[x] != out.label[orbit[0]])
        throw validation_error("contraction broke boundary labels");

  CanonicalForm canon = canonicalize(out);
  if (canon.killed) return std::nullopt;

  // parity of moving e last in the source order
  int m = static_cast<int>(edges.size());
  int sign = ((m - 1 - edge_index) % 2 == 0) ? 1 : -1;

  // inherited edge order vs canonical edge order of the image
  std::vector<int> inherited; // canonical edge ids of the image, in source order
  auto image_edges = canonical_edges(canon.graph);
  std::map<std::pair<int, int>, int> image_rank;
  for (int i = 0; i < static_cast<int>(image_edges.size()); ++i) image_rank[image_edges[i]] = i;
  for (int i = 0; i < m; ++i) {
    if (i == edge_index) continue;
    int a = canon.relabeling[newid[edges[i].first]];
    int b = canon.relabeling[newid[edges[i].second]];
    if (a > b) std::swap(a, b);
    inherited.push_back(image_rank.at({a, b}));
  }
  sign *= detail::permutation_sign(inherited);
  return ContractedEdge{canon.graph, sign};
}

// d(Gamma) = sum over non-loop edges of the signed contraction.
inline GraphChain graph_differential(const RibbonGraph& g) {
  GraphChain out;
  auto edges = canonical_edges(g);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    // skip loops
    bool loop = false;
    for (int x = g.sigma[edges[e].first]; ; x = g.sigma[x]) {
      if (x == edges[e].second) {
        loop = true;
        break;
      }
      if (x == edges[e].first) break;
    }
    if (loop) continue;
    if (auto c = contract_edge(g, e)) chain_add(out, c->graph, rat(c->sign));
  }
  return out;
}

inline GraphChain graph_differential(const GraphChain& chain) {
  GraphChain out;
  for (const auto& [g, c] : chain)
    for (const auto& [img, s] : graph_differential(g)) chain_add(out, img, c * s);
  return out;
}

// Everything the enumerator produces for one (g, n): surviving canonical
// generators and killed classes, both grouped by edge count.
struct RibbonCensus {
  int genus = 0;
  int boundaries = 0;
  int m_min = 0;
  int m_max = 0;
  std::map<int, std::vector<RibbonGraph>> generators;
  std::map<int, std::vector<RibbonGraph>> killed;
};

namespace detail {

// Connected multigraphs on v labeled vertices with m edges and all valences
// >= 3, encoded as counts per vertex pair (loops allowed).
inline void enumerate_multigraphs(int v, int m, std::vector<std::map<std::pair<int, int>, int>>& out) {
  std::vector<std::pair<int, int>> slots; // (i, j), i <= j
  for (int i = 0; i < v; ++i)
    for (int j = i; j < v; ++j) slots.push_back({i, j});
  std::vector<int> counts(slots.size(), 0);
  auto valences_ok = [&]() {
    for (int i = 0; i < v; ++i) {
      int val = 0;
      for (size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].first == i) val += counts[s];
        if (slots[s].second == i) val += counts[s];
      }
      if (val < 3) return false;
    }
    return true;
  };
  auto connected_ok = [&]() {
    std::vector<int> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](auto&& self, int x) -> int {
      return parent[x] == x ? x : parent[x] = self(self, parent[x]);
    };
    for (size_t s = 0; s < slots.size(); ++s)
      if (counts[s] > 0) parent[find(find, slots[s].first)] = find(find, slots[s].second);
    int root = find(find, 0);
    for (int i = 1; i < v; ++i)
      if (find(find, i) != root) return false;
    return true;
  };
  auto rec = [&](auto&& self, size_t slot, int left) -> void {
    if (slot == slots.size()) {
      if (left == 0 && valences_ok() && connected_ok()) {
        std::map<std::pair<int, int>, int> mg;
        for (size_t s = 0; s < slots.size(); ++s)
          if (counts[s]) mg[slots[s]] = counts[s];
        out.push_back(std::move(mg));
      }
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[slot] = c;
      self(self, slot + 1, left - c);
    }
    counts[slot] = 0;
  };
  rec(rec, 0, m);
}

} // namespace detail

// All isomorphism classes of ribbon graphs with genus g and n labeled
// boundary components, m ranging over the stable interval
// [2g + n - 1, 6g - 6 + 3n]. Classes with an odd automorphism are reported
// separately as killed.
inline RibbonCensus enumerate_ribbon_graphs(int genus, int n) {
  const int dim_top = 6 * genus - 6 + 3 * n;
  if (dim_top <= 0) throw validation_error("unstable (g, n): 6g - 6 + 3n must be positive");
  if (dim_top > 9) throw budget_error("ribbon census capped at 6g - 6 + 3n <= 9");
  const int chi = 2 - 2 * genus - n;

  RibbonCensus census;
  census.genus = genus;
  census.boundaries = n;
  census.m_min = 1 - chi;
  census.m_max = dim_top;

  for (int m = census.m_min; m <= census.m_max; ++m) {
    census.generators[m];
    census.killed[m];
    const int v = m + chi;
    if (v < 1 || 2 * m < 3 * v) continue;
    std::vector<std::map<std::pair<int, int>, int>> multigraphs;
    detail::enumerate_multigraphs(v, m, multigraphs);

    std::set<std::vector<int>> seen_generators, seen_killed;
    for (const auto& mg : multigraphs) {
      // darts per vertex
      std::vector<std::vector<int>> at_vertex(v);
      std::vector<int> iota(2 * m);
      int dart = 0;
      for (const auto& [pair, count] : mg)
        for (int c = 0; c < count; ++c) {
          int a = dart++, b = dart++;
          iota[a] = b;
          iota[b] = a;
          at_vertex[pair.first].push_back(a);
          at_vertex[pair.second].push_back(b);
        }

      // all rotation systems: first dart of each vertex pinned
      std::vector<std::vector<int>> tails(v);
      for (int i = 0; i < v; ++i) {
        tails[i] = std::vector<int>(at_vertex[i].begin() + 1, at_vertex[i].end());
        std::sort(tails[i].begin(), tails[i].end());
      }
      std::vector<std::vector<int>> rotation(v);
      auto emit = [&]() {
        RibbonGraph g;
        g.sigma.assign(2 * m, -1);
        g.iota = iota;
        g.label.assign(2 * m, 0);
        for (int i = 0; i < v; ++i) {
          const auto& cyc = rotation[i];
          for (size_t p = 0; p < cyc.size(); ++p) g.sigma[cyc[p]] = cyc[(p + 1) % cyc.size()];
        }
        if (!g.connected()) return;
        auto orbits = g.boundary_cycles();
        if (static_cast<int>(orbits.size()) != n) return;
        // all boundary labelings
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        do {
          for (int b = 0; b < n; ++b)
            for (int x : orbits[b]) g.label[x] = perm[b];
          CanonicalForm canon = canonicalize(g);
          auto code = canon.graph.code();
          if (canon.killed)
            seen_killed.insert(code);
          else if (seen_generators.insert(code).second)
            census.generators[m].push_back(canon.graph);
        } while (std::next_permutation(perm.begin(), perm.end()));
      };
      auto rec = [&](auto&& self, int vertex) -> void {
        if (vertex == v) {
          emit();
          return;
        }
        std::vector<int> perm = tails[vertex];
        std::sort(perm.begin(), perm.end());
        do {
          rotation[vertex].clear();
          rotation[vertex].push_back(at_vertex[vertex][0]);
          rotation[vertex].insert(rotation[vertex].end(), perm.begin(), perm.end());
          self(self, vertex + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
      };
      rec(rec, 0);
    }
    for (const auto& code : seen_killed) {
      RibbonGraph g;
      size_t third = code.size() / 3;
      g.sigma.assign(code.begin(), code.begin() + third);
      g.iota.assign(code.begin() + third, code.begin() + 2 * third);
      g.label.assign(code.begin() + 2 * third, code.end());
      census.killed[m].push_back(std::move(g));
    }
    std::sort(census.generators[m].begin(), census.generators[m].end());
  }
  return census;
}

// Betti table of the (g, n) subcomplex, graded by edge count.
inline std::map<int, int> moduli_homology(int genus, int n) {
  RibbonCensus census = enumerate_ribbon_graphs(genus, n);
  ChainComplex c(census.m_min, census.m_max);
  std::map<int, std::map<RibbonGraph, int>> index;
  for (const auto& [m, gens] : census.generators) {
    c.set_dim(m, static_cast<int>(gens.size()));
    int i = 0;
    for (const auto& g : gens) index[m][g] = i++;
  }
  for (int m = census.m_min + 1; m <= census.m_max; ++m) {
    RationalMatrix d(c.dim(m - 1), c.dim(m));
    for (const auto& [g, col] : index[m]) {
      for (const auto& [img, coeff] : graph_differential(g)) {
        auto it = index[m - 1].find(img);
        if (it == index[m - 1].end())
          throw validation_error("differential image outside the enumerated basis");
        d.add(it->second, col, coeff);
      }
    }
    c.set_differential(m, d);
  }
  return c.betti();
}

} // namespace graphhom
