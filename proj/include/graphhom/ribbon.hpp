#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "graphhom/errors.hpp"

namespace graphhom {

// Ribbon graph on darts (half-edges) 0..2m-1: sigma rotates the darts around
// each vertex (cycles = vertices, counterclockwise), iota pairs darts into
// edges (fixed-point-free involution). Boundary components are the orbits of
// h -> sigma(iota(h)); label stores the boundary label 1..n per dart, constant
// along each orbit.
struct RibbonGraph {
  std::vector<int> sigma;
  std::vector<int> iota;
  std::vector<int> label;

  int darts() const { return static_cast<int>(sigma.size()); }
  int edges() const { return darts() / 2; }

  int vertices() const {
    std::vector<char> seen(darts(), 0);
    int count = 0;
    for (int h = 0; h < darts(); ++h) {
      if (seen[h]) continue;
      ++count;
      for (int x = h; !seen[x]; x = sigma[x]) seen[x] = 1;
    }
    return count;
  }

  // Orbits of sigma.iota, each listed from its smallest dart, sorted by label.
  std::vector<std::vector<int>> boundary_cycles() const {
    std::vector<char> seen(darts(), 0);
    std::vector<std::vector<int>> orbits;
    for (int h = 0; h < darts(); ++h) {
      if (seen[h]) continue;
      std::vector<int> orbit;
      for (int x = h; !seen[x]; x = sigma[iota[x]]) {
        seen[x] = 1;
        orbit.push_back(x);
      }
      orbits.push_back(std::move(orbit));
    }
    std::sort(orbits.begin(), orbits.end(),
              [&](const auto& a, const auto& b) { return label[a[0]] < label[b[0]]; });
    return orbits;
  }

  int boundary_count() const { return static_cast<int>(boundary_cycles().size()); }

  int euler_characteristic() const { return vertices() - edges(); }

  // From chi = 2 - 2g - n; integral and nonnegative for any valid graph.
  int genus() const {
    int chi = euler_characteristic();
    int n = boundary_count();
    int twice = 2 - chi - n;
    if (twice % 2 != 0 || twice < 0)
      throw validation_error("malformed ribbon graph: genus is not a nonnegative integer");
    return twice / 2;
  }

  bool connected() const {
    if (darts() == 0) return false;
    std::vector<char> seen(darts(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 0;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      ++visited;
      for (int y : {sigma[x], iota[x]})
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    return visited == darts();
  }

  void validate() const {
    const int N = darts();
    if (N == 0 || N % 2 != 0) throw validation_error("dart count must be positive and even");
    if (static_cast<int>(iota.size()) != N || static_cast<int>(label.size()) != N)
      throw validation_error("field length mismatch");
    std::vector<char> hit(N, 0);
    for (int h = 0; h < N; ++h) {
      if (sigma[h] < 0 || sigma[h] >= N || iota[h] < 0 || iota[h] >= N)
        throw validation_error("dart index out of range");
      hit[sigma[h]] = 1;
    }
    for (int h = 0; h < N; ++h)
      if (!hit[h]) throw validation_error("sigma is not a permutation");
    for (int h = 0; h < N; ++h) {
      if (iota[iota[h]] != h) throw validation_error("iota is not an involution");
      if (iota[h] == h) throw validation_error("iota has a fixed point");
    }
    // valences >= 3
    std::vector<char> seen(N, 0);
    for (int h = 0; h < N; ++h) {
      if (seen[h]) continue;
      int len = 0;
      for (int x = h; !seen[x]; x = sigma[x]) {
        seen[x] = 1;
        ++len;
      }
      if (len < 3) throw validation_error("vertex of valence < 3");
    }
    if (!connected()) throw validation_error("graph is not connected");
    // labels: constant on boundary orbits, bijective onto 1..n
    auto orbits = boundary_cycles();
    std::set<int> labels_seen;
    for (const auto& orbit : orbits) {
      for (int x : orbit)
        if (label[x] != label[orbit[0]])
          throw validation_error("boundary label not constant on an orbit");
      if (!labels_seen.insert(label[orbit[0]]).second)
        throw validation_error("duplicate boundary label");
    }
    for (int l = 1; l <= static_cast<int>(orbits.size()); ++l)
      if (!labels_seen.count(l)) throw validation_error("boundary labels must be 1..n");
    (void)genus();
  }

  std::vector<int> code() const {
    std::vector<int> out;
    out.reserve(3 * sigma.size());
    out.insert(out.end(), sigma.begin(), sigma.end());
    out.insert(out.end(), iota.begin(), iota.end());
    out.insert(out.end(), label.begin(), label.end());
    return out;
  }

  auto operator<=>(const RibbonGraph&) const = default;
};

namespace detail {

// Deterministic relabeling with dart `start` sent to 0: breadth-first over
// the dart adjacency x -> sigma(x), x -> iota(x).
inline std::vector<int> bfs_relabeling(const RibbonGraph& g, int start) {
  const int N = g.darts();
  std::vector<int> relab(N, -1);
  std::vector<int> queue{start};
  relab[start] = 0;
  int next = 1;
  for (size_t q = 0; q < queue.size(); ++q) {
    int x = queue[q];
    for (int y : {g.sigma[x], g.iota[x]})
      if (relab[y] < 0) {
        relab[y] = next++;
        queue.push_back(y);
      }
  }
  return relab;
}

inline RibbonGraph apply_relabeling(const RibbonGraph& g, const std::vector<int>& relab) {
  const int N = g.darts();
  RibbonGraph out;
  out.sigma.resize(N);
  out.iota.resize(N);
  out.label.resize(N);
  for (int h = 0; h < N; ++h) {
    out.sigma[relab[h]] = relab[g.sigma[h]];
    out.iota[relab[h]] = relab[g.iota[h]];
    out.label[relab[h]] = g.label[h];
  }
  return out;
}

inline int permutation_sign(std::vector<int> perm) {
  int sign = 1;
  for (size_t i = 0; i < perm.size(); ++i)
    while (perm[i] != static_cast<int>(i)) {
      std::swap(perm[i], perm[perm[i]]);
      sign = -sign;
    }
  return sign;
}

} // namespace detail

// Canonical form by minimum-code search over all start darts. Ties between
// start darts are exactly the label-preserving automorphisms, so the same
// search yields Aut and the orientation-kill decision.
struct CanonicalForm {
  RibbonGraph graph;
  std::vector<int> relabeling; // original dart -> canonical dart
  bool killed;                 // some automorphism permutes the edges oddly
  int automorphisms;           // |Aut_d(Gamma)| fixing every boundary label
};

inline CanonicalForm canonicalize(const RibbonGraph& g) {
  const int N = g.darts();
  std::optional<std::vector<int>> best_code;
  std::vector<std::vector<int>> best_relabs;
  for (int start = 0; start < N; ++start) {
    auto relab = detail::bfs_relabeling(g, start);
    auto cand = detail::apply_relabeling(g, relab).code();
    if (!best_code || cand < *best_code) {
      best_code = std::move(cand);
      best_relabs.clear();
      best_relabs.push_back(std::move(relab));
    } else if (cand == *best_code) {
      best_relabs.push_back(std::move(relab));
    }
  }

  CanonicalForm out;
  out.relabeling = best_relabs.front();
  out.graph = detail::apply_relabeling(g, out.relabeling);
  out.automorphisms = static_cast<int>(best_relabs.size());
  out.killed = false;

  // edge index in the original graph: edges keyed by their smaller dart
  std::map<int, int> edge_id;
  for (int h = 0; h < N; ++h)
    if (h < g.iota[h]) edge_id.emplace(h, static_cast<int>(edge_id.size()));
  auto edge_of = [&](int dart) { return edge_id.at(std::min(dart, g.iota[dart])); };

  // inverse of the reference relabeling
  std::vector<int> inv0(N);
  for (int h = 0; h < N; ++h) inv0[out.relabeling[h]] = h;

  for (const auto& relab : best_relabs) {
    // automorphism phi = relab0^{-1} . relab
    std::vector<int> edge_perm(N / 2, -1);
    for (int h = 0; h < N; ++h) edge_perm[edge_of(h)] = edge_of(inv0[relab[h]]);
    if (detail::permutation_sign(edge_perm) < 0) {
      out.killed = true;
      break;
    }
  }
  return out;
}

// Edges of a canonical graph in canonical order: sorted by their smaller dart.
inline std::vector<std::pair<int, int>> canonical_edges(const RibbonGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int h = 0; h < g.darts(); ++h)
    if (h < g.iota[h]) out.push_back({h, g.iota[h]});
  return out;
}

} // namespace graphhom
