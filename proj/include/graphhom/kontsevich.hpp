#pragma once

#include <string>
#include <vector>

#include "graphhom/polynomial.hpp"

namespace graphhom {

// Directed graph indexing one term of the graph expansion: aerial vertices
// 1..n each emit an ordered pair of edges into other vertices or the two
// ground vertices. No loops; the two targets of a vertex are distinct
// (a repeated target wedges an angle form with itself and integrates to
// zero, so such graphs are excluded from the type).
struct AdmissibleGraph {
  int n = 0;
  // target encoding per aerial vertex: 0..n-1 aerial, n = first ground
  // (left argument), n+1 = second ground (right argument)
  std::vector<std::pair<int, int>> targets;

  int ground1() const { return n; }
  int ground2() const { return n + 1; }

  void validate() const {
    if (n < 0) throw validation_error("negative vertex count");
    if (static_cast<int>(targets.size()) != n) throw validation_error("target list length mismatch");
    for (int v = 0; v < n; ++v) {
      auto [a, b] = targets[v];
      if (a < 0 || a > n + 1 || b < 0 || b > n + 1)
        throw validation_error("edge target out of range");
      if (a == v || b == v) throw validation_error("loop edge");
      if (a == b) throw validation_error("repeated edge target");
    }
  }

  // "g1,g2;1,g2" with aerial vertices named 1..n
  std::string code() const {
    std::string out;
    for (int v = 0; v < n; ++v) {
      if (v) out += ";";
      out += token(targets[v].first) + "," + token(targets[v].second);
    }
    return out;
  }

  static AdmissibleGraph from_code(const std::string& code) {
    AdmissibleGraph g;
    if (code.empty()) return g;
    std::vector<std::string> parts{""};
    for (char c : code) {
      if (c == ';')
        parts.push_back("");
      else
        parts.back() += c;
    }
    g.n = static_cast<int>(parts.size());
    for (const auto& part : parts) {
      auto comma = part.find(',');
      if (comma == std::string::npos) throw validation_error("bad graph code: " + code);
      g.targets.push_back({g.parse_token(part.substr(0, comma)),
                           g.parse_token(part.substr(comma + 1))});
    }
    g.validate();
    return g;
  }

  auto operator<=>(const AdmissibleGraph&) const = default;

private:
  std::string token(int t) const {
    if (t == n) return "g1";
    if (t == n + 1) return "g2";
    return std::to_string(t + 1);
  }
  int parse_token(const std::string& s) const {
    if (s == "g1") return n;
    if (s == "g2") return n + 1;
    int v = std::stoi(s) - 1;
    return v;
  }
};

// All admissible graphs with n aerial vertices, in a fixed (lexicographic)
// order: 2n(2n - 1)... per vertex, an ordered pair of distinct non-self
// targets out of n + 1 candidates.
inline std::vector<AdmissibleGraph> enumerate_admissible_graphs(int n) {
  if (n < 0) throw validation_error("negative order");
  if (n > 3) throw budget_error("admissible graph enumeration capped at n = 3");
  std::vector<AdmissibleGraph> out;
  AdmissibleGraph g;
  g.n = n;
  g.targets.assign(n, {0, 0});
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.push_back(g);
      return;
    }
    for (int a = 0; a <= n + 1; ++a) {
      if (a == v) continue;
      for (int b = 0; b <= n + 1; ++b) {
        if (b == v || b == a) continue;
        g.targets[v] = {a, b};
        self(self, v + 1);
      }
    }
  };
  rec(rec, 0);
  return out;
}

// Polynomial Poisson structure on R^d: alpha[i][j] with alpha^{ij} = -alpha^{ji}.
struct PolyPoisson {
  int d = 0;
  std::vector<std::vector<Poly>> alpha;

  void validate() const {
    if (d < 1 || d > 6) throw validation_error("dimension out of range");
    if (static_cast<int>(alpha.size()) != d) throw validation_error("alpha shape mismatch");
    for (const auto& row : alpha) {
      if (static_cast<int>(row.size()) != d) throw validation_error("alpha shape mismatch");
      for (const auto& p : row)
        if (p.vars() != d) throw validation_error("alpha entries must live on R^d");
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j)
        if (!(alpha[i][j] + alpha[j][i]).is_zero())
          throw validation_error("alpha is not antisymmetric");
  }

  // Jacobi identity, checked symbolically. Antisymmetric non-Poisson tensors
  // are accepted by the expansion routines but flagged through this.
  bool jacobi_ok() const {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
          Poly sum(d);
          for (int l = 0; l < d; ++l) {
            sum = sum + alpha[i][l] * alpha[j][k].derivative(l);
            sum = sum + alpha[j][l] * alpha[k][i].derivative(l);
            sum = sum + alpha[k][l] * alpha[i][j].derivative(l);
          }
          if (!sum.is_zero()) return false;
        }
    return true;
  }

  // {f, g} = alpha^{ij} d_i f d_j g
  Poly bracket(const Poly& f, const Poly& g) const {
    Poly out(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (alpha[i][j].is_zero()) continue;
        out = out + alpha[i][j] * f.derivative(i) * g.derivative(j);
      }
    return out;
  }
};

// B_Gamma(f, g): one copy of alpha at each aerial vertex (edge order fixes
// the index slots), f at the first ground and g at the second, one summation
// index per edge, each edge deriving its target's content.
inline Poly bidifferential_operator(const AdmissibleGraph& graph, const PolyPoisson& poisson,
                                    const Poly& f, const Poly& g) {
  graph.validate();
  poisson.validate();
  if (f.vars() != poisson.d || g.vars() != poisson.d)
    throw validation_error("dimension mismatch between polynomials and the Poisson structure");
  const int d = poisson.d;
  const int n = graph.n;
  const int edges = 2 * n;

  Poly total(d);
  std::vector<int> index(edges, 0); // index per edge, edges ordered (v, first/second)
  for (;;) {
    // derivative multi-index per target node
    std::vector<std::vector<int>> derivs(n + 2);
    for (int e = 0; e < edges; ++e) {
      int target = e % 2 == 0 ? graph.targets[e / 2].first : graph.targets[e / 2].second;
      derivs[target].push_back(index[e]);
    }
    Poly term = Poly::constant(d, rat(1));
    bool zero = false;
    for (int v = 0; v < n && !zero; ++v) {
      Poly content = poisson.alpha[index[2 * v]][index[2 * v + 1]];
      for (int i : derivs[v]) content = content.derivative(i);
      if (content.is_zero()) zero = true;
      term = term * content;
    }
    if (!zero) {
      Poly fc = f;
      for (int i : derivs[graph.ground1()]) fc = fc.derivative(i);
      Poly gc = g;
      for (int i : derivs[graph.ground2()]) gc = gc.derivative(i);
      term = term * fc * gc;
      total = total + term;
    }
    int p = edges - 1;
    while (p >= 0 && ++index[p] == d) index[p--] = 0;
    if (p < 0) break;
  }
  return total;
}

} // namespace graphhom
