// Test-only oracles: independent routes to the quantities the library
// computes. Everything here deliberately avoids the implementation paths it
// is used to check.
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "graphhom/free_operad.hpp"
#include "graphhom/hochschild.hpp"
#include "graphhom/kontsevich.hpp"
#include "graphhom/ribbon.hpp"

namespace oracles {

using namespace graphhom;

// ---- free algebra spanning -------------------------------------------------

using Word = std::vector<int>;
using NcPoly = std::map<Word, Rational>; // free associative element

inline NcPoly nc_concat(const NcPoly& a, const NcPoly& b) {
  NcPoly out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out[w] += cu * cv;
    }
  return out;
}

inline NcPoly nc_sub(NcPoly a, const NcPoly& b) {
  for (const auto& [w, c] : b) a[w] -= c;
  return a;
}

// evaluate a decorated tree on words; vertices named `bracket_name` act as
// commutators, everything else concatenates
inline NcPoly eval_words(const DecoratedTree& t, const std::vector<Generator>& gens,
                         const std::string& bracket_name) {
  if (t.shape.is_leaf()) return {{Word{t.shape.leaf_labels()[0]}, rat(1)}};
  auto children = t.shape.children();
  size_t used = 1;
  std::vector<NcPoly> kids;
  for (const auto& c : children) {
    size_t k = static_cast<size_t>(c.vertex_count());
    std::vector<int> d(t.decor.begin() + used, t.decor.begin() + used + k);
    used += k;
    kids.push_back(eval_words({c, d}, gens, bracket_name));
  }
  NcPoly acc = kids[0];
  bool is_bracket = gens[t.decor[0]].name == bracket_name;
  for (size_t i = 1; i < kids.size(); ++i) {
    if (is_bracket)
      acc = nc_sub(nc_concat(acc, kids[i]), nc_concat(kids[i], acc));
    else
      acc = nc_concat(acc, kids[i]);
  }
  return acc;
}

// free Poisson evaluation: elements are spans of multisets of words, the dot
// is the union and the bracket expands by the Leibniz rule down to words
using PMono = std::vector<Word>; // kept sorted
using PElem = std::map<PMono, Rational>;

inline PElem p_dot(const PElem& a, const PElem& b) {
  PElem out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      PMono m = u;
      m.insert(m.end(), v.begin(), v.end());
      std::sort(m.begin(), m.end());
      out[m] += cu * cv;
    }
  return out;
}

inline PElem p_bracket(const PElem& a, const PElem& b) {
  PElem out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b)
      for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) {
          PMono rest;
          for (size_t k = 0; k < u.size(); ++k)
            if (k != i) rest.push_back(u[k]);
          for (size_t k = 0; k < v.size(); ++k)
            if (k != j) rest.push_back(v[k]);
          Word uv = u[i], vu = v[j];
          uv.insert(uv.end(), v[j].begin(), v[j].end());
          vu.insert(vu.end(), u[i].begin(), u[i].end());
          PMono m1 = rest;
          m1.push_back(uv);
          std::sort(m1.begin(), m1.end());
          PMono m2 = rest;
          m2.push_back(vu);
          std::sort(m2.begin(), m2.end());
          out[m1] += cu * cv;
          out[m2] -= cu * cv;
        }
  return out;
}

inline PElem eval_poisson(const DecoratedTree& t, const std::vector<Generator>& gens) {
  if (t.shape.is_leaf()) return {{PMono{Word{t.shape.leaf_labels()[0]}}, rat(1)}};
  auto children = t.shape.children();
  size_t used = 1;
  std::vector<PElem> kids;
  for (const auto& c : children) {
    size_t k = static_cast<size_t>(c.vertex_count());
    std::vector<int> d(t.decor.begin() + used, t.decor.begin() + used + k);
    used += k;
    kids.push_back(eval_poisson({c, d}, gens));
  }
  bool is_bracket = gens[t.decor[0]].name == "∘";
  PElem acc = kids[0];
  for (size_t i = 1; i < kids.size(); ++i)
    acc = is_bracket ? p_bracket(acc, kids[i]) : p_dot(acc, kids[i]);
  return acc;
}

template <typename Key>
int span_rank(const std::vector<std::map<Key, Rational>>& vectors) {
  std::map<Key, int> col;
  for (const auto& v : vectors)
    for (const auto& [k, c] : v)
      if (c != 0) col.emplace(k, static_cast<int>(col.size()));
  RationalMatrix m(static_cast<int>(vectors.size()), static_cast<int>(col.size()));
  for (int r = 0; r < static_cast<int>(vectors.size()); ++r)
    for (const auto& [k, c] : vectors[r]) m.add(r, col.at(k), c);
  return rank_rational(m);
}

inline long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// ---- ribbon graph automorphisms ---------------------------------------------

// propagate a candidate image of dart 0 through sigma and iota, then verify
// commutation and label preservation on every dart
inline std::vector<std::vector<int>> aut_oracle(const RibbonGraph& g) {
  const int N = g.darts();
  std::vector<std::vector<int>> autos;
  for (int target = 0; target < N; ++target) {
    std::vector<int> phi(N, -1);
    phi[0] = target;
    std::vector<int> stack{0};
    bool ok = true;
    while (!stack.empty() && ok) {
      int x = stack.back();
      stack.pop_back();
      int pairs[2][2] = {{g.sigma[x], g.sigma[phi[x]]}, {g.iota[x], g.iota[phi[x]]}};
      for (auto& [from, to] : pairs) {
        if (phi[from] < 0) {
          phi[from] = to;
          stack.push_back(from);
        } else if (phi[from] != to) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<char> image(N, 0);
    for (int x = 0; x < N && ok; ++x) {
      if (phi[x] < 0 || image[phi[x]])
        ok = false;
      else
        image[phi[x]] = 1;
    }
    for (int x = 0; x < N && ok; ++x)
      if (phi[g.sigma[x]] != g.sigma[phi[x]] || phi[g.iota[x]] != g.iota[phi[x]] ||
          g.label[phi[x]] != g.label[x])
        ok = false;
    if (ok) autos.push_back(std::move(phi));
  }
  return autos;
}

inline bool killed_oracle(const RibbonGraph& g) {
  std::map<int, int> edge_id;
  for (int h = 0; h < g.darts(); ++h)
    if (h < g.iota[h]) edge_id.emplace(h, static_cast<int>(edge_id.size()));
  for (const auto& phi : aut_oracle(g)) {
    std::vector<int> perm(g.edges(), -1);
    for (int h = 0; h < g.darts(); ++h)
      perm[edge_id.at(std::min(h, g.iota[h]))] = edge_id.at(std::min(phi[h], g.iota[phi[h]]));
    if (graphhom::detail::permutation_sign(perm) < 0) return true;
  }
  return false;
}

// ---- algebras and cochains ---------------------------------------------------

inline AlgebraTable rational_line() {
  AlgebraTable a;
  a.dim = 1;
  a.c = Multilinear(1, 2);
  a.c.at({0, 0}, 0) = rat(1);
  a.unit = std::vector<Rational>{rat(1)};
  return a;
}

inline AlgebraTable dual_numbers() {
  AlgebraTable a;
  a.dim = 2;
  a.c = Multilinear(2, 2);
  a.c.at({0, 0}, 0) = rat(1);
  a.c.at({0, 1}, 1) = rat(1);
  a.c.at({1, 0}, 1) = rat(1);
  a.unit = std::vector<Rational>{rat(1), rat(0)};
  return a;
}

inline AlgebraTable mat2() {
  AlgebraTable a;
  a.dim = 4;
  a.c = Multilinear(4, 2);
  auto idx = [](int r, int c) { return 2 * r + c; };
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
          if (s == u) a.c.at({idx(r, s), idx(u, v)}, idx(r, v)) = rat(1);
  a.unit = std::vector<Rational>{rat(1), rat(0), rat(0), rat(1)};
  return a;
}

inline AlgebraTable upper_triangular() {
  AlgebraTable a;
  a.dim = 3;
  a.c = Multilinear(3, 2);
  a.c.at({0, 0}, 0) = rat(1);
  a.c.at({0, 1}, 1) = rat(1);
  a.c.at({1, 2}, 1) = rat(1);
  a.c.at({2, 2}, 2) = rat(1);
  return a;
}

// change of basis: keeps associativity, scrambles the table
inline AlgebraTable conjugate(const AlgebraTable& a, std::mt19937& rng) {
  const int d = a.dim;
  std::uniform_int_distribution<int> entry(-2, 2);
  RationalMatrix p(d, d);
  for (;;) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) p.set(i, j, rat(entry(rng)));
    if (rank_rational(p) == d) break;
  }
  std::vector<std::vector<Rational>> q;
  for (int k = 0; k < d; ++k) {
    std::vector<Rational> e(d, Rational(0));
    e[k] = 1;
    q.push_back(*solve_linear(p, e));
  }
  AlgebraTable out;
  out.dim = d;
  out.c = Multilinear(d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> pi(d, Rational(0)), pj(d, Rational(0));
      for (int k = 0; k < d; ++k) {
        pi[k] = p.at(k, i);
        pj[k] = p.at(k, j);
      }
      std::vector<Rational> prod = a.multiply(pi, pj);
      for (int k = 0; k < d; ++k) {
        Rational v(0);
        for (int m = 0; m < d; ++m) v += q[m][k] * prod[m];
        if (v != 0) out.c.at({i, j}, k) = v;
      }
    }
  return out;
}

inline AlgebraTable random_algebra(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  AlgebraTable base;
  switch (pick(rng)) {
    case 0: base = dual_numbers(); break;
    case 1: base = upper_triangular(); break;
    default: {
      base.dim = 3;
      base.c = Multilinear(3, 2);
      for (int i = 0; i < 3; ++i) base.c.at({i, i}, i) = rat(1);
      break;
    }
  }
  return conjugate(base, rng);
}

inline Cochain random_cochain(std::mt19937& rng, int dim, int arity) {
  std::uniform_int_distribution<int> entry(-2, 2);
  Cochain f(dim, arity);
  f.for_each_tuple([&](const std::vector<int>& in) {
    for (int k = 0; k < dim; ++k) f.at(in, k) = rat(entry(rng));
  });
  return f;
}

inline Cochain cochain_scale(const Cochain& a, const Rational& f) {
  Cochain out(a.dim(), a.arity());
  out.for_each_tuple([&](const std::vector<int>& in) {
    for (int k = 0; k < a.dim(); ++k) {
      Rational v = a.at(in, k) * f;
      if (v != 0) out.at(in, k) = v;
    }
  });
  return out;
}

// t^k coefficient of the associator of m_t, expanded directly
inline Cochain associator_coefficient(const DeformationSeries& s, int k) {
  const int dim = s.algebra.dim;
  Cochain out(dim, 3);
  out.for_each_tuple([&](const std::vector<int>& in) {
    for (int i = 0; i <= k; ++i) {
      const Cochain& mi = s.term(i);
      const Cochain& mj = s.term(k - i);
      for (int out_idx = 0; out_idx < dim; ++out_idx) {
        Rational v(0);
        for (int mid = 0; mid < dim; ++mid) {
          v += mj.at({in[0], in[1]}, mid) * mi.at({mid, in[2]}, out_idx);
          v -= mj.at({in[1], in[2]}, mid) * mi.at({in[0], mid}, out_idx);
        }
        if (v != 0) out.at(in, out_idx) += v;
      }
    }
  });
  return out;
}

// dim Der(A) - dim Inner(A), straight from the Leibniz rule
inline int h1_derivation_oracle(const AlgebraTable& a) {
  const int d = a.dim;
  RationalMatrix sys(d * d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        int row = (i * d + j) * d + k;
        for (int m = 0; m < d; ++m) {
          const Rational& s = a.c.at({i, j}, m);
          if (s != 0) sys.add(row, k * d + m, s);
        }
        for (int m = 0; m < d; ++m) {
          const Rational& s = a.c.at({m, j}, k);
          if (s != 0) sys.add(row, m * d + i, -s);
        }
        for (int m = 0; m < d; ++m) {
          const Rational& s = a.c.at({i, m}, k);
          if (s != 0) sys.add(row, m * d + j, -s);
        }
      }
  int der = d * d - rank_rational(sys);
  RationalMatrix inner(d, d * d);
  for (int b = 0; b < d; ++b)
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        Rational v = a.c.at({b, i}, k) - a.c.at({i, b}, k);
        if (v != 0) inner.add(b, k * d + i, v);
      }
  return der - rank_rational(inner);
}

// ---- poisson structures and the first-order weight quadrature ----------------

inline PolyPoisson constant_r2(const Rational& a12) {
  PolyPoisson p;
  p.d = 2;
  p.alpha.assign(2, std::vector<Poly>(2, Poly(2)));
  p.alpha[0][1] = Poly::constant(2, a12);
  p.alpha[1][0] = Poly::constant(2, -a12);
  return p;
}

inline PolyPoisson poly_r2(const Poly& a12) {
  PolyPoisson p;
  p.d = 2;
  p.alpha.assign(2, std::vector<Poly>(2, Poly(2)));
  p.alpha[0][1] = a12;
  p.alpha[1][0] = -a12;
  return p;
}

// Euler-type linear structure on R^3: {x1, x2} = c3 x3 and cyclic
inline PolyPoisson euler_r3(const Rational& c1, const Rational& c2, const Rational& c3) {
  PolyPoisson p;
  p.d = 3;
  p.alpha.assign(3, std::vector<Poly>(3, Poly(3)));
  auto set = [&](int i, int j, const Poly& v) {
    p.alpha[i][j] = v;
    p.alpha[j][i] = -v;
  };
  set(0, 1, Poly::variable(3, 2) * c3);
  set(1, 2, Poly::variable(3, 0) * c1);
  set(2, 0, Poly::variable(3, 1) * c2);
  return p;
}

// adaptive tensor-Simpson quadrature of the first-order angle form over the
// upper half-plane, mapped to the unit square by x = tan(pi(s - 1/2)),
// y = t/(1 - t); shares no code with the Monte-Carlo path
inline double first_order_quadrature() {
  auto integrand = [](double s, double t) -> double {
    double x = std::tan(M_PI * (s - 0.5));
    if (!std::isfinite(x) || std::abs(x) > 1e8) return 0.0;
    if (t >= 1.0 - 1e-12) return 0.0;
    double y = t / (1.0 - t);
    if (y <= 0.0) return 0.0;
    double r2 = x * x + y * y;
    double s2 = (x - 1.0) * (x - 1.0) + y * y;
    if (r2 < 1e-300 || s2 < 1e-300) return 0.0;
    double form = 4.0 * y / (r2 * s2);
    double jac = M_PI * (1.0 + x * x) * (1.0 + y) * (1.0 + y);
    return form * jac;
  };
  auto simpson = [&](double s0, double s1, double t0, double t1) -> double {
    double sm = 0.5 * (s0 + s1), tm = 0.5 * (t0 + t1);
    double ws[3] = {1.0, 4.0, 1.0};
    double ss[3] = {s0, sm, s1}, ts[3] = {t0, tm, t1};
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) acc += ws[i] * ws[j] * integrand(ss[i], ts[j]);
    return acc * (s1 - s0) * (t1 - t0) / 36.0;
  };
  std::function<double(double, double, double, double, double, int)> adapt =
      [&](double s0, double s1, double t0, double t1, double tol, int depth) -> double {
    double whole = simpson(s0, s1, t0, t1);
    double sm = 0.5 * (s0 + s1), tm = 0.5 * (t0 + t1);
    double parts = simpson(s0, sm, t0, tm) + simpson(sm, s1, t0, tm) +
                   simpson(s0, sm, tm, t1) + simpson(sm, s1, tm, t1);
    if (depth == 0 || std::abs(parts - whole) < 15.0 * tol)
      return parts + (parts - whole) / 15.0;
    return adapt(s0, sm, t0, tm, tol / 4, depth - 1) + adapt(sm, s1, t0, tm, tol / 4, depth - 1) +
           adapt(s0, sm, tm, t1, tol / 4, depth - 1) + adapt(sm, s1, tm, t1, tol / 4, depth - 1);
  };
  double integral = adapt(0.0, 1.0, 0.0, 1.0, 1e-6, 13);
  return integral / (4.0 * M_PI * M_PI);
}

} // namespace oracles
