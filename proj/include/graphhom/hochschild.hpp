#pragma once

#include <map>
#include <optional>
#include <vector>

#include "graphhom/chain_complex.hpp"
#include "graphhom/multilinear.hpp"

namespace graphhom {

// Finite-dimensional algebra by structure constants: e_i e_j = sum_k c(i,j,k) e_k.
struct AlgebraTable {
  int dim = 0;
  Multilinear c; // arity 2
  std::optional<std::vector<Rational>> unit;

  std::vector<Rational> multiply(const std::vector<Rational>& a,
                                 const std::vector<Rational>& b) const {
    std::vector<Rational> out(dim, Rational(0));
    for (int i = 0; i < dim; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < dim; ++j) {
        if (b[j] == 0) continue;
        for (int k = 0; k < dim; ++k) {
          const Rational& s = c.at({i, j}, k);
          if (s != 0) out[k] += a[i] * b[j] * s;
        }
      }
    }
    return out;
  }

  bool verify_associative() const {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          std::vector<Rational> ei(dim, Rational(0)), ej(dim, Rational(0)), ek(dim, Rational(0));
          ei[i] = 1;
          ej[j] = 1;
          ek[k] = 1;
          if (multiply(multiply(ei, ej), ek) != multiply(ei, multiply(ej, ek))) return false;
        }
    return true;
  }

  void validate() const {
    if (dim < 1) throw validation_error("algebra dimension must be positive");
    if (c.dim() != dim || c.arity() != 2) throw validation_error("structure tensor shape mismatch");
    if (!verify_associative()) throw validation_error("structure constants are not associative");
    if (unit) {
      if (static_cast<int>(unit->size()) != dim) throw validation_error("unit vector length mismatch");
      for (int i = 0; i < dim; ++i) {
        std::vector<Rational> ei(dim, Rational(0));
        ei[i] = 1;
        if (multiply(*unit, ei) != ei || multiply(ei, *unit) != ei)
          throw validation_error("unit vector is not a two-sided unit");
      }
    }
  }
};

// Hochschild n-cochains are n-linear maps A^n -> A; 0-cochains are elements
// of A. Shifted degree of an n-cochain is n - 1.
using Cochain = Multilinear;

// (df)(a_1..a_{n+1}) = a_1 f(a_2..) + sum_i (-1)^i f(.., a_i a_{i+1}, ..)
//                      - (-1)^n f(a_1..a_n) a_{n+1}.
inline Cochain hochschild_differential(const AlgebraTable& algebra, const Cochain& f) {
  if (f.dim() != algebra.dim) throw validation_error("cochain dimension mismatch");
  const int n = f.arity();
  const int dim = algebra.dim;
  Cochain out(dim, n + 1);
  out.for_each_tuple([&](const std::vector<int>& in) {
    std::vector<Rational> acc(dim, Rational(0));

    // a_1 f(a_2, ..., a_{n+1})
    {
      std::vector<int> rest(in.begin() + 1, in.end());
      std::vector<Rational> fv = f.apply(rest);
      std::vector<Rational> a1(dim, Rational(0));
      a1[in[0]] = 1;
      std::vector<Rational> prod = algebra.multiply(a1, fv);
      for (int k = 0; k < dim; ++k) acc[k] += prod[k];
    }
    // inner terms
    for (int i = 1; i <= n; ++i) {
      std::vector<Rational> merged(dim, Rational(0));
      for (int k = 0; k < dim; ++k) merged[k] = algebra.c.at({in[i - 1], in[i]}, k);
      std::vector<int> args;
      args.reserve(n);
      for (int j = 0; j < i - 1; ++j) args.push_back(in[j]);
      args.push_back(0); // slot i-1
      for (int j = i + 1; j <= n; ++j) args.push_back(in[j]);
      Rational sign = rat(i % 2 == 0 ? 1 : -1);
      detail::accumulate_with_slot(f, args, i - 1, merged, sign, acc);
    }
    // - (-1)^n f(a_1..a_n) a_{n+1}
    {
      std::vector<int> head(in.begin(), in.end() - 1);
      std::vector<Rational> fv = f.apply(head);
      std::vector<Rational> last(dim, Rational(0));
      last[in.back()] = 1;
      std::vector<Rational> prod = algebra.multiply(fv, last);
      Rational sign = rat(n % 2 == 0 ? -1 : 1);
      for (int k = 0; k < dim; ++k) acc[k] += sign * prod[k];
    }

    for (int k = 0; k < dim; ++k)
      if (acc[k] != 0) out.at(in, k) = acc[k];
  });
  return out;
}

// Pre-Lie insertion sum: (f o g)(a_1..a_{m+n-1}) =
//   sum_{i=1}^{m} (-1)^{(i-1)(n-1)} f(a_1..a_{i-1}, g(a_i..a_{i+n-1}), ..).
inline Cochain pre_lie(const Cochain& f, const Cochain& g) {
  if (f.dim() != g.dim()) throw validation_error("cochain dimension mismatch");
  const int m = f.arity(), n = g.arity();
  if (m + n - 1 < 0) throw validation_error("bracket arity would be negative");
  const int dim = f.dim();
  Cochain out(dim, m + n - 1);
  out.for_each_tuple([&](const std::vector<int>& in) {
    std::vector<Rational> acc(dim, Rational(0));
    for (int i = 1; i <= m; ++i) {
      std::vector<int> inner(in.begin() + (i - 1), in.begin() + (i - 1) + n);
      std::vector<Rational> gv = g.apply(inner);
      std::vector<int> args;
      args.reserve(m);
      for (int j = 0; j < i - 1; ++j) args.push_back(in[j]);
      args.push_back(0);
      for (int j = i - 1 + n; j < m + n - 1; ++j) args.push_back(in[j]);
      Rational sign = rat(((i - 1) * (n - 1)) % 2 == 0 ? 1 : -1);
      detail::accumulate_with_slot(f, args, i - 1, gv, sign, acc);
    }
    for (int k = 0; k < dim; ++k)
      if (acc[k] != 0) out.at(in, k) = acc[k];
  });
  return out;
}

// Gerstenhaber bracket. Orientation convention: the bracket is the commutator
// of coderivations oriented so that df = [f, m0] for the multiplication
// cochain m0, i.e. [f, g] = (-1)^{(m-1)(n-1)} g o f - f o g. With this
// orientation (1/2)[m_t, m_t] equals minus the associator of m_t.
inline Cochain gerstenhaber_bracket(const Cochain& f, const Cochain& g) {
  const int m = f.arity(), n = g.arity();
  Cochain gf = pre_lie(g, f);
  Cochain fg = pre_lie(f, g);
  int omega = ((m - 1) * (n - 1)) % 2 == 0 ? 1 : -1;
  Cochain out(f.dim(), m + n - 1);
  out.for_each_tuple([&](const std::vector<int>& in) {
    for (int k = 0; k < f.dim(); ++k) {
      Rational v = rat(omega) * gf.at(in, k) - fg.at(in, k);
      if (v != 0) out.at(in, k) = v;
    }
  });
  return out;
}

inline Cochain multiplication_cochain(const AlgebraTable& algebra) { return algebra.c; }

// dim H^k(A, A) for 0 <= k < nmax. Degree nmax itself is not reported: its
// cocycle space would need the next differential.
inline std::map<int, int> hochschild_cohomology(const AlgebraTable& algebra, int nmax) {
  algebra.validate();
  if (nmax < 1) throw validation_error("nmax must be >= 1");
  double entries = 1;
  for (int i = 0; i < nmax + 2; ++i) entries *= algebra.dim;
  if (entries > 4.0e6) throw budget_error("hochschild cohomology budget exceeded");

  // chain degree -k holds C^k; the differential lowers the chain degree
  ChainComplex complex(-nmax, 0);
  auto cdim = [&](int k) {
    int d = algebra.dim;
    long out = d;
    for (int i = 0; i < k; ++i) out *= d;
    return static_cast<int>(out);
  };
  for (int k = 0; k <= nmax; ++k) complex.set_dim(-k, cdim(k));

  for (int k = 0; k + 1 <= nmax; ++k) {
    RationalMatrix d(cdim(k + 1), cdim(k));
    // column index: basis cochain (tuple, out) of C^k in odometer order
    Cochain pattern(algebra.dim, k);
    int col = 0;
    pattern.for_each_tuple([&](const std::vector<int>& in) {
      for (int out_idx = 0; out_idx < algebra.dim; ++out_idx, ++col) {
        Cochain basis(algebra.dim, k);
        basis.at(in, out_idx) = rat(1);
        Cochain db = hochschild_differential(algebra, basis);
        int row = 0;
        db.for_each_tuple([&](const std::vector<int>& rin) {
          for (int rout = 0; rout < algebra.dim; ++rout, ++row) {
            const Rational& v = db.at(rin, rout);
            if (v != 0) d.add(row, col, v);
          }
        });
      }
    });
    complex.set_differential(-k, d);
  }

  std::map<int, int> betti = complex.betti();
  std::map<int, int> out;
  for (int k = 0; k < nmax; ++k) out[k] = betti.at(-k);
  return out;
}

// Truncated formal deformation m_t = m_0 + m_1 t + ... + m_N t^N.
struct DeformationSeries {
  AlgebraTable algebra;
  std::vector<Cochain> terms; // m_1 .. m_N, arity 2 each

  int order() const { return static_cast<int>(terms.size()); }

  void validate() const {
    algebra.validate();
    for (const auto& t : terms)
      if (t.arity() != 2 || t.dim() != algebra.dim)
        throw validation_error("deformation term must be a bilinear cochain on the algebra");
  }

  const Cochain& term(int k) const {
    if (k == 0) return algebra.c;
    return terms[k - 1];
  }
};

// Coefficients of (1/2)[m_t, m_t] up to t^N. All residuals through order k
// vanish iff m_t is associative modulo t^{k+1}; residual[1] = d m_1 and
// residual[2] = d m_2 + (1/2)[m_1, m_1] in the bracket orientation above.
inline std::vector<Cochain> deformation_residuals(const DeformationSeries& series) {
  series.validate();
  int N = series.order();
  std::vector<Cochain> out;
  for (int k = 0; k <= N; ++k) {
    Cochain acc(series.algebra.dim, 3);
    for (int i = 0; i <= k; ++i) {
      Cochain b = gerstenhaber_bracket(series.term(i), series.term(k - i));
      acc.for_each_tuple([&](const std::vector<int>& in) {
        for (int out_idx = 0; out_idx < acc.dim(); ++out_idx) {
          Rational v = b.at(in, out_idx) / 2;
          if (v != 0) acc.at(in, out_idx) += v;
        }
      });
    }
    out.push_back(std::move(acc));
  }
  return out;
}

} // namespace graphhom
