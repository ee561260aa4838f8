#pragma once

#include <map>
#include <vector>

#include "graphhom/multilinear.hpp"

namespace graphhom {

// A graded space with a differential of degree +1 and a family of n-ary
// products M_n of degree 2 - n; the data of a candidate A-infinity algebra.
struct EndOpsTable {
  std::vector<int> degrees;           // degree of each basis element
  RationalMatrix d;                   // dim x dim, degree +1, d.d = 0
  std::map<int, Multilinear> products; // arity -> M_n, 2 <= n

  int dim() const { return static_cast<int>(degrees.size()); }

  void validate() const {
    const int n = dim();
    if (d.rows() != n || d.cols() != n) throw validation_error("differential shape mismatch");
    for (const auto& [rc, v] : d.entries())
      if (degrees[rc.first] != degrees[rc.second] + 1)
        throw validation_error("differential is not homogeneous of degree 1");
    if (!d.multiply(d).is_zero()) throw validation_error("differential does not square to zero");
    for (const auto& [arity, m] : products) {
      if (arity < 2) throw validation_error("products start at arity 2");
      if (m.dim() != n || m.arity() != arity) throw validation_error("product shape mismatch");
      m.for_each_tuple([&](const std::vector<int>& in) {
        int deg_in = 0;
        for (int i : in) deg_in += degrees[i];
        for (int k = 0; k < n; ++k)
          if (m.at(in, k) != 0 && degrees[k] != deg_in + 2 - arity)
            throw validation_error("degree mismatch in products");
      });
    }
  }

  Multilinear product(int arity) const {
    auto it = products.find(arity);
    return it == products.end() ? Multilinear(dim(), arity) : it->second;
  }
};

// Residual tensors of the A-infinity coherence relation, one per arity
// 2..nmax. All zero iff the table is an A-infinity algebra up to nmax.
//
// The relation checked, on v_1, ..., v_n:
//   d M_n(v) - (-1)^n sum_i eps(i) M_n(.., d v_i, ..)
//     = sum_{k+l=n+1, k,l>=2} sum_{i=0}^{k-1} (-1)^{i+l(n-i-l)} sigma(i)
//         M_k(v_1..v_i, M_l(v_{i+1}..v_{i+l}), .., v_n)
// with eps(i) = (-1)^{|v_1|+..+|v_{i-1}|} and sigma(i) = (-1)^{l(|v_1|+..+|v_i|)}.
inline std::vector<Multilinear> check_ainf_relations(const EndOpsTable& table, int nmax) {
  table.validate();
  if (nmax < 2) throw validation_error("nmax must be >= 2");
  const int dim = table.dim();
  std::vector<Multilinear> residuals;

  for (int n = 2; n <= nmax; ++n) {
    Multilinear res(dim, n);
    const Multilinear mn = table.product(n);
    mn.for_each_tuple([&](const std::vector<int>& in) {
      std::vector<Rational> lhs(dim, Rational(0));

      // d M_n(v)
      std::vector<Rational> mv = mn.apply(in);
      for (const auto& [rc, c] : table.d.entries()) lhs[rc.first] += c * mv[rc.second];

      // - (-1)^n sum_i eps(i) M_n(.., d v_i, ..)
      int deg_prefix = 0;
      for (int slot = 0; slot < n; ++slot) {
        int eps = deg_prefix % 2 == 0 ? 1 : -1;
        std::vector<Rational> dvi(dim, Rational(0));
        for (const auto& [rc, c] : table.d.entries())
          if (rc.second == in[slot]) dvi[rc.first] += c;
        int outer = (n % 2 == 0 ? 1 : -1) * eps;
        detail::accumulate_with_slot(mn, in, slot, dvi, rat(-outer), lhs);
        deg_prefix += table.degrees[in[slot]];
      }

      // RHS
      std::vector<Rational> rhs(dim, Rational(0));
      for (int l = 2; l <= n - 1; ++l) {
        int k = n + 1 - l;
        if (k < 2) continue;
        const Multilinear mk = table.product(k);
        const Multilinear ml = table.product(l);
        int deg_pref = 0;
        for (int i = 0; i + l <= n; ++i) {
          if (i > 0) deg_pref += table.degrees[in[i - 1]];
          // sign (-1)^{i + l(n-i-l)} * sigma(i)
          long expo = i + static_cast<long>(l) * (n - i - l) + static_cast<long>(l) * deg_pref;
          Rational sign = rat(expo % 2 == 0 ? 1 : -1);
          std::vector<int> inner(in.begin() + i, in.begin() + i + l);
          std::vector<Rational> mlv = ml.apply(inner);
          std::vector<int> outer_in;
          outer_in.reserve(k);
          for (int j = 0; j < i; ++j) outer_in.push_back(in[j]);
          outer_in.push_back(0); // slot i
          for (int j = i + l; j < n; ++j) outer_in.push_back(in[j]);
          detail::accumulate_with_slot(mk, outer_in, i, mlv, sign, rhs);
        }
      }

      for (int k = 0; k < dim; ++k) {
        Rational r = lhs[k] - rhs[k];
        if (r != 0) res.at(in, k) = r;
      }
    });
    residuals.push_back(std::move(res));
  }
  return residuals;
}

} // namespace graphhom
