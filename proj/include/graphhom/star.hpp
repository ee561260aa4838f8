#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphhom/weights.hpp"

namespace graphhom {

// Weight supply for the graph expansion: an exact rational table keyed by
// graph code, or Monte-Carlo parameters. The empty graph always has weight 1.
struct WeightScheme {
  std::optional<std::map<std::string, Rational>> table;
  long mc_samples = 0;
  std::uint64_t seed = 0;

  bool exact() const { return table.has_value(); }

  void validate() const {
    if (exact() && mc_samples > 0)
      throw validation_error("choose either an exact weight table or MC parameters");
    if (!exact() && mc_samples < 1)
      throw validation_error("MC weight scheme needs a positive sample count");
  }
};

// Polynomial coefficient with per-monomial error bars, for MC weight mode.
struct ErrorPoly {
  std::map<Poly::Exponents, double> value;
  std::map<Poly::Exponents, double> error;

  void accumulate(const Poly& p, double weight, double weight_err) {
    for (const auto& [e, c] : p.terms()) {
      double cd = mpq_get_d(c.get_mpq_t());
      value[e] += weight * cd;
      error[e] += weight_err * std::abs(cd);
    }
    prune();
  }

  void prune() {
    for (auto it = value.begin(); it != value.end();) {
      if (it->second == 0.0 && error[it->first] == 0.0) {
        error.erase(it->first);
        it = value.erase(it);
      } else {
        ++it;
      }
    }
  }
};

// Truncated series sum_k p_k(x) t^k. Exact mode carries rational polynomials;
// MC mode carries float polynomials with linearly propagated error bounds.
struct StarSeries {
  int order = 0;
  int vars = 0;
  bool exact_mode = true;
  bool jacobi_ok = true;
  std::vector<Poly> exact;      // order + 1 entries when exact_mode
  std::vector<ErrorPoly> mc;    // order + 1 entries otherwise
};

namespace detail {

inline Rational table_weight(const std::map<std::string, Rational>& table,
                             const AdmissibleGraph& g) {
  if (g.n == 0) return rat(1);
  auto it = table.find(g.code());
  if (it == table.end())
    throw validation_error("missing weight for contributing graph " + g.code());
  return it->second;
}

// deterministic per-graph seed, independent of which graphs contribute
inline std::uint64_t graph_seed(std::uint64_t master, const AdmissibleGraph& g) {
  std::uint64_t h = master ^ 0x51d5c4b7a98eull;
  for (char c : g.code()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// cache of MC estimates, filled lazily
struct WeightCache {
  const WeightScheme& scheme;
  std::map<std::string, WeightEstimate> estimates;

  std::pair<double, double> get(const AdmissibleGraph& g) {
    if (g.n == 0) return {1.0, 0.0};
    auto it = estimates.find(g.code());
    if (it == estimates.end()) {
      WeightEstimate est = graph_weight(g, scheme.mc_samples, graph_seed(scheme.seed, g));
      it = estimates.emplace(g.code(), est).first;
    }
    return {it->second.mean, it->second.std_error};
  }
};

// exact-mode star product extended to truncated series arguments
inline std::vector<Poly> star_series(const PolyPoisson& poisson, const std::vector<Poly>& u,
                                     const std::vector<Poly>& v, int order,
                                     const std::map<std::string, Rational>& table) {
  std::vector<Poly> out(order + 1, Poly(poisson.d));
  for (int n = 0; n <= order; ++n) {
    for (const AdmissibleGraph& g : enumerate_admissible_graphs(n)) {
      for (int a = 0; a + n <= order; ++a) {
        for (int b = 0; a + b + n <= order; ++b) {
          if (a >= static_cast<int>(u.size()) || b >= static_cast<int>(v.size())) continue;
          Poly bg = bidifferential_operator(g, poisson, u[a], v[b]);
          if (bg.is_zero()) continue;
          out[a + b + n] = out[a + b + n] + bg * table_weight(table, g);
        }
      }
    }
  }
  return out;
}

} // namespace detail

// f * g = sum_n t^n sum_{graphs of order n} W_Gamma B_Gamma(f, g). The n!
// lives inside W_Gamma; with the shipped exact first-order weights the
// antisymmetric part of the t coefficient is the Poisson bracket.
inline StarSeries star_product(const PolyPoisson& poisson, const Poly& f, const Poly& g,
                               int order, const WeightScheme& scheme) {
  poisson.validate();
  scheme.validate();
  if (order < 0) throw validation_error("order must be nonnegative");
  if (!scheme.exact() && order > 2)
    throw validation_error("MC weights are limited to order 2");
  if (f.vars() != poisson.d || g.vars() != poisson.d)
    throw validation_error("dimension mismatch");

  StarSeries out;
  out.order = order;
  out.vars = poisson.d;
  out.exact_mode = scheme.exact();
  out.jacobi_ok = poisson.jacobi_ok();

  if (scheme.exact()) {
    out.exact = detail::star_series(poisson, {f}, {g}, order, *scheme.table);
    return out;
  }

  detail::WeightCache cache{scheme, {}};
  out.mc.assign(order + 1, ErrorPoly{});
  for (int n = 0; n <= order; ++n)
    for (const AdmissibleGraph& graph : enumerate_admissible_graphs(n)) {
      Poly bg = bidifferential_operator(graph, poisson, f, g);
      if (bg.is_zero()) continue;
      auto [w, err] = cache.get(graph);
      out.mc[n].accumulate(bg, w, err);
    }
  return out;
}

// (f * g) * h - f * (g * h) through t^order. Exact mode composes truncated
// series; MC mode expands over ordered pairs (outer, inner) of graphs with
// exact inner polynomials so that only the weight products carry error:
// |delta(Wo Wi)| <= |Wo| s_i + |Wi| s_o + s_o s_i per pair.
inline StarSeries associativity_residual(const PolyPoisson& poisson, const Poly& f, const Poly& g,
                                         const Poly& h, int order, const WeightScheme& scheme) {
  poisson.validate();
  scheme.validate();
  if (order < 0) throw validation_error("order must be nonnegative");
  if (!scheme.exact() && order > 2)
    throw validation_error("MC weights are limited to order 2");
  if (f.vars() != poisson.d || g.vars() != poisson.d || h.vars() != poisson.d)
    throw validation_error("dimension mismatch");

  StarSeries out;
  out.order = order;
  out.vars = poisson.d;
  out.exact_mode = scheme.exact();
  out.jacobi_ok = poisson.jacobi_ok();

  if (scheme.exact()) {
    const auto& table = *scheme.table;
    std::vector<Poly> fg = detail::star_series(poisson, {f}, {g}, order, table);
    std::vector<Poly> gh = detail::star_series(poisson, {g}, {h}, order, table);
    std::vector<Poly> left = detail::star_series(poisson, fg, {h}, order, table);
    std::vector<Poly> right = detail::star_series(poisson, {f}, gh, order, table);
    out.exact.reserve(order + 1);
    for (int k = 0; k <= order; ++k) out.exact.push_back(left[k] - right[k]);
    return out;
  }

  detail::WeightCache cache{scheme, {}};
  out.mc.assign(order + 1, ErrorPoly{});
  for (int outer = 0; outer <= order; ++outer)
    for (const AdmissibleGraph& go : enumerate_admissible_graphs(outer))
      for (int inner = 0; outer + inner <= order; ++inner)
        for (const AdmissibleGraph& gi : enumerate_admissible_graphs(inner)) {
          Poly left = bidifferential_operator(
              go, poisson, bidifferential_operator(gi, poisson, f, g), h);
          Poly right = bidifferential_operator(
              go, poisson, f, bidifferential_operator(gi, poisson, g, h));
          Poly pair = left - right;
          if (pair.is_zero()) continue;
          auto [wo, so] = cache.get(go);
          auto [wi, si] = cache.get(gi);
          double w = wo * wi;
          double err = std::abs(wo) * si + std::abs(wi) * so + so * si;
          out.mc[outer + inner].accumulate(pair, w, err);
        }
  return out;
}

} // namespace graphhom
