#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphhom/kontsevich.hpp"
#include "graphhom/parallel.hpp"

namespace graphhom {

// Monte-Carlo estimate of a graph weight. Deterministic given
// (graph, samples, seed), independent of the worker count.
struct WeightEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  long degenerate = 0; // draws rejected for near-coincident points
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// directed hyperbolic angle at p toward q: arg((q - p) / (q - conj(p)))
inline double angle(std::complex<double> p, std::complex<double> q) {
  return std::arg((q - p) / (q - std::conj(p)));
}

// gradient of the angle in the real coordinates of p and (when aerial) q
struct AngleGrad {
  double px, py, qx, qy;
};

inline AngleGrad angle_gradient(std::complex<double> p, std::complex<double> q) {
  std::complex<double> a = 1.0 / (q - p);
  std::complex<double> b = 1.0 / (q - std::conj(p));
  AngleGrad g;
  g.px = (b - a).imag();
  g.py = -(a + b).real();
  g.qx = (a - b).imag();
  g.qy = (a - b).real();
  return g;
}

// determinant by partial-pivot LU; sizes here are at most 6x6
inline double determinant(std::vector<std::vector<double>> m) {
  const int n = static_cast<int>(m.size());
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      double f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

struct BlockResult {
  double sum = 0.0;
  double sum_sq = 0.0;
  long degenerate = 0;
};

} // namespace detail

// W_Gamma = 1/(n! (2 pi)^{2n}) * integral over n upper half-plane points of
// the wedge of the angle one-forms, edges ordered by (vertex, first/second).
// Sampling: one uniform draw on the unit disk per aerial vertex pulled back
// through z = i(1+u)/(1-u); the integrand carries the exact Jacobian. Draws
// with nearly coincident points are resampled and counted.
inline WeightEstimate graph_weight(const AdmissibleGraph& graph, long samples,
                                   std::uint64_t seed) {
  graph.validate();
  const int n = graph.n;
  if (samples < 1) throw validation_error("sample count must be positive");
  if (n == 0) return {1.0, 0.0, samples, seed, 0}; // empty product, weight 1 by convention

  constexpr long kBlock = 1 << 16;
  constexpr double kMinDist = 1e-9;
  const int blocks = static_cast<int>((samples + kBlock - 1) / kBlock);
  std::vector<detail::BlockResult> results(blocks);

  parallel_for(blocks, [&](int block) {
    std::uint64_t state = seed + 0x632be59bd9b4e019ull * static_cast<std::uint64_t>(block + 1);
    detail::splitmix64(state);
    long count = std::min(kBlock, samples - static_cast<long>(block) * kBlock);
    detail::BlockResult res;
    std::vector<std::complex<double>> z(n + 2);
    z[n] = {0.0, 0.0};     // first ground
    z[n + 1] = {1.0, 0.0}; // second ground
    std::vector<double> jac(n);
    for (long s = 0; s < count; ++s) {
      // one configuration
      bool degenerate = true;
      while (degenerate) {
        for (int v = 0; v < n; ++v) {
          double ux, uy;
          do {
            ux = 2.0 * detail::uniform01(state) - 1.0;
            uy = 2.0 * detail::uniform01(state) - 1.0;
          } while (ux * ux + uy * uy >= 1.0);
          std::complex<double> u(ux, uy);
          std::complex<double> one_minus = 1.0 - u;
          z[v] = std::complex<double>(0.0, 1.0) * (1.0 + u) / one_minus;
          std::complex<double> dz = std::complex<double>(0.0, 2.0) / (one_minus * one_minus);
          jac[v] = std::norm(dz);
        }
        degenerate = false;
        for (int a = 0; a < n + 2 && !degenerate; ++a)
          for (int b = a + 1; b < n + 2; ++b)
            if (std::abs(z[a] - z[b]) < kMinDist) {
              degenerate = true;
              ++res.degenerate;
              break;
            }
      }

      // rows: angle differentials per edge; columns: (x_1, y_1, .., x_n, y_n)
      std::vector<std::vector<double>> m(2 * n, std::vector<double>(2 * n, 0.0));
      for (int e = 0; e < 2 * n; ++e) {
        int v = e / 2;
        int target = e % 2 == 0 ? graph.targets[v].first : graph.targets[v].second;
        detail::AngleGrad g = detail::angle_gradient(z[v], z[target]);
        m[e][2 * v] += g.px;
        m[e][2 * v + 1] += g.py;
        if (target < n) {
          m[e][2 * target] += g.qx;
          m[e][2 * target + 1] += g.qy;
        }
      }
      double value = detail::determinant(std::move(m));
      for (int v = 0; v < n; ++v) value *= jac[v] * M_PI; // disk area per vertex
      res.sum += value;
      res.sum_sq += value * value;
    }
    results[block] = res;
  });

  double sum = 0.0, sum_sq = 0.0;
  long degenerate = 0;
  for (const auto& r : results) {
    sum += r.sum;
    sum_sq += r.sum_sq;
    degenerate += r.degenerate;
  }
  double prefactor = 1.0;
  for (int k = 1; k <= n; ++k) prefactor /= k;
  for (int k = 0; k < 2 * n; ++k) prefactor /= 2.0 * M_PI;

  const double N = static_cast<double>(samples);
  double mean = sum / N;
  double variance =
      samples < 2 ? 0.0 : std::max(0.0, (sum_sq - sum * sum / N) / (N - 1.0));
  WeightEstimate est;
  est.mean = prefactor * mean;
  est.std_error = prefactor * std::sqrt(variance / N);
  est.samples = samples;
  est.seed = seed;
  est.degenerate = degenerate;
  return est;
}

// Exact weights of the graphs whose every edge lands on a ground vertex:
// per-vertex factors +1/2 for (g1, g2) and -1/2 for (g2, g1), divided by n!.
// For a constant Poisson tensor these are the only contributing graphs and
// the resulting series is the exponential (Moyal) product.
inline std::map<std::string, Rational> moyal_weight_table(int max_order) {
  if (max_order < 0 || max_order > 12) throw validation_error("order out of range");
  std::map<std::string, Rational> table;
  for (int n = 1; n <= max_order; ++n) {
    Rational inv_fact = rat(1);
    for (int k = 2; k <= n; ++k) inv_fact /= k;
    for (int mask = 0; mask < (1 << n); ++mask) {
      AdmissibleGraph g;
      g.n = n;
      int minus = 0;
      for (int v = 0; v < n; ++v) {
        if (mask & (1 << v)) {
          g.targets.push_back({g.ground2(), g.ground1()});
          ++minus;
        } else {
          g.targets.push_back({g.ground1(), g.ground2()});
        }
      }
      Rational w = inv_fact / rat(Integer(1) << n, 1);
      table[g.code()] = (minus % 2 == 0) ? w : -w;
    }
  }
  return table;
}

} // namespace graphhom
