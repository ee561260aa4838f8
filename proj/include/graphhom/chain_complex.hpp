#pragma once

#include <map>
#include <optional>
#include <string>

#include "graphhom/matrix.hpp"

namespace graphhom {

// Finite chain complex over Q on a contiguous degree range. The differential
// at degree d maps C_d to C_{d-1}; modules with cohomological grading negate
// their degrees before building one of these.
class ChainComplex {
public:
  ChainComplex(int lo, int hi) : lo_(lo), hi_(hi) {
    if (lo > hi) throw validation_error("empty degree range");
    for (int d = lo; d <= hi; ++d) dims_[d] = 0;
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }

  void set_dim(int degree, int dim) {
    check_degree(degree);
    if (dim < 0) throw validation_error("negative dimension");
    dims_[degree] = dim;
  }

  int dim(int degree) const {
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
  }

  // d_degree : C_degree -> C_{degree-1}; shape dims(degree-1) x dims(degree).
  void set_differential(int degree, RationalMatrix d) {
    if (degree <= lo_ || degree > hi_)
      throw validation_error("differential degree out of range");
    if (d.rows() != dim(degree - 1) || d.cols() != dim(degree))
      throw validation_error("differential shape mismatch at degree " + std::to_string(degree));
    diff_[degree] = std::move(d);
  }

  // Absent differentials are zero maps.
  RationalMatrix differential(int degree) const {
    auto it = diff_.find(degree);
    if (it != diff_.end()) return it->second;
    int r = (degree - 1 >= lo_ && degree - 1 <= hi_) ? dim(degree - 1) : 0;
    int c = (degree >= lo_ && degree <= hi_) ? dim(degree) : 0;
    return RationalMatrix(r, c);
  }

  struct Witness {
    int degree; // top degree of the failing composite d_{degree-1} . d_degree
    int column; // a column on which the composite is nonzero
  };

  // Checks d . d = 0 for every pair of consecutive differentials.
  std::optional<Witness> verify() const {
    for (int d = lo_ + 2; d <= hi_; ++d) {
      RationalMatrix prod = differential(d - 1).multiply(differential(d));
      if (!prod.is_zero()) {
        int col = prod.entries().begin()->first.second;
        return Witness{d, col};
      }
    }
    return std::nullopt;
  }

  // Betti numbers: dim ker d_k - rank d_{k+1} for every degree in range.
  // Requires d . d = 0.
  std::map<int, int> betti() const {
    if (auto w = verify())
      throw validation_error("not a complex: d.d != 0 entering degree " +
                             std::to_string(w->degree) + " (column " +
                             std::to_string(w->column) + ")");
    std::map<int, int> ranks;
    for (int d = lo_; d <= hi_ + 1; ++d) ranks[d] = rank_rational(differential(d));
    std::map<int, int> out;
    for (int d = lo_; d <= hi_; ++d) out[d] = dim(d) - ranks[d] - ranks[d + 1];
    return out;
  }

  long euler_characteristic_from_dims() const {
    long x = 0;
    for (int d = lo_; d <= hi_; ++d) x += (d % 2 == 0 ? 1 : -1) * static_cast<long>(dim(d));
    return x;
  }

private:
  void check_degree(int degree) const {
    if (degree < lo_ || degree > hi_) throw validation_error("degree out of range");
  }

  int lo_, hi_;
  std::map<int, int> dims_;
  std::map<int, RationalMatrix> diff_;
};

inline std::map<int, int> betti_numbers(const ChainComplex& c) { return c.betti(); }

} // namespace graphhom
