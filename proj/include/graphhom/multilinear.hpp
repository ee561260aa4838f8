#pragma once

#include <vector>

#include "graphhom/matrix.hpp"

namespace graphhom {

// Dense n-linear map V^n -> V on a based space of dimension dim.
// Entry (i1..in; k) is the e_k-coefficient of M(e_i1, ..., e_in).
class Multilinear {
public:
  Multilinear() : dim_(0), arity_(0) {}
  Multilinear(int dim, int arity) : dim_(dim), arity_(arity) {
    if (dim < 1 || arity < 0) throw validation_error("bad multilinear shape");
    size_t size = 1;
    for (int i = 0; i < arity; ++i) size *= dim;
    size *= dim;
    if (size > (1u << 26)) throw budget_error("multilinear tensor too large");
    coeff_.assign(size, Rational(0));
  }

  int dim() const { return dim_; }
  int arity() const { return arity_; }

  Rational& at(const std::vector<int>& in, int out) { return coeff_[index(in, out)]; }
  const Rational& at(const std::vector<int>& in, int out) const { return coeff_[index(in, out)]; }

  // M(e_{in[0]}, ..., e_{in[n-1]}) as a coefficient vector.
  std::vector<Rational> apply(const std::vector<int>& in) const {
    std::vector<Rational> v(dim_);
    for (int k = 0; k < dim_; ++k) v[k] = coeff_[index(in, k)];
    return v;
  }

  bool is_zero() const {
    for (const auto& c : coeff_)
      if (c != 0) return false;
    return true;
  }

  bool operator==(const Multilinear& o) const = default;

  // All index tuples, odometer order.
  template <typename F> void for_each_tuple(F&& f) const {
    std::vector<int> in(arity_, 0);
    for (;;) {
      f(const_cast<const std::vector<int>&>(in));
      int p = arity_ - 1;
      while (p >= 0 && ++in[p] == dim_) in[p--] = 0;
      if (p < 0) break;
    }
  }

private:
  size_t index(const std::vector<int>& in, int out) const {
    if (static_cast<int>(in.size()) != arity_) throw validation_error("arity mismatch");
    size_t idx = 0;
    for (int i : in) {
      if (i < 0 || i >= dim_) throw validation_error("index out of range");
      idx = idx * dim_ + static_cast<size_t>(i);
    }
    if (out < 0 || out >= dim_) throw validation_error("index out of range");
    return idx * dim_ + static_cast<size_t>(out);
  }

  int dim_, arity_;
  std::vector<Rational> coeff_;
};

namespace detail {

// out += coeff * M(e_i1, .., v at slot, .., e_in) where v is a coefficient
// vector replacing slot `slot`.
inline void accumulate_with_slot(const Multilinear& m, std::vector<int> in, int slot,
                                 const std::vector<Rational>& v, const Rational& coeff,
                                 std::vector<Rational>& out) {
  for (int j = 0; j < m.dim(); ++j) {
    if (v[j] == 0) continue;
    in[slot] = j;
    for (int k = 0; k < m.dim(); ++k) {
      const Rational& c = m.at(in, k);
      if (c != 0) out[k] += coeff * v[j] * c;
    }
  }
}

} // namespace detail

} // namespace graphhom
