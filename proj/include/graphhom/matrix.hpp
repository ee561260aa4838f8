#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "graphhom/rational.hpp"

namespace graphhom {

// Sparse matrix over the rationals. Only nonzero entries are stored.
class RationalMatrix {
public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw validation_error("negative matrix dimension");
  }

  static RationalMatrix identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, rat(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nonzeros() const { return static_cast<int>(entries_.size()); }

  void set(int r, int c, const Rational& v) {
    check_index(r, c);
    if (v == 0)
      entries_.erase({r, c});
    else
      entries_[{r, c}] = v;
  }

  void add(int r, int c, const Rational& v) {
    check_index(r, c);
    auto it = entries_.find({r, c});
    if (it == entries_.end()) {
      if (v != 0) entries_[{r, c}] = v;
      return;
    }
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }

  Rational at(int r, int c) const {
    check_index(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Rational(0) : it->second;
  }

  // Sorted row-major iteration over nonzero entries.
  const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (const auto& [rc, v] : entries_) t.entries_[{rc.second, rc.first}] = v;
    return t;
  }

  RationalMatrix multiply(const RationalMatrix& other) const {
    if (cols_ != other.rows_) throw validation_error("matrix shape mismatch in multiply");
    // column-sparse view of other
    std::vector<std::vector<std::pair<int, Rational>>> rows_of_other(other.rows_);
    for (const auto& [rc, v] : other.entries_) rows_of_other[rc.first].push_back({rc.second, v});
    RationalMatrix out(rows_, other.cols_);
    for (const auto& [rc, v] : entries_) {
      for (const auto& [j, w] : rows_of_other[rc.second]) out.add(rc.first, j, v * w);
    }
    return out;
  }

  bool is_zero() const { return entries_.empty(); }

  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

private:
  void check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw validation_error("matrix index out of bounds");
  }

  int rows_, cols_;
  std::map<std::pair<int, int>, Rational> entries_;
};

namespace detail {

// Sparse integer row, sorted by column, with content (gcd) stripped.
using IntRow = std::vector<std::pair<int, Integer>>;

inline void strip_content(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (g > 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// row := a*row - b*pivot, content-stripped. Entry at pivot column cancels.
inline IntRow eliminate(const IntRow& row, const IntRow& pivot, const Integer& a,
                        const Integer& b) {
  IntRow out;
  out.reserve(row.size() + pivot.size());
  size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back({row[i].first, a * row[i].second});
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.push_back({pivot[j].first, -b * pivot[j].second});
      ++j;
    } else {
      Integer v = a * row[i].second - b * pivot[j].second;
      if (v != 0) out.push_back({row[i].first, v});
      ++i;
      ++j;
    }
  }
  strip_content(out);
  return out;
}

inline int rank_sparse(const RationalMatrix& m) {
  // Clear denominators row by row; scaling does not change the rank.
  std::vector<IntRow> rows(m.rows());
  {
    std::vector<Integer> lcm(m.rows(), 1);
    for (const auto& [rc, v] : m.entries())
      mpz_lcm(lcm[rc.first].get_mpz_t(), lcm[rc.first].get_mpz_t(),
              v.get_den_mpz_t());
    for (const auto& [rc, v] : m.entries()) {
      Integer scaled = v.get_num() * (lcm[rc.first] / v.get_den());
      rows[rc.first].push_back({rc.second, scaled});
    }
    for (auto& r : rows) strip_content(r);
  }

  std::vector<char> done(rows.size(), 0);
  int rank = 0;
  for (;;) {
    // Markowitz-lite pivoting: shortest remaining row.
    int best = -1;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (done[r] || rows[r].empty()) continue;
      if (best < 0 || rows[r].size() < rows[best].size()) best = r;
    }
    if (best < 0) break;
    ++rank;
    done[best] = 1;
    const int pc = rows[best].front().first;
    const Integer pv = rows[best].front().second;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (done[r] || rows[r].empty()) continue;
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(), pc,
                                 [](const auto& e, int c) { return e.first < c; });
      if (it == rows[r].end() || it->first != pc) continue;
      rows[r] = eliminate(rows[r], rows[best], pv, it->second);
    }
  }
  return rank;
}

inline int rank_dense(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
  for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
  int rank = 0;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[row]);
    for (int r = row + 1; r < m.rows(); ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[row][col];
      for (int c = col; c < m.cols(); ++c) a[r][c] -= f * a[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

} // namespace detail

// Exact rank over the rationals. Small matrices go through plain dense
// elimination, everything else through fraction-free integer elimination
// on sparse rows.
inline int rank_rational(const RationalMatrix& m) {
  if (m.rows() < 64 && m.cols() < 64) return detail::rank_dense(m);
  return detail::rank_sparse(m);
}

// One solution of M x = b over the rationals, if any. Dense; intended for
// small systems.
inline std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& m,
                                                         const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw validation_error("rhs size mismatch");
  const int R = m.rows(), C = m.cols();
  std::vector<std::vector<Rational>> a(R, std::vector<Rational>(C + 1, Rational(0)));
  for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
  for (int r = 0; r < R; ++r) a[r][C] = b[r];

  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < C && row < R; ++col) {
    int piv = -1;
    for (int r = row; r < R; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[row]);
    for (int r = 0; r < R; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[row][col];
      for (int c = col; c <= C; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int r = row; r < R; ++r)
    if (a[r][C] != 0) return std::nullopt;

  std::vector<Rational> x(C, Rational(0));
  for (int r = 0; r < row; ++r) x[pivot_col[r]] = a[r][C] / a[r][pivot_col[r]];
  return x;
}

} // namespace graphhom
