#pragma once

// Dense exact linear algebra over a field F: reduced row echelon form with
// deterministic pivoting (first nonzero entry in column order), rank,
// nullspace, linear solve.  Also a sparse incremental row reducer used for
// the large relation systems in the free-quotient construction, where dense
// storage would be wasteful.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mocklie {

template <class F>
using Vec = std::vector<F>;

template <class F>
bool is_zero_vec(const Vec<F>& v) {
  for (const F& x : v)
    if (!x.is_zero()) return false;
  return true;
}

template <class F>
void axpy(Vec<F>& y, const F& c, const Vec<F>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

template <class F>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  Mat(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
    a_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& row : init) {
      if (static_cast<int>(row.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
      for (long x : row) a_.push_back(F(x));
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  F& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const F& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  Vec<F> row(int i) const {
    return Vec<F>(a_.begin() + static_cast<std::size_t>(i) * cols_,
                  a_.begin() + static_cast<std::size_t>(i + 1) * cols_);
  }
  void set_row(int i, const Vec<F>& v) {
    std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::size_t>(i) * cols_);
  }
  void append_row(const Vec<F>& v) {
    if (cols_ == 0) cols_ = static_cast<int>(v.size());
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row size mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
  }

  bool is_zero() const {
    for (const F& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  Mat& operator+=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matmul shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const F& c = (*this)(i, k);
        if (c.is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += c * o(k, j);
      }
    return r;
  }

  Mat scaled(const F& c) const {
    Mat r = *this;
    for (F& x : r.a_) x *= c;
    return r;
  }

  Vec<F> apply(const Vec<F>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("apply shape mismatch");
    Vec<F> r(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  // In-place reduced row echelon form.  Pivot choice is deterministic: the
  // first row (top to bottom) with a nonzero entry in the current column.
  // Returns the pivot columns in increasing order.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int sel = -1;
      for (int i = r; i < rows_; ++i)
        if (!(*this)(i, c).is_zero()) { sel = i; break; }
      if (sel < 0) continue;
      if (sel != r)
        for (int j = 0; j < cols_; ++j) std::swap((*this)(sel, j), (*this)(r, j));
      F inv = (*this)(r, c).inv();
      for (int j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        F f = (*this)(i, c);
        for (int j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  int rank() const {
    Mat m = *this;
    return static_cast<int>(m.rref().size());
  }

  // Basis of {x : Mx = 0}, one vector per free column, in column order.
  std::vector<Vec<F>> nullspace() const {
    Mat m = *this;
    std::vector<int> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec<F>> basis;
    for (int f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      Vec<F> v(cols_);
      v[f] = F(1);
      for (std::size_t r2 = 0; r2 < pivots.size(); ++r2) v[pivots[r2]] = -m(static_cast<int>(r2), f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // One solution of Mx = b with free variables set to zero, or nullopt.
  std::optional<Vec<F>> solve(const Vec<F>& b) const {
    if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("solve shape mismatch");
    Mat aug(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    std::vector<int> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    Vec<F> x(cols_);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), cols_);
    return x;
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
  }
  int rows_, cols_;
  std::vector<F> a_;
};

// Sparse row: (column, coefficient) pairs sorted by column, no zeros stored.
template <class F>
using SparseRow = std::vector<std::pair<int, F>>;

template <class F>
void sparse_axpy(SparseRow<F>& y, const F& c, const SparseRow<F>& x) {
  SparseRow<F> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].first < y[i].first) {
      F v = c * x[j].second;
      if (!v.is_zero()) out.emplace_back(x[j].first, std::move(v));
      ++j;
    } else {
      F v = y[i].second + c * x[j].second;
      if (!v.is_zero()) out.emplace_back(y[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

// Incremental echelon builder over sparse rows.  Rows may be added in any
// order; after finish() the stored rows are the unique reduced row echelon
// basis of the span, so downstream results never depend on generation order.
template <class F>
class RowReducer {
 public:
  // Normal form of r modulo the span of the stored rows: every pivot column
  // is eliminated from its support.  Unique whether or not finish() ran.
  SparseRow<F> reduce(SparseRow<F> r) const {
    std::size_t k = 0;  // entries before position k are at pivot-free columns
    while (k < r.size()) {
      auto it = rows_.find(r[k].first);
      if (it == rows_.end()) {
        ++k;
        continue;
      }
      // cancels r[k]; may only touch columns beyond it
      sparse_axpy(r, -r[k].second, it->second);
    }
    return r;
  }

  void add_row(SparseRow<F> r) {
    while (!r.empty()) {
      auto it = rows_.find(r.front().first);
      if (it == rows_.end()) break;
      sparse_axpy(r, -r.front().second, it->second);
    }
    if (r.empty()) return;
    F inv = r.front().second.inv();
    for (auto& [c, v] : r) v *= inv;
    rows_.emplace(r.front().first, std::move(r));
    finished_ = false;
  }

  // Full back-substitution: afterwards each pivot row's tail touches only
  // free columns, i.e. the basis is the reduced echelon form of the span.
  void finish() {
    if (finished_) return;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      SparseRow<F>& row = it->second;
      std::size_t k = 1;
      while (k < row.size()) {
        auto p = rows_.find(row[k].first);
        if (p == rows_.end() || p->first == it->first) {
          ++k;
          continue;
        }
        sparse_axpy(row, -row[k].second, p->second);
        // entry k vanished; new entries are free columns beyond it
      }
    }
    finished_ = true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }

  std::vector<int> pivot_cols() const {
    std::vector<int> out;
    out.reserve(rows_.size());
    for (const auto& [c, row] : rows_) out.push_back(c);
    return out;
  }

  // Pivot column -> its reduced row (call finish() first for reduced form).
  const std::map<int, SparseRow<F>>& rows() const { return rows_; }

 private:
  std::map<int, SparseRow<F>> rows_;
  bool finished_ = true;
};

}  // namespace mocklie
