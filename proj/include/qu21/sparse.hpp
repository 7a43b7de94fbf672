#pragma once

// Minimal column-major sparse matrix used by the verification layer.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qu21 {

template <class T>
using SparseVector = std::map<int, T>;

template <class T>
class SparseMatrix {
public:
  using Column = std::vector<std::pair<int, T>>;  // sorted by row

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : col_) n += c.size();
    return n;
  }

  const Column& column(int j) const { return col_.at(j); }

  /// Adds v to entry (i, j).
  void add(int i, int j, const T& v) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("SparseMatrix::add");
    auto& c = col_[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const std::pair<int, T>& e, int row) { return e.first < row; });
    if (it != c.end() && it->first == i)
      it->second += v;
    else
      c.insert(it, {i, v});
  }

  /// Entry (i, j) or nullptr when structurally zero.
  const T* find(int i, int j) const {
    const auto& c = col_.at(j);
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const std::pair<int, T>& e, int row) { return e.first < row; });
    return (it != c.end() && it->first == i) ? &it->second : nullptr;
  }

  SparseVector<T> column_vector(int j) const {
    SparseVector<T> v;
    for (const auto& [i, x] : col_.at(j)) v.emplace(i, x);
    return v;
  }

  SparseVector<T> apply(const SparseVector<T>& v) const {
    SparseVector<T> out;
    for (const auto& [j, x] : v)
      for (const auto& [i, a] : col_.at(j)) accumulate(out, i, T(a * x));
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
      for (const auto& [i, x] : col_[j]) t.col_[i].push_back({j, x});
    return t;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMatrix: shape mismatch");
    SparseMatrix c(a.rows_, b.cols_);
    for (int j = 0; j < b.cols_; ++j) {
      SparseVector<T> acc = a.apply(b.column_vector(j));
      c.col_[j].assign(acc.begin(), acc.end());
    }
    return c;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    return combine(a, b, [](const T& x) { return x; });
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    return combine(a, b, [](const T& x) { return T(-x); });
  }

  SparseMatrix scaled(const T& s) const {
    SparseMatrix r = *this;
    for (auto& c : r.col_)
      for (auto& e : c) e.second *= s;
    return r;
  }

  static void accumulate(SparseVector<T>& v, int i, const T& x) {
    auto it = v.find(i);
    if (it == v.end())
      v.emplace(i, x);
    else
      it->second += x;
  }

private:
  template <class Neg>
  static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, Neg neg) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("SparseMatrix: shape mismatch");
    SparseMatrix c(a.rows_, a.cols_);
    for (int j = 0; j < a.cols_; ++j) {
      SparseVector<T> acc = a.column_vector(j);
      for (const auto& [i, x] : b.col_[j]) accumulate(acc, i, neg(x));
      c.col_[j].assign(acc.begin(), acc.end());
    }
    return c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Column> col_;
};

}  // namespace qu21
