#pragma once

// Dense matrices over GF(2^k) and over GF(2^k)[t].

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernikov/field.hpp"
#include "chernikov/poly.hpp"

namespace chernikov {

class Mat {
 public:
  Mat(const Field& field, std::size_t rows, std::size_t cols)
      : field_(&field), rows_(rows), cols_(cols), e_(rows * cols, 0) {}
  Mat(const Field& field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
      : field_(&field), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols) throw usage_error("matrix entry count does not match its shape");
    for (Elem x : e_)
      if (!field.contains(x)) throw usage_error("matrix entry out of range for " + field.spec().to_string());
  }
  Mat(const Field& field, std::initializer_list<std::initializer_list<Elem>> rows)
      : field_(&field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    for (auto& r : rows) {
      if (r.size() != cols_) throw usage_error("ragged matrix literal");
      e_.insert(e_.end(), r.begin(), r.end());
    }
  }

  static Mat identity(const Field& f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  const Field& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<Elem>& entries() const { return e_; }

  Elem& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](Elem x) { return x == 0; });
  }

  Mat transpose() const {
    Mat t(*field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat scaled(Elem s) const {
    Mat r = *this;
    for (Elem& x : r.e_) x = field_->mul(x, s);
    return r;
  }

  /// Copies `block` into this matrix with its top-left corner at (r, c).
  void place(std::size_t r, std::size_t c, const Mat& block) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r + i, c + j) = block(i, j);
  }

  Mat slice(std::size_t r, std::size_t c, std::size_t nr, std::size_t nc) const {
    Mat s(*field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r + i, c + j);
    return s;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    a.check_same(b);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw usage_error("matrix shapes differ");
    Mat r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] ^= b.e_[i];
    return r;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    a.check_same(b);
    if (a.cols_ != b.rows_) throw usage_error("matrix product dimension mismatch");
    const Field& f = *a.field_;
    Mat r(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Elem x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) ^= f.mul(x, b(k, j));
      }
    return r;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  void check_same(const Mat& o) const {
    if (field_ != o.field_) throw usage_error("matrices over different fields");
  }

  const Field* field_;
  std::size_t rows_, cols_;
  std::vector<Elem> e_;
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(Mat& m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Elem s = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Elem x = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) ^= f.mul(x, m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Mat m) { return row_reduce(m).size(); }

/// Basis of the right kernel, one column vector per free variable (RREF canonical).
inline std::vector<std::vector<Elem>> nullspace(Mat m) {
  const auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Mat mat_inv(const Mat& m) {
  if (!m.is_square()) throw usage_error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(m.field(), n, 2 * n);
  aug.place(0, 0, m);
  aug.place(0, n, Mat::identity(m.field(), n));
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw domain_error("matrix is singular");
  return aug.slice(0, n, n, n);
}

inline Elem determinant(Mat m) {
  if (!m.is_square()) throw usage_error("determinant of a non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
    det = f.mul(det, m(c, c));
    const Elem s = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Elem x = f.mul(m(i, c), s);
      for (std::size_t j = c; j < n; ++j) m(i, j) ^= f.mul(x, m(c, j));
    }
  }
  return det;
}

/// S A S^T for invertible S.
inline Mat congruence(const Mat& s, const Mat& a) {
  if (!s.is_square() || !a.is_square() || s.rows() != a.rows())
    throw usage_error("congruence needs square matrices of equal size");
  if (rank(s) != s.rows()) throw domain_error("congruence by a singular matrix");
  return s * a * s.transpose();
}

class PolyMat {
 public:
  PolyMat(const Field& field, std::size_t rows, std::size_t cols)
      : field_(&field), rows_(rows), cols_(cols), e_(rows * cols, Poly(field)) {}

  /// t * a + b.
  static PolyMat pencil(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw usage_error("pencil matrices differ in shape");
    const Field& f = a.field();
    PolyMat p(f, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) p(i, j) = Poly(f, {b(i, j), a(i, j)});
    return p;
  }

  const Field& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  friend PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    if (a.cols_ != b.rows_) throw usage_error("polynomial matrix product dimension mismatch");
    PolyMat r(*a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

 private:
  const Field* field_;
  std::size_t rows_, cols_;
  std::vector<Poly> e_;
};

/// Monic invariant factors d1 | d2 | ... | dr of a matrix over GF(2^k)[t]; r is the rank.
/// Pivot-degree-minimizing elimination with exact division.
inline std::vector<Poly> smith_form(PolyMat m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<Poly> out;
  auto row_axpy = [&](std::size_t dst, std::size_t src, const Poly& q, std::size_t from) {
    for (std::size_t j = from; j < C; ++j)
      if (!m(src, j).is_zero()) m(dst, j) -= q * m(src, j);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Poly& q, std::size_t from) {
    for (std::size_t i = from; i < R; ++i)
      if (!m(i, src).is_zero()) m(i, dst) -= q * m(i, src);
  };
  for (std::size_t s = 0; s < std::min(R, C); ++s) {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      int best_deg = 0;
      for (std::size_t i = s; i < R; ++i)
        for (std::size_t j = s; j < C; ++j) {
          const Poly& p = m(i, j);
          if (p.is_zero()) continue;
          if (!best || p.degree() < best_deg) {
            best = {i, j};
            best_deg = p.degree();
          }
        }
      if (!best) return out;
      auto [pi, pj] = *best;
      if (pi != s)
        for (std::size_t j = s; j < C; ++j) std::swap(m(pi, j), m(s, j));
      if (pj != s)
        for (std::size_t i = s; i < R; ++i) std::swap(m(i, pj), m(i, s));

      bool clean = true;
      const Poly pivot = m(s, s);
      for (std::size_t i = s + 1; i < R; ++i) {
        if (m(i, s).is_zero()) continue;
        auto [q, r] = divmod(m(i, s), pivot);
        row_axpy(i, s, q, s);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = s + 1; j < C; ++j) {
        if (m(s, j).is_zero()) continue;
        auto [q, r] = divmod(m(s, j), pivot);
        col_axpy(j, s, q, s);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;

      // Row and column s are clear; the pivot must divide the rest.
      bool divides = true;
      for (std::size_t i = s + 1; i < R && divides; ++i)
        for (std::size_t j = s + 1; j < C; ++j)
          if (!(m(i, j) % pivot).is_zero()) {
            row_axpy(s, i, Poly::one(m.field()), s);
            divides = false;
            break;
          }
      if (!divides) continue;
      out.push_back(pivot.monic());
      break;
    }
  }
  return out;
}

}  // namespace chernikov
