// Dense exact linear algebra over Q: elimination, rank, null spaces,
// column-space solves, positive-definiteness via LDL^T.
#ifndef CDR_LINALG_HPP
#define CDR_LINALG_HPP

#include "cdr/base.hpp"

#include <cassert>
#include <functional>
#include <utility>

namespace cdr {

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return r_; }
  int cols() const { return c_; }
  Rat& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  bool isZero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }
  bool operator==(const Mat& o) const {
    return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
  }

  Mat transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    if (c_ != o.r_) throw Error(Err::ShapeMismatch, "matrix product shapes");
    Mat out(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        const Rat& v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.c_; ++j) {
          if (o(k, j) != 0) out(i, j) += v * o(k, j);
        }
      }
    return out;
  }
  Mat operator+(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error(Err::ShapeMismatch, "matrix sum");
    Mat out(r_, c_);
    for (size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] + o.a_[k];
    return out;
  }
  Mat operator-(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error(Err::ShapeMismatch, "matrix diff");
    Mat out(r_, c_);
    for (size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] - o.a_[k];
    return out;
  }
  Mat scaled(const Rat& s) const {
    Mat out(r_, c_);
    for (size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] * s;
    return out;
  }

  std::vector<Rat> mulVec(const std::vector<Rat>& v) const {
    if (int(v.size()) != c_) throw Error(Err::ShapeMismatch, "matvec shapes");
    std::vector<Rat> out(r_);
    for (int i = 0; i < r_; ++i) {
      Rat s = 0;
      for (int j = 0; j < c_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) s += (*this)(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  Mat column(int j) const {
    Mat out(r_, 1);
    for (int i = 0; i < r_; ++i) out(i, 0) = (*this)(i, j);
    return out;
  }
  std::vector<Rat> columnVec(int j) const {
    std::vector<Rat> out(r_);
    for (int i = 0; i < r_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  void setColumn(int j, const std::vector<Rat>& v) {
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }

  static Mat fromColumns(const std::vector<std::vector<Rat>>& cols, int rows) {
    Mat out(rows, int(cols.size()));
    for (int j = 0; j < int(cols.size()); ++j) out.setColumn(j, cols[j]);
    return out;
  }

  // Horizontal / vertical block concatenation.
  static Mat hcat(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw Error(Err::ShapeMismatch, "hcat");
    Mat out(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
      for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
  }
  static Mat vcat(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw Error(Err::ShapeMismatch, "vcat");
    Mat out(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) out(a.rows() + i, j) = b(i, j);
    return out;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<Rat> a_;
};

// Row-reduce in place; returns pivot columns. Canonical RREF.
inline std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Rat inv = Rat(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j)
      if (m(row, j) != 0) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (int j = col; j < m.cols(); ++j)
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(Mat m) { return int(rref(m).size()); }

// Canonical basis of the right null space (columns).
inline Mat nullspace(Mat m) {
  int n = m.cols();
  std::vector<int> piv = rref(m);
  std::vector<bool> isPiv(n, false);
  for (int c : piv) isPiv[c] = true;
  std::vector<int> freeCols;
  for (int c = 0; c < n; ++c)
    if (!isPiv[c]) freeCols.push_back(c);
  Mat out(n, int(freeCols.size()));
  for (int k = 0; k < int(freeCols.size()); ++k) {
    int fc = freeCols[k];
    out(fc, k) = 1;
    for (int i = 0; i < int(piv.size()); ++i) out(piv[i], k) = -m(i, fc);
  }
  return out;
}

// Solve A x = b exactly; returns nullopt when inconsistent. When the
// system is underdetermined the canonical (free vars = 0) solution.
inline std::optional<std::vector<Rat>> solve(Mat a, std::vector<Rat> b) {
  if (int(b.size()) != a.rows()) throw Error(Err::ShapeMismatch, "solve rhs");
  int n = a.cols();
  Mat aug = Mat::hcat(a, Mat::fromColumns({b}, int(b.size())));
  std::vector<int> piv = rref(aug);
  std::vector<Rat> x(n);
  for (int i = 0; i < int(piv.size()); ++i) {
    if (piv[i] == n) return std::nullopt;  // pivot in rhs column
    x[piv[i]] = aug(i, n);
  }
  return x;
}

// Dedicated solver for repeated "express in column space" queries.
// Factorizes once; solveExact() verifies membership exactly.
class ColumnSpaceSolver {
 public:
  explicit ColumnSpaceSolver(Mat basis) : n_(std::move(basis)) {
    Mat nt = n_.transpose();
    gram_ = nt * n_;
    Mat aug = Mat::hcat(gram_, Mat::identity(gram_.rows()));
    std::vector<int> piv = rref(aug);
    if (int(piv.size()) != gram_.rows())
      throw Error(Err::ShapeMismatch, "column basis is rank deficient");
    inv_ = Mat(gram_.rows(), gram_.rows());
    for (int i = 0; i < gram_.rows(); ++i)
      for (int j = 0; j < gram_.rows(); ++j)
        inv_(i, j) = aug(i, gram_.rows() + j);
    pseudo_ = inv_ * nt;
  }

  const Mat& basis() const { return n_; }
  int dim() const { return n_.cols(); }

  std::optional<std::vector<Rat>> trySolve(const std::vector<Rat>& v) const {
    std::vector<Rat> x = pseudo_.mulVec(v);
    std::vector<Rat> back = n_.mulVec(x);
    for (size_t i = 0; i < v.size(); ++i)
      if (back[i] != v[i]) return std::nullopt;
    return x;
  }
  std::vector<Rat> solveExact(const std::vector<Rat>& v) const {
    auto x = trySolve(v);
    if (!x)
      throw Error(Err::ShapeMismatch, "vector not in the spanned subspace");
    return *x;
  }
  // Express every column of M; throws if any column escapes the span.
  Mat solveMatrix(const Mat& m) const {
    Mat out(dim(), m.cols());
    for (int j = 0; j < m.cols(); ++j)
      out.setColumn(j, solveExact(m.columnVec(j)));
    return out;
  }
  bool containsColumns(const Mat& m) const {
    for (int j = 0; j < m.cols(); ++j)
      if (!trySolve(m.columnVec(j))) return false;
    return true;
  }

 private:
  Mat n_, gram_, inv_, pseudo_;
};

// Exact symmetric positive-(semi)definiteness via LDL^T with diagonal
// pivoting. PSD interface reports strictness separately.
struct LdltResult {
  bool psd = false;
  bool pd = false;
};

inline LdltResult ldltDefinite(Mat a) {
  if (a.rows() != a.cols()) throw Error(Err::ShapeMismatch, "ldlt square");
  int n = a.rows();
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a(i, i) > 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // remaining diagonal all <= 0; PSD only if the whole block is zero
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (a(i, j) != 0) return {false, false};
      return {true, false};
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
      for (int i = 0; i < n; ++i) std::swap(a(i, piv), a(i, k));
    }
    Rat d = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / d;
      for (int j = k + 1; j < n; ++j)
        if (a(k, j) != 0) a(i, j) -= f * a(k, j);
      a(i, k) = 0;
      a(k, i) = 0;
    }
  }
  return {true, true};
}

inline bool isPositiveDefinite(const Mat& a) { return ldltDefinite(a).pd; }
inline bool isPositiveSemidefinite(const Mat& a) { return ldltDefinite(a).psd; }

// Quadratic form value x^T A x.
inline Rat quadForm(const Mat& a, const std::vector<Rat>& x) {
  std::vector<Rat> ax = a.mulVec(x);
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && ax[i] != 0) s += x[i] * ax[i];
  return s;
}

// Certified rational bounds for the extreme generalized eigenvalues of
// the pencil (A, B) with B positive definite and A positive
// semidefinite: returns (lo, hi) with lo <= lambda_min, lambda_max <= hi,
// each certified by an exact semidefiniteness test.
struct PencilBounds {
  Rat lo, hi;
};

inline PencilBounds pencilBounds(const Mat& a, const Mat& b, int bisections = 30) {
  auto dominates = [&](const Rat& t) {  // t*B - A PSD ?
    return isPositiveSemidefinite(b.scaled(t) - a);
  };
  auto below = [&](const Rat& t) {  // A - t*B PSD ?
    return isPositiveSemidefinite(a - b.scaled(t));
  };
  // upper bound
  Rat hi = 1;
  while (!dominates(hi)) hi *= 2;
  Rat hiLo = 0;
  for (int it = 0; it < bisections; ++it) {
    Rat mid = (hiLo + hi) / 2;
    if (dominates(mid))
      hi = mid;
    else
      hiLo = mid;
  }
  // lower bound
  Rat lo = 0;
  if (below(Rat(1, 1000000))) {
    lo = Rat(1, 1000000);
    while (below(lo * 2)) lo *= 2;
    Rat loHi = lo * 2;
    for (int it = 0; it < bisections; ++it) {
      Rat mid = (lo + loHi) / 2;
      if (below(mid))
        lo = mid;
      else
        loHi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace cdr

#endif
