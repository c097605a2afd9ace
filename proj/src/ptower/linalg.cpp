#include "ptower/linalg.hpp"

#include <algorithm>

namespace ptw {

Mat mat_identity(const Context& c, int n) {
  Mat m(static_cast<size_t>(n), Vec(static_cast<size_t>(n), Scalar::zero(c)));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar::one(c);
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  size_t n = a.size(), k = b.size(), m = b[0].size();
  const Context& c = *a[0][0].ctx();
  Mat r(n, Vec(m, Scalar::zero(c)));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t].is_exact_zero()) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

Vec mat_apply(const Mat& a, const Vec& x) {
  size_t n = a.size(), k = x.size();
  const Context& c = *x[0].ctx();
  Vec r(n, Scalar::zero(c));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) r[i] += a[i][t] * x[t];
  return r;
}

Mat mat_add(const Mat& a, const Mat& b) {
  Mat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  Mat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

Mat mat_scalar(const Mat& a, const Scalar& s) {
  Mat r = a;
  for (auto& row : r)
    for (auto& x : row) x = x * s;
  return r;
}

int64_t mat_min_valuation(const Mat& a) {
  int64_t v = Scalar::kInfVal;
  for (const auto& row : a)
    for (const auto& x : row) v = std::min(v, x.valuation());
  return v;
}

int64_t vec_min_valuation(const Vec& x) {
  int64_t v = Scalar::kInfVal;
  for (const auto& e : x) v = std::min(v, e.valuation());
  return v;
}

Scalar mat_det(Mat a) {
  size_t n = a.size();
  const Context& c = *a[0][0].ctx();
  Scalar det = Scalar::one(c);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col; r < n; ++r)
      if (a[r][col].valuation() < a[piv][col].valuation()) piv = r;
    if (a[piv][col].is_zero()) return Scalar::approx_zero(c, a[piv][col].valuation());
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det = det * a[col][col];
    Scalar inv = a[col][col].inv();
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Scalar f = a[r][col] * inv;
      for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

LinSolve lin_solve(Mat a, Vec b) {
  size_t n = a.size();
  const Context& c = *b[0].ctx();
  LinSolve out;
  int64_t loss = 0;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col; r < n; ++r)
      if (a[r][col].valuation() < a[piv][col].valuation()) piv = r;
    if (a[piv][col].is_zero())
      fail(Status::kNotInvertible, "linear system degenerates at working precision");
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
    }
    loss += std::max<int64_t>(0, -a[col][col].valuation());
    Scalar inv = a[col][col].inv();
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Scalar f = a[r][col] * inv;
      for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  Vec x(n, Scalar::zero(c));
  for (size_t i = n; i-- > 0;) {
    Scalar acc = b[i];
    for (size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc * a[i][i].inv();
  }
  out.x = std::move(x);
  out.pivot_valuation_sum = loss;
  return out;
}

Vec lin_solve_any(Mat a, Vec b, int64_t tol) {
  size_t nrow = a.size();
  size_t ncol = a.empty() ? 0 : a[0].size();
  const Context& c = *b[0].ctx();
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < ncol && row < nrow; ++col) {
    size_t best = SIZE_MAX;
    for (size_t r = row; r < nrow; ++r) {
      if (a[r][col].valuation() >= tol) continue;
      if (best == SIZE_MAX || a[r][col].valuation() < a[best][col].valuation()) best = r;
    }
    if (best == SIZE_MAX) continue;  // free column
    std::swap(a[best], a[row]);
    std::swap(b[best], b[row]);
    Scalar inv = a[row][col].inv();
    for (size_t r = 0; r < nrow; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      Scalar f = a[r][col] * inv;
      for (size_t j = col; j < ncol; ++j) a[r][j] -= f * a[row][j];
      b[r] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (size_t r = row; r < nrow; ++r)
    if (b[r].valuation() < tol)
      fail(Status::kNotInvertible, "inconsistent linear system at working precision");
  Vec x(ncol, Scalar::zero(c));
  for (size_t r = 0; r < pivot_col.size(); ++r) {
    size_t col = pivot_col[r];
    Scalar acc = b[r];
    for (size_t j = col + 1; j < ncol; ++j)
      if (!x[j].is_exact_zero()) acc -= a[r][j] * x[j];
    x[col] = acc * a[r][col].inv();
  }
  return x;
}

Mat mat_inverse(const Mat& a) {
  size_t n = a.size();
  const Context& c = *a[0][0].ctx();
  Mat r(n, Vec(n, Scalar::zero(c)));
  for (size_t col = 0; col < n; ++col) {
    Vec e(n, Scalar::zero(c));
    e[col] = Scalar::one(c);
    Vec x = lin_solve(a, e).x;
    for (size_t row = 0; row < n; ++row) r[row][col] = x[row];
  }
  return r;
}

}  // namespace ptw
