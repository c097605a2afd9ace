#pragma once

#include <vector>

#include "ptower/scalar.hpp"

namespace ptw {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

Mat mat_identity(const Context& c, int n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_apply(const Mat& a, const Vec& x);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_scalar(const Mat& a, const Scalar& s);
int64_t mat_min_valuation(const Mat& a);
int64_t vec_min_valuation(const Vec& x);

Scalar mat_det(Mat a);

struct LinSolve {
  Vec x;
  int64_t pivot_valuation_sum = 0;  // digits lost in the worst case
};

// Solves A x = b by Gaussian elimination with minimal-valuation pivoting.
// Raises NotInvertible when a pivot is indistinguishable from zero.
LinSolve lin_solve(Mat a, Vec b);

Mat mat_inverse(const Mat& a);

// Any solution of a possibly rank-deficient (and possibly non-square) system;
// free variables are set to zero.  `tol` is the valuation at which residual
// rows count as zero; raises NotInvertible when the system is inconsistent.
Vec lin_solve_any(Mat a, Vec b, int64_t tol);

}  // namespace ptw
