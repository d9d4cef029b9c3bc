// SPDX-License-Identifier: Apache-2.0
//
// One-dimensional quadrature building blocks: Gauss-Jacobi rules via
// Golub-Welsch, tanh-sinh for endpoint-singular integrands, and a
// panel-adaptive Gauss rule for smooth integrands.

#pragma once

#include <functional>
#include <vector>

namespace bchyp {

struct Quad1D {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^a (1+x)^b, a,b > -1.
// Weights sum to the zeroth moment 2^{a+b+1} B(a+1, b+1).
Quad1D gauss_jacobi(int n, double a, double b);

// Gauss-Legendre on [-1,1] (Jacobi with a = b = 0).
Quad1D gauss_legendre(int n);

// Affine image of a rule onto [lo, hi].
Quad1D map_to_interval(const Quad1D& q, double lo, double hi);

// tanh-sinh quadrature of f over (a,b); tolerates integrable endpoint
// singularities.  Returns the estimate; *err_out (optional) receives the last
// level-to-level difference.  Throws AccuracyError when the refinement stalls
// above tol.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, double* err_out = nullptr);

// Panel-adaptive Gauss-Legendre integration of a smooth f over [a,b] to
// absolute tolerance tol.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-9, double* err_out = nullptr);

} // namespace bchyp
