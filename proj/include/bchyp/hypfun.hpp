// SPDX-License-Identifier: Apache-2.0
//
// Evaluation of the multivariable hypergeometric function F(lambda, k; t)
// attached to the BC root data, and of its spherical-function normalization
// phi_lambda = F(i lambda): Gauss 2F1 for rank one, Jacobi polynomials at
// integral spectral parameters, the c-function, leading asymptotics, and the
// bounded/unbounded classification of phi_lambda.

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "bchyp/fieldalg.hpp"
#include "bchyp/rootdata.hpp"

namespace bchyp {

using cplx = std::complex<double>;

// Log-gamma on the complex plane (Lanczos approximation plus reflection).
// The imaginary part may differ from the principal branch by 2*pi*k; every
// consumer exponentiates differences, where the ambiguity cancels.
cplx lgamma_cplx(cplx z);

// Gauss hypergeometric 2F1(a, b; c; z) for real z <= 0, relative accuracy
// ~1e-10.  Routes: terminating series when a or b is a nonpositive integer;
// direct series for |z| <= 1/2; Pfaff transform z -> z/(z-1) for moderate z;
// inverse-argument expansion for z < -3.
cplx gauss_2f1(cplx a, cplx b, cplx c, double z);

enum class EvalPath { Rank1_2F1, JacobiPoly, HcLeading };
enum class EvalRoute { Auto, Rank1, JacobiPoly, HcLeading };

struct HypergeomValue {
    cplx value;
    EvalPath path;
    bool asymptotic_only = false; // true for the leading-term route
};

struct CFunctionValue {
    cplx value;
    bool finite = true; // false when a numerator Gamma argument hits a pole
};

// F(lambda, k; t) in rank one:
//   2F1((rho+lambda)/2, (rho-lambda)/2; mu; -sinh^2 t),  rho = mu + d/2 - 1.
// Even in lambda; equals 1 at t = 0.
cplx hypergeom_f_rank1(cplx lambda, const BCParams& params, double t);

// phi_lambda(t) = F(i lambda, k; t): the Jacobi function with
// alpha = mu - 1, beta = d/2 - 1.
HypergeomValue phi_rank1(cplx lambda, const BCParams& params, double t);

// Harish-Chandra c-function, normalized so that c(rho, k) = 1.  Product of
// Gamma ratios over the three positive root classes, evaluated in log space.
CFunctionValue c_function(const std::vector<cplx>& lambda, const BCParams& params);
CFunctionValue c_function(cplx lambda, const BCParams& params); // rank 1

// Jacobi polynomial of type BC_q attached to the dominant weight label nu
// (actual lattice weight 2*nu): the orbit-sum expansion
//   P_nu = m_nu + sum_{eta < nu} c_eta m_eta
// made orthogonal to every lower m_eta in the compact-torus inner product.
struct JacobiPolyBC {
    std::vector<int> nu;                        // dominant label, nu_1 >= ... >= 0
    std::vector<std::vector<int>> basis;        // dominant eta <= nu, nu last
    std::vector<double> coeff;                  // same order; coeff of m_nu is 1
    std::vector<std::vector<std::vector<double>>> orbits; // Weyl orbit per basis weight
    double gram_condition = 0;

    // Orbit-sum evaluation m_eta(t) = sum_{v in W.eta} exp(2<v,t>).
    double eval(const ChamberPoint& t) const;
    double eval_at_zero() const;
    // Compact picture: exponentials exp(2i<v,theta>) summed over the orbit.
    double eval_compact(const std::vector<double>& theta) const;
};

JacobiPolyBC jacobi_polynomial(const std::vector<int>& nu, const BCParams& params);

// Dominant integer label nu with lambda = w(2 nu + rho) for some Weyl element
// w, if one exists (lambda in the F convention, real up to tol).
std::optional<std::vector<int>> polynomial_label(const std::vector<cplx>& lambda,
                                                 const BCParams& params, double tol = 1e-9);

// F(lambda, k; t) with route selection.  Auto picks the 2F1 route for q = 1
// and the polynomial route when lambda lies on the shifted dominant lattice
// {2 nu + rho} up to Weyl symmetry; anything else raises RouteError.  The
// HcLeading route must be requested explicitly: it returns only the leading
// Harish-Chandra term sum_w c(w lambda) exp(<w lambda - rho, t>) and tags the
// result asymptotic_only.
HypergeomValue hypergeom_eval(const std::vector<cplx>& lambda, const BCParams& params,
                              const ChamberPoint& t, EvalRoute route = EvalRoute::Auto);

enum class Boundedness { Bounded, Unbounded };

// phi_lambda is bounded iff Im(lambda) lies in the convex hull of the Weyl
// orbit of rho (boundary included).
Boundedness bounded_classify(const SpectralParam& lambda, const BCParams& params);

} // namespace bchyp
