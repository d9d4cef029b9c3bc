// SPDX-License-Identifier: Apache-2.0
//
// The convolution (delta_t * delta_s)(f) of the chamber hypergroup, the
// generalized translation operator, and the verification suite: product
// formula, hypergroup axioms, Haar-measure translation invariance, the
// classical rank-1 (r,psi) kernel reduction, and the compact-group truncation
// oracle available at the integral parameters mu = p*d/2.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>

#include "bchyp/hypfun.hpp"
#include "bchyp/measures.hpp"
#include "bchyp/rootdata.hpp"

namespace bchyp {

using ChamberFn = std::function<cplx(const ChamberPoint&)>;

struct ConvolutionEstimate {
    cplx value;
    double error; // standard error (MC) or embedded-rule discretization bound
    QuadratureSpec quad;
};

// (delta_t * delta_s)(f): the normalized double integral of f(d(t,s;v,w))
// against Haar(v) x ball density(w).  Tensor mode: rank 1 reduces to a 2-D
// (radius, angle) rule; rank 2 (d = 1) integrates in singular-value
// coordinates of w times the SO(2) angles.  MC mode: self-normalized
// importance sampling, so f == 1 integrates to exactly 1.
ConvolutionEstimate convolve_point(const ChamberPoint& t, const ChamberPoint& s,
                                   const ChamberFn& f, const BCParams& params,
                                   const QuadratureSpec& quad);

// Generalized translate (tau_s f)(t) = (delta_t * delta_s)(f).
ChamberFn translate(const ChamberFn& f, const ChamberPoint& s, const BCParams& params,
                    const QuadratureSpec& quad);

// Product formula check phi(t) phi(s) = (delta_t * delta_s)(phi).  Rank 1
// accepts any spectral parameter (phi convention); higher rank requires the
// polynomial lattice, where the check runs in the normalization
// P(t) P(s) = <(1/c) P(d(.))>.
struct ProductCheck {
    cplx lhs, rhs;
    double residual; // |lhs - rhs|
    double error;    // rhs error budget
};
ProductCheck verify_product(const SpectralParam& lambda, const ChamberPoint& t,
                            const ChamberPoint& s, const BCParams& params,
                            const QuadratureSpec& quad);

struct AxiomReport {
    double commutativity = 0, commutativity_budget = 0;
    double associativity = 0, associativity_budget = 0;
    double neutrality = 0;
    std::int64_t support_samples = 0;
    std::int64_t support_violations = 0;
    double involution_min = 0; // min ||d(t,t;v,w)|| seen; 0 attained at (I,-I)
};
// Commutativity / associativity / neutrality residuals for the test function
// f, plus the support bound ||d(t,s;v,w)||_inf <= ||t||_inf + ||s||_inf
// checked over every sample drawn.
AxiomReport verify_axioms(const ChamberPoint& r, const ChamberPoint& s,
                          const ChamberPoint& t, const ChamberFn& f,
                          const BCParams& params, const QuadratureSpec& quad);

struct HaarReport {
    double lhs, rhs;  // integral of tau_s f and of f against the Haar weight
    double rel_diff;
    double budget;
};
// Translation invariance of the Haar weight: int (tau_s f) d omega = int f
// d omega for real-valued f supported in ||t||_inf <= support.
HaarReport verify_haar(const ChamberFn& f, double support, const ChamberPoint& s,
                       const BCParams& params, const QuadratureSpec& quad);

struct FjkReport {
    cplx kernel_form;   // reference integration of f(d(t,s;v,w)) per field
    cplx classical_form; // (r,psi) double integral, beta = d/2 - 1
    double residual;
    double error;
};
// Rank-1 cross-check of the convolution kernel against the classical
// (r,psi) parametrization with measure (1-r^2)^{alpha-beta-1} r^{2beta+1}
// (sin psi)^{2beta} dr dpsi (degenerating to a single [-1,1] integral for
// d = 1).
FjkReport verify_fjk_rank1(const SpectralParam& lambda, const ChamberPoint& t,
                           const ChamberPoint& s, const BCParams& params);

struct GroupOracleReport {
    cplx truncation_route; // u Haar on U(p,F), w = upper-left q x q block
    double truncation_se;
    cplx ball_route;       // ball-density route at mu = p d / 2
    double ball_se;
    double diff;
    double combined_se;
};
// At the integral parameter mu = p*d/2 (p >= 2q) the ball density is the
// push-forward of Haar measure on U(p,F) under corner truncation; the two
// convolution estimates must agree.
GroupOracleReport group_case_oracle(int p, const ChamberPoint& t, const ChamberPoint& s,
                                    const ChamberFn& f, const BCParams& params,
                                    const QuadratureSpec& quad);

// Named W-invariant test profiles for verification runs: "gauss", "bump",
// "shell", "coscap".  `support` is the radius outside which the profile
// vanishes (or is negligible).
struct ChamberProfile {
    ChamberFn fn;
    double support;
    std::string name;
};
ChamberProfile chamber_profile(const std::string& name);

} // namespace bchyp
