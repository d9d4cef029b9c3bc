// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bchyp/hypergroup.hpp"
#include "bchyp/hypfun.hpp"
#include "bchyp/rootdata.hpp"

namespace bchyp {

/// Spectral grid for the rank-1 transform: midpoints of [0, lambda_max].
struct TransformGrid {
    double lambda_max = 0;
    int points = 2048;

    /// Default window for a function supported in [0, T].
    static TransformGrid for_support(double T);
};

/// Sampled spherical transform on a uniform spectral grid.
struct TransformTable {
    std::vector<double> lambda_im; ///< grid ordinates y_j (spectral parameter i*y_j)
    std::vector<cplx> values;
    double support = 0; ///< radius of the transformed function's support
    double step = 0;    ///< grid spacing

    void write_csv(std::ostream& os) const;
};

/// Integrates f against the bounded spherical functions over the Weyl
/// chamber with the invariant weight.  Rank 1 only.
TransformTable forward_transform(const ChamberFn& f, double support,
                                 const BCParams& params, TransformGrid grid = {});

/// Spectral density 1/|c(iy)|^2 of the inversion measure (unnormalized).
double plancherel_density(double y, const BCParams& params);

/// Calibrated global constant of the inversion formula.  Fitted once per
/// parameter set against a reference profile and cached.
double inversion_constant(const BCParams& params);

/// Evaluates the inversion integral of a sampled transform at radius t.
cplx inverse_at(const TransformTable& table, const BCParams& params, double t);

/// Squared norm of f in the invariant measure (lhs of the Plancherel identity).
double parseval_lhs(const ChamberFn& f, double support, const BCParams& params);

/// Spectral-side squared norm of a sampled transform (rhs of the identity).
double parseval_rhs(const TransformTable& table, const BCParams& params);

/// Multiplies a sampled transform by the spherical factor of a translation,
/// i.e. the transform-side image of translating by s.
TransformTable spectral_translate(TransformTable table, const ChamberPoint& s,
                                  const BCParams& params);

struct MultiplicativityReport {
    double max_abs_diff = 0;
    int points_checked = 0;
};

/// Compares the transform of the translated function against the pointwise
/// product with the spherical factor on a spectral subgrid.
MultiplicativityReport multiplicativity_check(const ChamberFn& f, double support,
                                              const ChamberPoint& s,
                                              const BCParams& params,
                                              const QuadratureSpec& quad,
                                              int subgrid = 8);

struct RoundTripReport {
    double max_abs_resid = 0;
    double max_value = 0;
};

/// Inverts the forward transform at the given radii and reports the largest
/// deviation from f.
RoundTripReport round_trip_check(const ChamberFn& f, double support,
                                 const BCParams& params,
                                 const std::vector<double>& radii,
                                 TransformGrid grid = {});

/// sup over the grid of (1+y)^8 |F f(y)|; finite for smooth compactly
/// supported profiles.
double decay_sup(const TransformTable& table);

} // namespace bchyp
