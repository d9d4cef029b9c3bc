// SPDX-License-Identifier: Apache-2.0

#include "bchyp/transform.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>

#include "bchyp/errors.hpp"
#include "bchyp/measures.hpp"
#include "bchyp/quadrature.hpp"

namespace bchyp {

namespace {

cplx spherical(double y, const BCParams& params, double t) {
    return hypergeom_f_rank1(cplx(0.0, y), params, t);
}

// complex-valued adaptive integral, absolute tolerance per component
cplx integrate_c(const std::function<cplx(double)>& g, double a, double b, double tol) {
    double re = adaptive_gauss([&](double x) { return g(x).real(); }, a, b, tol);
    double im = adaptive_gauss([&](double x) { return g(x).imag(); }, a, b, tol);
    return {re, im};
}

} // namespace

TransformGrid TransformGrid::for_support(double T) {
    if (T <= 0) throw DomainError("support radius must be positive");
    return {40.0 / T, 2048};
}

void TransformTable::write_csv(std::ostream& os) const {
    os << "lambda_im,re,im\n" << std::setprecision(17);
    for (size_t j = 0; j < lambda_im.size(); ++j)
        os << lambda_im[j] << ',' << values[j].real() << ',' << values[j].imag() << '\n';
}

TransformTable forward_transform(const ChamberFn& f, double support,
                                 const BCParams& params, TransformGrid grid) {
    if (params.q != 1)
        throw RouteError("the spherical transform is implemented for rank 1 only");
    if (support <= 0) throw DomainError("support radius must be positive");
    if (grid.lambda_max <= 0) grid = TransformGrid::for_support(support);
    if (grid.points < 8) throw DomainError("spectral grid too coarse");

    TransformTable table;
    table.support = support;
    table.step = grid.lambda_max / grid.points;
    table.lambda_im.resize(grid.points);
    table.values.resize(grid.points);

    std::vector<double> failed;
    for (int j = 0; j < grid.points; ++j) {
        double y = table.step * (j + 0.5);
        table.lambda_im[j] = y;
        try {
            table.values[j] = integrate_c(
                [&](double t) {
                    return f(ChamberPoint({t})) * spherical(y, params, t) *
                           haar_weight(ChamberPoint({t}), params);
                },
                0.0, support, 1e-9);
        } catch (const AccuracyError&) {
            failed.push_back(y);
            table.values[j] = 0;
        }
    }
    if (!failed.empty()) {
        std::ostringstream msg;
        msg << "forward transform failed to settle at " << failed.size()
            << " spectral point(s):";
        for (size_t k = 0; k < failed.size() && k < 6; ++k) msg << ' ' << failed[k];
        throw AccuracyError(msg.str(), 0.0, 1.0);
    }
    return table;
}

double plancherel_density(double y, const BCParams& params) {
    if (params.q != 1) throw RouteError("spectral density is implemented for rank 1 only");
    if (y == 0) return 0.0; // limit: 1/|c| has a zero of order one at the origin
    CFunctionValue c = c_function(cplx(0.0, y), params);
    if (!c.finite) return 0.0;
    double m = std::abs(c.value);
    return 1.0 / (m * m);
}

double inversion_constant(const BCParams& params) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, long long>, double> cache;
    std::tuple<int, int, long long> key(static_cast<int>(params.field), params.q,
                                        std::llround(params.mu * 1e12));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    // Calibrate against a reference profile with f(0) = 1.  The gaussian's
    // transform decays like exp(-y^2/4), so a window of 14 leaves no spectral
    // mass outside the grid even against a polynomially growing density;
    // compactly cut profiles decay too slowly near their default window for
    // calibration-grade accuracy.
    ChamberProfile ref = chamber_profile("gauss");
    TransformTable table = forward_transform(ref.fn, ref.support, params, {14.0, 2048});
    double raw = 0;
    for (size_t j = 0; j < table.values.size(); ++j)
        raw += table.values[j].real() * plancherel_density(table.lambda_im[j], params);
    raw *= table.step;
    if (!(raw > 0))
        throw AccuracyError("inversion calibration produced a non-positive mass", raw, 1.0);
    double c = 1.0 / raw;
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, c);
    return c;
}

cplx inverse_at(const TransformTable& table, const BCParams& params, double t) {
    const size_t n = table.values.size();
    if (n == 0) throw DomainError("empty transform table");
    std::vector<double> dens(n);
    double total = 0, tail = 0;
    for (size_t j = 0; j < n; ++j) {
        dens[j] = plancherel_density(table.lambda_im[j], params);
        double mass = std::abs(table.values[j]) * dens[j];
        total += mass;
        if (j + 16 >= n) tail += mass;
    }
    if (tail > 5e-3 * total)
        throw AccuracyError("spectral window too small: the tail carries "
                            "a non-negligible share of the inversion mass",
                            tail / total, 1.0);
    cplx acc = 0;
    for (size_t j = 0; j < n; ++j)
        acc += table.values[j] * spherical(table.lambda_im[j], params, t) * dens[j];
    return acc * table.step * inversion_constant(params);
}

double parseval_lhs(const ChamberFn& f, double support, const BCParams& params) {
    if (params.q != 1) throw RouteError("Plancherel check is implemented for rank 1 only");
    return adaptive_gauss(
        [&](double t) {
            return std::norm(f(ChamberPoint({t}))) * haar_weight(ChamberPoint({t}), params);
        },
        0.0, support, 1e-10);
}

double parseval_rhs(const TransformTable& table, const BCParams& params) {
    double acc = 0;
    for (size_t j = 0; j < table.values.size(); ++j)
        acc += std::norm(table.values[j]) * plancherel_density(table.lambda_im[j], params);
    return acc * table.step * inversion_constant(params);
}

TransformTable spectral_translate(TransformTable table, const ChamberPoint& s,
                                  const BCParams& params) {
    if (s.rank() != 1) throw DomainError("translation point must have rank 1");
    for (size_t j = 0; j < table.values.size(); ++j)
        table.values[j] *= spherical(table.lambda_im[j], params, s.t[0]);
    return table;
}

MultiplicativityReport multiplicativity_check(const ChamberFn& f, double support,
                                              const ChamberPoint& s,
                                              const BCParams& params,
                                              const QuadratureSpec& quad, int subgrid) {
    TransformTable table = forward_transform(f, support, params);
    ChamberFn tf = translate(f, s, params, quad);
    const double lim = support + s.t[0] + 0.25;

    MultiplicativityReport rep;
    const int n = static_cast<int>(table.values.size());
    for (int k = 0; k < subgrid; ++k) {
        int j = static_cast<int>((k + 0.5) * n / subgrid);
        double y = table.lambda_im[j];
        cplx lhs = integrate_c(
            [&](double t) {
                return tf(ChamberPoint({t})) * spherical(y, params, t) *
                       haar_weight(ChamberPoint({t}), params);
            },
            0.0, lim, 1e-7);
        cplx rhs = spherical(y, params, s.t[0]) * table.values[j];
        rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(lhs - rhs));
        ++rep.points_checked;
    }
    return rep;
}

RoundTripReport round_trip_check(const ChamberFn& f, double support,
                                 const BCParams& params,
                                 const std::vector<double>& radii, TransformGrid grid) {
    TransformTable table = forward_transform(f, support, params, grid);
    RoundTripReport rep;
    for (double t : radii) {
        cplx back = inverse_at(table, params, t);
        cplx ref = f(ChamberPoint({t}));
        rep.max_abs_resid = std::max(rep.max_abs_resid, std::abs(back - ref));
        rep.max_value = std::max(rep.max_value, std::abs(ref));
    }
    return rep;
}

double decay_sup(const TransformTable& table) {
    double sup = 0;
    for (size_t j = 0; j < table.values.size(); ++j) {
        double y = table.lambda_im[j];
        sup = std::max(sup, std::pow(1.0 + y, 8) * std::abs(table.values[j]));
    }
    return sup;
}

} // namespace bchyp
