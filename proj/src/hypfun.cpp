// SPDX-License-Identifier: Apache-2.0

#include "bchyp/hypfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>

#include <Eigen/Dense>

#include "bchyp/errors.hpp"
#include "bchyp/quadrature.hpp"

namespace bchyp {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near_nonpositive_integer(cplx z, double tol) {
    double r = std::round(z.real());
    return r <= 0.5 && std::abs(z - cplx(r, 0)) <= tol;
}

// Plain power series sum_{k} (a)_k (b)_k / ((c)_k k!) z^k.  Caller guarantees
// convergence (|z| < 1); throws AccuracyError if the tail does not settle.
cplx series_2f1(cplx a, cplx b, cplx c, double z, std::int64_t max_terms) {
    cplx term = 1.0, sum = 1.0;
    int settled = 0;
    for (std::int64_t k = 0; k < max_terms; ++k) {
        double kk = static_cast<double>(k);
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= 1e-16 * (std::abs(sum) + 1e-300)) {
            if (++settled >= 2) return sum;
        } else {
            settled = 0;
        }
    }
    throw AccuracyError("hypergeometric series did not converge", sum.real(), std::abs(term));
}

cplx terminating_2f1(cplx a, cplx b, cplx c, double z, int n) {
    cplx term = 1.0, sum = 1.0;
    for (int k = 0; k < n; ++k) {
        double kk = k;
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
        sum += term;
    }
    return sum;
}

} // namespace

cplx lgamma_cplx(cplx z) {
    // Lanczos, g = 7, 9 coefficients.
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (z.real() < 0.5) {
        // Reflection; the branch of log sin may be off by 2*pi*i, which
        // cancels whenever differences of lgamma values are exponentiated.
        return std::log(cplx(kPi, 0)) - std::log(std::sin(kPi * z)) - lgamma_cplx(1.0 - z);
    }
    cplx zz = z - 1.0;
    cplx x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (zz + static_cast<double>(i));
    cplx t = zz + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

// Analytic continuation along the negative real axis: integrate the
// hypergeometric ODE in x = log(-z) from z0 = -2 (where the Pfaff series is
// cheap) out to the target.  With z = -e^x and y = (F, dF/dx),
//   y0' = y1,
//   y1' = y1 + (ab z y0 - (c - (a+b+1)z) y1) / (1 - z),
// whose characteristic exponents at -infinity are -a and -b, matching the
// z^{-a}, z^{-b} asymptotics.  Used where both closed-form routes degenerate
// (a - b near an integer, or severe cancellation) and the Pfaff series would
// need O(|z|) terms.
cplx ode_continue_2f1(cplx a, cplx b, cplx c, double z) {
    const double z0 = -2.0;
    const double u0 = z0 / (z0 - 1.0);
    cplx f0 = std::pow(1.0 - z0, -a) * series_2f1(a, c - b, c, u0, 1000000);
    // dF/dz = (ab/c) 2F1(a+1, b+1; c+1; z); same Pfaff map, (c+1)-(b+1) = c-b.
    cplx fz0 = (a * b / c) * std::pow(1.0 - z0, -(a + 1.0)) *
               series_2f1(a + 1.0, c - b, c + 1.0, u0, 1000000);

    cplx y0 = f0, y1 = z0 * fz0;
    double x = std::log(-z0);
    const double x_end = std::log(-z);
    auto rhs = [&](double xc, cplx v0, cplx v1, cplx& d0, cplx& d1) {
        double zc = -std::exp(xc);
        d0 = v1;
        d1 = v1 + (a * b * zc * v0 - (c - (a + b + 1.0) * zc) * v1) / (1.0 - zc);
    };
    // Cash-Karp embedded 4(5) pair.
    static const double A2 = 0.2, A3 = 0.3, A4 = 0.6, A5 = 1.0, A6 = 0.875;
    static const double B21 = 0.2;
    static const double B31 = 3.0 / 40, B32 = 9.0 / 40;
    static const double B41 = 0.3, B42 = -0.9, B43 = 1.2;
    static const double B51 = -11.0 / 54, B52 = 2.5, B53 = -70.0 / 27, B54 = 35.0 / 27;
    static const double B61 = 1631.0 / 55296, B62 = 175.0 / 512, B63 = 575.0 / 13824,
                        B64 = 44275.0 / 110592, B65 = 253.0 / 4096;
    static const double C1 = 37.0 / 378, C3 = 250.0 / 621, C4 = 125.0 / 594,
                        C6 = 512.0 / 1771;
    static const double D1 = 2825.0 / 27648, D3 = 18575.0 / 48384, D4 = 13525.0 / 55296,
                        D5 = 277.0 / 14336, D6 = 0.25;

    double h = 0.05;
    const double tol = 1e-12;
    int steps = 0;
    while (x < x_end) {
        if (++steps > 200000)
            throw AccuracyError("hypergeometric continuation failed to advance",
                                std::abs(y0), 1.0);
        h = std::min(h, x_end - x);
        cplx k10, k11, k20, k21, k30, k31, k40, k41, k50, k51, k60, k61;
        rhs(x, y0, y1, k10, k11);
        rhs(x + A2 * h, y0 + h * B21 * k10, y1 + h * B21 * k11, k20, k21);
        rhs(x + A3 * h, y0 + h * (B31 * k10 + B32 * k20),
            y1 + h * (B31 * k11 + B32 * k21), k30, k31);
        rhs(x + A4 * h, y0 + h * (B41 * k10 + B42 * k20 + B43 * k30),
            y1 + h * (B41 * k11 + B42 * k21 + B43 * k31), k40, k41);
        rhs(x + A5 * h, y0 + h * (B51 * k10 + B52 * k20 + B53 * k30 + B54 * k40),
            y1 + h * (B51 * k11 + B52 * k21 + B53 * k31 + B54 * k41), k50, k51);
        rhs(x + A6 * h,
            y0 + h * (B61 * k10 + B62 * k20 + B63 * k30 + B64 * k40 + B65 * k50),
            y1 + h * (B61 * k11 + B62 * k21 + B63 * k31 + B64 * k41 + B65 * k51), k60,
            k61);
        cplx n0 = y0 + h * (C1 * k10 + C3 * k30 + C4 * k40 + C6 * k60);
        cplx n1 = y1 + h * (C1 * k11 + C3 * k31 + C4 * k41 + C6 * k61);
        cplx e0 = n0 - (y0 + h * (D1 * k10 + D3 * k30 + D4 * k40 + D5 * k50 + D6 * k60));
        cplx e1 = n1 - (y1 + h * (D1 * k11 + D3 * k31 + D4 * k41 + D5 * k51 + D6 * k61));
        double scale = std::max({std::abs(n0), std::abs(n1), 1e-290});
        double err = std::max(std::abs(e0), std::abs(e1)) / scale;
        if (err <= tol) {
            x += h;
            y0 = n0;
            y1 = n1;
        }
        double grow = 0.9 * std::pow(tol / std::max(err, 1e-16), 0.2);
        h *= std::clamp(grow, 0.2, 5.0);
    }
    return y0;
}

namespace {

// One exponential branch of the two-sided expansion used by
// osc_expansion_rank1 below:
//   E(lam, t) = e^{(lam - rho) t} sum_{k >= 0} g_k(lam) e^{-2kt},  g_0 = 1,
// multiplied by the connection coefficient
//   c(lam) = 2^{rho - lam} Gamma(alpha+1) Gamma(lam)
//            / (Gamma((rho + lam)/2) Gamma((alpha - beta + 1 + lam)/2)).
// Substituting E into the radial differential equation
//   u'' + [(2*alpha+1) coth t + (2*beta+1) tanh t] u' + (rho^2 - lam^2) u = 0
// and expanding the coefficient in powers of e^{-2t} gives the recursion
//   4 k (k - lam) g_k = - sum_{m=1}^{k} c_m (lam - rho - 2(k-m)) g_{k-m},
//   c_m = 2 [(2*alpha+1) + (-1)^m (2*beta+1)].
// The denominators stay >= |Im lam| away from zero, so the recursion is
// stable exactly in the regime where the series routes lose digits.
cplx osc_branch(cplx L, double alpha, double beta, double rho, double t) {
    const double c1 = 2.0 * (2.0 * alpha + 1.0), c2 = 2.0 * (2.0 * beta + 1.0);
    const double qt = std::exp(-2.0 * t);
    std::vector<cplx> g{1.0};
    cplx sum = 1.0;
    double mag = 1.0, qk = 1.0;
    int settled = 0;
    for (int k = 1; k <= 400 && settled < 2; ++k) {
        cplx acc = 0.0;
        for (int m = 1; m <= k; ++m) {
            double cm = c1 + ((m & 1) ? -c2 : c2);
            acc += cm * (L - rho - 2.0 * (k - m)) * g[k - m];
        }
        cplx gk = -acc / (4.0 * k * (static_cast<double>(k) - L));
        g.push_back(gk);
        qk *= qt;
        cplx term = gk * qk;
        sum += term;
        mag += std::abs(term);
        settled = (std::abs(term) <= 1e-18 * mag) ? settled + 1 : 0;
    }
    if (settled < 2)
        throw AccuracyError("exponential expansion did not settle", std::abs(sum), 1.0);
    cplx lc = cplx(std::lgamma(alpha + 1.0), 0) + lgamma_cplx(L) -
              lgamma_cplx(0.5 * (rho + L)) -
              lgamma_cplx(0.5 * (alpha - beta + 1.0 + L)) + (rho - L) * std::log(2.0);
    return std::exp(lc + (L - rho) * t) * sum;
}

// Rank-1 evaluation for strongly oscillatory spectral parameters.  The power
// series and its fractional-linear continuations suffer cancellation that
// grows like e^{|Im lambda| h(t)}; past |Im lambda| ~ 26 the absolute noise
// crosses 1e-9 for mid-range t and quadratures on top of the function stop
// settling.  The expansion in e^{-2t} has no such cancellation (checked
// against 50-digit references: <= 2e-10 relative over |Im lambda| in
// [16, 40], t in [0.35, 2]) and costs O(terms^2) with ~60-80 terms.
cplx osc_expansion_rank1(cplx lambda, const BCParams& params, double t) {
    const double alpha = params.mu - 1.0;
    const double beta = 0.5 * field_dim(params.field) - 1.0;
    const double rho = alpha + beta + 1.0;
    return osc_branch(lambda, alpha, beta, rho, t) +
           osc_branch(-lambda, alpha, beta, rho, t);
}

} // namespace

cplx gauss_2f1(cplx a, cplx b, cplx c, double z) {
    if (near_nonpositive_integer(c, 1e-12))
        throw DomainError("2F1 parameter c at a nonpositive integer pole");
    if (z > 0)
        throw DomainError("2F1 argument must satisfy z <= 0");
    if (z == 0) return 1.0;

    // Terminating series (polynomial case) works for every z.
    bool a_term = near_nonpositive_integer(a, 1e-12);
    bool b_term = near_nonpositive_integer(b, 1e-12);
    if (a_term || b_term) {
        int na = a_term ? static_cast<int>(-std::round(a.real())) : -1;
        int nb = b_term ? static_cast<int>(-std::round(b.real())) : -1;
        int n = (na >= 0 && nb >= 0) ? std::min(na, nb) : std::max(na, nb);
        return terminating_2f1(a, b, c, z, n);
    }

    if (std::abs(z) <= 0.5) return series_2f1(a, b, c, z, 1000000);

    // Pfaff z -> u = z/(z-1) in (0,1); keep the smaller-real-part parameter
    // in the prefactor exponent.
    if (a.real() > b.real()) std::swap(a, b);
    const double u = z / (z - 1.0);
    auto pfaff = [&](std::int64_t max_terms) {
        return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, u, max_terms);
    };
    if (z >= -3.0) return pfaff(1000000);

    // Inverse-argument expansion (valid when a - b is not an integer):
    //  F = G(c)G(b-a)/(G(b)G(c-a)) (-z)^{-a} F(a, a-c+1; a-b+1; 1/z) + (a<->b).
    cplx ab = a - b;
    double dist_int = std::abs(ab - cplx(std::round(ab.real()), 0));
    if (dist_int >= 0.02) {
        double w = 1.0 / z;
        cplx total = 0.0;
        double mags = 0.0;
        const cplx lgc = lgamma_cplx(c);
        struct Part { cplx x, y; };
        for (const Part& p : {Part{a, b}, Part{b, a}}) {
            // A pole of Gamma in the denominator kills the term.
            if (near_nonpositive_integer(p.y, 1e-10) ||
                near_nonpositive_integer(c - p.x, 1e-10))
                continue;
            cplx pref = std::exp(lgc + lgamma_cplx(p.y - p.x) - lgamma_cplx(p.y) -
                                 lgamma_cplx(c - p.x)) *
                        std::pow(-z, -p.x);
            cplx ser = series_2f1(p.x, p.x - c + 1.0, p.x - p.y + 1.0, w, 1000000);
            total += pref * ser;
            mags += std::abs(pref * ser);
        }
        // Severe cancellation between the two terms: continue instead.
        if (std::abs(total) >= 1e-6 * mags) return total;
    }
    // Near-degenerate a - b (or cancellation).  The Pfaff series needs
    // O(|z| log) terms, so switch to ODE continuation once that is costly.
    if (z >= -50.0) return pfaff(2000000);
    return ode_continue_2f1(a, b, c, z);
}

cplx hypergeom_f_rank1(cplx lambda, const BCParams& params, double t) {
    if (params.q != 1) throw DomainError("rank-1 evaluator called with q != 1");
    if (t < 0) throw DomainError("chamber coordinate must be nonnegative");
    if (t == 0) return 1.0;
    const double rho = params.rho()[0];
    const double sh = std::sinh(t);
    // Strongly oscillatory spectral parameters take the exponential expansion
    // once sinh^2 t clears its convergence knee; below the knee |z| <= 0.128
    // keeps the plain power series short enough to stay accurate.
    cplx v = (std::abs(lambda.imag()) >= 16.0 && t >= 0.35)
                 ? osc_expansion_rank1(lambda, params, t)
                 : gauss_2f1(0.5 * (rho + lambda), 0.5 * (rho - lambda),
                             cplx(params.mu, 0), -sh * sh);
    // |F| <= |W|^{1/2} exp(|Re lambda| t) with |W| = 2 in rank one.
    double bound = std::sqrt(2.0) * std::exp(std::abs(lambda.real()) * t) * (1 + 1e-6) + 1e-9;
    if (std::abs(v) > bound)
        throw InvariantViolation("evaluated value exceeds the exponential growth bound");
    return v;
}

HypergeomValue phi_rank1(cplx lambda, const BCParams& params, double t) {
    return {hypergeom_f_rank1(lambda * cplx(0, 1), params, t), EvalPath::Rank1_2F1, false};
}

CFunctionValue c_function(const std::vector<cplx>& lambda, const BCParams& params) {
    const int q = params.q;
    if (static_cast<int>(lambda.size()) != q)
        throw DomainError("spectral parameter rank does not match parameter rank");
    const double k1 = params.k1(), k2 = params.k2(), k3 = params.k3();
    const std::vector<double> rho = params.rho();

    bool finite = true;
    // log of the Gamma-ratio product at z (vector), minus the same at rho.
    auto log_prod = [&](const std::function<cplx(int)>& at) -> cplx {
        cplx s = 0.0;
        auto ratio = [&](cplx num_arg, double shift) {
            if (near_nonpositive_integer(num_arg, 1e-10)) {
                finite = false;
                return;
            }
            s += lgamma_cplx(num_arg) - lgamma_cplx(num_arg + shift);
        };
        for (int i = 0; i < q; ++i) {
            ratio(at(i), k1);
            ratio(0.5 * at(i) + 0.5 * k1, k2);
        }
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j) {
                ratio(0.5 * (at(i) - at(j)), k3);
                ratio(0.5 * (at(i) + at(j)), k3);
            }
        return s;
    };

    cplx log_num = log_prod([&](int i) { return lambda[i]; });
    if (!finite) return {cplx(0, 0), false};
    cplx log_den = log_prod([&](int i) { return cplx(rho[i], 0); });
    return {std::exp(log_num - log_den), true};
}

CFunctionValue c_function(cplx lambda, const BCParams& params) {
    return c_function(std::vector<cplx>{lambda}, params);
}

// ---------------------------------------------------------------------------
// Jacobi polynomials: cached inner-product tables on the compact torus.

namespace {

struct JacobiTable {
    std::vector<std::vector<int>> weights;          // all dominant, |eta| <= cap
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<std::vector<double>>> orbits;
    Eigen::MatrixXd ip;                             // <m_a, m_b>
};

constexpr int kDegreeCap = 6;
constexpr int kTorusOrder = 64;

std::vector<std::vector<int>> all_dominant_upto(int q, int cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(q, 0);
    std::function<void(int, int, int)> rec = [&](int pos, int maxv, int left) {
        if (pos == q) {
            out.push_back(cur);
            return;
        }
        for (int v = std::min(maxv, left); v >= 0; --v) {
            cur[pos] = v;
            rec(pos + 1, v, left - v);
        }
        cur[pos] = 0;
    };
    rec(0, cap, cap);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int da = weight_degree(a), db = weight_degree(b);
        if (da != db) return da < db;
        return a < b;
    });
    return out;
}

double torus_weight(const std::vector<double>& th, const BCParams& p) {
    double w = 1.0;
    const double k1 = p.k1(), k2 = p.k2(), k3 = p.k3();
    for (double x : th) {
        w *= std::pow(std::abs(2.0 * std::sin(x)), 2.0 * k1) *
             std::pow(std::abs(2.0 * std::sin(2.0 * x)), 2.0 * k2);
    }
    for (size_t i = 0; i < th.size(); ++i)
        for (size_t j = i + 1; j < th.size(); ++j)
            w *= std::pow(std::abs(2.0 * std::sin(th[i] - th[j])) *
                              std::abs(2.0 * std::sin(th[i] + th[j])),
                          2.0 * k3);
    return w;
}

double orbit_sum_compact(const std::vector<std::vector<double>>& orbit,
                         const std::vector<double>& th) {
    double s = 0;
    for (const auto& v : orbit) {
        double phase = 0;
        for (size_t i = 0; i < th.size(); ++i) phase += v[i] * th[i];
        s += std::cos(2.0 * phase);
    }
    return s;
}

const JacobiTable& jacobi_table(const BCParams& params) {
    static std::mutex mu;
    static std::map<std::tuple<Field, int, double>, JacobiTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(params.field, params.q, params.mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    JacobiTable tab;
    const int q = params.q;
    tab.weights = all_dominant_upto(q, kDegreeCap);
    for (size_t i = 0; i < tab.weights.size(); ++i) {
        tab.index[tab.weights[i]] = static_cast<int>(i);
        std::vector<double> v(tab.weights[i].begin(), tab.weights[i].end());
        tab.orbits.push_back(weyl_orbit(v));
    }

    // Gauss-Legendre grid on [0, pi/2]^q.  The density has a |sin(x-y)|^d
    // factor whose odd powers kink across the diagonal, so for rank 2 the
    // square is folded onto the triangle y < x (the integrand is symmetric);
    // per panel the factor is an analytic power of sin(x-y).
    Quad1D g = map_to_interval(gauss_legendre(kTorusOrder), 0.0, kPi / 2.0);
    const int n = static_cast<int>(tab.weights.size());
    tab.ip = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> mvals(n);
    auto accumulate = [&](const std::vector<double>& th, double wq) {
        wq *= torus_weight(th, params);
        for (int i = 0; i < n; ++i) mvals[i] = orbit_sum_compact(tab.orbits[i], th);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) tab.ip(i, j) += wq * mvals[i] * mvals[j];
    };
    if (q == 1) {
        for (int a = 0; a < kTorusOrder; ++a) accumulate({g.x[a]}, g.w[a]);
    } else {
        Quad1D s = map_to_interval(gauss_legendre(kTorusOrder), 0.0, 1.0);
        for (int a = 0; a < kTorusOrder; ++a) {
            double x = g.x[a];
            for (int b = 0; b < kTorusOrder; ++b)
                accumulate({x, x * s.x[b]}, 2.0 * g.w[a] * x * s.w[b]);
        }
    }
    tab.ip = tab.ip.selfadjointView<Eigen::Upper>();
    return cache.emplace(key, std::move(tab)).first->second;
}

} // namespace

double JacobiPolyBC::eval(const ChamberPoint& t) const {
    double s = 0;
    for (size_t b = 0; b < basis.size(); ++b) {
        double m = 0;
        for (const auto& o : orbits[b]) {
            double dot = 0;
            for (size_t i = 0; i < o.size(); ++i) dot += o[i] * t.t[i];
            m += std::exp(2.0 * dot);
        }
        s += coeff[b] * m;
    }
    return s;
}

double JacobiPolyBC::eval_at_zero() const {
    double s = 0;
    for (size_t b = 0; b < basis.size(); ++b)
        s += coeff[b] * static_cast<double>(orbits[b].size());
    return s;
}

double JacobiPolyBC::eval_compact(const std::vector<double>& theta) const {
    double s = 0;
    for (size_t b = 0; b < basis.size(); ++b)
        s += coeff[b] * orbit_sum_compact(orbits[b], theta);
    return s;
}

JacobiPolyBC jacobi_polynomial(const std::vector<int>& nu, const BCParams& params) {
    if (static_cast<int>(nu.size()) != params.q)
        throw DomainError("weight rank does not match parameter rank");
    if (!is_dominant_weight(nu)) throw DomainError("weight label is not dominant");
    if (params.q > 2) throw RouteError("Jacobi polynomials implemented for rank <= 2");
    if (weight_degree(nu) > kDegreeCap)
        throw CapacityError("weight degree exceeds the configured cap");

    const JacobiTable& tab = jacobi_table(params);
    std::vector<std::vector<int>> below = dominant_weights_below(nu); // nu last

    JacobiPolyBC poly;
    poly.nu = nu;
    poly.basis = below;
    for (const auto& eta : below)
        poly.orbits.push_back(weyl_orbit(std::vector<double>(eta.begin(), eta.end())));
    const int m = static_cast<int>(below.size()) - 1; // strictly lower weights
    poly.coeff.assign(m + 1, 0.0);
    poly.coeff[m] = 1.0;

    if (m > 0) {
        Eigen::MatrixXd G(m, m);
        Eigen::VectorXd rhs(m);
        int inu = tab.index.at(nu);
        for (int i = 0; i < m; ++i) {
            int ii = tab.index.at(below[i]);
            rhs(i) = -tab.ip(ii, inu);
            for (int j = 0; j < m; ++j) G(i, j) = tab.ip(ii, tab.index.at(below[j]));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
        double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
        poly.gram_condition = (lo > 0) ? hi / lo : std::numeric_limits<double>::infinity();
        if (!(poly.gram_condition <= 1e10))
            throw AccuracyError("orbit-sum Gram matrix is numerically singular",
                                poly.gram_condition, 0.0);
        Eigen::VectorXd c = G.ldlt().solve(rhs);
        for (int i = 0; i < m; ++i) poly.coeff[i] = c(i);
    }
    return poly;
}

// ---------------------------------------------------------------------------

std::optional<std::vector<int>> polynomial_label(const std::vector<cplx>& lambda,
                                                 const BCParams& params, double tol) {
    const int q = params.q;
    std::vector<double> y(q);
    for (int i = 0; i < q; ++i) {
        if (std::abs(lambda[i].imag()) > tol) return std::nullopt;
        y[i] = std::abs(lambda[i].real());
    }
    std::sort(y.begin(), y.end(), std::greater<double>());
    const std::vector<double> rho = params.rho();
    std::vector<int> nu(q);
    for (int i = 0; i < q; ++i) {
        double v = (y[i] - rho[i]) / 2.0;
        double r = std::round(v);
        if (r < -0.5 || std::abs(v - r) > tol) return std::nullopt;
        nu[i] = static_cast<int>(r);
    }
    if (!is_dominant_weight(nu)) return std::nullopt;
    return nu;
}

namespace {

HypergeomValue eval_polynomial_route(const std::vector<int>& nu, const BCParams& params,
                                     const ChamberPoint& t) {
    std::vector<cplx> lam(params.q);
    const std::vector<double> rho = params.rho();
    for (int i = 0; i < params.q; ++i) lam[i] = cplx(2.0 * nu[i] + rho[i], 0);
    CFunctionValue c = c_function(lam, params);
    if (!c.finite)
        throw RouteError("c-function pole at the requested lattice parameter");
    JacobiPolyBC p = jacobi_polynomial(nu, params);
    return {c.value * p.eval(t), EvalPath::JacobiPoly, false};
}

HypergeomValue eval_hc_leading(const std::vector<cplx>& lambda, const BCParams& params,
                               const ChamberPoint& t) {
    WeylGroupBC W(params.q);
    const std::vector<double> rho = params.rho();
    cplx sum = 0.0;
    bool pole = false;
    W.for_each([&](const WeylGroupBC::Element& w) {
        std::vector<cplx> wl = w.apply(lambda);
        CFunctionValue c = c_function(wl, params);
        if (!c.finite) {
            pole = true;
            return;
        }
        cplx expo = 0.0;
        for (int i = 0; i < params.q; ++i) expo += (wl[i] - rho[i]) * t.t[i];
        sum += c.value * std::exp(expo);
    });
    if (pole)
        throw RouteError("leading-term route hit a c-function pole; perturb lambda");
    return {sum, EvalPath::HcLeading, true};
}

} // namespace

HypergeomValue hypergeom_eval(const std::vector<cplx>& lambda, const BCParams& params,
                              const ChamberPoint& t, EvalRoute route) {
    if (static_cast<int>(lambda.size()) != params.q)
        throw DomainError("spectral parameter rank does not match parameter rank");
    if (t.rank() != params.q) throw DomainError("point rank does not match parameter rank");

    if (t.is_zero()) {
        // f(0) = 1 holds exactly on every route.
        EvalPath p = route == EvalRoute::JacobiPoly  ? EvalPath::JacobiPoly
                     : route == EvalRoute::HcLeading ? EvalPath::HcLeading
                                                     : EvalPath::Rank1_2F1;
        return {cplx(1, 0), p, route == EvalRoute::HcLeading};
    }

    switch (route) {
    case EvalRoute::Rank1:
        if (params.q != 1) throw RouteError("2F1 route requires rank 1");
        return {hypergeom_f_rank1(lambda[0], params, t.t[0]), EvalPath::Rank1_2F1, false};
    case EvalRoute::JacobiPoly: {
        auto nu = polynomial_label(lambda, params);
        if (!nu)
            throw RouteError("polynomial route requires lambda = 2*nu + rho with nu a dominant integer label");
        return eval_polynomial_route(*nu, params, t);
    }
    case EvalRoute::HcLeading:
        return eval_hc_leading(lambda, params, t);
    case EvalRoute::Auto:
        break;
    }

    if (params.q == 1)
        return {hypergeom_f_rank1(lambda[0], params, t.t[0]), EvalPath::Rank1_2F1, false};
    if (auto nu = polynomial_label(lambda, params)) return eval_polynomial_route(*nu, params, t);
    throw RouteError(
        "no exact evaluation route: rank >= 2 supports only lattice spectral parameters "
        "(2*nu + rho); the leading-asymptotic route must be requested explicitly");
}

Boundedness bounded_classify(const SpectralParam& lambda, const BCParams& params) {
    if (lambda.rank() != params.q)
        throw DomainError("spectral parameter rank does not match parameter rank");
    return co_hull_member(lambda.imag_part(), params.rho(), 1e-12) ? Boundedness::Bounded
                                                                   : Boundedness::Unbounded;
}

} // namespace bchyp
