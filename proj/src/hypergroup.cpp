// SPDX-License-Identifier: Apache-2.0

#include "bchyp/hypergroup.hpp"

#include <algorithm>
#include <cmath>

#include "bchyp/errors.hpp"
#include "bchyp/quadrature.hpp"

namespace bchyp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double acosh_safe(double x) { return std::acosh(std::max(1.0, x)); }

struct TensorSum {
    cplx swf = 0;
    double sw = 0;
    void add(double w, cplx f) {
        sw += w;
        swf += w * f;
    }
    cplx ratio() const { return swf / sw; }
};

// ---- rank 1: the (radius, angle) reduction of the kernel integral ----
//
// For q = 1 the unitary factor v collapses (w ~ conj(v) w leaves the ball
// density invariant) and the kernel argument becomes
//   cosh d = |A + w B|,  A = cosh t cosh s,  B = sinh t sinh s,
// with |A + w B|^2 = A^2 + 2 A B r x + B^2 r^2 for w = r u, x = Re u / |u|.
cplx tensor_rank1_at(double A, double B, const ChamberFn& f, const BCParams& params,
                     int order) {
    const int d = field_dim(params.field);
    const double e = params.mu - params.gamma();
    TensorSum acc;
    if (d == 1) {
        Quad1D g = gauss_jacobi(order, e, e); // weight (1 - u^2)^e on [-1,1]
        for (size_t i = 0; i < g.size(); ++i) {
            double arg = std::abs(A + g.x[i] * B);
            acc.add(g.w[i], f(ChamberPoint({acosh_safe(arg)})));
        }
    } else {
        // radial (1-r^2)^e r^{d-1} dr on [0,1]: Gauss-Jacobi in u = 2r - 1
        // carries (1-r)^e r^{d-1}; the smooth leftover (1+r)^e is folded in.
        Quad1D gr = gauss_jacobi(order, e, d - 1.0);
        Quad1D gx = gauss_jacobi(order, (d - 3.0) / 2.0, (d - 3.0) / 2.0);
        for (size_t i = 0; i < gr.size(); ++i) {
            double r = 0.5 * (gr.x[i] + 1.0);
            double wr = gr.w[i] * std::pow(1.0 + r, e);
            for (size_t j = 0; j < gx.size(); ++j) {
                double x = gx.x[j];
                double c2 = A * A + 2.0 * A * B * r * x + B * B * r * r;
                acc.add(wr * gx.w[j], f(ChamberPoint({acosh_safe(std::sqrt(c2))})));
            }
        }
    }
    return acc.ratio();
}

std::pair<cplx, double> tensor_rank1(const ChamberPoint& t, const ChamberPoint& s,
                                     const ChamberFn& f, const BCParams& params,
                                     int order) {
    const double A = std::cosh(t.t[0]) * std::cosh(s.t[0]);
    const double B = std::sinh(t.t[0]) * std::sinh(s.t[0]);
    cplx full = tensor_rank1_at(A, B, f, params, order);
    cplx half = tensor_rank1_at(A, B, f, params, std::max(4, order / 2));
    return {full, std::abs(full - half)};
}

// ---- rank 2, d = 1: singular-value coordinates of w ----
//
// Every real 2x2 matrix is R(a) diag(d1,d2) R(b)^T with rotations only and
// signed diagonal entries (a 4-fold cover); Lebesgue measure becomes
// |d1^2-d2^2| da db dd1 dd2 up to a constant that the self-normalization
// cancels.  v ranges over SO(2).
ChamberPoint kernel_2x2_real(const ChamberPoint& t, const ChamberPoint& s,
                             const double w[2][2], const double v[2][2]) {
    double M[2][2];
    const double sht[2] = {std::sinh(t.t[0]), std::sinh(t.t[1])};
    const double shs[2] = {std::sinh(s.t[0]), std::sinh(s.t[1])};
    const double cht[2] = {std::cosh(t.t[0]), std::cosh(t.t[1])};
    const double chs[2] = {std::cosh(s.t[0]), std::cosh(s.t[1])};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            M[i][j] = sht[i] * w[i][j] * shs[j] + cht[i] * v[i][j] * chs[j];
    // singular values of M via the 2x2 Gram matrix
    double g11 = M[0][0] * M[0][0] + M[1][0] * M[1][0];
    double g22 = M[0][1] * M[0][1] + M[1][1] * M[1][1];
    double g12 = M[0][0] * M[0][1] + M[1][0] * M[1][1];
    double tr = g11 + g22;
    double disc = std::sqrt(std::max(0.0, (g11 - g22) * (g11 - g22) + 4.0 * g12 * g12));
    double s1 = std::sqrt(std::max(0.0, 0.5 * (tr + disc)));
    double s2 = std::sqrt(std::max(0.0, 0.5 * (tr - disc)));
    return ChamberPoint({acosh_safe(s1), acosh_safe(s2)});
}

cplx tensor_rank2_at(const ChamberPoint& t, const ChamberPoint& s, const ChamberFn& f,
                     const BCParams& params, int nr, int na) {
    const double e = params.mu - params.gamma();
    Quad1D gd = gauss_jacobi(nr, e, e); // per-diagonal weight (1 - d^2)^e
    std::vector<double> ang(na), ca(na), sa(na);
    for (int k = 0; k < na; ++k) {
        ang[k] = 2.0 * kPi * (k + 0.5) / na;
        ca[k] = std::cos(ang[k]);
        sa[k] = std::sin(ang[k]);
    }
    TensorSum acc;
    double w[2][2], v[2][2];
    for (int i = 0; i < nr; ++i) {
        double d1 = gd.x[i];
        for (int j = 0; j < nr; ++j) {
            double d2 = gd.x[j];
            double wd = gd.w[i] * gd.w[j] * std::abs(d1 * d1 - d2 * d2);
            if (wd == 0) continue;
            for (int ia = 0; ia < na; ++ia)
                for (int ib = 0; ib < na; ++ib) {
                    w[0][0] = ca[ia] * ca[ib] * d1 + sa[ia] * sa[ib] * d2;
                    w[0][1] = ca[ia] * sa[ib] * d1 - sa[ia] * ca[ib] * d2;
                    w[1][0] = sa[ia] * ca[ib] * d1 - ca[ia] * sa[ib] * d2;
                    w[1][1] = sa[ia] * sa[ib] * d1 + ca[ia] * ca[ib] * d2;
                    for (int iv = 0; iv < na; ++iv) {
                        v[0][0] = ca[iv]; v[0][1] = -sa[iv];
                        v[1][0] = sa[iv]; v[1][1] = ca[iv];
                        acc.add(wd, f(kernel_2x2_real(t, s, w, v)));
                    }
                }
        }
    }
    return acc.ratio();
}

std::pair<cplx, double> tensor_rank2(const ChamberPoint& t, const ChamberPoint& s,
                                     const ChamberFn& f, const BCParams& params,
                                     int order) {
    const int nr = std::clamp(order, 8, 24);
    const int na = std::clamp(order / 2, 8, 16);
    cplx full = tensor_rank2_at(t, s, f, params, nr, na);
    cplx half = tensor_rank2_at(t, s, f, params, std::max(6, nr / 2), std::max(6, na / 2));
    return {full, std::abs(full - half)};
}

// Antithetic pairing over w -> -w: the ball law is symmetric under
// negation and the importance weight depends only on singular values, so
// the pair is a valid sample of the same measure.  The two kernel
// arguments bracket the geodesic midpoint, which strips most of the
// translation variance; each pair costs two integrand evaluations.
RatioAccum mc_pair_accum(const ChamberPoint& t, const ChamberPoint& s,
                         const ChamberFn& f, const BCParams& params,
                         std::int64_t pairs, int streams, std::uint64_t seed) {
    const double bound = t.inf_norm() + s.inf_norm() + 1e-10;
    return stream_reduce<RatioAccum>(
        pairs, streams, seed,
        [&](int, std::int64_t n, Rng& rng) {
            RatioAccum acc;
            for (std::int64_t i = 0; i < n; ++i) {
                MatrixF v = haar_unitary_sample(params.field, params.q, rng);
                BallSample b = ball_sample(params, rng);
                ChamberPoint xp = d_argument(t, s, v, b.w);
                ChamberPoint xm = d_argument(t, s, v, -b.w);
                if (xp.inf_norm() > bound || xm.inf_norm() > bound)
                    throw InvariantViolation("kernel argument escaped the support bound");
                acc.add(b.weight, 0.5 * (f(xp) + f(xm)));
            }
            return acc;
        },
        [](RatioAccum& a, const RatioAccum& b) { a.merge(b); });
}

std::pair<cplx, double> mc_convolve(const ChamberPoint& t, const ChamberPoint& s,
                                    const ChamberFn& f, const BCParams& params,
                                    const QuadratureSpec& quad) {
    // Each antithetic pair costs two integrand evaluations, so the requested
    // sample count is split in half to keep the work budget.
    RatioAccum total = mc_pair_accum(t, s, f, params, (quad.mc_samples + 1) / 2,
                                     quad.streams, quad.seed);
    return {total.ratio(), total.stderr_est()};
}

} // namespace

ConvolutionEstimate convolve_point(const ChamberPoint& t, const ChamberPoint& s,
                                   const ChamberFn& f, const BCParams& params,
                                   const QuadratureSpec& quad) {
    if (t.rank() != params.q || s.rank() != params.q)
        throw DomainError("point rank does not match parameter rank");
    quad.validate(params.field, params.q);

    if (quad.mode == QuadMode::MC) {
        auto [v, err] = mc_convolve(t, s, f, params, quad);
        return {v, err, quad};
    }
    if (params.q == 1) {
        auto [v, err] = tensor_rank1(t, s, f, params, quad.tensor_order);
        return {v, err, quad};
    }
    if (params.q == 2 && params.field == Field::R) {
        auto [v, err] = tensor_rank2(t, s, f, params, quad.tensor_order);
        return {v, err, quad};
    }
    throw RouteError("no tensor kernel decomposition for rank 2 over C; use Monte Carlo");
}

ChamberFn translate(const ChamberFn& f, const ChamberPoint& s, const BCParams& params,
                    const QuadratureSpec& quad) {
    return [f, s, params, quad](const ChamberPoint& t) {
        return convolve_point(t, s, f, params, quad).value;
    };
}

ProductCheck verify_product(const SpectralParam& lambda, const ChamberPoint& t,
                            const ChamberPoint& s, const BCParams& params,
                            const QuadratureSpec& quad) {
    if (lambda.rank() != params.q)
        throw DomainError("spectral parameter rank does not match parameter rank");
    const std::vector<cplx> lamF = lambda.times_i().lam;

    ChamberFn f;
    cplx lhs;
    if (params.q == 1) {
        cplx l = lamF[0];
        BCParams p = params;
        f = [l, p](const ChamberPoint& x) { return hypergeom_f_rank1(l, p, x.t[0]); };
        lhs = f(t) * f(s);
    } else {
        auto nu = polynomial_label(lamF, params);
        if (!nu)
            throw RouteError("rank >= 2 product check requires a lattice spectral parameter");
        JacobiPolyBC P = jacobi_polynomial(*nu, params);
        std::vector<cplx> lat(params.q);
        const std::vector<double> rho = params.rho();
        for (int i = 0; i < params.q; ++i) lat[i] = cplx(2.0 * (*nu)[i] + rho[i], 0);
        CFunctionValue c = c_function(lat, params);
        if (!c.finite || std::abs(c.value) < 1e-300)
            throw RouteError("c-function degenerate at the requested lattice parameter");
        const double cinv = 1.0 / c.value.real();
        // P(t) P(s) = <(1/c) P(d(.))>
        f = [P, cinv](const ChamberPoint& x) { return cplx(cinv * P.eval(x), 0); };
        lhs = cplx(P.eval(t) * P.eval(s), 0);
    }
    ConvolutionEstimate rhs = convolve_point(t, s, f, params, quad);
    return {lhs, rhs.value, std::abs(lhs - rhs.value), rhs.error};
}

AxiomReport verify_axioms(const ChamberPoint& r, const ChamberPoint& s,
                          const ChamberPoint& t, const ChamberFn& f,
                          const BCParams& params, const QuadratureSpec& quad) {
    AxiomReport rep;

    ConvolutionEstimate ts = convolve_point(t, s, f, params, quad);
    ConvolutionEstimate st = convolve_point(s, t, f, params, quad);
    rep.commutativity = std::abs(ts.value - st.value);
    rep.commutativity_budget = ts.error + st.error;

    // Associativity: nest one estimate inside the other.  In MC mode the
    // budget per layer is sqrt(total) so the product matches the request.
    QuadratureSpec inner = quad, outer = quad;
    if (quad.mode == QuadMode::MC) {
        std::int64_t layer = std::max<std::int64_t>(
            500, static_cast<std::int64_t>(std::sqrt(static_cast<double>(quad.mc_samples))));
        inner.mc_samples = outer.mc_samples = layer;
        inner.streams = outer.streams = std::min(quad.streams, 8);
    }
    double inner_err_a = 0, inner_err_b = 0;
    std::uint64_t tick = 0;
    ChamberFn ga = [&](const ChamberPoint& x) {
        QuadratureSpec qi = inner;
        qi.seed = inner.seed + 0x9e37 * (++tick);
        ConvolutionEstimate e = convolve_point(r, x, f, params, qi);
        inner_err_a = std::max(inner_err_a, e.error);
        return e.value;
    };
    ConvolutionEstimate a = convolve_point(s, t, ga, params, outer);
    ChamberFn gb = [&](const ChamberPoint& x) {
        QuadratureSpec qi = inner;
        qi.seed = inner.seed + 0x9e37 * (++tick) + 1;
        ConvolutionEstimate e = convolve_point(x, t, f, params, qi);
        inner_err_b = std::max(inner_err_b, e.error);
        return e.value;
    };
    ConvolutionEstimate b = convolve_point(r, s, gb, params, outer);
    rep.associativity = std::abs(a.value - b.value);
    rep.associativity_budget = a.error + b.error + inner_err_a + inner_err_b;

    ChamberPoint zero(std::vector<double>(params.q, 0.0));
    ConvolutionEstimate n = convolve_point(t, zero, f, params, quad);
    rep.neutrality = std::abs(n.value - f(t));

    // Support bound: hard count over fresh samples.
    const double bound = t.inf_norm() + s.inf_norm() + 1e-10;
    struct Sup {
        std::int64_t n = 0, bad = 0;
        double invmin = std::numeric_limits<double>::infinity();
    };
    std::int64_t nsup = quad.mode == QuadMode::MC ? quad.mc_samples : 100000;
    Sup sup = stream_reduce<Sup>(
        nsup, quad.streams, quad.seed + 17,
        [&](int, std::int64_t cnt, Rng& rng) {
            Sup p;
            for (std::int64_t i = 0; i < cnt; ++i) {
                MatrixF v = haar_unitary_sample(params.field, params.q, rng);
                BallSample b2 = ball_sample(params, rng);
                ChamberPoint x = d_argument(t, s, v, b2.w);
                ++p.n;
                if (x.inf_norm() > bound) ++p.bad;
                ChamberPoint y = d_argument(t, t, v, b2.w);
                p.invmin = std::min(p.invmin, y.inf_norm());
            }
            return p;
        },
        [](Sup& x, const Sup& y) {
            x.n += y.n;
            x.bad += y.bad;
            x.invmin = std::min(x.invmin, y.invmin);
        });
    rep.support_samples = sup.n;
    rep.support_violations = sup.bad;

    // Involution: the point (v,w) = (I,-I) realizes d(t,t;v,w) = 0 exactly.
    MatrixF id = MatrixF::identity(params.field, params.q);
    ChamberPoint dzero = d_argument(t, t, id, -id);
    rep.involution_min = std::min(sup.invmin, dzero.inf_norm());
    return rep;
}

HaarReport verify_haar(const ChamberFn& f, double support, const ChamberPoint& s,
                       const BCParams& params, const QuadratureSpec& quad) {
    if (params.q == 1) {
        auto fw = [&](double x) {
            return f(ChamberPoint({x})).real() * haar_weight(ChamberPoint({x}), params);
        };
        double rhs_err = 0;
        double rhs = adaptive_gauss(fw, 0.0, support, 1e-11, &rhs_err);

        ChamberFn tf = translate(f, s, params, quad);
        double lim = support + s.t[0] + 0.25;
        // The translated integrand sits on the inner quadrature's noise
        // floor, which stalls adaptive refinement; a fixed composite rule
        // averages the noise out instead.  Two panel counts give an error
        // estimate.
        auto gw = [&](double x) {
            return tf(ChamberPoint({x})).real() * haar_weight(ChamberPoint({x}), params);
        };
        auto composite = [&](int panels) {
            Quad1D base = gauss_legendre(24);
            double acc = 0;
            for (int pn = 0; pn < panels; ++pn) {
                Quad1D gp = map_to_interval(base, lim * pn / panels, lim * (pn + 1) / panels);
                for (size_t k = 0; k < gp.size(); ++k) acc += gp.w[k] * gw(gp.x[k]);
            }
            return acc;
        };
        double coarse = composite(8);
        double lhs = composite(12);
        double lhs_err = std::abs(lhs - coarse);
        double rel = std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs));
        return {lhs, rhs, rel, (lhs_err + rhs_err) / std::max(1e-300, std::abs(rhs))};
    }
    if (params.q != 2) throw RouteError("Haar verification implemented for rank <= 2");

    // Rank 2: the radial weight carries |sinh(t1 - t2)|^{2 k3} with
    // 2 k3 = d, which for odd d kinks across the diagonal and stalls tensor
    // grids on the box.  Parametrizing the chamber triangle as (a, a*u)
    // turns that factor into an analytic power of sinh(a(1-u)) per node.
    // Outer tensor grid over the triangle, inner MC translates with
    // per-node seeds.
    const double lim = support + s.t[0] + 0.25;
    const int m = 12;
    const int nodes = m * m;
    Quad1D g = map_to_interval(gauss_legendre(m), 0.0, lim);
    Quad1D gu = map_to_interval(gauss_legendre(m), 0.0, 1.0);
    Quad1D gfine = map_to_interval(gauss_legendre(48), 0.0, lim);
    Quad1D gufine = map_to_interval(gauss_legendre(48), 0.0, 1.0);

    double rhs = 0;
    for (int i = 0; i < 48; ++i)
        for (int j = 0; j < 48; ++j) {
            ChamberPoint x({gfine.x[i], gfine.x[i] * gufine.x[j]});
            rhs += gfine.w[i] * gfine.x[i] * gufine.w[j] * f(x).real() *
                   haar_weight(x, params);
        }

    // Two-stage draw allocation.  Uniform per-node sampling wastes most of
    // the budget: nodes whose reachable translates miss the profile support
    // have zero spread, while the few nodes straddling the support boundary
    // see indicator-like noise.  A pilot pass measures each node's spread,
    // then the remaining pairs go out proportionally to
    // (quadrature weight x per-pair spread), which minimizes the variance of
    // the weighted sum at fixed total cost.
    std::vector<ChamberPoint> xs;
    xs.reserve(nodes);
    std::vector<double> wq(nodes);
    std::vector<RatioAccum> acc(nodes);
    std::vector<double> score(nodes);
    const std::int64_t total_pairs =
        std::max<std::int64_t>((quad.mc_samples + 1) / 2, 64 * nodes);
    const std::int64_t pilot = std::max<std::int64_t>(32, total_pairs / (20 * nodes));
    double score_sum = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int idx = i * m + j;
            ChamberPoint x({g.x[i], g.x[i] * gu.x[j]});
            wq[idx] = g.w[i] * g.x[i] * gu.w[j] * haar_weight(x, params);
            acc[idx] = mc_pair_accum(x, s, f, params, pilot, quad.streams,
                                     quad.seed + 1000003ull * static_cast<std::uint64_t>(idx));
            xs.push_back(x);
            score[idx] = std::abs(wq[idx]) * acc[idx].stderr_est() *
                         std::sqrt(static_cast<double>(pilot));
            score_sum += score[idx];
        }
    const std::int64_t remaining = total_pairs - pilot * nodes;
    if (score_sum > 0 && remaining > 0) {
        for (int idx = 0; idx < nodes; ++idx) {
            const std::int64_t extra = static_cast<std::int64_t>(
                static_cast<double>(remaining) * score[idx] / score_sum);
            if (extra <= 0) continue;
            RatioAccum more =
                mc_pair_accum(xs[idx], s, f, params, extra, quad.streams,
                              quad.seed + 777777777ull +
                                  1000003ull * static_cast<std::uint64_t>(idx));
            acc[idx].merge(more);
        }
    }

    double lhs = 0, var = 0;
    for (int idx = 0; idx < nodes; ++idx) {
        lhs += wq[idx] * acc[idx].ratio().real();
        const double e = wq[idx] * acc[idx].stderr_est();
        var += e * e;
    }
    double rel = std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs));
    return {lhs, rhs, rel, std::sqrt(var) / std::max(1e-300, std::abs(rhs))};
}

FjkReport verify_fjk_rank1(const SpectralParam& lambda, const ChamberPoint& t,
                           const ChamberPoint& s, const BCParams& params) {
    if (params.q != 1) throw DomainError("the (r,psi) reduction is a rank-1 statement");
    const cplx lamF = lambda.times_i().lam[0];
    BCParams p = params;
    ChamberFn f = [lamF, p](const ChamberPoint& x) {
        return hypergeom_f_rank1(lamF, p, x.t[0]);
    };

    const int d = field_dim(params.field);
    const double e = params.mu - params.gamma();
    const double A = std::cosh(t.t[0]) * std::cosh(s.t[0]);
    const double B = std::sinh(t.t[0]) * std::sinh(s.t[0]);

    // Classical (r,psi) form via the substitution rho = r^2:
    //   (1-r^2)^{alpha-beta-1} r^{2 beta+1} dr -> (1/2)(1-rho)^{alpha-beta-1} rho^beta drho,
    // angle measure (sin psi)^{2 beta} dpsi -> (1-x^2)^{beta-1/2} dx.
    const double beta = d / 2.0 - 1.0;
    cplx classical;
    {
        TensorSum acc;
        if (d == 1) {
            Quad1D g = gauss_jacobi(80, e, e);
            for (size_t i = 0; i < g.size(); ++i)
                acc.add(g.w[i], f(ChamberPoint({acosh_safe(std::abs(A + g.x[i] * B))})));
        } else {
            Quad1D grho = gauss_jacobi(80, e, beta); // in u = 2*rho - 1
            Quad1D gx = gauss_jacobi(80, beta - 0.5, beta - 0.5);
            for (size_t i = 0; i < grho.size(); ++i) {
                double r = std::sqrt(0.5 * (grho.x[i] + 1.0));
                for (size_t j = 0; j < gx.size(); ++j) {
                    double c2 = A * A + 2.0 * A * B * r * gx.x[j] + B * B * r * r;
                    acc.add(grho.w[i] * gx.w[j],
                            f(ChamberPoint({acosh_safe(std::sqrt(c2))})));
                }
            }
        }
        classical = acc.ratio();
    }

    // Kernel form: integrate f(d(t,s;v,w)) with the matrix kernel directly.
    cplx kernel;
    double kernel_err = 0;
    if (d == 1) {
        auto num_re = [&](double w) {
            return f(ChamberPoint({acosh_safe(std::abs(A + w * B))})).real() *
                   std::pow(1.0 - w * w, e);
        };
        auto num_im = [&](double w) {
            return f(ChamberPoint({acosh_safe(std::abs(A + w * B))})).imag() *
                   std::pow(1.0 - w * w, e);
        };
        auto den = [&](double w) { return std::pow(1.0 - w * w, e); };
        double den_v = tanh_sinh(den, -1.0, 1.0, 1e-12);
        kernel = cplx(tanh_sinh(num_re, -1.0, 1.0, 1e-12) / den_v,
                      tanh_sinh(num_im, -1.0, 1.0, 1e-12) / den_v);
        kernel_err = 1e-10;
    } else if (d == 2) {
        // w = r e^{i phi} in the complex disk, v = e^{i theta} on U(1).
        const int nang = 64;
        Quad1D gr = gauss_jacobi(48, e, 1.0);
        TensorSum acc;
        for (size_t ir = 0; ir < gr.size(); ++ir) {
            double r = 0.5 * (gr.x[ir] + 1.0);
            double wr = gr.w[ir] * std::pow(1.0 + r, e);
            for (int ip = 0; ip < nang; ++ip) {
                double phi = 2.0 * kPi * (ip + 0.5) / nang;
                MatrixF w(Field::C, 1);
                w.at(0, 0) = Quat(r * std::cos(phi), r * std::sin(phi));
                for (int iv = 0; iv < nang; ++iv) {
                    double th = 2.0 * kPi * (iv + 0.5) / nang;
                    MatrixF v(Field::C, 1);
                    v.at(0, 0) = Quat(std::cos(th), std::sin(th));
                    acc.add(wr, f(d_argument(t, s, v, w)));
                }
            }
        }
        kernel = acc.ratio();
        kernel_err = 1e-9;
    } else {
        QuadratureSpec mc = QuadratureSpec::monte_carlo(200000, 777);
        ConvolutionEstimate e2 = convolve_point(t, s, f, params, mc);
        kernel = e2.value;
        kernel_err = e2.error;
    }

    return {kernel, classical, std::abs(kernel - classical), kernel_err};
}

GroupOracleReport group_case_oracle(int p, const ChamberPoint& t, const ChamberPoint& s,
                                    const ChamberFn& f, const BCParams& params,
                                    const QuadratureSpec& quad) {
    const int q = params.q, d = field_dim(params.field);
    if (p < 2 * q) throw DomainError("the truncation identity requires p >= 2q");
    if (std::abs(params.mu - 0.5 * p * d) > 1e-9)
        throw DomainError("group-case oracle requires mu = p*d/2");

    RatioAccum trunc = stream_reduce<RatioAccum>(
        quad.mc_samples, quad.streams, quad.seed,
        [&](int, std::int64_t n, Rng& rng) {
            RatioAccum acc;
            for (std::int64_t i = 0; i < n; ++i) {
                MatrixF u = haar_unitary_full(params.field, p, rng);
                MatrixF w(params.field, q);
                for (int a = 0; a < q; ++a)
                    for (int b = 0; b < q; ++b) w.at(a, b) = u.at(a, b);
                MatrixF v = haar_unitary_sample(params.field, q, rng);
                acc.add(1.0, f(d_argument(t, s, v, w)));
            }
            return acc;
        },
        [](RatioAccum& a, const RatioAccum& b) { a.merge(b); });

    QuadratureSpec ballq = quad;
    ballq.seed = quad.seed + 0x51ed;
    ConvolutionEstimate ball = convolve_point(t, s, f, params, ballq);

    GroupOracleReport rep;
    rep.truncation_route = trunc.ratio();
    rep.truncation_se = trunc.stderr_est();
    rep.ball_route = ball.value;
    rep.ball_se = ball.error;
    rep.diff = std::abs(rep.truncation_route - rep.ball_route);
    rep.combined_se = std::sqrt(rep.truncation_se * rep.truncation_se +
                                rep.ball_se * rep.ball_se);
    return rep;
}

ChamberProfile chamber_profile(const std::string& name) {
    if (name == "gauss") {
        return {[](const ChamberPoint& t) {
                    double n2 = 0;
                    for (double x : t.t) n2 += x * x;
                    return cplx(std::exp(-n2), 0);
                },
                5.5, name};
    }
    if (name == "bump") {
        return {[](const ChamberPoint& t) {
                    double n2 = 0;
                    for (double x : t.t) n2 += x * x;
                    double r2 = n2 / 4.0; // radius 2
                    if (r2 >= 1.0) return cplx(0, 0);
                    return cplx(std::exp(1.0 - 1.0 / (1.0 - r2)), 0);
                },
                2.0, name};
    }
    if (name == "shell") {
        return {[](const ChamberPoint& t) {
                    double n = t.euclid_norm();
                    return cplx(std::exp(-8.0 * (n - 1.0) * (n - 1.0)), 0);
                },
                4.0, name};
    }
    if (name == "coscap") {
        return {[](const ChamberPoint& t) {
                    double n2 = 0, c = 0;
                    for (double x : t.t) {
                        n2 += x * x;
                        c += std::cos(2.0 * x);
                    }
                    return cplx(c / t.rank() * std::exp(-n2), 0);
                },
                5.5, name};
    }
    throw DomainError("unknown profile '" + name + "'");
}

} // namespace bchyp
