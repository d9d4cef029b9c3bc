// SPDX-License-Identifier: Apache-2.0

#include "bchyp/measures.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "bchyp/errors.hpp"
#include "bchyp/quadrature.hpp"

namespace bchyp {

namespace {

constexpr std::int64_t kMaxRejectionAttempts = 10'000'000;

// Sum of squares of all real coordinates (Frobenius norm squared over F).
double frobenius_sq(const MatrixF& m) {
    double s = 0;
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j) s += m.at(i, j).norm2();
    return s;
}

MatrixF fill_iid(Field field, int q, Rng& rng, const std::function<double()>& draw) {
    const int d = field_dim(field);
    MatrixF m(field, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            Quat& a = m.at(i, j);
            a.w = draw();
            if (d >= 2) a.x = draw();
            if (d == 4) { a.y = draw(); a.z = draw(); }
        }
    (void)rng;
    return m;
}

MatrixF ginibre(Field field, int q, Rng& rng) {
    return fill_iid(field, q, rng, [&rng]() { return rng.gaussian(); });
}

// One uniform proposal from the entrywise cube; accepted iff inside the
// spectral-norm unit ball.  On success fills `sigma` (descending).
bool propose_uniform_ball(Field field, int q, Rng& rng, MatrixF& out,
                          std::vector<double>& sigma) {
    out = fill_iid(field, q, rng, [&rng]() { return rng.uniform(-1.0, 1.0); });
    sigma = singular_spectrum(out);
    return sigma.front() < 1.0;
}

// Quaternionic modified Gram-Schmidt; columns form a Haar-distributed
// element of Sp(q) when applied to a Ginibre matrix (right-module inner
// product <a,b> = sum conj(a_k) b_k).
MatrixF quaternion_mgs(MatrixF g) {
    const int q = g.rank();
    for (int j = 0; j < q; ++j) {
        for (int i = 0; i < j; ++i) {
            Quat c{0, 0, 0, 0};
            for (int k = 0; k < q; ++k) c = c + g.at(k, i).conj() * g.at(k, j);
            for (int k = 0; k < q; ++k) {
                Quat adj = g.at(k, i) * c;
                g.at(k, j).w -= adj.w; g.at(k, j).x -= adj.x;
                g.at(k, j).y -= adj.y; g.at(k, j).z -= adj.z;
            }
        }
        double n = 0;
        for (int k = 0; k < q; ++k) n += g.at(k, j).norm2();
        n = std::sqrt(n);
        if (n < 1e-14) throw InvariantViolation("gram-schmidt input is numerically singular");
        for (int k = 0; k < q; ++k) g.at(k, j) = g.at(k, j) * (1.0 / n);
    }
    return g;
}

// QR of a Ginibre matrix with the R-diagonal made positive gives Haar on the
// full unitary group (O(q) over R, U(q) over C).
Eigen::MatrixXcd haar_qr_complex(int q, Rng& rng, bool real_field) {
    Eigen::MatrixXcd g(q, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            g(i, j) = real_field ? std::complex<double>(rng.gaussian(), 0.0)
                                 : std::complex<double>(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < q; ++j) {
        std::complex<double> r = R(j, j);
        double a = std::abs(r);
        std::complex<double> phase = (a < 1e-300) ? 1.0 : r / a;
        Q.col(j) *= phase;
    }
    return Q;
}

} // namespace

void QuadratureSpec::validate(Field field, int q) const {
    if (mode == QuadMode::Tensor) {
        if (tensor_order < 2) throw DomainError("tensor order must be at least 2");
        const int d = field_dim(field);
        if (!(q == 1 || (q == 2 && d <= 2)))
            throw RouteError("tensor quadrature is available for rank 1 (any field) and rank 2 with d <= 2; use Monte Carlo");
    } else {
        if (mc_samples < 1) throw DomainError("sample count must be positive");
        if (streams < 1) throw DomainError("stream count must be positive");
    }
}

MatrixF haar_unitary_full(Field field, int q, Rng& rng) {
    if (q < 1 || q > kMaxRank) throw DomainError("rank out of range");
    if (field == Field::H) return quaternion_mgs(ginibre(field, q, rng));
    return MatrixF::from_complex(field, haar_qr_complex(q, rng, field == Field::R));
}

MatrixF haar_unitary_sample(Field field, int q, Rng& rng) {
    if (field != Field::R) return haar_unitary_full(field, q, rng);
    Eigen::MatrixXcd Q = haar_qr_complex(q, rng, true);
    if (Q.determinant().real() < 0) Q.col(q - 1) *= -1.0; // land in SO(q)
    return MatrixF::from_complex(field, Q);
}

BallSample ball_sample(const BCParams& params, Rng& rng) {
    const Field field = params.field;
    const int q = params.q;
    const int d = field_dim(field);
    const double e = params.mu - params.gamma();
    const int D = d * q * q;

    // Plain cube rejection matches the ball density exactly; it is used where
    // the acceptance rate is decent and the weight Delta^e has finite
    // variance.  Otherwise the direction comes from a normalized Gaussian
    // matrix and the radial coordinate (top singular value) from a
    // Beta(D, e+1) tilt; both factors of the proposal density are known, and
    // the resulting weights are bounded near the boundary.
    const bool plain = (D <= 4) && (e > -0.5);

    if (plain) {
        MatrixF w(field, q);
        std::vector<double> sigma;
        for (std::int64_t attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
            if (propose_uniform_ball(field, q, rng, w, sigma))
                return BallSample{w, ball_weight_from_singular_values(sigma, e), sigma};
        }
        throw CapacityError("ball rejection acceptance rate below 1e-6");
    }

    MatrixF g = ginibre(field, q, rng);
    std::vector<double> sigma = singular_spectrum(g);
    double top = sigma.front();
    if (top < 1e-200) throw InvariantViolation("degenerate gaussian proposal");
    double dir_norm = std::sqrt(frobenius_sq(g)) / top;

    std::gamma_distribution<double> ga(static_cast<double>(D), 1.0), gb(e + 1.0, 1.0);
    double x = ga(rng.engine()), y = gb(rng.engine());
    double r = x / (x + y);
    if (r >= 1.0) r = std::nextafter(1.0, 0.0);

    double scale = r / top;
    MatrixF w(field, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) w.at(i, j) = g.at(i, j) * scale;

    // The top singular value equals r by construction; its density factor
    // (1-r^2)^e is cancelled against the radial proposal's (1-r)^e
    // analytically, leaving (1+r)^e.  Rounding in the rescale could otherwise
    // push a singular value to 1.0 and blow up a negative-exponent weight.
    sigma.front() = r;
    double lw = e * std::log1p(r);
    for (std::size_t i = 1; i < sigma.size(); ++i) {
        double s = std::min(sigma[i] * scale, r);
        sigma[i] = s;
        lw += e * std::log((1.0 - s) * (1.0 + s));
    }
    double weight = std::exp(lw) * std::pow(dir_norm, D);
    return BallSample{w, weight, sigma};
}

double kappa(const BCParams& params, const QuadratureSpec& quad, double* err_out) {
    quad.validate(params.field, params.q);
    const double e = params.mu - params.gamma();
    const int d = field_dim(params.field);

    if (quad.mode == QuadMode::Tensor) {
        if (params.q != 1)
            throw RouteError("tensor kappa is available for rank 1 only; use Monte Carlo");
        // kappa = |S^{d-1}| * int_0^1 (1-r^2)^e r^{d-1} dr
        double surf = 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
        double abs_err = 0;
        double radial = tanh_sinh(
            [e, d](double r) { return std::pow(1.0 - r * r, e) * std::pow(r, d - 1); },
            0.0, 1.0, 1e-12, &abs_err);
        if (err_out) *err_out = surf * abs_err;
        return surf * radial;
    }

    struct Partial {
        double sum = 0, sum2 = 0;
        std::int64_t accepted = 0;
    };
    const int D = d * params.q * params.q;
    const double cube_vol = std::pow(2.0, D);
    Partial total = stream_reduce<Partial>(
        quad.mc_samples, quad.streams, quad.seed,
        [&](int, std::int64_t n, Rng& rng) {
            Partial p;
            MatrixF w(params.field, params.q);
            std::vector<double> sigma;
            for (std::int64_t i = 0; i < n; ++i) {
                if (!propose_uniform_ball(params.field, params.q, rng, w, sigma)) continue;
                double v = ball_weight_from_singular_values(sigma, e);
                p.sum += v;
                p.sum2 += v * v;
                ++p.accepted;
            }
            return p;
        },
        [](Partial& a, const Partial& b) {
            a.sum += b.sum;
            a.sum2 += b.sum2;
            a.accepted += b.accepted;
        });

    const double n = static_cast<double>(quad.mc_samples);
    if (total.accepted == 0 || static_cast<double>(total.accepted) / n < 1e-6)
        throw CapacityError("ball rejection acceptance rate below 1e-6");
    double mean = total.sum / n;          // rejected proposals contribute 0
    double mean2 = total.sum2 / n;
    double se = std::sqrt(std::max(0.0, mean2 - mean * mean) / n);
    if (err_out) *err_out = cube_vol * se;
    return cube_vol * mean;
}

double haar_weight(const ChamberPoint& t, const BCParams& params) {
    if (t.rank() != params.q) throw DomainError("point rank does not match parameter rank");
    const double d = params.d();
    const double a = 2.0 * params.mu - d * (params.q - 1) - 1.0;
    const double b = d - 1.0;
    double w = 1.0;
    for (int i = 0; i < params.q; ++i) {
        w *= std::pow(std::abs(std::sinh(t.t[i])), a) *
             std::pow(std::cosh(t.t[i]), b);
    }
    for (int i = 0; i < params.q; ++i)
        for (int j = i + 1; j < params.q; ++j)
            w *= std::pow(std::abs(std::cosh(2 * t.t[i]) - std::cosh(2 * t.t[j])), d);
    return w;
}

void RatioAccum::add(double w, std::complex<double> f) {
    sw += w;
    sw2 += w * w;
    swf_re += w * f.real();
    swf_im += w * f.imag();
    sw2f_re += w * w * f.real();
    sw2f_im += w * w * f.imag();
    sw2f2 += w * w * std::norm(f);
    ++n;
}

void RatioAccum::merge(const RatioAccum& o) {
    sw += o.sw; sw2 += o.sw2;
    swf_re += o.swf_re; swf_im += o.swf_im;
    sw2f_re += o.sw2f_re; sw2f_im += o.sw2f_im;
    sw2f2 += o.sw2f2;
    n += o.n;
}

std::complex<double> RatioAccum::ratio() const {
    if (sw == 0) throw AccuracyError("all importance weights vanished", 0.0, 1.0);
    return {swf_re / sw, swf_im / sw};
}

double RatioAccum::stderr_est() const {
    if (n < 2 || sw == 0) return std::numeric_limits<double>::infinity();
    std::complex<double> r = ratio();
    // var(sum w f / sum w) ~ sum w_i^2 |f_i - r|^2 / (sum w)^2
    double num = sw2f2 - 2.0 * (r.real() * sw2f_re + r.imag() * sw2f_im) +
                 std::norm(r) * sw2;
    return std::sqrt(std::max(0.0, num)) / sw;
}

} // namespace bchyp
