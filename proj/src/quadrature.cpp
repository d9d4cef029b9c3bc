// SPDX-License-Identifier: Apache-2.0

#include "bchyp/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "bchyp/errors.hpp"

namespace bchyp {

namespace {

// Recurrence coefficients (monic form) for the Jacobi weight (1-x)^a (1+x)^b.
void jacobi_recurrence(int n, double a, double b, std::vector<double>& alpha,
                       std::vector<double>& beta) {
    alpha.resize(static_cast<size_t>(n));
    beta.resize(static_cast<size_t>(n));
    double ab = a + b;
    alpha[0] = (b - a) / (ab + 2.0);
    beta[0] = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                       std::lgamma(ab + 2.0)); // zeroth moment
    for (int k = 1; k < n; ++k) {
        double k2ab = 2.0 * k + ab;
        alpha[static_cast<size_t>(k)] =
            (b * b - a * a) / (k2ab * (k2ab + 2.0));
        if (k == 1) {
            beta[1] = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        } else {
            beta[static_cast<size_t>(k)] =
                4.0 * k * (k + a) * (k + b) * (k + ab) /
                (k2ab * k2ab * (k2ab + 1.0) * (k2ab - 1.0));
        }
    }
}

} // namespace

Quad1D gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw DomainError("quadrature order must be >= 1");
    if (a <= -1.0 || b <= -1.0)
        throw DomainError("Jacobi exponents must exceed -1");

    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, Quad1D> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, a, b});
        if (it != cache.end()) return it->second;
    }

    std::vector<double> alpha, beta;
    jacobi_recurrence(n, a, b, alpha, beta);

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = alpha[static_cast<size_t>(i)];
        if (i + 1 < n) {
            double off = std::sqrt(beta[static_cast<size_t>(i + 1)]);
            J(i, i + 1) = off;
            J(i + 1, i) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw AccuracyError("Golub-Welsch eigensolve failed", 0.0, 1.0);

    Quad1D q;
    q.x.resize(static_cast<size_t>(n));
    q.w.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        q.x[static_cast<size_t>(i)] = es.eigenvalues()(i);
        double v = es.eigenvectors()(0, i);
        q.w[static_cast<size_t>(i)] = beta[0] * v * v;
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(std::make_tuple(n, a, b), q);
    }
    return q;
}

Quad1D gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

Quad1D map_to_interval(const Quad1D& q, double lo, double hi) {
    Quad1D out = q;
    double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (size_t i = 0; i < out.x.size(); ++i) {
        out.x[i] = mid + half * out.x[i];
        out.w[i] *= half;
    }
    return out;
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double tol, double* err_out) {
    // Map (a,b) to (-1,1); abscissas x = tanh((pi/2) sinh(u)).
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    const double umax = 3.8; // tanh((pi/2) sinh(3.8)) is 1 - ~1e-60
    auto g = [&](double u) {
        double w = M_PI_2 * std::sinh(std::abs(u));
        // 1 - |x| without cancellation; x = tanh(w) loses the endpoint gap.
        double comp = 2.0 / (std::exp(2.0 * w) + 1.0);
        double dxdu = M_PI_2 * std::cosh(u) / std::pow(std::cosh(w), 2);
        double t = u >= 0 ? b - half * comp : a + half * comp;
        if (t <= a || t >= b) return 0.0; // underflowed to an endpoint
        double fv = f(t);
        return std::isfinite(fv) ? fv * dxdu * half : 0.0;
    };

    double h = 1.0;
    // Level 0 takes every integer abscissa; later levels add only the odd
    // multiples of the halved step, which nest inside this set.
    double sum = g(0.0);
    for (double u = 1.0; u <= umax; u += 1.0) sum += g(u) + g(-u);
    double prev = sum * h;
    double integral = prev;
    double err = std::abs(integral);
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        // Add the new abscissas (odd multiples of h).
        double add = 0.0;
        for (double u = h; u <= umax; u += 2.0 * h) add += g(u) + g(-u);
        sum = sum + add;
        integral = sum * h;
        err = std::abs(integral - prev);
        prev = integral;
        if (level >= 3 && err <= tol * std::max(1.0, std::abs(integral))) {
            if (err_out) *err_out = err;
            return integral;
        }
    }
    if (err_out) *err_out = err;
    if (err > tol * std::max(1.0, std::abs(integral)))
        throw AccuracyError("tanh-sinh refinement stalled", integral, err);
    return integral;
}

namespace {

struct Panel {
    double a, b, value, error;
};

void eval_panel(const std::function<double(double)>& f, Panel& p) {
    static const Quad1D g7 = gauss_legendre(7);
    static const Quad1D g15 = gauss_legendre(15);
    double half = 0.5 * (p.b - p.a), mid = 0.5 * (p.a + p.b);
    double v7 = 0, v15 = 0;
    for (size_t i = 0; i < g7.size(); ++i) v7 += g7.w[i] * f(mid + half * g7.x[i]);
    for (size_t i = 0; i < g15.size(); ++i) v15 += g15.w[i] * f(mid + half * g15.x[i]);
    p.value = v15 * half;
    p.error = std::abs(v15 - v7) * half;
}

} // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double tol, double* err_out) {
    if (!(b > a)) return 0.0;
    std::vector<Panel> panels;
    Panel root{a, b, 0, 0};
    eval_panel(f, root);
    panels.push_back(root);
    const size_t max_panels = 4000;
    while (true) {
        double total_err = 0, total_val = 0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total_err += panels[i].error;
            total_val += panels[i].value;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        // tol acts as an absolute target for O(1) integrals and gracefully
        // becomes relative when the integral itself is large.
        if (total_err <= tol * std::max(1.0, std::abs(total_val))) {
            if (err_out) *err_out = total_err;
            return total_val;
        }
        if (panels.size() >= max_panels)
            throw AccuracyError("adaptive quadrature did not reach tolerance", total_val,
                                total_err);
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        Panel left{p.a, mid, 0, 0}, right{mid, p.b, 0, 0};
        eval_panel(f, left);
        eval_panel(f, right);
        panels[worst] = left;
        panels.push_back(right);
    }
}

} // namespace bchyp
