// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <vector>

#include "bchyp/errors.hpp"
#include "bchyp/measures.hpp"
#include "bchyp/quadrature.hpp"
#include "bchyp/rng.hpp"
#include "bchyp/rootdata.hpp"

using namespace bchyp;

namespace {

// Selberg's integral over [0,1]^2 with weight x^(a-1) (1-x)^(b-1) and
// repulsion |x1-x2|^(2g); expected product moments are Gamma-factor ratios.
double selberg_product_moment(double a, double b, double g, int k) {
    double r = 1.0;
    for (int j = 0; j <= 1; ++j)
        for (int m = 0; m < k; ++m)
            r *= (a + m + j * g) / (a + b + m + (1 + j) * g);
    return r;
}

} // namespace

TEST_CASE("haar unitary statistics") {
    Rng rng(101, 0);

    // SO(2): determinant exactly +1, uniform angle
    double mc = 0;
    for (int n = 0; n < 20000; ++n) {
        MatrixF u = haar_unitary_sample(Field::R, 2, rng);
        double det = u.at(0, 0).w * u.at(1, 1).w - u.at(0, 1).w * u.at(1, 0).w;
        CHECK(det == doctest::Approx(1.0).epsilon(1e-10));
        mc += u.at(0, 0).w;
    }
    CHECK(std::abs(mc / 20000) <= 4.0 / std::sqrt(20000.0));

    // O(2): both determinant signs occur with frequency ~1/2
    int neg = 0;
    for (int n = 0; n < 20000; ++n) {
        MatrixF u = haar_unitary_full(Field::R, 2, rng);
        double det = u.at(0, 0).w * u.at(1, 1).w - u.at(0, 1).w * u.at(1, 0).w;
        CHECK(std::abs(std::abs(det) - 1.0) <= 1e-10);
        if (det < 0) ++neg;
    }
    CHECK(std::abs(neg / 20000.0 - 0.5) <= 4.0 * 0.5 / std::sqrt(20000.0));

    // U(2): unitary, E|u_00|^2 = 1/2
    double m2 = 0;
    for (int n = 0; n < 20000; ++n) {
        MatrixF u = haar_unitary_sample(Field::C, 2, rng);
        CHECK(u.is_unitary(1e-10));
        m2 += u.at(0, 0).norm2();
    }
    CHECK(std::abs(m2 / 20000 - 0.5) <= 0.02);

    // Sp(2): quaternionic unitarity, E|u_00|^2 = 1/2
    double h2 = 0;
    for (int n = 0; n < 5000; ++n) {
        MatrixF u = haar_unitary_sample(Field::H, 2, rng);
        CHECK(u.is_unitary(1e-10));
        h2 += u.at(0, 0).norm2();
    }
    CHECK(std::abs(h2 / 5000 - 0.5) <= 0.04);
}

TEST_CASE("haar unitary is reproducible per seed") {
    Rng a(7, 3), b(7, 3);
    for (int n = 0; n < 10; ++n) {
        MatrixF ua = haar_unitary_sample(Field::C, 2, a);
        MatrixF ub = haar_unitary_sample(Field::C, 2, b);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                CHECK(ua.at(i, j).w == ub.at(i, j).w);
                CHECK(ua.at(i, j).x == ub.at(i, j).x);
            }
    }
}

TEST_CASE("quadrature spec validation") {
    CHECK_NOTHROW(QuadratureSpec::tensor(32).validate(Field::R, 1));
    CHECK_NOTHROW(QuadratureSpec::tensor(32).validate(Field::H, 1));
    CHECK_NOTHROW(QuadratureSpec::tensor(32).validate(Field::R, 2));
    CHECK_NOTHROW(QuadratureSpec::tensor(32).validate(Field::C, 2));
    CHECK_THROWS_AS(QuadratureSpec::tensor(32).validate(Field::H, 2), RouteError);
    CHECK_THROWS_AS(QuadratureSpec::tensor(32).validate(Field::R, 3), RouteError);
    CHECK_NOTHROW(QuadratureSpec::monte_carlo(1000, 1).validate(Field::H, 2));
}

TEST_CASE("rank-1 ball sampler matches the radial density") {
    // plain rejection path: d = 2, e = 0.5; weighted radial CDF versus the
    // closed form 1 - (1-r^2)^{e+1} normalized on [0,1] ... density
    // (1-r^2)^e r^{d-1} dr.
    BCParams p = derive_params(Field::C, 1, 2.5); // gamma = 2, e = 0.5
    Rng rng(55, 0);
    const int N = 200000;
    std::vector<double> grid{0.2, 0.4, 0.6, 0.8, 0.9};
    std::vector<double> below(grid.size(), 0.0);
    double wsum = 0;
    for (int n = 0; n < N; ++n) {
        BallSample b = ball_sample(p, rng);
        wsum += b.weight;
        for (size_t k = 0; k < grid.size(); ++k)
            if (b.sigma[0] <= grid[k]) below[k] += b.weight;
    }
    for (size_t k = 0; k < grid.size(); ++k) {
        double r = grid[k];
        // int_0^r (1-x^2)^{1/2} x dx / int_0^1 = 1 - (1-r^2)^{3/2}
        double ref = 1.0 - std::pow(1.0 - r * r, 1.5);
        CHECK(std::abs(below[k] / wsum - ref) <= 1e-2);
    }
}

TEST_CASE("rank-1 quaternion sampler (importance path) matches radial density") {
    // D = 4 with e = -0.8 <= -1/2 forces the direction/radius decomposition.
    BCParams p = derive_params(Field::H, 1, 2.2); // gamma = 3, e = -0.8
    Rng rng(56, 0);
    const int N = 200000;
    RatioAccum acc;
    for (int n = 0; n < N; ++n) {
        BallSample b = ball_sample(p, rng);
        double r = b.sigma[0];
        acc.add(b.weight, std::complex<double>(r * r, 0));
    }
    // reference: under (1-r^2)^e r^3 dr the variable x = r^2 is
    // Beta(2, e+1), so E[r^2] = 2 / (3 + e) exactly.
    double ref = 2.0 / (3.0 - 0.8);
    CHECK(std::abs(acc.ratio().real() - ref) <= 4.0 * acc.stderr_est() + 1e-4);
}

TEST_CASE("rank-2 samplers match Selberg moments") {
    struct Case {
        Field f;
        double mu;
    };
    // R mu=3: plain rejection; R mu=1.8 (e=-0.7) and C mu=3.4 (e=-0.6):
    // importance path with D = 4 resp. 8.
    for (Case cse : {Case{Field::R, 3.0}, Case{Field::R, 1.8}, Case{Field::C, 3.4}}) {
        BCParams p = derive_params(cse.f, 2, cse.mu);
        double d = field_dim(cse.f);
        double e = p.mu - p.gamma();
        Rng rng(57, 0);
        const int N = 150000;
        RatioAccum m1, m2;
        for (int n = 0; n < N; ++n) {
            BallSample b = ball_sample(p, rng);
            double x1 = b.sigma[0] * b.sigma[0], x2 = b.sigma[1] * b.sigma[1];
            m1.add(b.weight, std::complex<double>(x1 * x2, 0));
            m2.add(b.weight, std::complex<double>(x1 * x1 * x2 * x2, 0));
        }
        // The squared singular values of a square matrix over a field of real
        // dimension d carry the Jacobian x^{d/2-1} |x1-x2|^d, so the weighted
        // law is Selberg with a = d/2, b = e+1, g = d/2.
        double r1 = selberg_product_moment(d / 2.0, e + 1.0, d / 2.0, 1);
        double r2 = selberg_product_moment(d / 2.0, e + 1.0, d / 2.0, 2);
        INFO("field d=", d, " mu=", cse.mu);
        CHECK(std::abs(m1.ratio().real() - r1) <= 4.0 * m1.stderr_est() + 1e-4);
        CHECK(std::abs(m2.ratio().real() - r2) <= 4.0 * m2.stderr_est() + 1e-4);
    }
}

TEST_CASE("kappa closed forms") {
    double err = 0;

    // d = 1: kappa = sqrt(pi) Gamma(mu - 1/2) / Gamma(mu)
    BCParams p1 = derive_params(Field::R, 1, 2.2);
    double k1 = kappa(p1, QuadratureSpec::tensor(64), &err);
    double ref1 = std::sqrt(M_PI) * std::tgamma(1.7) / std::tgamma(2.2);
    CHECK(std::abs(k1 - ref1) / ref1 <= 1e-10);

    // d = 2: kappa = pi / (mu - 1)
    BCParams p2 = derive_params(Field::C, 1, 2.5);
    double k2 = kappa(p2, QuadratureSpec::tensor(64), &err);
    CHECK(std::abs(k2 - M_PI / 1.5) / (M_PI / 1.5) <= 1e-10);

    // d = 4: kappa = pi^2 / ((mu-1)(mu-2))
    BCParams p4 = derive_params(Field::H, 1, 3.2);
    double k4 = kappa(p4, QuadratureSpec::tensor(64), &err);
    double ref4 = M_PI * M_PI / (2.2 * 1.2);
    CHECK(std::abs(k4 - ref4) / ref4 <= 1e-10);

    // Monte Carlo agrees within combined tolerance
    double kmc = kappa(p2, QuadratureSpec::monte_carlo(200000, 4), &err);
    CHECK(std::abs(kmc - M_PI / 1.5) <= 4.0 * err + 1e-2 * (M_PI / 1.5));

    // no absolute tensor normalization at rank 2
    BCParams pr2 = derive_params(Field::R, 2, 2.6);
    CHECK_THROWS_AS(kappa(pr2, QuadratureSpec::tensor(32)), RouteError);

    // rank-2 MC is seed-stable within its own error bars
    double e1 = 0, e2 = 0;
    double ka = kappa(pr2, QuadratureSpec::monte_carlo(150000, 11), &e1);
    double kb = kappa(pr2, QuadratureSpec::monte_carlo(150000, 12), &e2);
    CHECK(ka > 0);
    CHECK(std::abs(ka - kb) <= 4.0 * std::sqrt(e1 * e1 + e2 * e2));
}

TEST_CASE("haar weight density") {
    BCParams p = derive_params(Field::C, 1, 2.0);
    ChamberPoint t({0.8});
    double expect = std::pow(std::sinh(0.8), 3.0) * std::cosh(0.8);
    CHECK(haar_weight(t, p) == doctest::Approx(expect).epsilon(1e-12));

    // ratio against the root-product form stays constant in t
    BCParams p2 = derive_params(Field::H, 2, 7.5);
    auto root_product = [&](const ChamberPoint& x) {
        double k1 = p2.k1(), k2 = p2.k2(), k3 = p2.k3();
        double acc = 1.0;
        for (int i = 0; i < 2; ++i) {
            acc *= std::pow(std::abs(2 * std::sinh(x.t[i])), 2 * k1);
            acc *= std::pow(std::abs(2 * std::sinh(2 * x.t[i])), 2 * k2);
        }
        acc *= std::pow(std::abs(2 * std::sinh(x.t[0] + x.t[1])), 2 * k3);
        acc *= std::pow(std::abs(2 * std::sinh(x.t[0] - x.t[1])), 2 * k3);
        return acc;
    };
    Rng rng(77, 0);
    double ratio0 = 0;
    for (int n = 0; n < 200; ++n) {
        double a = 0.1 + 2.0 * rng.uniform();
        double b = 0.05 + (a - 0.06) * rng.uniform();
        ChamberPoint x({a, b});
        double r = haar_weight(x, p2) / root_product(x);
        if (n == 0)
            ratio0 = r;
        else
            CHECK(r == doctest::Approx(ratio0).epsilon(1e-8));
    }
}

TEST_CASE("stream reduce is deterministic and order-stable") {
    auto run = [&]() {
        struct P {
            double s = 0;
        };
        P total = stream_reduce<P>(
            100000, 16, 99,
            [](int, std::int64_t n, Rng& rng) {
                P p;
                for (std::int64_t i = 0; i < n; ++i) p.s += rng.uniform();
                return p;
            },
            [](P& a, const P& b) { a.s += b.s; });
        return total.s;
    };
    double a = run();
    double b = run();
    CHECK(a == b);
}

TEST_CASE("ratio accumulator standard error is calibrated") {
    // iid f with unit weights: stderr matches the classical sample formula
    Rng rng(123, 0);
    RatioAccum acc;
    const int N = 50000;
    std::vector<double> vals(N);
    for (int i = 0; i < N; ++i) {
        vals[i] = rng.gaussian() * 2.0 + 1.0;
        acc.add(1.0, std::complex<double>(vals[i], 0));
    }
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= N;
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean);
    double se = std::sqrt(var) / N; // sqrt(var/N)/sqrt(N) * sqrt(N) ... = sd/sqrt(N)
    CHECK(acc.ratio().real() == doctest::Approx(mean).epsilon(1e-12));
    CHECK(acc.stderr_est() == doctest::Approx(se).epsilon(1e-6));
}
