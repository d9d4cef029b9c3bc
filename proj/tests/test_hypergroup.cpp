// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <complex>

#include "bchyp/errors.hpp"
#include "bchyp/hypergroup.hpp"

using namespace bchyp;

namespace {

ChamberFn smooth1(double freq) {
    return [freq](const ChamberPoint& x) {
        return cplx(std::exp(-x.t[0] * x.t[0]) * std::cos(freq * x.t[0]), 0);
    };
}

} // namespace

TEST_CASE("convolution is exactly normalized and neutral") {
    ChamberFn one = [](const ChamberPoint&) { return cplx(1, 0); };
    for (auto [field, mu] : {std::pair{Field::R, 1.2}, std::pair{Field::C, 2.5},
                             std::pair{Field::H, 2.6}}) {
        BCParams p = derive_params(field, 1, mu);
        ChamberPoint t({0.9}), s({1.4}), zero({0.0});

        CHECK(std::abs(convolve_point(t, s, one, p, QuadratureSpec::tensor(24)).value -
                       1.0) <= 1e-14);
        CHECK(std::abs(convolve_point(t, s, one, p,
                                      QuadratureSpec::monte_carlo(20000, 5)).value -
                       1.0) <= 1e-14);

        // delta_0 is neutral: every kernel node degenerates to s
        ChamberFn f = smooth1(2.0);
        cplx fs = f(s);
        CHECK(std::abs(convolve_point(zero, s, f, p, QuadratureSpec::tensor(24)).value -
                       fs) <= 1e-13);
        CHECK(std::abs(convolve_point(zero, s, f, p,
                                      QuadratureSpec::monte_carlo(5000, 5)).value -
                       fs) <= 1e-13);
    }
}

TEST_CASE("rank-1 tensor rule agrees with Monte Carlo") {
    for (auto [field, mu] : {std::pair{Field::R, 1.2}, std::pair{Field::C, 2.5},
                             std::pair{Field::H, 2.6}}) {
        BCParams p = derive_params(field, 1, mu);
        ChamberPoint t({0.9}), s({1.4});
        ChamberFn f = smooth1(3.0);
        ConvolutionEstimate a = convolve_point(t, s, f, p, QuadratureSpec::tensor(32));
        ConvolutionEstimate b =
            convolve_point(t, s, f, p, QuadratureSpec::monte_carlo(60000, 9));
        INFO("mu=", mu);
        CHECK(std::abs(a.value - b.value) <= 4 * b.error + 3 * a.error + 1e-6);
    }
}

TEST_CASE("rank-1 tensor rule converges with order") {
    BCParams p = derive_params(Field::C, 1, 2.3);
    ChamberPoint t({1.1}), s({0.8});
    ChamberFn f = chamber_profile("shell").fn;
    double v8 = convolve_point(t, s, f, p, QuadratureSpec::tensor(8)).value.real();
    double v16 = convolve_point(t, s, f, p, QuadratureSpec::tensor(16)).value.real();
    double v64 = convolve_point(t, s, f, p, QuadratureSpec::tensor(64)).value.real();
    CHECK(std::abs(v16 - v64) <= 0.2 * std::abs(v8 - v64) + 1e-12);
}

TEST_CASE("commutativity is exact for the tensor rule") {
    BCParams p = derive_params(Field::H, 1, 2.8);
    ChamberPoint t({0.7}), s({1.9});
    ChamberFn f = smooth1(1.3);
    cplx a = convolve_point(t, s, f, p, QuadratureSpec::tensor(28)).value;
    cplx b = convolve_point(s, t, f, p, QuadratureSpec::tensor(28)).value;
    CHECK(std::abs(a - b) <= 1e-13);
}

TEST_CASE("rank-2 tensor rule agrees with Monte Carlo") {
    // e > -1/2 (plain sampling) and e <= -1/2 (boundary-tilted sampling)
    for (double mu : {2.2, 1.7}) {
        BCParams p = derive_params(Field::R, 2, mu);
        ChamberPoint t({0.7, 0.3}), s({1.1, 0.4});
        ChamberFn f = chamber_profile("gauss").fn;
        ConvolutionEstimate a = convolve_point(t, s, f, p, QuadratureSpec::tensor(20));
        ConvolutionEstimate b =
            convolve_point(t, s, f, p, QuadratureSpec::monte_carlo(120000, 21));
        INFO("mu=", mu);
        CHECK(std::abs(a.value - b.value) <= 4 * b.error + 3 * a.error + 1e-5);
    }
}

TEST_CASE("no tensor kernel at rank 2 over C or H") {
    BCParams pc = derive_params(Field::C, 2, 3.5);
    ChamberPoint t({0.7, 0.3}), s({1.1, 0.4});
    ChamberFn f = chamber_profile("gauss").fn;
    CHECK_THROWS_AS(convolve_point(t, s, f, pc, QuadratureSpec::tensor(16)), RouteError);
    BCParams ph = derive_params(Field::H, 2, 7.0);
    CHECK_THROWS_AS(convolve_point(t, s, f, ph, QuadratureSpec::tensor(16)), RouteError);
    // MC succeeds on both
    CHECK(std::isfinite(
        convolve_point(t, s, f, pc, QuadratureSpec::monte_carlo(2000, 3)).value.real()));
}

TEST_CASE("translate evaluates the convolution") {
    BCParams p = derive_params(Field::C, 1, 2.1);
    ChamberPoint t({0.8}), s({0.5}), zero({0.0});
    ChamberFn f = smooth1(2.2);
    QuadratureSpec q = QuadratureSpec::tensor(24);
    ChamberFn tf = translate(f, s, p, q);
    CHECK(tf(t) == convolve_point(t, s, f, p, q).value);
    ChamberFn t0 = translate(f, zero, p, q);
    CHECK(std::abs(t0(t) - f(t)) <= 1e-13);
}

TEST_CASE("product formula in rank 1") {
    struct Case {
        Field field;
        double mu;
        cplx lam;
    };
    for (const Case& c : {Case{Field::R, 1.2, cplx(0.9, 0)},
                          Case{Field::C, 2.5, cplx(1.3, 0.4)},
                          Case{Field::H, 2.7, cplx(0.8, -0.6)}}) {
        BCParams p = derive_params(c.field, 1, c.mu);
        ProductCheck pc = verify_product(SpectralParam::single(c.lam), ChamberPoint({0.9}),
                                         ChamberPoint({1.4}), p, QuadratureSpec::tensor(48));
        INFO("mu=", c.mu);
        CHECK(pc.residual <= 3 * pc.error + 1e-7);
    }
}

TEST_CASE("product formula in rank 2 on the polynomial lattice") {
    BCParams p = derive_params(Field::R, 2, 2.2);
    std::vector<double> rho = p.rho();
    // phi convention: lambda = -i (2 nu + rho)
    SpectralParam lam({cplx(0, -(2.0 + rho[0])), cplx(0, -rho[1])});
    ChamberPoint t({0.7, 0.3}), s({1.1, 0.4});

    ProductCheck tens = verify_product(lam, t, s, p, QuadratureSpec::tensor(20));
    CHECK(tens.residual <= 3 * tens.error + 1e-6);

    ProductCheck mc = verify_product(lam, t, s, p, QuadratureSpec::monte_carlo(200000, 31));
    CHECK(mc.residual <= 4 * mc.error + 1e-3);

    // off-lattice spectral parameters have no exact higher-rank route
    SpectralParam bad({cplx(0, -1.234), cplx(0, -0.567)});
    CHECK_THROWS_AS(verify_product(bad, t, s, p, QuadratureSpec::tensor(16)), RouteError);
}

TEST_CASE("hypergroup axioms in rank 1") {
    BCParams p = derive_params(Field::C, 1, 2.5);
    ChamberFn f = smooth1(1.7);
    AxiomReport rep = verify_axioms(ChamberPoint({0.4}), ChamberPoint({0.8}),
                                    ChamberPoint({1.2}), f, p, QuadratureSpec::tensor(24));
    CHECK(rep.commutativity <= 3 * rep.commutativity_budget + 1e-10);
    CHECK(rep.associativity <= 3 * rep.associativity_budget + 1e-6);
    CHECK(rep.neutrality <= 1e-12);
    CHECK(rep.support_violations == 0);
    CHECK(rep.support_samples >= 100000);
    CHECK(rep.involution_min <= 1e-6);
}

TEST_CASE("hypergroup axioms in rank 2 via sampling") {
    BCParams p = derive_params(Field::R, 2, 2.0);
    ChamberFn f = chamber_profile("gauss").fn;
    AxiomReport rep =
        verify_axioms(ChamberPoint({0.5, 0.2}), ChamberPoint({0.8, 0.3}),
                      ChamberPoint({1.2, 0.6}), f, p, QuadratureSpec::monte_carlo(40000, 13));
    CHECK(rep.commutativity <= 4 * rep.commutativity_budget + 1e-3);
    CHECK(rep.associativity <= 4 * rep.associativity_budget + 5e-3);
    CHECK(rep.neutrality <= 1e-12);
    CHECK(rep.support_violations == 0);
    CHECK(rep.involution_min <= 1e-6);
}

TEST_CASE("haar measure is translation invariant") {
    // The bump vanishes identically at its support edge, so no truncation
    // mass leaks against the exponentially growing radial weight.
    ChamberProfile bump = chamber_profile("bump");
    BCParams p1 = derive_params(Field::C, 1, 2.5);
    HaarReport h1 = verify_haar(bump.fn, bump.support,
                                ChamberPoint({0.7}), p1, QuadratureSpec::tensor(24));
    CHECK(h1.rel_diff <= std::max(1e-3, 3 * h1.budget));

    BCParams p2 = derive_params(Field::R, 2, 2.3);
    HaarReport h2 = verify_haar(bump.fn, bump.support,
                                ChamberPoint({0.6, 0.2}), p2,
                                QuadratureSpec::monte_carlo(200000, 41));
    CHECK(h2.rel_diff <= std::max(3e-2, 5 * h2.budget));

    BCParams p3 = derive_params(Field::R, 3, 3.0);
    CHECK_THROWS_AS(verify_haar(bump.fn, 5.5, ChamberPoint({0.3, 0.2, 0.1}),
                                p3, QuadratureSpec::monte_carlo(1000, 1)),
                    RouteError);
}

TEST_CASE("kernel reduction matches the classical parametrization") {
    SpectralParam lam = SpectralParam::single(cplx(0.8, 0.3));
    ChamberPoint t({0.6}), s({1.1});

    FjkReport r1 = verify_fjk_rank1(lam, t, s, derive_params(Field::R, 1, 1.3));
    CHECK(r1.residual <= 1e-8);
    FjkReport r2 = verify_fjk_rank1(lam, t, s, derive_params(Field::C, 1, 2.2));
    CHECK(r2.residual <= 1e-8);
    FjkReport r4 = verify_fjk_rank1(lam, t, s, derive_params(Field::H, 1, 2.8));
    CHECK(r4.residual <= 4 * r4.error + 1e-3);

    CHECK_THROWS_AS(verify_fjk_rank1(lam, ChamberPoint({0.6, 0.2}), ChamberPoint({1.1, 0.3}),
                                     derive_params(Field::R, 2, 2.2)),
                    DomainError);
}

TEST_CASE("compact truncation oracle at integral parameters") {
    BCParams p = derive_params_from_p(Field::C, 1, 4); // mu = 4
    ChamberFn f = chamber_profile("gauss").fn;
    GroupOracleReport rep = group_case_oracle(4, ChamberPoint({0.9}), ChamberPoint({1.4}), f,
                                              p, QuadratureSpec::monte_carlo(120000, 57));
    CHECK(rep.diff <= 4 * rep.combined_se + 5e-4);

    // mu must match p d/2
    BCParams wrong = derive_params(Field::C, 1, 3.0);
    CHECK_THROWS_AS(group_case_oracle(4, ChamberPoint({0.9}), ChamberPoint({1.4}), f, wrong,
                                      QuadratureSpec::monte_carlo(1000, 1)),
                    DomainError);
}

TEST_CASE("chamber profiles") {
    for (const char* name : {"gauss", "bump", "shell", "coscap"}) {
        ChamberProfile pr = chamber_profile(name);
        CHECK(pr.support > 0);
        CHECK(pr.name == name);
    }
    CHECK(chamber_profile("gauss").fn(ChamberPoint({0.0})).real() ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chamber_profile("bump").fn(ChamberPoint({0.0, 0.0})).real() ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chamber_profile("shell").fn(ChamberPoint({1.0})).real() ==
          doctest::Approx(1.0).epsilon(1e-14));
    // bump vanishes outside its support radius
    CHECK(std::abs(chamber_profile("bump").fn(ChamberPoint({2.5})).real()) == 0.0);
    CHECK_THROWS_AS(chamber_profile("sombrero"), DomainError);
}
