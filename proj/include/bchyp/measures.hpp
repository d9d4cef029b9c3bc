// SPDX-License-Identifier: Apache-2.0
//
// Probability measures: Haar sampling on the compact unitary groups over
// R/C/H, the matrix-ball importance sampler with density Delta(I-w*w)^{mu-gamma},
// its normalization kappa, and the hypergroup Haar weight omega.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "bchyp/fieldalg.hpp"
#include "bchyp/rng.hpp"
#include "bchyp/rootdata.hpp"

namespace bchyp {

enum class QuadMode { Tensor, MC };

struct QuadratureSpec {
    QuadMode mode = QuadMode::Tensor;
    int tensor_order = 64;         // nodes per tensor axis
    std::int64_t mc_samples = 100000;
    std::uint64_t seed = 0;
    int streams = 64;              // independent RNG streams, merged in order

    static QuadratureSpec tensor(int order = 64) {
        QuadratureSpec s;
        s.mode = QuadMode::Tensor;
        s.tensor_order = order;
        return s;
    }
    static QuadratureSpec monte_carlo(std::int64_t n, std::uint64_t seed) {
        QuadratureSpec s;
        s.mode = QuadMode::MC;
        s.mc_samples = n;
        s.seed = seed;
        return s;
    }
    // Tensor rules exist for q = 1 (any d) and q = 2 with d <= 2; MC always.
    void validate(Field field, int q) const;
};

struct BallSample {
    MatrixF w;
    double weight;                 // Delta(I-w*w)^{mu-gamma} / proposal density
    std::vector<double> sigma;     // singular values of w, descending
};

// Haar-distributed element of the identity component: SO(q), U(q), Sp(q).
MatrixF haar_unitary_sample(Field field, int q, Rng& rng);
// Haar on the full unitary group (O(q) for R); the group-case oracle
// integrates over U(p,F) which is disconnected for R.
MatrixF haar_unitary_full(Field field, int q, Rng& rng);

// One importance sample of the ball measure.  Uniform cube-rejection proposal
// with weight Delta(I-w*w)^{mu-gamma}; for mu <= gamma - 1/2 the radial
// coordinate (top singular value) is importance-tilted toward the boundary so
// that the weights keep finite variance.
BallSample ball_sample(const BCParams& params, Rng& rng);

// kappa = integral of Delta(I-w*w)^{mu-gamma} over the ball.
// Tensor mode: radial quadrature (rank 1).  MC mode: cube rejection estimate.
double kappa(const BCParams& params, const QuadratureSpec& quad, double* err_out = nullptr);

// Density of the hypergroup Haar measure on the chamber (constant fixed to 1):
// prod_i |sinh t_i|^{2mu-d(q-1)-1} |cosh t_i|^{d-1} * prod_{i<j} |cosh 2t_i - cosh 2t_j|^d.
double haar_weight(const ChamberPoint& t, const BCParams& params);

// Splits `total` samples into `streams` chunks, calls
// body(stream_index, chunk_size, rng) for each, and merges the returned
// partials in stream order with merge(accum, partial).  Deterministic for a
// given (seed, streams) pair regardless of execution interleaving.
template <typename Partial>
Partial stream_reduce(std::int64_t total, int streams, std::uint64_t seed,
                      const std::function<Partial(int, std::int64_t, Rng&)>& body,
                      const std::function<void(Partial&, const Partial&)>& merge) {
    Partial accum{};
    std::int64_t base = total / streams, extra = total % streams;
    for (int s = 0; s < streams; ++s) {
        std::int64_t n = base + (s < extra ? 1 : 0);
        if (n == 0) continue;
        Rng rng(seed, static_cast<std::uint64_t>(s));
        Partial part = body(s, n, rng);
        merge(accum, part);
    }
    return accum;
}

// Self-normalized ratio estimator sum(w f)/sum(w) with delta-method standard
// error, accumulated over complex-valued f.
struct RatioAccum {
    double sw = 0, sw2 = 0;
    double swf_re = 0, swf_im = 0;
    double sw2f_re = 0, sw2f_im = 0;
    double sw2f2 = 0; // sum w^2 |f|^2
    std::int64_t n = 0;

    void add(double w, std::complex<double> f);
    void merge(const RatioAccum& o);
    std::complex<double> ratio() const;
    double stderr_est() const;
};

} // namespace bchyp
