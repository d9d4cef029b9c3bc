// SPDX-License-Identifier: Apache-2.0
//
// Root system data of type BC_q in the doubled normalization: multiplicity
// triple k = (k1,k2,k3) parametrized by mu, the shift rho, the hyperoctahedral
// Weyl group, orbit-hull membership, and dominant-weight bookkeeping.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "bchyp/fieldalg.hpp"

namespace bchyp {

struct BCParams {
    Field field = Field::R;
    int q = 1;
    double mu = 1.0;

    double d() const { return field_dim(field); }
    // k on the three positive root classes 2e_i, 4e_i, 2(e_i +- e_j).
    double k1() const { return mu - d() * q / 2.0; }
    double k2() const { return (d() - 1) / 2.0; }
    double k3() const { return d() / 2.0; }
    double gamma() const { return d() * (q - 0.5) + 1.0; }
    std::vector<double> rho() const; // rho_i = (mu - dq/2 + d - 1) + d(q - i), descending
    ChamberPoint rho_point() const { return ChamberPoint(rho()); }
};

// Validates mu > gamma - 1 and the rank cap.
BCParams derive_params(Field field, int q, double mu);
// Geometric case mu = p*d/2 (integral parameter p).
BCParams derive_params_from_p(Field field, int q, int p);

// Complex spectral parameter in the phi convention: phi_lambda = F(i*lambda).
struct SpectralParam {
    std::vector<std::complex<double>> lam;

    SpectralParam() = default;
    explicit SpectralParam(std::vector<std::complex<double>> v) : lam(std::move(v)) {}
    static SpectralParam single(std::complex<double> z) { return SpectralParam({z}); }

    int rank() const { return static_cast<int>(lam.size()); }
    SpectralParam conj() const;
    std::vector<double> real_part() const;
    std::vector<double> imag_part() const;
    SpectralParam times_i() const; // multiply each coordinate by i
};

// Hyperoctahedral group: signed permutations of q coordinates.
class WeylGroupBC {
public:
    struct Element {
        std::vector<int> perm;   // image positions
        std::vector<int> sign;   // +1 / -1 per coordinate
        template <typename T>
        std::vector<T> apply(const std::vector<T>& x) const {
            std::vector<T> y(x.size());
            for (size_t i = 0; i < x.size(); ++i)
                y[i] = static_cast<double>(sign[i]) * x[perm[i]];
            return y;
        }
        Element compose(const Element& other) const; // this after other
    };

    explicit WeylGroupBC(int q);
    int rank() const { return q_; }
    std::size_t order() const; // 2^q q!

    // Enumerates every element exactly once (no materialized storage needed).
    void for_each(const std::function<void(const Element&)>& fn) const;

    // Materialized element list; capacity error for q > 4.
    const std::vector<Element>& elements() const;

private:
    int q_;
    std::vector<Element> elems_; // filled for q <= 4
};

// Distinct images of x under signed permutations, deduplicated at 1e-12.
std::vector<std::vector<std::complex<double>>> weyl_orbit(
    const std::vector<std::complex<double>>& x);
std::vector<std::vector<double>> weyl_orbit(const std::vector<double>& x);

// x in co(W.rho), by the sorted-absolute-value partial-sum criterion.
// Points within `slack` of the boundary count as members.
bool co_hull_member(const std::vector<double>& x, const std::vector<double>& rho,
                    double slack = 1e-9);
// Signed distance to the hull boundary: min over m of (rho_1+..+rho_m) minus
// the sum of the m largest |x_i|; >= 0 inside.
double co_hull_slack(const std::vector<double>& x, const std::vector<double>& rho);
// Oracle: enumerate all w in W and all extreme-ray functionals u_m = e_1+..+e_m.
bool co_hull_member_bruteforce(const std::vector<double>& x, const std::vector<double>& rho,
                               double slack = 1e-9);

// Membership in the dual space: conj(lambda) in W.lambda and Im(lambda) in co(W.rho).
bool in_dual(const SpectralParam& lambda, const BCParams& params);

// ---- dominant weight lattice (labels nu; the lattice weight is 2*nu) ----

bool is_dominant_weight(const std::vector<int>& nu);
// All dominant eta <= nu in dominance order (partial sums), including nu.
// Sorted so that strictly lower weights precede nu.
std::vector<std::vector<int>> dominant_weights_below(const std::vector<int>& nu);
int weight_degree(const std::vector<int>& nu); // |nu| = sum of entries

} // namespace bchyp
