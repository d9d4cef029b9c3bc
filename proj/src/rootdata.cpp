// SPDX-License-Identifier: Apache-2.0

#include "bchyp/rootdata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bchyp {

std::vector<double> BCParams::rho() const {
    std::vector<double> r(static_cast<size_t>(q));
    double base = mu - d() * q / 2.0 + d() - 1.0;
    for (int i = 0; i < q; ++i) r[static_cast<size_t>(i)] = base + d() * (q - 1 - i);
    return r;
}

BCParams derive_params(Field field, int q, double mu) {
    if (q < 1 || q > kMaxRank)
        throw CapacityError("rank " + std::to_string(q) + " outside [1, " +
                            std::to_string(kMaxRank) + "]");
    BCParams p{field, q, mu};
    if (!(mu > p.gamma() - 1.0)) {
        std::ostringstream os;
        os << "mu = " << mu << " violates mu > gamma - 1 = " << p.gamma() - 1.0
           << " (field " << field_name(field) << ", rank " << q << ")";
        throw DomainError(os.str());
    }
    return p;
}

BCParams derive_params_from_p(Field field, int q, int p) {
    return derive_params(field, q, p * field_dim(field) / 2.0);
}

SpectralParam SpectralParam::conj() const {
    SpectralParam out;
    out.lam.reserve(lam.size());
    for (auto z : lam) out.lam.push_back(std::conj(z));
    return out;
}

std::vector<double> SpectralParam::real_part() const {
    std::vector<double> v(lam.size());
    for (size_t i = 0; i < lam.size(); ++i) v[i] = lam[i].real();
    return v;
}

std::vector<double> SpectralParam::imag_part() const {
    std::vector<double> v(lam.size());
    for (size_t i = 0; i < lam.size(); ++i) v[i] = lam[i].imag();
    return v;
}

SpectralParam SpectralParam::times_i() const {
    SpectralParam out;
    out.lam.reserve(lam.size());
    for (auto z : lam) out.lam.emplace_back(-z.imag(), z.real());
    return out;
}

WeylGroupBC::Element WeylGroupBC::Element::compose(const Element& other) const {
    // (this ∘ other)(x) = this(other(x)).
    Element r;
    size_t q = perm.size();
    r.perm.resize(q);
    r.sign.resize(q);
    for (size_t i = 0; i < q; ++i) {
        r.perm[i] = other.perm[static_cast<size_t>(perm[i])];
        r.sign[i] = sign[i] * other.sign[static_cast<size_t>(perm[i])];
    }
    return r;
}

WeylGroupBC::WeylGroupBC(int q) : q_(q) {
    if (q < 1 || q > kMaxRank)
        throw CapacityError("Weyl group rank outside [1, " + std::to_string(kMaxRank) + "]");
    if (q <= 4) {
        elems_.reserve(order());
        for_each([this](const Element& e) { elems_.push_back(e); });
    }
}

std::size_t WeylGroupBC::order() const {
    std::size_t n = 1;
    for (int i = 2; i <= q_; ++i) n *= static_cast<std::size_t>(i);
    return n << q_;
}

void WeylGroupBC::for_each(const std::function<void(const Element&)>& fn) const {
    Element e;
    e.perm.resize(static_cast<size_t>(q_));
    std::iota(e.perm.begin(), e.perm.end(), 0);
    e.sign.assign(static_cast<size_t>(q_), 1);
    do {
        for (unsigned mask = 0; mask < (1u << q_); ++mask) {
            for (int i = 0; i < q_; ++i)
                e.sign[static_cast<size_t>(i)] = (mask >> i) & 1 ? -1 : 1;
            fn(e);
        }
    } while (std::next_permutation(e.perm.begin(), e.perm.end()));
}

const std::vector<WeylGroupBC::Element>& WeylGroupBC::elements() const {
    if (elems_.empty())
        throw CapacityError("Weyl group elements materialized only for rank <= 4");
    return elems_;
}

namespace {

template <typename T>
std::vector<std::vector<T>> orbit_impl(const std::vector<T>& x) {
    const int q = static_cast<int>(x.size());
    if (q > 4) throw CapacityError("weyl_orbit materialized only for rank <= 4");
    WeylGroupBC w(q);
    std::vector<std::vector<T>> orbit;
    auto close = [](const std::vector<T>& a, const std::vector<T>& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (std::abs(a[i] - b[i]) > 1e-12) return false;
        return true;
    };
    for (const auto& e : w.elements()) {
        auto y = e.apply(x);
        bool dup = false;
        for (const auto& o : orbit)
            if (close(o, y)) { dup = true; break; }
        if (!dup) orbit.push_back(std::move(y));
    }
    return orbit;
}

} // namespace

std::vector<std::vector<std::complex<double>>> weyl_orbit(
    const std::vector<std::complex<double>>& x) {
    return orbit_impl(x);
}

std::vector<std::vector<double>> weyl_orbit(const std::vector<double>& x) {
    return orbit_impl(x);
}

double co_hull_slack(const std::vector<double>& x, const std::vector<double>& rho) {
    std::vector<double> a(x.size());
    for (size_t i = 0; i < x.size(); ++i) a[i] = std::abs(x[i]);
    std::sort(a.begin(), a.end(), std::greater<double>());
    double slack = std::numeric_limits<double>::infinity();
    double ax = 0, rx = 0;
    for (size_t m = 0; m < x.size(); ++m) {
        ax += a[m];
        rx += rho[m];
        slack = std::min(slack, rx - ax);
    }
    return slack;
}

bool co_hull_member(const std::vector<double>& x, const std::vector<double>& rho,
                    double slack) {
    return co_hull_slack(x, rho) >= -slack;
}

bool co_hull_member_bruteforce(const std::vector<double>& x, const std::vector<double>& rho,
                               double slack) {
    WeylGroupBC w(static_cast<int>(x.size()));
    bool ok = true;
    w.for_each([&](const WeylGroupBC::Element& e) {
        if (!ok) return;
        auto y = e.apply(x);
        double partial_y = 0, partial_rho = 0;
        for (size_t m = 0; m < y.size(); ++m) {
            partial_y += y[m];
            partial_rho += rho[m];
            if (partial_y > partial_rho + slack) { ok = false; return; }
        }
    });
    return ok;
}

bool in_dual(const SpectralParam& lambda, const BCParams& params) {
    auto orbit = weyl_orbit(lambda.lam);
    auto lc = lambda.conj();
    bool conj_in_orbit = false;
    for (const auto& o : orbit) {
        bool close = true;
        for (size_t i = 0; i < o.size(); ++i)
            if (std::abs(o[i] - lc.lam[i]) > 1e-10) { close = false; break; }
        if (close) { conj_in_orbit = true; break; }
    }
    return conj_in_orbit && co_hull_member(lambda.imag_part(), params.rho());
}

bool is_dominant_weight(const std::vector<int>& nu) {
    for (size_t i = 0; i < nu.size(); ++i) {
        if (nu[i] < 0) return false;
        if (i + 1 < nu.size() && nu[i + 1] > nu[i]) return false;
    }
    return true;
}

int weight_degree(const std::vector<int>& nu) {
    return std::accumulate(nu.begin(), nu.end(), 0);
}

std::vector<std::vector<int>> dominant_weights_below(const std::vector<int>& nu) {
    if (!is_dominant_weight(nu)) throw DomainError("weight vector is not dominant");
    const int q = static_cast<int>(nu.size());
    const int cap = nu.empty() ? 0 : nu[0];

    std::vector<std::vector<int>> out;
    std::vector<int> eta(static_cast<size_t>(q), 0);
    // Enumerate descending vectors bounded by cap, keep those dominated by nu:
    // all partial sums of eta are <= the partial sums of nu.
    std::function<void(int, int)> rec = [&](int pos, int bound) {
        if (pos == q) {
            int pe = 0, pn = 0;
            for (int i = 0; i < q; ++i) {
                pe += eta[static_cast<size_t>(i)];
                pn += nu[static_cast<size_t>(i)];
                if (pe > pn) return;
            }
            out.push_back(eta);
            return;
        }
        for (int v = 0; v <= bound; ++v) {
            eta[static_cast<size_t>(pos)] = v;
            rec(pos + 1, v);
        }
        eta[static_cast<size_t>(pos)] = 0;
    };
    rec(0, cap);

    // Sort by degree then lexicographically; nu has maximal partial sums so it
    // lands last among its degree class only by construction of the order
    // below, which is all the callers need (strictly-lower weights first).
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        int da = weight_degree(a), db = weight_degree(b);
        if (da != db) return da < db;
        return a < b;
    });
    // Move nu itself to the very end.
    auto it = std::find(out.begin(), out.end(), nu);
    if (it != out.end()) {
        out.erase(it);
        out.push_back(nu);
    }
    return out;
}

} // namespace bchyp
