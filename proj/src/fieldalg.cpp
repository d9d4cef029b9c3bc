// SPDX-License-Identifier: Apache-2.0

#include "bchyp/fieldalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bchyp {

int field_dim(Field f) {
    switch (f) {
        case Field::R: return 1;
        case Field::C: return 2;
        case Field::H: return 4;
    }
    return 0;
}

const char* field_name(Field f) {
    switch (f) {
        case Field::R: return "R";
        case Field::C: return "C";
        case Field::H: return "H";
    }
    return "?";
}

Field field_from_name(const std::string& name) {
    if (name == "R" || name == "r") return Field::R;
    if (name == "C" || name == "c") return Field::C;
    if (name == "H" || name == "h") return Field::H;
    throw DomainError("unknown field '" + name + "' (expected R, C or H)");
}

double Quat::norm() const { return std::sqrt(norm2()); }

Quat Quat::operator*(const Quat& b) const {
    return {w * b.w - x * b.x - y * b.y - z * b.z,
            w * b.x + x * b.w + y * b.z - z * b.y,
            w * b.y - x * b.z + y * b.w + z * b.x,
            w * b.z + x * b.y - y * b.x + z * b.w};
}

MatrixF::MatrixF(Field f, int q) : field_(f), q_(q) {
    if (q < 1 || q > kMaxRank)
        throw CapacityError("matrix rank " + std::to_string(q) + " outside [1, " +
                            std::to_string(kMaxRank) + "]");
    a_.assign(static_cast<size_t>(q) * q, Quat{});
}

MatrixF MatrixF::identity(Field f, int q) {
    MatrixF m(f, q);
    for (int i = 0; i < q; ++i) m.at(i, i) = Quat{1.0};
    return m;
}

MatrixF MatrixF::from_complex(Field f, const Eigen::MatrixXcd& m) {
    if (f == Field::H)
        throw DomainError("from_complex does not apply to quaternion matrices");
    MatrixF out(f, static_cast<int>(m.rows()));
    for (int i = 0; i < out.q_; ++i)
        for (int j = 0; j < out.q_; ++j) {
            out.at(i, j).w = m(i, j).real();
            out.at(i, j).x = (f == Field::C) ? m(i, j).imag() : 0.0;
        }
    return out;
}

MatrixF MatrixF::adjoint() const {
    MatrixF out(field_, q_);
    for (int i = 0; i < q_; ++i)
        for (int j = 0; j < q_; ++j) out.at(j, i) = at(i, j).conj();
    return out;
}

MatrixF MatrixF::operator-() const {
    MatrixF out(field_, q_);
    for (int i = 0; i < q_; ++i)
        for (int j = 0; j < q_; ++j) out.at(i, j) = at(i, j) * -1.0;
    return out;
}

Eigen::MatrixXcd MatrixF::embed() const {
    using cplx = std::complex<double>;
    if (field_ != Field::H) {
        Eigen::MatrixXcd m(q_, q_);
        for (int i = 0; i < q_; ++i)
            for (int j = 0; j < q_; ++j) m(i, j) = cplx(at(i, j).w, at(i, j).x);
        return m;
    }
    Eigen::MatrixXcd m(2 * q_, 2 * q_);
    for (int i = 0; i < q_; ++i)
        for (int j = 0; j < q_; ++j) {
            const Quat& a = at(i, j);
            // a = alpha + beta j with alpha = w + xi, beta = y + zi.
            m(2 * i, 2 * j) = cplx(a.w, a.x);
            m(2 * i, 2 * j + 1) = cplx(a.y, a.z);
            m(2 * i + 1, 2 * j) = cplx(-a.y, a.z);
            m(2 * i + 1, 2 * j + 1) = cplx(a.w, -a.x);
        }
    return m;
}

double MatrixF::max_entry_norm(const MatrixF& other) const {
    double m = 0;
    for (size_t i = 0; i < a_.size(); ++i) m = std::max(m, (a_[i] - other.a_[i]).norm());
    return m;
}

bool MatrixF::is_unitary(double tol) const {
    Eigen::MatrixXcd e = embed();
    Eigen::MatrixXcd g = e.adjoint() * e;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff() <= tol;
}

double MatrixF::spectral_norm() const {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(embed());
    return svd.singularValues()(0);
}

ChamberPoint::ChamberPoint(std::vector<double> coords) : t(std::move(coords)) {
    if (t.empty() || static_cast<int>(t.size()) > kMaxRank)
        throw CapacityError("chamber point rank outside [1, " + std::to_string(kMaxRank) + "]");
    const double tol = 1e-12;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < -tol || (i + 1 < t.size() && t[i + 1] > t[i] + tol)) {
            std::ostringstream os;
            os << "chamber point must be descending and nonnegative, got (";
            for (size_t j = 0; j < t.size(); ++j) os << (j ? "," : "") << t[j];
            os << ")";
            throw DomainError(os.str());
        }
        if (t[i] < 0) t[i] = 0;
    }
}

double ChamberPoint::inf_norm() const { return t.empty() ? 0.0 : t.front(); }

double ChamberPoint::euclid_norm() const {
    double s = 0;
    for (double v : t) s += v * v;
    return std::sqrt(s);
}

bool ChamberPoint::is_zero(double tol) const {
    return inf_norm() <= tol;
}

namespace {

// Descending singular values of the complex embedding, with the quaternion
// pair collapse.  Pairs must agree to 1e-10 relative; a larger gap means the
// embedding structure was broken upstream.
std::vector<double> spectrum_from_embedding(Field f, const Eigen::MatrixXcd& e) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    if (svd.info() != Eigen::Success)
        throw AccuracyError("SVD iteration failed to converge", 0.0, 1.0);
    const auto& sv = svd.singularValues();
    if (f != Field::H) return std::vector<double>(sv.data(), sv.data() + sv.size());
    std::vector<double> out;
    out.reserve(static_cast<size_t>(sv.size() / 2));
    for (int i = 0; i + 1 < sv.size(); i += 2) {
        double gap = std::abs(sv(i) - sv(i + 1));
        if (gap > 1e-10 * std::max(1.0, sv(i)))
            throw InvariantViolation("quaternion embedding spectrum not paired (gap " +
                                     std::to_string(gap) + ")");
        out.push_back(0.5 * (sv(i) + sv(i + 1)));
    }
    return out;
}

} // namespace

std::vector<double> singular_spectrum(const MatrixF& x) {
    return spectrum_from_embedding(x.field(), x.embed());
}

double dieudonne_det(const MatrixF& x) {
    Eigen::MatrixXcd e = x.embed();
    double herm_defect = (e - e.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > 1e-10)
        throw DomainError("dieudonne_det requires a Hermitian input (defect " +
                          std::to_string(herm_defect) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw AccuracyError("eigen iteration failed to converge", 0.0, 1.0);
    double log_det = 0;
    bool zero = false;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double ev = es.eigenvalues()(i);
        if (ev < -1e-10)
            throw DomainError("dieudonne_det input has negative eigenvalue " + std::to_string(ev));
        if (ev <= 0) { zero = true; continue; }
        log_det += std::log(ev);
    }
    if (zero) return 0.0;
    if (x.field() == Field::H) log_det *= 0.5;
    return std::exp(log_det);
}

double ball_weight_from_singular_values(const std::vector<double>& sigma, double exponent) {
    double lw = 0;
    for (double s : sigma) {
        double g = 1.0 - s * s;
        if (g <= 0) {
            if (g > -1e-14 && exponent >= 0) return 0.0;
            if (g > -1e-14) g = 1e-300; // boundary sample with a singular weight
            else throw DomainError("ball weight requires singular values <= 1");
        }
        lw += std::log(g);
    }
    return std::exp(exponent * lw);
}

ChamberPoint d_argument(const ChamberPoint& t, const ChamberPoint& s,
                        const MatrixF& v, const MatrixF& w) {
    const Field f = v.field();
    const int q = v.rank();
    if (s.rank() != q || t.rank() != q || w.rank() != q || w.field() != f)
        throw DomainError("d_argument: mismatched ranks or fields");

    const int n = (f == Field::H) ? 2 * q : q;
    Eigen::VectorXd sinh_t(n), cosh_t(n), sinh_s(n), cosh_s(n);
    for (int i = 0; i < q; ++i) {
        const int reps = (f == Field::H) ? 2 : 1;
        for (int r = 0; r < reps; ++r) {
            int k = (f == Field::H) ? 2 * i + r : i;
            sinh_t(k) = std::sinh(t.t[i]);
            cosh_t(k) = std::cosh(t.t[i]);
            sinh_s(k) = std::sinh(s.t[i]);
            cosh_s(k) = std::cosh(s.t[i]);
        }
    }

    Eigen::MatrixXcd m = sinh_t.asDiagonal() * w.embed() * sinh_s.asDiagonal() +
                         cosh_t.asDiagonal() * v.embed() * cosh_s.asDiagonal();
    std::vector<double> sv = spectrum_from_embedding(f, m);

    std::vector<double> out(sv.size());
    for (size_t i = 0; i < sv.size(); ++i) {
        double sig = sv[i];
        if (sig < 1.0 - 1e-8)
            throw InvariantViolation(
                "d_argument: singular value " + std::to_string(sig) +
                " below 1; v is not unitary or w is not a ball contraction");
        if (sig < 1.0) sig = 1.0;
        out[i] = std::acosh(sig);
    }
    // SVD order is descending and arcosh is monotone; enforce exactly anyway.
    std::sort(out.begin(), out.end(), std::greater<double>());
    return ChamberPoint(std::move(out));
}

} // namespace bchyp
