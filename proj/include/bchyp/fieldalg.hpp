// SPDX-License-Identifier: Apache-2.0
//
// Scalar and small dense matrix arithmetic over R, C and the quaternions,
// singular spectra, Dieudonne determinants, and the kernel argument
// d(t,s;v,w) = arcosh(spec_s(sinh(t) w sinh(s) + cosh(t) v cosh(s))).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bchyp/errors.hpp"

namespace bchyp {

enum class Field { R, C, H };

// Real dimension of the field: 1, 2, 4.
int field_dim(Field f);
const char* field_name(Field f);
Field field_from_name(const std::string& name);

inline constexpr int kMaxRank = 8;

struct Quat {
    double w = 0, x = 0, y = 0, z = 0;

    Quat() = default;
    Quat(double w_, double x_ = 0, double y_ = 0, double z_ = 0) : w(w_), x(x_), y(y_), z(z_) {}

    Quat conj() const { return {w, -x, -y, -z}; }
    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const;

    Quat operator+(const Quat& b) const { return {w + b.w, x + b.x, y + b.y, z + b.z}; }
    Quat operator-(const Quat& b) const { return {w - b.w, x - b.x, y - b.y, z - b.z}; }
    Quat operator*(double c) const { return {w * c, x * c, y * c, z * c}; }
    Quat operator*(const Quat& b) const;
};

// Dense q x q matrix over one of the three fields.  Entries are stored as
// quaternions; for R and C the unused components stay zero.  All spectral
// work happens in the complex embedding (2q x 2q for H, q x q otherwise).
class MatrixF {
public:
    MatrixF(Field f, int q);
    static MatrixF identity(Field f, int q);
    static MatrixF from_complex(Field f, const Eigen::MatrixXcd& m); // R, C only

    Field field() const { return field_; }
    int rank() const { return q_; }

    Quat& at(int i, int j) { return a_[static_cast<size_t>(i) * q_ + j]; }
    const Quat& at(int i, int j) const { return a_[static_cast<size_t>(i) * q_ + j]; }

    MatrixF adjoint() const;
    MatrixF operator-() const;

    // Complex embedding: R -> q x q real-valued complex, C -> q x q complex,
    // H -> 2q x 2q complex with per-entry blocks [[a+bi, c+di], [-c+di, a-bi]].
    Eigen::MatrixXcd embed() const;

    double max_entry_norm(const MatrixF& other) const; // max |a_ij - b_ij|
    bool is_unitary(double tol = 1e-12) const;         // ||U*U - I|| entrywise
    double spectral_norm() const;

private:
    Field field_;
    int q_;
    std::vector<Quat> a_;
};

struct ChamberPoint {
    std::vector<double> t;

    ChamberPoint() = default;
    explicit ChamberPoint(std::vector<double> coords); // validates descending >= 0

    int rank() const { return static_cast<int>(t.size()); }
    double inf_norm() const;
    double euclid_norm() const;
    bool is_zero(double tol = 0.0) const;
};

// Singular values of x, descending.  For H the 2q x 2q embedding produces
// coincident pairs; one representative per pair is returned.
std::vector<double> singular_spectrum(const MatrixF& x);

// Dieudonne determinant of a Hermitian PSD matrix: the ordinary determinant
// for R, C; the square root of the embedding determinant for H.
double dieudonne_det(const MatrixF& x);

// Weight factor of the convolution measure, Delta(I - w*w)^{exponent},
// evaluated from the singular values of w.  Exposed separately because the
// samplers obtain the singular values directly.
double ball_weight_from_singular_values(const std::vector<double>& sigma, double exponent);

// Kernel argument of the product formula / convolution.
ChamberPoint d_argument(const ChamberPoint& t, const ChamberPoint& s,
                        const MatrixF& v, const MatrixF& w);

} // namespace bchyp
