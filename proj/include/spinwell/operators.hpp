// operators.hpp — Angular-momentum operator matrices in the |J,m> basis

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "spinwell/errors.hpp"
#include "spinwell/spin_space.hpp"

namespace spinwell::spin {

// <J,m+1| J_+ |J,m> = sqrt(J(J+1) - m(m+1))
inline double ladder_up(double j, double m) {
    return std::sqrt(j * (j + 1.0) - m * (m + 1.0));
}

// J_x and J_z are real symmetric; J_y is Hermitian with purely imaginary
// off-diagonal entries. All three are assembled by filling one triangle
// and mirroring, so the (anti)symmetry holds exactly.
struct SpinOperators {
    Eigen::MatrixXd jx;
    Eigen::MatrixXcd jy;
    Eigen::MatrixXd jz;
};

inline SpinOperators build_spin_operators(const SpinSpace& space) {
    const int d = space.dim;
    SpinOperators ops;
    ops.jx = Eigen::MatrixXd::Zero(d, d);
    ops.jy = Eigen::MatrixXcd::Zero(d, d);
    ops.jz = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) ops.jz(i, i) = space.m_of(i);
    for (int i = 0; i + 1 < d; ++i) {
        const double a = ladder_up(space.j, space.m_of(i));
        ops.jx(i + 1, i) = 0.5 * a;
        ops.jx(i, i + 1) = ops.jx(i + 1, i);
        ops.jy(i + 1, i) = Complex(0.0, -0.5 * a);   // (J_+ - J_-)/(2i)
        ops.jy(i, i + 1) = std::conj(ops.jy(i + 1, i));
    }
    return ops;
}

namespace detail {

template <typename Matrix>
double expectation_impl(const Matrix& a, const QuantumState& psi) {
    if (a.rows() != a.cols() || a.rows() != psi.amplitudes.size())
        throw contract_error("expectation: operator/state dimension mismatch");
    const Complex value = psi.amplitudes.dot(a * psi.amplitudes);
    if (std::abs(value.imag()) > 1e-10)
        throw contract_error("expectation: non-real expectation of a Hermitian operator");
    return value.real();
}

} // namespace detail

// <psi| A |psi> for Hermitian A; the imaginary residue is asserted below
// 1e-10 and discarded.
inline double expectation(const Eigen::MatrixXd& a, const QuantumState& psi) {
    return detail::expectation_impl(a, psi);
}

inline double expectation(const Eigen::MatrixXcd& a, const QuantumState& psi) {
    return detail::expectation_impl(a, psi);
}

} // namespace spinwell::spin
