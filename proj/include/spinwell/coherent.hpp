// coherent.hpp — SU(2) coherent states and rotations R(theta,phi)

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "spinwell/errors.hpp"
#include "spinwell/operators.hpp"
#include "spinwell/spin_space.hpp"

namespace spinwell::spin {

// Reduces angles into theta in [0,pi], phi in [0,2pi). A theta wrap flips the
// rotation axis, which is absorbed by phi -> phi + pi; the state changes by a
// global phase at most.
inline std::pair<double, double> normalize_angles(double theta, double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    if (theta > std::numbers::pi) {
        theta = two_pi - theta;
        phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    return {theta, phi};
}

namespace detail {

// Applies R(theta,phi) = exp(-i theta (J_x sin phi - J_y cos phi)) through the
// spectral decomposition of the Hermitian generator. Numerically exact for all
// angles; no integrator step error.
inline Eigen::VectorXcd apply_rotation(const SpinSpace& space, double theta, double phi,
                                       const Eigen::VectorXcd& vec) {
    const auto [th, ph] = normalize_angles(theta, phi);
    if (th == 0.0) return vec;
    const int d = space.dim;
    // Generator axis matrix K = J_x sin(phi) - J_y cos(phi): Hermitian, zero
    // diagonal, entries (a/2)(sin phi + i cos phi) on the subdiagonal.
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i) {
        const double a = 0.5 * ladder_up(space.j, space.m_of(i));
        k(i + 1, i) = Complex(a * std::sin(ph), a * std::cos(ph));
        k(i, i + 1) = std::conj(k(i + 1, i));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k);
    if (es.info() != Eigen::Success)
        throw numeric_error("apply_rotation: generator eigendecomposition failed");
    const Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * vec;
    Eigen::VectorXcd phased(d);
    for (int i = 0; i < d; ++i)
        phased[i] = std::polar(1.0, -th * es.eigenvalues()[i]) * coeffs[i];
    return es.eigenvectors() * phased;
}

} // namespace detail

// Closed-form expansion of |theta,phi> = R(theta,phi)|J,-J>:
//   c_{m=-J+k} = sqrt(binom(2J,k)) cos^{2J-k}(theta/2) sin^k(theta/2) e^{-ik phi}.
// Evaluated in the log domain so it stays finite for large N. Used as the
// per-node kernel of the Husimi Q sampler and as the cross-check for the
// rotation construction.
inline Eigen::VectorXcd coherent_amplitudes(const SpinSpace& space, double theta, double phi) {
    const auto [th, ph] = normalize_angles(theta, phi);
    const int d = space.dim;
    const int n = space.n_particles;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
    const double half = 0.5 * th;
    if (std::sin(half) == 0.0) { c[0] = 1.0; return c; }
    if (std::cos(half) == 0.0) { c[d - 1] = std::polar(1.0, -ph * n); return c; }
    const double lc = std::log(std::cos(half));
    const double ls = std::log(std::sin(half));
    const double lg = std::lgamma(n + 1.0);
    for (int k = 0; k < d; ++k) {
        const double log_binom = lg - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        const double mag = std::exp(0.5 * log_binom + (n - k) * lc + k * ls);
        c[k] = std::polar(mag, -ph * k);
    }
    return c;
}

// |theta,phi> built by the defining rotation applied to |J,-J>. Convention:
// Bloch vector (sin th cos ph, sin th sin ph, -cos th), so <J_z> = -J cos th.
inline QuantumState coherent_state(const SpinSpace& space, double theta, double phi) {
    Eigen::VectorXcd lowest = Eigen::VectorXcd::Zero(space.dim);
    lowest[0] = 1.0;
    QuantumState psi{space, detail::apply_rotation(space, theta, phi, lowest)};
    if (norm_defect(psi) > 1e-12)
        throw numeric_error("coherent_state: rotation lost normalization");
    return psi;
}

// R(theta,phi) applied to an arbitrary state; preserves norm within 1e-12.
inline QuantumState rotate_state(const QuantumState& state, double theta, double phi) {
    QuantumState out{state.space, detail::apply_rotation(state.space, theta, phi, state.amplitudes)};
    if (norm_defect(out) > 1e-12)
        throw numeric_error("rotate_state: rotation lost normalization");
    return out;
}

} // namespace spinwell::spin
