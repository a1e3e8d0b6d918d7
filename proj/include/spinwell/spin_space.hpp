// spin_space.hpp — The (N+1)-dimensional spin-J representation and state vectors

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <utility>

#include "spinwell/errors.hpp"

namespace spinwell::spin {

using Complex = std::complex<double>;

// Irreducible spin-J space for N particles, J = N/2.
// Basis ordering is ascending in m: index i holds |J, m = i - J>,
// so index 0 is the lowest-weight state |J,-J> and index dim-1 is |J,+J>.
// The even/odd index split is the parity split used by the model module.
struct SpinSpace {
    int n_particles{0};
    int dim{1};
    double j{0.0};

    static SpinSpace for_particles(int n) {
        if (n < 0) throw validation_error("n_particles: must be non-negative");
        SpinSpace s;
        s.n_particles = n;
        s.dim = n + 1;
        s.j = 0.5 * static_cast<double>(n);
        return s;
    }

    double m_of(int index) const { return static_cast<double>(index) - j; }
    int index_of_m(double m) const { return static_cast<int>(std::lround(m + j)); }
};

// Pure state over |J,m>, m = -J..J; amplitudes[i] multiplies |J, i-J>.
// Unit norm (within 1e-12) is maintained by every constructor and evolution step.
struct QuantumState {
    SpinSpace space;
    Eigen::VectorXcd amplitudes;
};

inline double norm_defect(const QuantumState& psi) {
    return std::abs(psi.amplitudes.squaredNorm() - 1.0);
}

// Wraps a vector that is already normalized; rejects anything else.
inline QuantumState make_state(const SpinSpace& space, Eigen::VectorXcd amplitudes) {
    if (amplitudes.size() != space.dim)
        throw contract_error("make_state: amplitude count does not match space dimension");
    QuantumState psi{space, std::move(amplitudes)};
    if (norm_defect(psi) > 1e-12)
        throw contract_error("make_state: state is not unit norm");
    return psi;
}

// Normalizes the vector first; for assembling superpositions in client code.
inline QuantumState normalized_state(const SpinSpace& space, Eigen::VectorXcd amplitudes) {
    const double n = amplitudes.norm();
    if (n == 0.0) throw contract_error("normalized_state: zero vector");
    amplitudes /= n;
    return QuantumState{space, std::move(amplitudes)};
}

// |J,m> basis state.
inline QuantumState basis_state(const SpinSpace& space, double m) {
    const int i = space.index_of_m(m);
    if (i < 0 || i >= space.dim) throw contract_error("basis_state: m outside -J..J");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(space.dim);
    c[i] = 1.0;
    return QuantumState{space, std::move(c)};
}

inline Complex overlap(const QuantumState& a, const QuantumState& b) {
    if (a.amplitudes.size() != b.amplitudes.size())
        throw contract_error("overlap: dimension mismatch");
    return a.amplitudes.dot(b.amplitudes);   // conjugates the left argument
}

inline double fidelity(const QuantumState& a, const QuantumState& b) {
    return std::norm(overlap(a, b));
}

} // namespace spinwell::spin
