// spectral.hpp — Real-symmetric eigendecomposition and exact unitary evolution
//
// Time evolution goes through the spectral resolution psi(t) = sum_k
// e^{-i E_k t} <v_k|psi0> v_k, so there is no step error to accumulate over
// the long Fig.-style horizons. Times are passed as the dimensionless
// Omega*t and energies are divided by Omega internally.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "spinwell/errors.hpp"
#include "spinwell/model.hpp"
#include "spinwell/observables.hpp"
#include "spinwell/spin_space.hpp"

namespace spinwell::spectral {

// Eigenvalues ascending; eigenvector k in column k, orthonormal.
struct SpectralDecomp {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

// Full decomposition of a real symmetric matrix (Householder reduction plus
// implicitly shifted QR on the tridiagonal form, as provided by Eigen's
// SelfAdjointEigenSolver — deterministic for identical input).
inline SpectralDecomp eig_symmetric(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols() || a.rows() < 1)
        throw contract_error("eig_symmetric: matrix must be square and non-empty");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw contract_error("eig_symmetric: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eig_symmetric: QR iteration failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// psi(omega_t) from the decomposition of the evolving Hamiltonian.
inline spin::QuantumState evolve(const SpectralDecomp& decomp, const spin::QuantumState& psi0,
                                 double omega_t, double omega) {
    const int d = static_cast<int>(decomp.eigenvalues.size());
    if (psi0.amplitudes.size() != d)
        throw contract_error("evolve: state/decomposition dimension mismatch");
    if (!(omega > 0.0)) throw validation_error("omega: must be > 0");
    Eigen::VectorXcd coeffs = decomp.eigenvectors.transpose() * psi0.amplitudes;
    const double t = omega_t / omega;
    for (int k = 0; k < d; ++k)
        coeffs[k] *= std::polar(1.0, -decomp.eigenvalues[k] * t);
    spin::QuantumState psi{psi0.space, decomp.eigenvectors * coeffs};
    if (spin::norm_defect(psi) > 1e-12)
        throw numeric_error("evolve: unitarity lost (non-orthonormal decomposition?)");
    return psi;
}

struct TimeRecord {
    double gp{0.0};
    double jx{0.0};   // <J_x>/J
    double jy{0.0};
    double jz{0.0};
};

struct TimeSeries {
    std::vector<double> times;     // Omega*t
    std::vector<TimeRecord> records;
};

// GP and normalized Bloch components along a time grid, one diagonalization
// for the whole series.
inline TimeSeries evolve_series(const model::ModelParams& params, const spin::SpinSpace& space,
                                const spin::QuantumState& psi0, const std::vector<double>& t_grid) {
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw validation_error("t_grid: must start at 0");
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw validation_error("t_grid: must be strictly increasing");

    const SpectralDecomp decomp = eig_symmetric(model::build_hamiltonian(params, space));
    TimeSeries series;
    series.times = t_grid;
    series.records.reserve(t_grid.size());
    for (const double t : t_grid) {
        const spin::QuantumState psi = evolve(decomp, psi0, t, params.omega);
        const obs::BlochVector b = obs::bloch_vector(psi);
        const double gp = b.squared_length();
        if (gp < 0.0 || gp > 1.0 + 1e-9)
            throw numeric_error("evolve_series: generalized purity left [0,1]");
        series.records.push_back({gp, b.x, b.y, b.z});
    }
    return series;
}

// Uniform grid {0, dt, 2 dt, ...} up to and including t_max (within rounding).
inline std::vector<double> time_grid(double t_max, double dt) {
    if (!(dt > 0.0)) throw validation_error("dt: must be > 0");
    if (t_max < 0.0) throw validation_error("tmax: must be >= 0");
    std::vector<double> grid;
    const int count = static_cast<int>(std::floor(t_max / dt + 1e-9)) + 1;
    grid.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) grid.push_back(i * dt);
    return grid;
}

} // namespace spinwell::spectral
