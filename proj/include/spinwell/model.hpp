// model.hpp — Double-well parameters, Hamiltonian assembly, parity blocks
//
// H = Omega' J_z + 2(kappa - eta) J_x^2 + 4 eta J_z^2, with
// eta = kappa eps^2, Lambda = kappa eps^{3/2}, Omega' = 2[2 Lambda (N-1) + Omega/2].
// In the |J,m> basis H couples only m <-> m and m <-> m+-2, so the even/odd
// index sectors decouple into two symmetric tridiagonal blocks.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "spinwell/errors.hpp"
#include "spinwell/spin_space.hpp"

namespace spinwell::model {

struct ModelParams {
    double omega{1.0};     // tunneling
    double kappa{0.0};     // self-collision
    double epsilon{0.0};   // mode overlap <u+|u->
    int n_particles{0};
    // derived, read-only once computed
    double eta{0.0};       // kappa eps^2
    double lambda{0.0};    // kappa eps^{3/2}
    double omega_eff{0.0}; // 2[2 lambda (N-1) + omega/2]
};

inline ModelParams derive_params(double omega, double kappa, double epsilon, int n_particles) {
    if (!(omega > 0.0)) throw validation_error("omega: must be > 0");
    if (!(kappa >= 0.0)) throw validation_error("kappa: must be >= 0");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw validation_error("epsilon: must lie in [0,1)");
    if (n_particles < 1) throw validation_error("n_particles: must be >= 1");
    ModelParams p;
    p.omega = omega;
    p.kappa = kappa;
    p.epsilon = epsilon;
    p.n_particles = n_particles;
    p.eta = kappa * epsilon * epsilon;
    p.lambda = kappa * std::pow(epsilon, 1.5);
    p.omega_eff = 2.0 * (2.0 * p.lambda * (n_particles - 1) + 0.5 * omega);
    return p;
}

// Experiments are often quoted via eta rather than eps; invert eps = sqrt(eta/kappa).
inline ModelParams params_from_eta(double omega, double kappa, double eta, int n_particles) {
    if (!(eta >= 0.0)) throw validation_error("eta: must be >= 0");
    if (eta > kappa) throw validation_error("eta: must not exceed kappa (would imply epsilon > 1)");
    const double epsilon = (eta == 0.0) ? 0.0 : std::sqrt(eta / kappa);
    return derive_params(omega, kappa, epsilon, n_particles);
}

// Banded storage: diag[i] on the diagonal, off2[i] coupling index i <-> i+2.
struct HamiltonianBands {
    Eigen::VectorXd diag;
    Eigen::VectorXd off2;
};

// Closed-form O(N) assembly. Diagonal at m: Omega' m + 4 eta m^2 + (kappa-eta)(J(J+1) - m^2);
// coupling m <-> m+2: (kappa-eta)/2 sqrt[(J(J+1)-m(m+1))(J(J+1)-(m+1)(m+2))].
inline HamiltonianBands hamiltonian_bands(const ModelParams& p, const spin::SpinSpace& space) {
    if (space.n_particles != p.n_particles)
        throw contract_error("hamiltonian_bands: space/params particle number mismatch");
    const int d = space.dim;
    const double j = space.j;
    const double jj = j * (j + 1.0);
    const double kme = p.kappa - p.eta;
    HamiltonianBands h;
    h.diag.resize(d);
    h.off2.resize(d >= 2 ? d - 2 : 0);
    for (int i = 0; i < d; ++i) {
        const double m = space.m_of(i);
        h.diag[i] = p.omega_eff * m + 4.0 * p.eta * m * m + kme * (jj - m * m);
    }
    for (int i = 0; i + 2 < d; ++i) {
        const double m = space.m_of(i);
        h.off2[i] = 0.5 * kme
                  * std::sqrt((jj - m * (m + 1.0)) * (jj - (m + 1.0) * (m + 2.0)));
    }
    return h;
}

inline Eigen::MatrixXd build_hamiltonian(const ModelParams& p, const spin::SpinSpace& space) {
    const HamiltonianBands bands = hamiltonian_bands(p, space);
    const int d = space.dim;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) h(i, i) = bands.diag[i];
    for (int i = 0; i + 2 < d; ++i) {
        h(i + 2, i) = bands.off2[i];
        h(i, i + 2) = bands.off2[i];
    }
    return h;
}

struct SymmetricTridiagonal {
    Eigen::VectorXd diag;
    Eigen::VectorXd off;   // off[i] couples block rows i and i+1
    int size() const { return static_cast<int>(diag.size()); }
};

// Even/odd index sectors of the banded Hamiltonian; indices map block rows
// back to full-basis indices (and through SpinSpace::m_of to m-values).
struct ParityBlocks {
    SymmetricTridiagonal even;
    SymmetricTridiagonal odd;
    std::vector<int> even_indices;
    std::vector<int> odd_indices;
};

namespace detail {

inline SymmetricTridiagonal gather_block(const HamiltonianBands& h, int first, int dim) {
    std::vector<int> idx;
    for (int i = first; i < dim; i += 2) idx.push_back(i);
    SymmetricTridiagonal t;
    const int n = static_cast<int>(idx.size());
    t.diag.resize(n);
    t.off.resize(n >= 1 ? n - 1 : 0);
    for (int r = 0; r < n; ++r) t.diag[r] = h.diag[idx[r]];
    for (int r = 0; r + 1 < n; ++r) t.off[r] = h.off2[idx[r]];
    return t;
}

} // namespace detail

inline ParityBlocks parity_partition(const HamiltonianBands& h) {
    const int dim = static_cast<int>(h.diag.size());
    ParityBlocks blocks;
    blocks.even = detail::gather_block(h, 0, dim);
    blocks.odd = detail::gather_block(h, 1, dim);
    for (int i = 0; i < dim; i += 2) blocks.even_indices.push_back(i);
    for (int i = 1; i < dim; i += 2) blocks.odd_indices.push_back(i);
    return blocks;
}

// Dense entry point per the module contract: asserts the Delta(index) in {0,+-2}
// band structure before partitioning. Both assembly routes produce exact zeros
// off the band, so the check is strict equality.
inline ParityBlocks parity_partition(const Eigen::MatrixXd& h) {
    const int dim = static_cast<int>(h.rows());
    if (h.cols() != dim) throw contract_error("parity_partition: non-square input");
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            const int delta = std::abs(i - k);
            if (delta != 0 && delta != 2 && h(i, k) != 0.0)
                throw contract_error("parity_partition: input is not banded with Delta(index) in {0,+-2}");
        }
    for (int i = 0; i + 2 < dim; ++i)
        if (h(i + 2, i) != h(i, i + 2))
            throw contract_error("parity_partition: input is not symmetric");
    HamiltonianBands bands;
    bands.diag.resize(dim);
    bands.off2.resize(dim >= 2 ? dim - 2 : 0);
    for (int i = 0; i < dim; ++i) bands.diag[i] = h(i, i);
    for (int i = 0; i + 2 < dim; ++i) bands.off2[i] = h(i + 2, i);
    return parity_partition(bands);
}

// Scatters a parity-block vector back into the full basis.
inline Eigen::VectorXd embed_block_vector(const std::vector<int>& indices,
                                          const Eigen::VectorXd& v, int dim) {
    if (static_cast<int>(indices.size()) != v.size())
        throw contract_error("embed_block_vector: index map / vector size mismatch");
    Eigen::VectorXd full = Eigen::VectorXd::Zero(dim);
    for (int r = 0; r < v.size(); ++r) full[indices[static_cast<size_t>(r)]] = v[r];
    return full;
}

} // namespace spinwell::model
