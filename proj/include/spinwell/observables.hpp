// observables.hpp — Generalized purity, Bloch vector, Husimi Q-function
//
// GP(|psi>) = (1/J^2) sum_{k=x,y,z} <J_k>^2. It is invariant under SU(2)
// rotations of the state, equals 1 exactly on coherent states, and decays
// toward 0 as the state delocalizes over the Bloch sphere.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "spinwell/coherent.hpp"
#include "spinwell/errors.hpp"
#include "spinwell/spin_space.hpp"

namespace spinwell::obs {

// (<J_x>, <J_y>, <J_z>)/J. Length is at most 1, with equality exactly on
// coherent states.
struct BlochVector {
    double x{0.0};
    double y{0.0};
    double z{0.0};
    double squared_length() const { return x * x + y * y + z * z; }
};

// O(dim) evaluation through the ladder sum: <J_+> = sum_m conj(c_{m+1}) c_m a_m,
// <J_x> = Re<J_+>, <J_y> = Im<J_+>, <J_z> = sum_m m |c_m|^2.
inline BlochVector bloch_vector(const spin::QuantumState& psi) {
    const auto& space = psi.space;
    if (space.n_particles < 1)
        throw contract_error("bloch_vector: undefined for the trivial J = 0 space");
    const auto& c = psi.amplitudes;
    spin::Complex jplus(0.0, 0.0);
    double jz = 0.0;
    for (int i = 0; i < space.dim; ++i) {
        jz += space.m_of(i) * std::norm(c[i]);
        if (i + 1 < space.dim)
            jplus += std::conj(c[i + 1]) * c[i] * spin::ladder_up(space.j, space.m_of(i));
    }
    return {jplus.real() / space.j, jplus.imag() / space.j, jz / space.j};
}

inline double generalized_purity(const spin::QuantumState& psi) {
    return bloch_vector(psi).squared_length();
}

// Cell-centered sphere grid: theta_a = (a + 1/2) pi / n_theta (poles excluded),
// phi_b = 2 pi b / n_phi. Per-node weights integrate sin(theta) exactly over
// each theta cell, so they telescope to a total of 4 pi to machine precision
// (plain midpoint weights would miss by (pi/n_theta)^2/24 relative).
struct SphereGrid {
    int n_theta{128};
    int n_phi{256};

    static SphereGrid make(int n_theta, int n_phi) {
        if (n_theta < 2) throw validation_error("grid-theta: must be >= 2");
        if (n_phi < 3) throw validation_error("grid-phi: must be >= 3");
        return {n_theta, n_phi};
    }
    double theta(int a) const { return (a + 0.5) * std::numbers::pi / n_theta; }
    double phi(int b) const { return 2.0 * std::numbers::pi * b / n_phi; }
    double weight(int a) const {
        const double half_cell = 0.5 * std::numbers::pi / n_theta;
        return (std::cos(theta(a) - half_cell) - std::cos(theta(a) + half_cell))
             * (2.0 * std::numbers::pi / n_phi);
    }
};

// Q sampled on a grid; values(a, b) = Q(theta_a, phi_b) in [0, 1].
struct QField {
    SphereGrid grid;
    Eigen::MatrixXd values;
};

// Q(theta,phi) = |<theta,phi|psi>|^2 at a single point, O(dim).
inline double husimi_point(const spin::QuantumState& psi, double theta, double phi) {
    const Eigen::VectorXcd cs = spin::coherent_amplitudes(psi.space, theta, phi);
    return std::norm(cs.dot(psi.amplitudes));
}

// Samples Q over the grid by direct overlap with the closed-form coherent
// amplitudes: per theta row the real magnitudes b_k are computed once and the
// phi dependence enters only through the phase sum  sum_k b_k psi_k e^{ik phi}.
inline QField husimi_q(const spin::QuantumState& psi, const SphereGrid& grid) {
    const auto& space = psi.space;
    const int d = space.dim;
    const int n = space.n_particles;
    QField field{grid, Eigen::MatrixXd::Zero(grid.n_theta, grid.n_phi)};
    const double lg = std::lgamma(n + 1.0);
    Eigen::VectorXcd f(d);
    for (int a = 0; a < grid.n_theta; ++a) {
        const double half = 0.5 * grid.theta(a);
        const double lc = std::log(std::cos(half));
        const double ls = std::log(std::sin(half));
        for (int k = 0; k < d; ++k) {
            const double log_binom = lg - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
            f[k] = std::exp(0.5 * log_binom + (n - k) * lc + k * ls) * psi.amplitudes[k];
        }
        for (int b = 0; b < grid.n_phi; ++b) {
            const double ph = grid.phi(b);
            const spin::Complex step = std::polar(1.0, ph);
            spin::Complex w(1.0, 0.0);
            spin::Complex z(0.0, 0.0);
            for (int k = 0; k < d; ++k) {
                z += f[k] * w;
                w *= step;
            }
            field.values(a, b) = std::norm(z);
        }
    }
    return field;
}

// Midpoint quadrature of Q over the sphere; (2J+1)/(4 pi) times this is 1 for
// a normalized state.
inline double integrate(const QField& field) {
    double total = 0.0;
    for (int a = 0; a < field.grid.n_theta; ++a)
        total += field.values.row(a).sum() * field.grid.weight(a);
    return total;
}

struct QMaximum {
    int i_theta{0};
    int i_phi{0};
    double theta{0.0};
    double phi{0.0};
    double value{0.0};
};

namespace detail {

inline double great_circle_angle(double th1, double ph1, double th2, double ph2) {
    const double dot = std::sin(th1) * std::sin(th2) * std::cos(ph1 - ph2)
                     + std::cos(th1) * std::cos(th2);
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

} // namespace detail

// Local maxima of the Q field above floor * (global max). A node qualifies if
// its value is >= all 8 neighbors (phi wraps; the theta edge rows compare the
// neighbors that exist). Qualifying nodes closer than two grid cells are
// merged transitively into one maximum — measured as great-circle separation,
// since grid-index distance degenerates at the poles where many phi columns
// collapse onto nearly the same point of the sphere.
inline std::vector<QMaximum> local_maxima(const QField& field, double floor = 0.2) {
    if (!(floor > 0.0 && floor < 1.0)) throw validation_error("floor: must lie in (0,1)");
    const int nt = field.grid.n_theta;
    const int np = field.grid.n_phi;
    const double global_max = field.values.maxCoeff();
    std::vector<QMaximum> candidates;
    for (int a = 0; a < nt; ++a) {
        for (int b = 0; b < np; ++b) {
            const double v = field.values(a, b);
            if (v < floor * global_max) continue;
            bool is_max = true;
            for (int da = -1; da <= 1 && is_max; ++da) {
                const int aa = a + da;
                if (aa < 0 || aa >= nt) continue;
                for (int db = -1; db <= 1; ++db) {
                    if (da == 0 && db == 0) continue;
                    const int bb = (b + db + np) % np;
                    if (field.values(aa, bb) > v) { is_max = false; break; }
                }
            }
            if (is_max)
                candidates.push_back({a, b, field.grid.theta(a), field.grid.phi(b), v});
        }
    }

    // union-find over pairs within two cell-angles of each other
    const double cell = std::max(std::numbers::pi / nt, 2.0 * std::numbers::pi / np);
    const double merge_radius = 2.0 * cell;
    std::vector<int> parent(candidates.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    const auto find = [&parent](int i) {
        while (parent[static_cast<size_t>(i)] != i) {
            parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
            i = parent[static_cast<size_t>(i)];
        }
        return i;
    };
    for (size_t i = 0; i < candidates.size(); ++i)
        for (size_t k = i + 1; k < candidates.size(); ++k) {
            const double sep = detail::great_circle_angle(
                candidates[i].theta, candidates[i].phi, candidates[k].theta, candidates[k].phi);
            if (sep <= merge_radius)
                parent[static_cast<size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(k));
        }

    std::vector<QMaximum> merged;
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
        QMaximum best = candidates[i];
        for (size_t k = 0; k < candidates.size(); ++k)
            if (find(static_cast<int>(k)) == static_cast<int>(i) && candidates[k].value > best.value)
                best = candidates[k];
        merged.push_back(best);
    }
    std::sort(merged.begin(), merged.end(),
              [](const QMaximum& a, const QMaximum& b) { return a.value > b.value; });
    return merged;
}

} // namespace spinwell::obs
