// qpt.hpp — Phase-transition study: GP of the top eigenstate vs kappa N / Omega
//
// The classical bifurcation of the highest-energy fixed point sits at
// kappa_c = Omega/(2N). Its finite-N quantum marker is the minimum of
// d(GP)/dx over x = kappa N / Omega; the sweep tracks that minimum across a
// ladder of N and fits the power law of kappa_c^q(N) - kappa_c.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "spinwell/errors.hpp"
#include "spinwell/model.hpp"
#include "spinwell/observables.hpp"
#include "spinwell/spectral.hpp"
#include "spinwell/tridiagonal.hpp"

namespace spinwell::qpt {

struct TopEigenstate {
    double energy{0.0};
    spin::QuantumState state;
    // Set when the two parity blocks' top eigenvalues differ by less than
    // 1e-12 * ||H||; the even-block state is returned in that case.
    bool near_degenerate{false};
};

// Extremal eigenvector of the parity block holding the larger top eigenvalue,
// re-embedded into the full |J,m> basis. Sign convention: the component of
// largest magnitude is positive.
inline TopEigenstate highest_energy_state(const model::ModelParams& params,
                                          const spin::SpinSpace& space) {
    const model::HamiltonianBands bands = model::hamiltonian_bands(params, space);
    const model::ParityBlocks blocks = model::parity_partition(bands);

    const spectral::ExtremalPair even = spectral::top_eigenpair(blocks.even);
    const bool have_odd = blocks.odd.size() > 0;
    const spectral::ExtremalPair odd =
        have_odd ? spectral::top_eigenpair(blocks.odd) : spectral::ExtremalPair{};

    double h_norm = spectral::infinity_norm(blocks.even);
    if (have_odd) h_norm = std::max(h_norm, spectral::infinity_norm(blocks.odd));
    const bool degenerate =
        have_odd && std::abs(even.value - odd.value) < 1e-12 * std::max(1.0, h_norm);

    const bool take_even = !have_odd || degenerate || even.value > odd.value;
    const auto& pair = take_even ? even : odd;
    const auto& indices = take_even ? blocks.even_indices : blocks.odd_indices;

    Eigen::VectorXd full = model::embed_block_vector(indices, pair.vector, space.dim);
    int imax = 0;
    for (int i = 1; i < full.size(); ++i)
        if (std::abs(full[i]) > std::abs(full[imax])) imax = i;
    if (full[imax] < 0.0) full = -full;

    spin::QuantumState state{space, full.cast<spin::Complex>()};
    return {pair.value, std::move(state), degenerate};
}

// GP(x) for the highest-energy eigenstate, x = kappa N / Omega, plus its
// central-difference derivative (one-sided at the grid ends).
struct SweepResult {
    int n_particles{0};
    double omega{1.0};
    double epsilon{0.0};   // 0 keeps the cross-collision terms off
    std::vector<double> x;
    std::vector<double> gp;
    std::vector<double> dgp_dx;
};

namespace detail {

inline void check_uniform_from_zero(const std::vector<double>& x) {
    if (x.size() < 2) throw validation_error("x_grid: need at least 2 nodes");
    if (x.front() != 0.0) throw validation_error("x_grid: must start at 0");
    const double step = x[1] - x[0];
    if (!(step > 0.0)) throw validation_error("x_grid: must be strictly increasing");
    for (size_t i = 1; i < x.size(); ++i)
        if (std::abs((x[i] - x[i - 1]) - step) > 1e-9 * step)
            throw validation_error("x_grid: must be uniform");
}

// Runs fn(i) for i in [0, count) across workers; each index writes only its
// own slot, so the assembled result is identical for any worker count.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&fn, w, threads, count] {
            for (int i = w; i < count; i += threads) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace detail

inline SweepResult gp_vs_x(int n_particles, const std::vector<double>& x_grid, double omega,
                           double epsilon = 0.0, int threads = 0) {
    detail::check_uniform_from_zero(x_grid);
    if (!(omega > 0.0)) throw validation_error("omega: must be > 0");
    const spin::SpinSpace space = spin::SpinSpace::for_particles(n_particles);

    SweepResult sweep;
    sweep.n_particles = n_particles;
    sweep.omega = omega;
    sweep.epsilon = epsilon;
    sweep.x = x_grid;
    sweep.gp.assign(x_grid.size(), 0.0);

    detail::parallel_for(static_cast<int>(x_grid.size()), threads, [&](int i) {
        const double kappa = x_grid[static_cast<size_t>(i)] * omega / n_particles;
        const model::ModelParams p = model::derive_params(omega, kappa, epsilon, n_particles);
        const TopEigenstate top = highest_energy_state(p, space);
        sweep.gp[static_cast<size_t>(i)] = obs::generalized_purity(top.state);
    });

    const double h = x_grid[1] - x_grid[0];
    const size_t n = x_grid.size();
    sweep.dgp_dx.assign(n, 0.0);
    sweep.dgp_dx[0] = (sweep.gp[1] - sweep.gp[0]) / h;
    sweep.dgp_dx[n - 1] = (sweep.gp[n - 1] - sweep.gp[n - 2]) / h;
    for (size_t i = 1; i + 1 < n; ++i)
        sweep.dgp_dx[i] = (sweep.gp[i + 1] - sweep.gp[i - 1]) / (2.0 * h);
    return sweep;
}

struct CriticalPoint {
    int n_particles{0};
    double omega{1.0};
    double x_star{0.0};     // argmin of d(GP)/dx
    double kappa_c_q{0.0};  // x_star * Omega / N
    double delta{0.0};      // kappa_c_q - Omega/(2N)
};

// Sub-grid location of the derivative minimum: vertex of the parabola through
// the minimal node and its two neighbors.
inline CriticalPoint find_critical(const SweepResult& sweep) {
    const auto& d = sweep.dgp_dx;
    if (d.size() < 3) throw validation_error("sweep: too few nodes to locate a minimum");
    size_t imin = 0;
    for (size_t i = 1; i < d.size(); ++i)
        if (d[i] < d[imin]) imin = i;
    if (imin == 0 || imin + 1 == d.size())
        throw range_error("find_critical: derivative minimum sits on the sweep boundary; "
                          "widen the x range (--x-max)");
    const double h = sweep.x[1] - sweep.x[0];
    const double y0 = d[imin - 1], y1 = d[imin], y2 = d[imin + 1];
    const double curvature = y0 - 2.0 * y1 + y2;
    const double x_star =
        sweep.x[imin] + (curvature > 0.0 ? 0.5 * h * (y0 - y2) / curvature : 0.0);

    CriticalPoint cp;
    cp.n_particles = sweep.n_particles;
    cp.omega = sweep.omega;
    cp.x_star = x_star;
    cp.kappa_c_q = x_star * sweep.omega / sweep.n_particles;
    cp.delta = cp.kappa_c_q - sweep.omega / (2.0 * sweep.n_particles);
    return cp;
}

// Ordinary least squares of ln y = b + a ln N with y = N (kappa_c^q - kappa_c)/Omega.
// The full law kappa_c^q - kappa_c ∝ N^{a-1} follows from the extra 1/N.
struct PowerLawFit {
    double exponent{0.0};         // a
    double log_prefactor{0.0};    // b
    double stderr_exponent{0.0};
    double stderr_prefactor{0.0};
    double residual_rms{0.0};
    int n_points{0};
    double implied_full_exponent() const { return exponent - 1.0; }
};

inline PowerLawFit power_law_fit(const std::vector<CriticalPoint>& points) {
    if (points.size() < 4) throw validation_error("fit: need at least 4 critical points");
    std::vector<double> lx, ly;
    for (const auto& p : points) {
        for (const auto& q : points)
            if (&p != &q && p.n_particles == q.n_particles)
                throw validation_error("fit: duplicate N in the ladder");
        const double y = p.n_particles * p.delta / p.omega;
        if (!(y > 0.0)) throw validation_error("fit: non-positive delta (log undefined)");
        lx.push_back(std::log(static_cast<double>(p.n_particles)));
        ly.push_back(std::log(y));
    }
    const double n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) { sx += lx[i]; sy += ly[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    PowerLawFit fit;
    fit.n_points = static_cast<int>(lx.size());
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    double rss = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.log_prefactor + fit.exponent * lx[i]);
        rss += r * r;
    }
    const double s2 = rss / (n - 2.0);   // unbiased residual variance
    fit.stderr_exponent = std::sqrt(s2 / sxx);
    fit.stderr_prefactor = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
    fit.residual_rms = std::sqrt(rss / n);
    return fit;
}

// Uniform x grid [x0, x1] with the given step (inclusive of x1 within rounding).
inline std::vector<double> uniform_grid(double x0, double x1, double step) {
    if (!(step > 0.0)) throw validation_error("x-step: must be > 0");
    if (!(x1 > x0)) throw validation_error("x-max: must exceed x-min");
    std::vector<double> grid;
    const int count = static_cast<int>(std::floor((x1 - x0) / step + 1e-9)) + 1;
    grid.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) grid.push_back(x0 + i * step);
    return grid;
}

} // namespace spinwell::qpt
