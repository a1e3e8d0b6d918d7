// acceptance.cpp — End-to-end acceptance suite.
//
// Each criterion prints one PASS/FAIL line with the measured numbers; the
// process exits nonzero if any criterion fails. Tolerances are fixed here,
// not configurable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spinwell/cli.hpp"
#include "spinwell/coherent.hpp"
#include "spinwell/model.hpp"
#include "spinwell/observables.hpp"
#include "spinwell/operators.hpp"
#include "spinwell/qpt.hpp"
#include "spinwell/spectral.hpp"
#include "spinwell/tridiagonal.hpp"

using namespace spinwell;
using spin::SpinSpace;
using Complex = spin::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

bool g_all_ok = true;

void report(int number, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", number, name,
                detail.c_str());
    std::fflush(stdout);
    g_all_ok = g_all_ok && ok;
}

spin::QuantumState random_state(const SpinSpace& space, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(space.dim);
    for (int i = 0; i < space.dim; ++i) v[i] = Complex(g(rng), g(rng));
    return spin::normalized_state(space, v);
}

// ---------------------------------------------------------------------------

void criterion_1_coherent_purity() {
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (const int n : {10, 100}) {
        const SpinSpace space = SpinSpace::for_particles(n);
        for (int trial = 0; trial < 50; ++trial) {
            const auto psi = spin::coherent_state(space, u(rng) * kPi, u(rng) * 2.0 * kPi);
            worst = std::max(worst, std::abs(obs::generalized_purity(psi) - 1.0));
        }
    }
    double gp_middle = 0.0;
    for (const int n : {10, 100}) {
        const SpinSpace space = SpinSpace::for_particles(n);
        gp_middle =
            std::max(gp_middle, obs::generalized_purity(spin::basis_state(space, 0.0)));
    }
    const bool ok = worst <= 1e-10 && gp_middle <= 1e-12;
    std::ostringstream ss;
    ss << "max |GP(coherent)-1| = " << worst << " (tol 1e-10), GP(|J,0>) = " << gp_middle
       << " (tol 1e-12)";
    report(1, "coherent-state purity", ok, ss.str());
}

void criterion_2_su2_invariance() {
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const SpinSpace space = SpinSpace::for_particles(40);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto psi = random_state(space, rng);
        const auto rotated = spin::rotate_state(psi, u(rng) * kPi, u(rng) * 2.0 * kPi);
        worst = std::max(worst, std::abs(obs::generalized_purity(rotated)
                                         - obs::generalized_purity(psi)));
    }
    std::ostringstream ss;
    ss << "max |GP(U psi) - GP(psi)| = " << worst << " over 100 pairs at N=40 (tol 1e-10)";
    report(2, "SU(2) invariance of GP", worst <= 1e-10, ss.str());
}

spectral::TimeSeries fig1_series(double eta) {
    const int n = 100;
    const SpinSpace space = SpinSpace::for_particles(n);
    const auto params = model::params_from_eta(1.0, 2.0 / n, eta, n);
    const auto psi0 = spin::coherent_state(space, kPi / 2.0, 0.0);
    return spectral::evolve_series(params, space, psi0, spectral::time_grid(300.0, 0.05));
}

void criterion_3_mst() {
    const auto series = fig1_series(0.02 / 100.0);
    double plateau_min = 1.0, plateau_max = 0.0, recoherence = 0.0;
    for (size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        const double gp = series.records[i].gp;
        if (t >= 15.0 && t <= 50.0) {
            plateau_min = std::min(plateau_min, gp);
            plateau_max = std::max(plateau_max, gp);
        }
        if (t >= 50.0 && t <= 80.0) recoherence = std::max(recoherence, gp);
    }
    const bool ok = plateau_min >= 0.85 && plateau_max <= 0.95 && recoherence >= 0.95;
    std::ostringstream ss;
    ss << "plateau GP in [" << plateau_min << ", " << plateau_max
       << "] on t=[15,50] (need [0.85,0.95]), max GP on t=[50,80] = " << recoherence
       << " (need >= 0.95)";
    report(3, "Fig. 1 MST regime", ok, ss.str());
}

void criterion_4_jo() {
    const auto series = fig1_series(0.02 / 10.0);
    double peak = 0.0, peak_time = 0.0;
    for (size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        if (t < 20.0) continue;
        if (series.records[i].gp > peak) {
            peak = series.records[i].gp;
            peak_time = t;
        }
    }
    const bool ok = peak <= 0.45 && peak_time >= 200.0 && peak_time <= 300.0;
    std::ostringstream ss;
    ss << "max GP on t=[20,300] = " << peak << " (need <= 0.45) at t = " << peak_time
       << " (need in [200,300])";
    report(4, "Fig. 1 JO regime", ok, ss.str());
}

void criterion_5_qfunction_peaks() {
    struct Case {
        const char* preset;
        size_t expected;
    };
    const std::vector<Case> cases{{"fig2a", 1}, {"fig2b", 1}, {"fig2c", 2}, {"fig2d", 2}};
    bool ok = true;
    std::ostringstream ss;
    double separation_c = 0.0, separation_d = 0.0;
    double theta_a = 0.0;
    for (const auto& c : cases) {
        cli::QFunctionConfig cfg;
        cli::apply_preset(c.preset, cfg);
        const auto params = cfg.m.resolve();
        const SpinSpace space = SpinSpace::for_particles(params.n_particles);
        const auto top = qpt::highest_energy_state(params, space);
        const auto field =
            obs::husimi_q(top.state, obs::SphereGrid::make(cfg.grid_theta, cfg.grid_phi));
        const auto maxima = obs::local_maxima(field, 0.2);
        ok = ok && maxima.size() == c.expected;
        ss << c.preset << ": " << maxima.size() << " maxima (need " << c.expected << "); ";
        if (std::string(c.preset) == "fig2a" && !maxima.empty()) theta_a = maxima[0].theta;
        if (maxima.size() == 2) {
            const double sep = obs::detail::great_circle_angle(
                maxima[0].theta, maxima[0].phi, maxima[1].theta, maxima[1].phi);
            if (std::string(c.preset) == "fig2c") separation_c = sep;
            if (std::string(c.preset) == "fig2d") separation_d = sep;
        }
    }
    const double three_degrees = 3.0 * kPi / 180.0;
    if (std::abs(theta_a - kPi) > three_degrees) {
        ok = false;
        ss << "fig2a peak off the pole; ";
    }
    ss << "fig2a theta = " << theta_a * 180.0 / kPi << " deg (need within 3 of 180); ";
    if (!(separation_d < separation_c && separation_d > 0.0)) ok = false;
    ss << "separations: fig2c " << separation_c * 180.0 / kPi << " deg > fig2d "
       << separation_d * 180.0 / kPi << " deg";
    report(5, "Fig. 2 peak structure", ok, ss.str());
}

void criterion_6_crossings() {
    const double step = 0.002;
    const auto grid = qpt::uniform_grid(0.0, 2.0, step);
    const std::vector<int> ns{50, 100, 200, 400};
    std::vector<qpt::SweepResult> sweeps;
    for (const int n : ns) sweeps.push_back(qpt::gp_vs_x(n, grid, 1.0));

    bool ok = true;
    std::ostringstream ss;
    for (size_t a = 0; a < sweeps.size(); ++a)
        for (size_t b = a + 1; b < sweeps.size(); ++b) {
            double best = -1.0;
            for (size_t i = 0; i + 1 < grid.size(); ++i) {
                const double d0 = sweeps[a].dgp_dx[i] - sweeps[b].dgp_dx[i];
                const double d1 = sweeps[a].dgp_dx[i + 1] - sweeps[b].dgp_dx[i + 1];
                if (d0 == 0.0 || d0 * d1 < 0.0) {
                    const double xc = grid[i] + step * (d0 == d1 ? 0.0 : d0 / (d0 - d1));
                    if (best < 0.0 || std::abs(xc - 0.5) < std::abs(best - 0.5)) best = xc;
                }
            }
            const bool pair_ok = best >= 0.0 && std::abs(best - 0.5) <= 0.004;
            ok = ok && pair_ok;
            ss << "N=" << ns[a] << "/" << ns[b] << " cross at x=" << best << "; ";
        }
    ss << "(need 0.500 +- 0.004 each)";
    report(6, "Fig. 4 derivative crossings", ok, ss.str());
}

void criterion_7_scaling_law() {
    const auto grid = qpt::uniform_grid(0.0, 2.0, 0.002);
    const std::vector<int> ladder{100, 200, 300, 400, 600, 800, 1000};
    std::vector<qpt::CriticalPoint> points;
    for (const int n : ladder) points.push_back(qpt::find_critical(qpt::gp_vs_x(n, grid, 1.0)));

    bool monotone = true, positive = true, y_decreasing = true;
    for (size_t i = 0; i < points.size(); ++i) {
        positive = positive && points[i].delta > 0.0;
        if (i > 0) {
            monotone = monotone && points[i].x_star < points[i - 1].x_star;
            y_decreasing = y_decreasing
                && points[i].n_particles * points[i].delta < points[i - 1].n_particles * points[i - 1].delta;
        }
    }
    const auto fit = qpt::power_law_fit(points);
    const bool exponent_ok = fit.exponent >= -0.72 && fit.exponent <= -0.60;
    const bool ok = monotone && positive && y_decreasing && exponent_ok;
    std::ostringstream ss;
    ss << "exponent a = " << fit.exponent << " +- " << fit.stderr_exponent
       << " (need [-0.72,-0.60]; reference -0.657 +- 0.009), implied kappa_c^q - kappa_c exponent "
       << fit.implied_full_exponent() << " (reference -1.657), x_star decreasing = " << monotone
       << ", delta > 0 = " << positive << "; prefactor ln = " << fit.log_prefactor << " +- "
       << fit.stderr_prefactor << " (reference 0.31 +- 0.05, reported without assertion)";
    report(7, "finite-size scaling law", ok, ss.str());
}

void criterion_8_oracle_equivalences() {
    // (a) spectral evolution vs an independent RK4 integration at Omega t = 5
    const int n = 100;
    const SpinSpace space = SpinSpace::for_particles(n);
    const auto mst = model::params_from_eta(1.0, 2.0 / n, 2.0 / (n * 100.0), n);
    const auto psi0 = spin::coherent_state(space, kPi / 2.0, 0.0);
    const auto decomp = spectral::eig_symmetric(model::build_hamiltonian(mst, space));
    const auto via_spectrum = spectral::evolve(decomp, psi0, 5.0, mst.omega);
    const Eigen::VectorXcd via_rk4 = oracles::rk4_evolve(model::hamiltonian_bands(mst, space),
                                                         mst.omega, psi0.amplitudes, 5.0, 5e-5);
    const double evolve_diff = (via_spectrum.amplitudes - via_rk4).cwiseAbs().maxCoeff();
    const bool ok_a = evolve_diff <= 1e-6;

    // (b) parity-block extremal pair vs the dense decomposition up to N = 400
    double worst_energy = 0.0, worst_gp = 0.0;
    for (const int nn : {50, 100, 200, 400}) {
        const SpinSpace sp = SpinSpace::for_particles(nn);
        for (const double x : {0.3, 0.45}) {
            const auto p = model::derive_params(1.0, x / nn, 0.0, nn);
            const auto top = qpt::highest_energy_state(p, sp);
            const auto dense = spectral::eig_symmetric(model::build_hamiltonian(p, sp));
            worst_energy =
                std::max(worst_energy, std::abs(top.energy - dense.eigenvalues[sp.dim - 1]));
            const auto dense_state =
                spin::make_state(sp, dense.eigenvectors.col(sp.dim - 1).cast<Complex>());
            worst_gp = std::max(worst_gp, std::abs(obs::generalized_purity(top.state)
                                                   - obs::generalized_purity(dense_state)));
        }
    }
    const bool ok_b = worst_energy <= 1e-9 && worst_gp <= 1e-9;

    // (c) banded closed-form assembly vs explicit operator products
    double worst_entry = 0.0;
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 6; ++trial) {
        const int nn = 2 + static_cast<int>(u(rng) * 120);
        const SpinSpace sp = SpinSpace::for_particles(nn);
        const auto p = model::derive_params(0.5 + u(rng), u(rng) * 2.0 / nn, u(rng) * 0.6, nn);
        const Eigen::MatrixXd diff = model::build_hamiltonian(p, sp)
                                   - oracles::hamiltonian_from_products(p, sp);
        worst_entry = std::max(worst_entry, diff.cwiseAbs().maxCoeff());
    }
    const bool ok_c = worst_entry <= 1e-12;

    std::ostringstream ss;
    ss << "(a) evolve vs RK4 max amplitude diff = " << evolve_diff << " (tol 1e-6); "
       << "(b) extremal vs dense: energy diff " << worst_energy << ", GP diff " << worst_gp
       << " (tol 1e-9); (c) banded vs products max entry diff = " << worst_entry
       << " (tol 1e-12)";
    report(8, "oracle equivalences", ok_a && ok_b && ok_c, ss.str());
}

void criterion_9_structural_invariants() {
    std::ostringstream ss;
    bool ok = true;

    // commutators and Casimir at J = 50
    {
        const SpinSpace space = SpinSpace::for_particles(100);
        const auto ops = spin::build_spin_operators(space);
        const Eigen::MatrixXcd jx = ops.jx.cast<Complex>();
        const Eigen::MatrixXcd jz = ops.jz.cast<Complex>();
        const Complex i_unit(0.0, 1.0);
        const double comm =
            (jx * ops.jy - ops.jy * jx - i_unit * jz).cwiseAbs().maxCoeff();
        const double casimir =
            (jx * jx + ops.jy * ops.jy + jz * jz
             - space.j * (space.j + 1.0) * Eigen::MatrixXcd::Identity(space.dim, space.dim))
                .cwiseAbs()
                .maxCoeff();
        ok = ok && comm <= 1e-12 && casimir <= 1e-10;
        ss << "commutator " << comm << " (tol 1e-12), Casimir " << casimir << " (tol 1e-10); ";
    }

    // unitarity over the full horizon
    {
        const SpinSpace space = SpinSpace::for_particles(100);
        const auto p = model::params_from_eta(1.0, 0.02, 0.0002, 100);
        const auto decomp = spectral::eig_symmetric(model::build_hamiltonian(p, space));
        const auto psi0 = spin::coherent_state(space, kPi / 2.0, 0.0);
        const double defect = spin::norm_defect(spectral::evolve(decomp, psi0, 300.0, p.omega));
        ok = ok && defect <= 1e-12;
        ss << "norm defect at t=300: " << defect << " (tol 1e-12); ";
    }

    // Q normalization on the default grid
    {
        const SpinSpace space = SpinSpace::for_particles(100);
        const auto grid = obs::SphereGrid::make(128, 256);
        const auto coherent = spin::coherent_state(space, 1.1, 0.7);
        const auto top =
            qpt::highest_energy_state(model::derive_params(1.0, 0.01, 0.0, 100), space);
        double worst = 0.0;
        for (const auto& state : {coherent, top.state}) {
            const double quad =
                (space.dim) / (4.0 * kPi) * obs::integrate(obs::husimi_q(state, grid));
            worst = std::max(worst, std::abs(quad - 1.0));
        }
        ok = ok && worst <= 2e-3;
        ss << "Q quadrature defect " << worst << " (tol 2e-3); ";
    }

    // eigenstate <Jx> = <Jy> = 0
    {
        const SpinSpace space = SpinSpace::for_particles(100);
        const auto ops = spin::build_spin_operators(space);
        const auto top =
            qpt::highest_energy_state(model::derive_params(1.0, 0.01, 0.0, 100), space);
        const double jx = std::abs(spin::expectation(ops.jx, top.state));
        const double jy = std::abs(spin::expectation(ops.jy, top.state));
        ok = ok && jx <= 1e-10 && jy <= 1e-10;
        ss << "eigenstate <Jx>, <Jy> = " << jx << ", " << jy << " (tol 1e-10); ";
    }

    // determinism: byte-identical reruns and worker-count independence
    {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "spinwell_acceptance";
        fs::create_directories(dir);
        cli::EvolveConfig cfg;
        cli::apply_preset("fig1-mst", cfg);
        cfg.tmax = 2.0;
        cfg.output = (dir / "det_a.csv").string();
        cli::run_evolve(cfg);
        cfg.output = (dir / "det_b.csv").string();
        cli::run_evolve(cfg);
        const auto read = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };
        const bool bytes_equal = read(dir / "det_a.csv") == read(dir / "det_b.csv");

        const auto grid = qpt::uniform_grid(0.0, 0.5, 0.01);
        const auto serial = qpt::gp_vs_x(60, grid, 1.0, 0.0, 1);
        const auto parallel = qpt::gp_vs_x(60, grid, 1.0, 0.0, 4);
        bool sweep_equal = true;
        for (size_t i = 0; i < grid.size(); ++i)
            sweep_equal = sweep_equal && serial.gp[i] == parallel.gp[i];

        ok = ok && bytes_equal && sweep_equal;
        ss << "byte-identical rerun = " << bytes_equal
           << ", worker-count independent sweep = " << sweep_equal;
    }

    report(9, "structural invariants", ok, ss.str());
}

} // namespace

int main() {
    std::printf("spinwell acceptance suite\n");
    criterion_1_coherent_purity();
    criterion_2_su2_invariance();
    criterion_3_mst();
    criterion_4_jo();
    criterion_5_qfunction_peaks();
    criterion_6_crossings();
    criterion_7_scaling_law();
    criterion_8_oracle_equivalences();
    criterion_9_structural_invariants();
    std::printf(g_all_ok ? "all criteria passed\n" : "FAILURES present\n");
    return g_all_ok ? 0 : 1;
}
