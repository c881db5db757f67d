// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "eit_qnlse/cli.hpp"
#include "eit_qnlse/dispersion.hpp"
#include "eit_qnlse/params.hpp"
#include "eit_qnlse/propagator.hpp"
#include "eit_qnlse/reduction.hpp"
#include "eit_qnlse/soliton.hpp"
#include "eit_qnlse/twophoton.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace eitq;
namespace fs = std::filesystem;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

struct Verdict
{
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Criterion = std::function<void(Verdict&)>;

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cd oracle_k(const MediumParams& p, double omega)
{
    const cd d21(p.delta2, p.gamma21_deph);
    const cd d31(p.delta3, 0.5 * (p.gamma13 + p.gamma23));
    return omega / p.c_light + *p.kappa13 * (omega + d21) / (std::norm(p.omega_c) - (omega + d21) * (omega + d31));
}

// 1 -----------------------------------------------------------------
void calibration_regression(Verdict& v)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto cal = calibrate(rb87_preset(), 4.82e-15, -2.28e-7);
    const double k2 = taylor_coefficients(cal.params).K2.real();
    const double w = kerr_coefficient(cal.params).real();
    const double dt = seconds_since(t0);
    v.detail << "K2 rel " << rel(k2, 4.82e-15) << ", W rel " << rel(w, -2.28e-7) << ", " << dt << " s";
    v.require(rel(k2, 4.82e-15) < 1e-6, "K2 within 1e-6");
    v.require(rel(w, -2.28e-7) < 1e-6, "W within 1e-6");
    v.require(dt < 1.0, "runtime < 1 s");
}

// 2 -----------------------------------------------------------------
void cross_prediction(Verdict& v)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = calibrate(rb87_preset()).params;
    const auto c = nlse_coefficients(p);
    const auto sp = soliton_params(c, 0.5, 0.1, 2.4e-7);
    const double vs_c = sp.Vs / p.c_light;
    const double L = cell_length_for_mass(c, -1.08e-6);
    const auto m = effective_masses(c, L);
    const double dt = seconds_since(t0);
    v.detail << "Vs/c " << vs_c << " (target 2.11e-4), L " << L << " cm gives m0 " << m.m0 << ", a0 " << m.a0
             << " (target 1.31), " << dt << " s";
    v.require(rel(vs_c, 2.11e-4) < 0.10, "Vs/c within 10%");
    v.require(rel(m.m0, -1.08e-6) < 1e-9, "m0 reproduced");
    v.require(rel(m.a0, 1.31) < 0.10, "a0 within 10%");
    v.require(dt < 1.0, "runtime < 1 s");
}

// 3 -----------------------------------------------------------------
void dispersion_correctness(Verdict& v)
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double eps = std::numeric_limits<double>::epsilon();
    double worst1 = 0.0, worst2 = 0.0;
    for (int i = 0; i < 20; ++i) {
        MediumParams p = rb87_preset();
        p.gamma13 = kTwoPi * 1e6 * (1.0 + 5.0 * u(rng));
        p.gamma23 = kTwoPi * 1e6 * (1.0 + 5.0 * u(rng));
        p.gamma21_deph = kTwoPi * 5e3 * u(rng);
        p.delta3 = kTwoPi * 1e6 * (20.0 + 80.0 * u(rng)) * (u(rng) < 0.5 ? -1.0 : 1.0);
        p.delta2 = kTwoPi * 1e6 * (-1.5 + 3.0 * u(rng));
        p.omega_c = std::polar(kTwoPi * 1e6 * (20.0 + 20.0 * u(rng)), kTwoPi * u(rng));
        p.kappa13 = 1e9 * (1.0 + 9.0 * u(rng));
        const auto t = taylor_coefficients(p);
        // transparency window width
        const double scale = std::norm(p.omega_c) / std::abs(cd(p.delta3, p.gamma31()));
        const double h1 = std::cbrt(eps) * scale, h2 = std::pow(eps, 1.0 / 6.0) * scale;
        const cd fd1 = (oracle_k(p, h1) - oracle_k(p, -h1)) / (2.0 * h1);
        auto second = [&](double h) { return (oracle_k(p, h) - 2.0 * oracle_k(p, 0.0) + oracle_k(p, -h)) / (h * h); };
        // Richardson-extrapolated central second difference
        const cd fd2 = (4.0 * second(h2 / 2.0) - second(h2)) / 3.0;
        worst1 = std::max(worst1, rel(t.K1, fd1));
        worst2 = std::max(worst2, rel(t.K2, fd2));
    }
    auto p = calibrate(rb87_preset()).params;
    const cd dark = linear_dispersion(-p.delta2, p);
    v.detail << "20 sets: max K1 rel " << worst1 << ", max K2 rel " << worst2
             << "; K(-delta2) - (-delta2/c) = " << std::abs(dark - cd(-p.delta2 / p.c_light, 0.0));
    v.require(worst1 < 1e-6, "K1 within 1e-6");
    v.require(worst2 < 1e-6, "K2 within 1e-6");
    v.require(dark == cd(-p.delta2 / p.c_light, 0.0), "dark resonance exact");
}

// 4 -----------------------------------------------------------------
void kerr_oracle(Verdict& v)
{
    const auto p = rb87_preset();
    const cd d21(p.delta2, p.gamma21_deph);
    const cd d31(p.delta3, p.gamma31());
    const cd chi = d21 / (std::norm(p.omega_c) - d21 * d31);
    const auto fit = kerr_fit(p);
    KerrFitOptions half;
    for (double a : kDefaultKerrLadder)
        half.ladder.push_back(a / 2.0);
    const auto fit_half = kerr_fit(p, half);
    const double drift = rel(fit_half.c3, fit.c3);
    v.detail << "c1 rel " << rel(fit.c1, chi) << ", residual " << fit.residual << ", c3 shift on halving "
             << drift;
    v.require(rel(fit.c1, chi) < 1e-8, "c1 within 1e-8");
    v.require(fit.residual < 1e-4, "residual < 1e-4");
    v.require(drift < 0.01, "c3 stable to 1%");
}

// 5 -----------------------------------------------------------------
void soliton_suite(Verdict& v)
{
    const auto c = nlse_coefficients(calibrate(rb87_preset()).params);
    const auto sp = soliton_params(c, 0.5, 0.1, 2.4e-7);
    const auto model = NlseModel::from(c);
    auto env = [&](double xi, double t) { return soliton_envelope_comoving(sp, xi, t); };

    const auto probe = make_grid(1024, 64.0 * sp.l0, [](double) { return cd(0.0); }, sp.Vg);
    std::vector<double> res;
    for (double f : {1e-2, 5e-3, 2.5e-3})
        res.push_back(residual(env, probe, model, 0.3 * sp.t0, f * sp.t0));
    const double o1 = std::log2(res[0] / res[1]), o2 = std::log2(res[1] / res[2]);

    const auto t0 = std::chrono::steady_clock::now();
    const double T = 5.0 * sp.t0 / (4.0 * sp.eta0 * sp.eta0);
    const auto grid = make_grid(4096, 64.0 * sp.l0, [&](double xi) { return env(xi, 0.0); }, sp.Vg, true);
    const auto run = propagate(grid, model, T, T / 1e4, 100);
    const double dt = seconds_since(t0);
    const auto& a = run.trajectory.front();
    const auto& b = run.trajectory.back();
    const double drift = rel(b.norm, a.norm);
    const double peak = rel(b.peak_abs, a.peak_abs);
    const double vel = (b.peak_xi - a.peak_xi) / (b.t - a.t);
    const double vel_err = rel(vel, 4.0 * sp.xi0 * sp.l0 / sp.t0);

    v.detail << "residual order " << o1 << ", " << o2 << "; n=4096, " << run.steps << " steps: norm drift "
             << drift << ", peak change " << peak << ", velocity error " << vel_err << ", " << dt << " s";
    v.require(std::abs(o1 - 2.0) < 0.2 && std::abs(o2 - 2.0) < 0.2, "residual order 2");
    v.require(drift < 1e-10, "norm drift < 1e-10");
    v.require(peak < 1e-3, "peak height within 0.1%");
    v.require(vel_err < 0.02, "velocity within 2%");
    v.require(dt < 30.0, "runtime < 30 s");
}

// 6 -----------------------------------------------------------------
void two_photon(Verdict& v)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto c = nlse_coefficients(calibrate(rb87_preset()).params);
    const auto m = effective_masses(c, cell_length_for_mass(c, -1.08e-6));
    const double zeta = m.zeta0;
    std::vector<double> ez, ee;
    for (double f : {0.016, 0.008, 0.004}) {
        const double dx = f / zeta;
        const auto n = static_cast<std::size_t>(2 * std::ceil(15.0 / f) + 1);
        const auto lat = lattice_ground_state(m.m0, m.a0, n, dx);
        if (!lat.bound) {
            v.require(false, "bound state found");
            return;
        }
        ez.push_back(rel(lat.zeta0_fit, zeta));
        ee.push_back(rel(lat.E_rel, lat.E_rel_analytic));
    }
    const double oz = std::log2(ez[1] / ez[2]), oe = std::log2(ee[1] / ee[2]);
    const auto rep = lattice_ground_state(m.m0, -m.a0, 2001, 0.01 / zeta);
    const double dt = seconds_since(t0);
    v.detail << "finest: zeta0 rel " << ez.back() << ", E_rel rel " << ee.back() << "; observed order " << oz
             << " (zeta0), " << oe << " (E_rel), exact-lattice prediction 2; repulsive bound="
             << (rep.bound ? "yes" : "no") << ", " << dt << " s";
    v.require(ez.back() < 0.01, "zeta0 within 1%");
    v.require(ee.back() < 0.01, "E_rel within 1%");
    v.require(std::abs(oz - 2.0) < 0.2 && std::abs(oe - 2.0) < 0.2, "convergence order");
    v.require(!rep.bound, "repulsive control unbound");
    v.require(dt < 60.0, "runtime < 60 s");
}

// 7 -----------------------------------------------------------------
std::vector<std::vector<double>> read_csv(const fs::path& p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

void figure_data(Verdict& v)
{
    const auto dir = fs::temp_directory_path() / "eitq_acceptance";
    fs::remove_all(dir);
    const std::string cfg = std::string(EITQ_CONFIG_DIR) + "/rb87_calibrated.cfg";
    std::ostringstream sink;
    auto cli = [&](std::vector<std::string> args) {
        std::vector<const char*> argv{"eit-qnlse"};
        for (const auto& a : args)
            argv.push_back(a.c_str());
        return run_cli(int(argv.size()), argv.data(), sink, sink);
    };
    const std::size_t ms = 101, ns = 201, nt = 51;
    const double s_max = 10.0, t_max = 5.0;
    if (cli({"boundstate", cfg, "--map-samples", std::to_string(ms), "--out", (dir / "b").string()}) != 0 ||
        cli({"soliton", cfg, "--plot-grid", "201x51", "--out", (dir / "s").string()}) != 0) {
        v.require(false, "CLI runs");
        return;
    }

    // density map
    const auto map = read_csv(dir / "b" / "density_map.csv");
    bool symmetric = map.size() == ms * ms, ridge = true, monotone = true;
    auto at = [&](std::size_t i, std::size_t j) { return map[i * ms + j][2]; };
    for (std::size_t i = 0; symmetric && i < ms; ++i)
        for (std::size_t j = 0; j < ms; ++j) {
            symmetric = symmetric && at(i, j) == at(j, i);
            if (j != i)
                ridge = ridge && at(i, j) < at(i, i);
            if (j > i)
                monotone = monotone && at(i, j) < at(i, j - 1);
        }
    const auto report = nlohmann::json::parse(std::ifstream(dir / "b" / "boundstate.json"));
    const double zeta = report.at("zeta0_analytic").get<double>();
    const double L = report.at("L_cm").get<double>();
    const double sep = (map[ms - 1][1] - map[0][1]) * L;
    const double rate = std::log(at(0, 0) / at(0, ms - 1)) / sep;
    const double rate_err = rel(rate, 2.0 * zeta);

    // soliton surface: |B| slices against the t = 0 slice shifted by the comoving drift
    const auto surf = read_csv(dir / "s" / "soliton_surface.csv");
    bool axes = surf.size() == ns * nt;
    const auto table = nlohmann::json::parse(std::ifstream(dir / "s" / "soliton_table.json"));
    const double xi0 = table.at("xi0").get<double>();
    const double eta0 = table.at("eta0").get<double>();
    std::vector<double> s(ns), ref(ns);
    double peak = 0.0;
    for (std::size_t i = 0; i < ns; ++i) {
        s[i] = surf[i][0];
        ref[i] = surf[i][2];
        peak = std::max(peak, ref[i]);
        axes = axes && surf[i][1] == 0.0;
    }
    auto interp = [&](double x) {
        if (x <= s.front() || x >= s.back())
            return 0.0;
        const double f = (x - s.front()) / (s[1] - s[0]);
        const auto k = std::min<std::size_t>(ns - 2, std::size_t(f));
        const double w = f - double(k);
        return (1.0 - w) * ref[k] + w * ref[k + 1];
    };
    double sech_dev = 0.0;
    for (std::size_t i = 0; i < ns; ++i)
        sech_dev = std::max(sech_dev, std::abs(ref[i] - peak / std::cosh(2.0 * eta0 * s[i])) / peak);
    double slice_dev = 0.0;
    for (std::size_t it = 1; it < nt; ++it)
        for (std::size_t i = 0; i < ns; ++i) {
            const auto& row = surf[it * ns + i];
            axes = axes && row[0] == s[i] && std::abs(row[1] - t_max * double(it) / double(nt - 1)) < 1e-12;
            const double shifted = row[0] - 4.0 * xi0 * row[1];
            if (std::abs(shifted) < s_max - 1.0)
                slice_dev = std::max(slice_dev, std::abs(row[2] - interp(shifted)) / peak);
        }
    fs::remove_all(dir);

    v.detail << "density map: symmetric " << symmetric << ", ridge " << ridge << ", monotone " << monotone
             << ", decay rate rel " << rate_err << "; surface: sech deviation " << sech_dev
             << ", slice-to-slice max deviation " << slice_dev;
    v.require(symmetric, "map symmetric");
    v.require(ridge && monotone, "diagonal ridge, monotone decay");
    v.require(rate_err < 0.01, "decay rate 2 zeta0");
    v.require(axes, "surface axes s and t/t0");
    v.require(sech_dev < 0.01, "sech profile");
    v.require(slice_dev < 0.01, "slice-to-slice deviation < 1%");
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, Criterion>> criteria{
        {"calibration regression", calibration_regression},
        {"cross-prediction of reference numbers", cross_prediction},
        {"dispersion correctness", dispersion_correctness},
        {"Kerr oracle consistency", kerr_oracle},
        {"soliton / NLSE suite", soliton_suite},
        {"two-photon oracle equivalence", two_photon},
        {"figure data", figure_data},
    };
    std::cout << std::setprecision(4);
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        v.detail << std::setprecision(4);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double dt = seconds_since(t0);
        failed += !v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << " ("
                  << std::fixed << std::setprecision(2) << dt << " s)" << std::defaultfloat
                  << std::setprecision(4) << ": " << v.detail.str() << '\n';
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
