#include "eit_qnlse/cli.hpp"

#include "eit_qnlse/dispersion.hpp"
#include "eit_qnlse/errors.hpp"
#include "eit_qnlse/io.hpp"
#include "eit_qnlse/params.hpp"
#include "eit_qnlse/propagator.hpp"
#include "eit_qnlse/reduction.hpp"
#include "eit_qnlse/soliton.hpp"
#include "eit_qnlse/twophoton.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef EIT_QNLSE_VERSION
#define EIT_QNLSE_VERSION "dev"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace eitq {

const char* version() { return EIT_QNLSE_VERSION; }

namespace {

json cplx(cd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json params_json(const MediumParams& p)
{
    json j{{"gamma13", p.gamma13},           {"gamma23", p.gamma23},
           {"gamma21_deph", p.gamma21_deph}, {"delta2", p.delta2},
           {"delta3", p.delta3},             {"omega_c", cplx(p.omega_c)},
           {"atom_density", p.atom_density}, {"k_p", p.k_p},
           {"cell_length", p.cell_length},   {"c_light", p.c_light}};
    j["kappa13"] = p.kappa13 ? json(*p.kappa13) : json(nullptr);
    j["gp_abs2"] = p.gp_abs2 ? json(*p.gp_abs2) : json(nullptr);
    return j;
}

// Shared state of one command invocation: loaded params, output bookkeeping,
// manifest.
class Run
{
public:
    Run(std::string command, std::string config_path, fs::path out_dir)
        : m_command(std::move(command)), m_config_path(std::move(config_path)),
          m_out_dir(std::move(out_dir)), m_start(std::chrono::steady_clock::now())
    {
    }

    const MediumParams& load()
    {
        if (m_config_path.empty())
            throw ParameterError("no config file given");
        m_params = load_config(m_config_path);
        m_config_hash = sha256_hex(format_config(m_params));
        return m_params;
    }

    const MediumParams& params() const { return m_params; }

    // Couplings from the config, or calibrated on the fly against the default
    // targets unless the caller insists on a calibrated config.
    MediumParams calibrated(bool require)
    {
        if (m_params.calibrated())
            return m_params;
        if (require)
            throw ParameterError("config has no kappa13/gp_abs2; run `eit-qnlse calibrate` first");
        m_summary["calibrated_on_the_fly"] = true;
        return calibrate(m_params).params;
    }

    fs::path output(const std::string& name)
    {
        fs::create_directories(m_out_dir);
        fs::path p = m_out_dir / name;
        m_outputs.push_back(p.string());
        return p;
    }

    json& summary() { return m_summary; }
    json& flags() { return m_flags; }

    void write_manifest()
    {
        const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start);
        json m{{"schema", "eit_qnlse.manifest"},
               {"schema_version", 1},
               {"command", m_command},
               {"tool_version", version()},
               {"config_path", m_config_path},
               {"config_hash", m_config_hash},
               {"parameters", params_json(m_params)},
               {"flags", m_flags},
               {"summary", m_summary},
               {"wall_time_s", elapsed.count()}};
        const fs::path path = output(m_command + "_manifest.json");
        m["outputs"] = m_outputs;
        std::ofstream(path) << m.dump(2) << '\n';
    }

private:
    std::string m_command;
    std::string m_config_path;
    fs::path m_out_dir;
    std::chrono::steady_clock::time_point m_start;
    MediumParams m_params;
    std::string m_config_hash;
    std::vector<std::string> m_outputs;
    json m_summary = json::object();
    json m_flags = json::object();
};

std::ofstream open_out(const fs::path& p)
{
    std::ofstream os(p);
    if (!os)
        throw ParameterError("cannot write '" + p.string() + "'");
    return os;
}

// ------------------------------------------------------------ dispersion

struct DispersionArgs
{
    std::string config;
    double omega_min = -kTwoPi * 100e6;
    double omega_max = kTwoPi * 100e6;
    std::size_t n = 2001;
    std::string out = ".";
    bool require_calibrated = false;
};

void cmd_dispersion(const DispersionArgs& a, std::ostream& out)
{
    Run run("dispersion", a.config, a.out);
    run.load();
    run.flags() = {{"omega_min", a.omega_min}, {"omega_max", a.omega_max}, {"n", a.n},
                   {"require_calibrated", a.require_calibrated}};
    MediumParams p = run.params();
    if (!p.kappa13)
        p = run.calibrated(a.require_calibrated);

    const auto prof = transparency_scan(p, a.omega_min, a.omega_max, a.n);
    {
        auto os = open_out(run.output("dispersion.csv"));
        write_scan_csv(prof, os);
    }
    const auto t = taylor_coefficients(p);
    const auto eit = eit_condition(p);
    json& s = run.summary();
    s["kappa13"] = *p.kappa13;
    s["K0"] = cplx(t.K0);
    s["K1"] = cplx(t.K1);
    s["K2"] = cplx(t.K2);
    s["Vg"] = t.Vg;
    s["Vg_over_c"] = t.Vg / p.c_light;
    if (p.gp_abs2)
        s["W"] = cplx(kerr_coefficient(p));
    s["omega_min_absorption"] = prof.omega_min_absorption;
    s["absorption_peak_below"] = prof.peak_below ? json(*prof.peak_below) : json(nullptr);
    s["absorption_peak_above"] = prof.peak_above ? json(*prof.peak_above) : json(nullptr);
    s["eit_ratio"] = eit.ratio;
    s["eit_satisfied"] = eit.satisfied;
    s["eit_floor_used"] = eit.floor_used;
    {
        auto os = open_out(run.output("dispersion_summary.json"));
        os << s.dump(2) << '\n';
    }
    run.write_manifest();
    out << "Vg/c = " << format_double(t.Vg / p.c_light) << "  K2 = " << format_double(t.K2.real())
        << " cm^-1 s^2\n";
}

// ------------------------------------------------------------ calibrate

struct CalibrateArgs
{
    std::string config;
    double k2_target = kReferenceK2;
    double w_target = kReferenceW;
    std::string out = ".";
};

void cmd_calibrate(const CalibrateArgs& a, std::ostream& out)
{
    Run run("calibrate", a.config, a.out);
    run.load();
    run.flags() = {{"k2_target", a.k2_target}, {"w_target", a.w_target}};
    const auto cal = calibrate(run.params(), a.k2_target, a.w_target);
    save_config(cal.params, run.output("calibrated.cfg"));
    const json report = to_json(cal.report);
    {
        auto os = open_out(run.output("calibration_report.json"));
        os << report.dump(2) << '\n';
    }
    run.summary() = report;
    run.write_manifest();
    out << "kappa13 = " << format_double(cal.report.kappa13)
        << "  gp_abs2 = " << format_double(cal.report.gp_abs2)
        << "  residuals K2 " << format_double(cal.report.k2_residual) << " W "
        << format_double(cal.report.w_residual) << '\n';
}

// ------------------------------------------------------------ soliton

struct SolitonArgs
{
    std::string config;
    double eta0 = 0.5;
    double xi0 = 0.1;
    double t0 = 2.4e-7;
    double z0 = 0.0;
    double phi0 = 0.0;
    std::string plot_grid = "201x51";
    double s_max = 10.0;
    double t_max = 5.0;
    std::string out = ".";
    bool require_calibrated = false;
};

std::pair<std::size_t, std::size_t> parse_plot_grid(const std::string& g)
{
    const auto x = g.find('x');
    std::size_t ns = 0, nt = 0;
    try {
        if (x == std::string::npos)
            throw std::invalid_argument("");
        ns = std::stoul(g.substr(0, x));
        nt = std::stoul(g.substr(x + 1));
    } catch (const std::exception&) {
        throw ParameterError("--plot-grid must look like 201x51");
    }
    if (ns < 2 || nt < 2)
        throw ParameterError("--plot-grid needs at least 2 points per axis");
    return {ns, nt};
}

void cmd_soliton(const SolitonArgs& a, std::ostream& out)
{
    Run run("soliton", a.config, a.out);
    run.load();
    run.flags() = {{"eta0", a.eta0}, {"xi0", a.xi0}, {"t0", a.t0}, {"z0", a.z0},
                   {"phi0", a.phi0}, {"plot_grid", a.plot_grid}, {"s_max", a.s_max},
                   {"t_max", a.t_max}};
    const auto [ns, nt] = parse_plot_grid(a.plot_grid);
    const MediumParams p = run.calibrated(a.require_calibrated);
    const auto coeffs = nlse_coefficients(p);
    const auto sp = soliton_params(coeffs, a.eta0, a.xi0, a.t0, a.z0, a.phi0);
    const auto pc = probe_carrier(p);

    // s = (z - Vg t)/l0 against t/t0
    {
        auto os = open_out(run.output("soliton_surface.csv"));
        CsvWriter w(os, {"s", "t_over_t0", "absB"});
        for (std::size_t it = 0; it < nt; ++it) {
            const double tau = a.t_max * double(it) / double(nt - 1);
            for (std::size_t is = 0; is < ns; ++is) {
                const double s = -a.s_max + 2.0 * a.s_max * double(is) / double(ns - 1);
                w.row({s, tau, std::abs(soliton_envelope_comoving(sp, s * sp.l0, tau * sp.t0))});
            }
        }
    }
    {
        auto env = open_out(run.output("soliton_field.csv"));
        auto probe = open_out(run.output("soliton_probe.csv"));
        CsvWriter we(env, {"z_cm", "t_s", "ReB", "ImB", "absB"});
        CsvWriter wp(probe, {"z_cm", "t_s", "Ep"});
        for (std::size_t is = 0; is < ns; ++is) {
            const double z = sp.z0 + sp.l0 * (-a.s_max + 2.0 * a.s_max * double(is) / double(ns - 1));
            const cd b = soliton_envelope(sp, z, 0.0);
            we.row({z, 0.0, b.real(), b.imag(), std::abs(b)});
            wp.row({z, 0.0, probe_field(sp, pc, z, 0.0)});
        }
    }

    const auto coh = coherence_profiles(sp, pc, sp.z0, 0.0);
    json table{{"eta0", sp.eta0},       {"xi0", sp.xi0},
               {"t0", sp.t0},           {"B0", sp.B0},
               {"l0_cm", sp.l0},        {"Vg", sp.Vg},
               {"Vg_over_c", sp.Vg / p.c_light},
               {"Vs", sp.Vs},           {"Vs_over_c", sp.Vs / p.c_light},
               {"K0", coeffs.K0.real()}, {"K2", coeffs.K2.real()},
               {"W", coeffs.W.real()},  {"E_p0_V_per_m", probe_e_p0(sp, pc)},
               {"peak_abs_S31", std::abs(coh.s31)}, {"peak_abs_S21", std::abs(coh.s21)},
               {"carrier_wavenumber", pc.k_p + pc.K0 - 2.0 * sp.xi0 / sp.l0}};
    {
        auto os = open_out(run.output("soliton_table.json"));
        os << table.dump(2) << '\n';
    }
    {
        auto os = open_out(run.output("soliton_table.csv"));
        os << "quantity,value\n";
        for (const auto& [k, v] : table.items())
            os << k << ',' << format_double(v.get<double>()) << '\n';
    }
    run.summary() = table;
    run.write_manifest();
    out << "Vs/c = " << format_double(sp.Vs / p.c_light) << "  l0 = " << format_double(sp.l0)
        << " cm  B0 = " << format_double(sp.B0) << '\n';
}

// ------------------------------------------------------------ propagate

struct PropagateArgs
{
    std::string config;
    std::size_t grid = 4096;
    double span_l0 = 64.0;
    double dt = 0.0; // default T/1e4
    double T = 0.0;  // default 5 dispersion times
    std::string init = "soliton";
    std::string init_file;
    double sech_amp = 1.0;
    double eta0 = 0.5;
    double xi0 = 0.1;
    double t0 = 2.4e-7;
    std::size_t sample_every = 100;
    std::size_t snapshot_every = 500;
    std::string out = ".";
    bool require_calibrated = false;
};

std::vector<cd> read_field_csv(const std::string& path, std::size_t n)
{
    std::ifstream in(path);
    if (!in)
        throw ParameterError("cannot open init file '" + path + "'");
    std::string line;
    std::getline(in, line); // header
    std::vector<cd> v;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ','))
            throw ConfigError(path, lineno, "", "expected xi_cm,ReB,ImB");
        try {
            v.emplace_back(std::stod(b), std::stod(c));
        } catch (const std::exception&) {
            throw ConfigError(path, lineno, "", "cannot parse numbers");
        }
    }
    if (v.size() != n)
        throw ParameterError("init file has " + std::to_string(v.size()) + " rows, grid is " +
                             std::to_string(n));
    return v;
}

void cmd_propagate(const PropagateArgs& a, std::ostream& out)
{
    Run run("propagate", a.config, a.out);
    run.load();
    const MediumParams p = run.calibrated(a.require_calibrated);
    const auto coeffs = nlse_coefficients(p);
    const auto sp = soliton_params(coeffs, a.eta0, a.xi0, a.t0);
    const double T = a.T > 0.0 ? a.T : 5.0 * sp.t0 / (4.0 * sp.eta0 * sp.eta0);
    const double dt = a.dt != 0.0 ? a.dt : T / 1e4;
    if (!(dt > 0.0) || dt > T)
        throw ParameterError("--dt must satisfy 0 < dt <= T (T = " + format_double(T) + " s)");
    run.flags() = {{"grid", a.grid},     {"span_l0", a.span_l0}, {"dt", dt},
                   {"T", T},             {"init", a.init},       {"init_file", a.init_file},
                   {"sech_amp", a.sech_amp}, {"eta0", a.eta0},   {"xi0", a.xi0},
                   {"t0", a.t0},         {"sample_every", a.sample_every},
                   {"snapshot_every", a.snapshot_every}};

    const double span = a.span_l0 * sp.l0;
    FieldGrid grid;
    if (a.init == "soliton") {
        grid = make_grid(a.grid, span, [&](double xi) { return soliton_envelope_comoving(sp, xi, 0.0); }, sp.Vg);
    } else if (a.init == "sech") {
        grid = make_grid(a.grid, span,
                         [&](double xi) { return cd(a.sech_amp * sp.B0 / std::cosh(xi / sp.l0)); }, sp.Vg);
    } else if (a.init == "file") {
        const auto v = read_field_csv(a.init_file, a.grid);
        std::size_t i = 0;
        grid = make_grid(a.grid, span, [&](double) { return v[i++]; }, sp.Vg);
    } else {
        throw ParameterError("--init must be soliton, sech or file");
    }

    const auto model = NlseModel::from(coeffs);
    const auto res = propagate(grid, model, T, dt, std::max<std::size_t>(1, a.sample_every), a.snapshot_every);

    {
        auto os = open_out(run.output("trajectory.csv"));
        CsvWriter w(os, {"t_s", "norm", "momentum", "peak_xi_cm", "peak_abs", "rms_width_cm"});
        for (const auto& o : res.trajectory)
            w.row({o.t, o.norm, o.momentum, o.peak_xi, o.peak_abs, o.rms_width});
    }
    const auto& fin = res.final_grid;
    {
        auto os = open_out(run.output("field_final.csv"));
        CsvWriter w(os, {"xi_cm", "ReB", "ImB", "absB"});
        for (std::size_t i = 0; i < fin.n; ++i)
            w.row({fin.xi(i), fin.values[i].real(), fin.values[i].imag(), std::abs(fin.values[i])});
    }
    if (!res.snapshots.empty()) {
        auto os = open_out(run.output("propagation_surface.csv"));
        CsvWriter w(os, {"s", "t_over_t0", "absB"});
        for (const auto& snap : res.snapshots)
            for (std::size_t i = 0; i < fin.n; ++i)
                w.row({fin.xi(i) / sp.l0, snap.t / sp.t0, std::abs(snap.values[i])});
    }

    const auto& o0 = res.trajectory.front();
    const auto& o1 = res.trajectory.back();
    json& s = run.summary();
    s["steps"] = res.steps;
    s["norm_drift_rel"] = std::abs(o1.norm - o0.norm) / o0.norm;
    s["peak_abs_initial"] = o0.peak_abs;
    s["peak_abs_final"] = o1.peak_abs;
    s["peak_xi_final_cm"] = o1.peak_xi;
    if (a.init == "soliton") {
        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < fin.n; ++i) {
            const cd exact = soliton_envelope_comoving(sp, fin.xi(i), fin.t_elapsed);
            err += std::norm(fin.values[i] - exact);
            ref += std::norm(exact);
        }
        s["shape_error_rel_l2"] = std::sqrt(err / ref);
        s["predicted_peak_xi_cm"] = 4.0 * sp.xi0 * sp.l0 / sp.t0 * fin.t_elapsed;
    }
    run.write_manifest();
    out << "steps = " << res.steps << "  norm drift = " << format_double(s["norm_drift_rel"].get<double>())
        << '\n';
}

// ------------------------------------------------------------ boundstate

struct BoundstateArgs
{
    std::string config;
    double p0 = 0.0;
    std::size_t n = 4001;
    double dx = 0.0; // default 0.01/zeta0
    std::size_t map_samples = 101;
    std::string out = ".";
    bool require_calibrated = false;
};

void cmd_boundstate(const BoundstateArgs& a, std::ostream& out)
{
    Run run("boundstate", a.config, a.out);
    run.load();
    const MediumParams p = run.calibrated(a.require_calibrated);
    const auto coeffs = nlse_coefficients(p);
    const double L = p.cell_length;
    const auto em = effective_masses(coeffs, L);
    const double dx = a.dx > 0.0 ? a.dx : 0.01 / em.zeta0;
    run.flags() = {{"p0", a.p0}, {"n", a.n}, {"dx", dx}, {"map_samples", a.map_samples}};

    const auto lat = lattice_ground_state(em.m0, em.a0, a.n, dx);
    const auto bs = analytic_bound_state(em.m0, em.a0, a.p0, 40.0 / em.zeta0, 201);
    const auto map = density_map(bs, L, a.map_samples);
    {
        auto os = open_out(run.output("density_map.csv"));
        CsvWriter w(os, {"z1_over_L", "z2_over_L", "prob_density"});
        const std::size_t m = map.axis.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                w.row({map.axis[i], map.axis[j], map.values[i * m + j]});
    }
    json report{{"zeta0_analytic", em.zeta0},
                {"zeta0_fit", lat.zeta0_fit},
                {"E_rel_lattice", lat.E_rel},
                {"E_rel_analytic", lat.E_rel_analytic},
                {"dx", dx},
                {"n", a.n},
                {"bound", lat.bound},
                {"m0", em.m0},
                {"a0", em.a0},
                {"L_cm", L},
                {"p0", a.p0},
                {"zeta0_phys_per_cm", em.zeta0_phys},
                {"E_T", {{"com", bs.energy.com}, {"binding", bs.energy.binding}, {"total", bs.energy.total}}},
                {"iterations", lat.iterations},
                {"caveat", em.caveat}};
    {
        auto os = open_out(run.output("boundstate.json"));
        os << report.dump(2) << '\n';
    }
    run.summary() = report;
    run.write_manifest();
    out << "zeta0 = " << format_double(em.zeta0) << "  zeta0_fit = " << format_double(lat.zeta0_fit)
        << "  E_rel = " << format_double(lat.E_rel) << '\n';
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"EIT slow-light NLSE coefficients, solitons and two-photon bound states"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    DispersionArgs da;
    auto* dsp = app.add_subcommand("dispersion", "Scan K(omega) and report the Taylor coefficients");
    dsp->add_option("config", da.config, "Medium config file")->required();
    dsp->add_option("--omega-min", da.omega_min, "Scan start [rad/s]");
    dsp->add_option("--omega-max", da.omega_max, "Scan end [rad/s]");
    dsp->add_option("--n", da.n, "Scan points");
    dsp->add_option("--out", da.out, "Output directory");
    dsp->add_flag("--require-calibrated", da.require_calibrated, "Fail instead of calibrating on the fly");

    CalibrateArgs ca;
    auto* cal = app.add_subcommand("calibrate", "Fit kappa13 and |g_p|^2 to K2 and W targets");
    cal->add_option("config", ca.config, "Medium config file")->required();
    cal->add_option("--k2-target", ca.k2_target, "K2 target [cm^-1 s^2]");
    cal->add_option("--w-target", ca.w_target, "W target [cm^-1]");
    cal->add_option("--out", ca.out, "Output directory");

    SolitonArgs sa;
    auto* sol = app.add_subcommand("soliton", "Bright-soliton surface, fields and derived quantities");
    sol->add_option("config", sa.config, "Medium config file")->required();
    sol->add_option("--eta0", sa.eta0, "Amplitude parameter");
    sol->add_option("--xi0", sa.xi0, "Velocity parameter");
    sol->add_option("--t0", sa.t0, "Pulse duration [s]");
    sol->add_option("--z0", sa.z0, "Initial position [cm]");
    sol->add_option("--phi0", sa.phi0, "Initial phase [rad]");
    sol->add_option("--plot-grid", sa.plot_grid, "Surface samples NsxNt");
    sol->add_option("--s-max", sa.s_max, "Surface half-width in l0");
    sol->add_option("--t-max", sa.t_max, "Surface duration in t0");
    sol->add_option("--out", sa.out, "Output directory");
    sol->add_flag("--require-calibrated", sa.require_calibrated, "Fail instead of calibrating on the fly");

    PropagateArgs pa;
    auto* prp = app.add_subcommand("propagate", "Split-step propagation in the comoving frame");
    prp->add_option("config", pa.config, "Medium config file")->required();
    prp->add_option("--grid", pa.grid, "Grid points (power of two)");
    prp->add_option("--span-l0", pa.span_l0, "Grid span in units of l0");
    prp->add_option("--dt", pa.dt, "Time step [s]");
    prp->add_option("--T", pa.T, "Duration [s]");
    prp->add_option("--init", pa.init, "soliton | sech | file")->check(CLI::IsMember({"soliton", "sech", "file"}));
    prp->add_option("--init-file", pa.init_file, "CSV xi_cm,ReB,ImB for --init file");
    prp->add_option("--sech-amp", pa.sech_amp, "sech amplitude in units of B0");
    prp->add_option("--eta0", pa.eta0, "Amplitude parameter");
    prp->add_option("--xi0", pa.xi0, "Velocity parameter");
    prp->add_option("--t0", pa.t0, "Pulse duration [s]");
    prp->add_option("--sample-every", pa.sample_every, "Steps between trajectory samples");
    prp->add_option("--snapshot-every", pa.snapshot_every, "Steps between surface snapshots");
    prp->add_option("--out", pa.out, "Output directory");
    prp->add_flag("--require-calibrated", pa.require_calibrated, "Fail instead of calibrating on the fly");

    BoundstateArgs ba;
    auto* bnd = app.add_subcommand("boundstate", "Two-photon bound state: analytic and lattice");
    bnd->add_option("config", ba.config, "Medium config file")->required();
    bnd->add_option("--p0", ba.p0, "Centre-of-mass momentum");
    bnd->add_option("--n", ba.n, "Lattice sites (odd)");
    bnd->add_option("--dx", ba.dx, "Lattice spacing (default 0.01/zeta0)");
    bnd->add_option("--map-samples", ba.map_samples, "Density map samples per axis");
    bnd->add_option("--out", ba.out, "Output directory");
    bnd->add_flag("--require-calibrated", ba.require_calibrated, "Fail instead of calibrating on the fly");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParameter;
    }

    try {
        if (*dsp)
            cmd_dispersion(da, out);
        else if (*cal)
            cmd_calibrate(ca, out);
        else if (*sol)
            cmd_soliton(sa, out);
        else if (*prp)
            cmd_propagate(pa, out);
        else if (*bnd)
            cmd_boundstate(ba, out);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}

} // namespace eitq
