#include "eit_qnlse/reduction.hpp"

#include "eit_qnlse/errors.hpp"
#include "eit_qnlse/io.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace eitq {

// ------------------------------------------------------------ Bloch system

namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

struct Rho
{
    double r11, r22, r33;
    cd r21, r31, r32;
};

// x = [s11, s22, Re s21, Im s21, Re s31, Im s31, Re s32, Im s32],
// s33 = 1 - s11 - s22.
Rho unpack(const Vec8& x)
{
    return {x[0], x[1], 1.0 - x[0] - x[1], {x[2], x[3]}, {x[4], x[5]}, {x[6], x[7]}};
}

struct Rates
{
    double delta2, delta3, g13, g23, g21, g31, g32;
    cd oc, op;
};

// Time derivatives of the independent density-matrix components, with all
// rates already divided by a common frequency scale.
Vec8 bloch_rhs(const Vec8& x, const Rates& q)
{
    const Rho s = unpack(x);
    const cd I(0.0, 1.0);
    const cd r12 = std::conj(s.r21), r13 = std::conj(s.r31), r23 = std::conj(s.r32);

    const cd d11 = I * std::conj(q.op) * s.r31 - I * q.op * r13 + q.g13 * s.r33;
    const cd d22 = I * std::conj(q.oc) * s.r32 - I * q.oc * r23 + q.g23 * s.r33;
    const cd d21 = (I * q.delta2 - q.g21) * s.r21 + I * std::conj(q.oc) * s.r31 -
                   I * q.op * r23;
    const cd d31 = I * q.op * (s.r11 - s.r33) + I * q.oc * s.r21 +
                   (I * q.delta3 - q.g31) * s.r31;
    const cd d32 = I * q.op * r12 + I * q.oc * (s.r22 - s.r33) +
                   (I * (q.delta3 - q.delta2) - q.g32) * s.r32;

    Vec8 out;
    out << d11.real(), d22.real(), d21.real(), d21.imag(), d31.real(), d31.imag(),
        d32.real(), d32.imag();
    return out;
}

} // namespace

BlochState steady_bloch_solve(const MediumParams& p, cd omega_p)
{
    if (!std::isfinite(omega_p.real()) || !std::isfinite(omega_p.imag()))
        throw ParameterError("steady_bloch_solve: probe Rabi frequency must be finite");
    validate(p);

    const double scale = std::max({std::abs(p.omega_c), std::abs(omega_p), std::abs(p.delta2),
                                   std::abs(p.delta3), p.gamma13 + p.gamma23, p.gamma21()});
    const Rates q{p.delta2 / scale,       p.delta3 / scale,       p.gamma13 / scale,
                  p.gamma23 / scale,      p.gamma21() / scale,    p.gamma31() / scale,
                  p.gamma32() / scale,    p.omega_c / scale,      omega_p / scale};

    // rhs is affine in x: rhs(x) = A x + r0
    const Vec8 r0 = bloch_rhs(Vec8::Zero(), q);
    Mat8 A;
    for (int j = 0; j < 8; ++j)
        A.col(j) = bloch_rhs(Vec8::Unit(j), q) - r0;

    Eigen::JacobiSVD<Mat8> svd(A);
    const auto& sv = svd.singularValues();
    const double cond = sv(7) > 0.0 ? sv(0) / sv(7) : std::numeric_limits<double>::infinity();
    if (!(cond < 1e13))
        throw SingularSystemError("steady_bloch_solve: Bloch steady-state system is singular", cond);

    const Vec8 x = A.fullPivLu().solve(-r0);
    const Rho s = unpack(x);
    BlochState st;
    st.s11 = s.r11;
    st.s22 = s.r22;
    st.s33 = s.r33;
    st.s21 = s.r21;
    st.s31 = s.r31;
    st.s32 = s.r32;
    st.condition_number = cond;
    return st;
}

// ------------------------------------------------------------ Kerr extraction

KerrFit kerr_fit(const MediumParams& p, const KerrFitOptions& opts)
{
    const std::size_t m = opts.ladder.size();
    const int ncoef = opts.degree + 1;
    if (opts.degree < 1 || m < std::size_t(ncoef))
        throw ParameterError("kerr_fit: ladder needs at least degree+1 amplitudes");
    const double oc = std::abs(p.omega_c);
    if (!(oc > 0.0))
        throw ParameterError("kerr_fit: Omega_c must be nonzero");

    KerrFit fit;
    fit.ladder = opts.ladder;
    fit.chi.resize(m);
    // Solves are independent; each writes its own slot.
    parallel_for(m, [&](std::size_t i) {
        const double amp = opts.ladder[i] * oc;
        fit.chi[i] = steady_bloch_solve(p, amp).s31 / amp;
    });

    Eigen::MatrixXd X(m, ncoef);
    Eigen::MatrixXd Y(m, 2);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = opts.ladder[i] * opts.ladder[i];
        double pw = 1.0;
        for (int k = 0; k < ncoef; ++k, pw *= x)
            X(i, k) = pw;
        Y(i, 0) = fit.chi[i].real();
        Y(i, 1) = fit.chi[i].imag();
    }
    const Eigen::MatrixXd C = X.colPivHouseholderQr().solve(Y);
    const Eigen::MatrixXd R = X * C - Y;

    fit.coefficients.resize(ncoef);
    for (int k = 0; k < ncoef; ++k)
        fit.coefficients[k] = {C(k, 0), C(k, 1)};
    fit.c1 = fit.coefficients[0];
    fit.c3 = fit.coefficients[1] / (oc * oc);
    fit.residual = R.norm() / Y.norm();

    if (!(fit.residual < opts.residual_tol))
        throw FitInstabilityError("kerr_fit: relative residual " + format_double(fit.residual) +
                                  " exceeds " + format_double(opts.residual_tol) +
                                  "; probe ladder leaves the perturbative window");
    return fit;
}

cd kerr_coefficient(const MediumParams& p, const KerrFitOptions& opts)
{
    if (!p.kappa13 || !p.gp_abs2)
        throw ParameterError("kerr_coefficient: kappa13 and gp_abs2 must be set (run calibrate)");
    return *p.kappa13 * kerr_fit(p, opts).c3 * *p.gp_abs2;
}

NlseCoefficients NlseCoefficients::real_parts() const
{
    NlseCoefficients r = *this;
    r.K0 = K0.real();
    r.K1 = K1.real();
    r.K2 = K2.real();
    r.W = W.real();
    r.real_part_only = true;
    return r;
}

NlseCoefficients nlse_coefficients(const MediumParams& p, bool real_part_only,
                                   const KerrFitOptions& opts)
{
    const auto t = taylor_coefficients(p);
    NlseCoefficients c;
    c.K0 = t.K0;
    c.K1 = t.K1;
    c.Vg = t.Vg;
    c.K2 = t.K2;
    c.W = kerr_coefficient(p, opts);
    c.diffraction = 1.0 / (2.0 * p.k_p);
    c.real_part_only = false;
    return real_part_only ? c.real_parts() : c;
}

// ------------------------------------------------------------ calibration

nlohmann::json to_json(const CalibrationReport& r)
{
    using nlohmann::json;
    auto cplx = [](cd z) { return json{{"re", z.real()}, {"im", z.imag()}}; };
    return json{
        {"schema", "eit_qnlse.calibration"},
        {"schema_version", CalibrationReport::kSchemaVersion},
        {"kappa13", r.kappa13},
        {"gp_abs2", r.gp_abs2},
        {"inferred_N", r.inferred_N},
        {"inferred_volume_cm3", r.inferred_volume},
        {"single_photon_rabi_rad_s", r.single_photon_rabi},
        {"Vg", r.Vg},
        {"Vg_over_c", r.Vg / kSpeedOfLight},
        {"K2", cplx(r.K2)},
        {"W", cplx(r.W)},
        {"targets", {{"K2", r.k2_target}, {"W", r.w_target}}},
        {"residuals",
         {{"K2_rel", r.k2_residual}, {"W_rel", r.w_residual}, {"kerr_fit", r.kerr_fit_residual}}},
    };
}

Calibration calibrate(const MediumParams& p, double k2_target, double w_target,
                      const KerrFitOptions& opts)
{
    if (!std::isfinite(k2_target) || !std::isfinite(w_target))
        throw ParameterError("calibrate: targets must be finite");
    if (k2_target == 0.0)
        throw ParameterError("calibrate: K2 target must be nonzero");
    validate(p);

    // K2 = kappa13 f''(0): one linear solve.
    const auto f = response_derivatives(p);
    const double kappa = k2_target / f.f2.real();
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw NoSolutionError("calibrate: no-solution, K2 target " + format_double(k2_target) +
                              " needs kappa13 = " + format_double(kappa) + " <= 0");

    // W = kappa13 c3 gp_abs2: linear in gp_abs2 at fixed kappa13.
    const KerrFit fit = kerr_fit(p, opts);
    const double per_gp = kappa * fit.c3.real();
    const double gp_abs2 = w_target / per_gp;
    if (!(gp_abs2 > 0.0) || !std::isfinite(gp_abs2))
        throw NoSolutionError("calibrate: no-solution, W target " + format_double(w_target) +
                              " has the wrong sign for this medium (Re kappa13 c3 = " +
                              format_double(per_gp) + ")");

    Calibration out;
    out.params = p;
    out.params.kappa13 = kappa;
    out.params.gp_abs2 = gp_abs2;
    validate(out.params);

    const auto t = taylor_coefficients(out.params);
    const cd W = kappa * fit.c3 * gp_abs2;
    auto& r = out.report;
    r.kappa13 = kappa;
    r.gp_abs2 = gp_abs2;
    r.inferred_N = *out.params.inferred_atom_number();
    r.inferred_volume = r.inferred_N / p.atom_density;
    r.single_photon_rabi = std::sqrt(gp_abs2);
    r.Vg = t.Vg;
    r.K2 = t.K2;
    r.W = W;
    r.k2_target = k2_target;
    r.w_target = w_target;
    r.k2_residual = std::abs(t.K2.real() - k2_target) / std::abs(k2_target);
    r.w_residual = std::abs(W.real() - w_target) / std::abs(w_target);
    r.kerr_fit_residual = fit.residual;
    return out;
}

// ------------------------------------------------------------ effective masses

EffectiveMasses effective_masses(const NlseCoefficients& c, double L)
{
    if (!(L > 0.0))
        throw ParameterError("effective_masses: L must be > 0");
    const double K2 = c.K2.real(), W = c.W.real(), Vg = c.Vg;
    if (!(K2 * W < 0.0))
        throw RegimeError("no attractive bound state: requires m0 < 0 and a0 > 0 (K2 W < 0), got K2 = " +
                          format_double(K2) + ", W = " + format_double(W));
    EffectiveMasses m;
    m.L = L;
    m.m0 = -L / (K2 * Vg * Vg * Vg);
    m.a0 = -Vg * W / L;
    m.zeta0 = -m.m0 * m.a0 / 2.0;
    m.zeta0_phys = -W * L / (2.0 * K2 * Vg * Vg);
    m.caveat = "zeta0 = -m0 a0/2 carries units cm^-2 as printed; zeta0_phys [1/cm] follows "
               "from [B, B^dag] = L delta and equals zeta0 * L";
    return m;
}

double cell_length_for_mass(const NlseCoefficients& c, double m0)
{
    const double Vg = c.Vg;
    return -m0 * c.K2.real() * Vg * Vg * Vg;
}

} // namespace eitq
