#include "eit_qnlse/dispersion.hpp"

#include "eit_qnlse/errors.hpp"
#include "eit_qnlse/io.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace eitq {

cd big_d(double omega, const ComplexDetunings& d, cd omega_c)
{
    return std::norm(omega_c) - (omega + d.d21) * (omega + d.d31);
}

namespace {

double require_kappa(const MediumParams& p)
{
    if (!p.kappa13)
        throw ParameterError("kappa13 is not set; run calibrate or supply it in the config");
    return *p.kappa13;
}

void check_pole(cd D, const MediumParams& p, double omega, double pole_floor)
{
    const double floor = pole_floor * p.omega_c_abs2();
    if (!(std::abs(D) > floor) || !std::isfinite(std::abs(D)))
        throw PoleError("D(omega) vanishes at omega = " + format_double(omega) +
                        " rad/s (|D| = " + format_double(std::abs(D)) + ")");
}

} // namespace

ResponseDerivatives response_derivatives(const MediumParams& p, double omega,
                                         double pole_floor)
{
    const auto d = complex_detunings(p);
    const cd D = big_d(omega, d, p.omega_c);
    check_pole(D, p, omega, pole_floor);

    // f = N/D with N = omega + d21 (N' = 1, N'' = 0), D' = -(2 omega + d21 + d31),
    // D'' = -2. Quotient rule twice: f' = g/D^2 with g = D - N D', g' = -N D''.
    const cd N = omega + d.d21;
    const cd D1 = -(2.0 * omega + d.d21 + d.d31);
    const cd D2 = -2.0;
    const cd g = D - N * D1;
    const cd g1 = -N * D2;
    return {N / D, g / (D * D), (g1 * D - 2.0 * g * D1) / (D * D * D)};
}

cd linear_dispersion(double omega, const MediumParams& p, double pole_floor)
{
    const double kappa = require_kappa(p);
    const auto d = complex_detunings(p);
    const cd D = big_d(omega, d, p.omega_c);
    check_pole(D, p, omega, pole_floor);
    return omega / p.c_light + kappa * (omega + d.d21) / D;
}

TaylorCoefficients taylor_coefficients(const MediumParams& p, double pole_floor)
{
    const double kappa = require_kappa(p);
    const auto f = response_derivatives(p, 0.0, pole_floor);
    TaylorCoefficients t;
    t.K0 = kappa * f.f0;
    t.K1 = 1.0 / p.c_light + kappa * f.f1;
    t.K2 = kappa * f.f2;
    t.Vg = 1.0 / t.K1.real();
    return t;
}

DispersionProfile transparency_scan(const MediumParams& p, double omega_min,
                                    double omega_max, std::size_t n, double pole_floor)
{
    if (n < 2)
        throw ParameterError("transparency_scan: n must be >= 2");
    if (!(omega_min < omega_max))
        throw ParameterError("transparency_scan: omega_min must be < omega_max");

    DispersionProfile prof;
    prof.omega.resize(n);
    prof.K.resize(n);
    const double step = (omega_max - omega_min) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        prof.omega[i] = (i + 1 == n) ? omega_max : omega_min + double(i) * step;
        prof.K[i] = linear_dispersion(prof.omega[i], p, pole_floor);
    }

    auto im = [&](std::size_t i) { return prof.K[i].imag(); };
    std::size_t imin = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (im(i) < im(imin))
            imin = i;
    prof.omega_min_absorption = prof.omega[imin];

    // strongest absorption on each side, kept only if it is an interior maximum
    auto peak = [&](std::size_t lo, std::size_t hi) -> std::optional<double> {
        if (lo >= hi)
            return std::nullopt;
        std::size_t best = lo;
        for (std::size_t i = lo; i < hi; ++i)
            if (im(i) > im(best))
                best = i;
        if (best == 0 || best + 1 == n || best == imin)
            return std::nullopt;
        return prof.omega[best];
    };
    prof.peak_below = peak(0, imin);
    prof.peak_above = peak(imin + 1, n);
    return prof;
}

void write_scan_csv(const DispersionProfile& profile, std::ostream& os)
{
    CsvWriter w(os, {"omega_rad_s", "ReK_cm-1", "ImK_cm-1"});
    for (std::size_t i = 0; i < profile.omega.size(); ++i)
        w.row({profile.omega[i], profile.K[i].real(), profile.K[i].imag()});
}

FirstOrderCoherences first_order_coherences(const MediumParams& p, cd A)
{
    if (!p.gp_abs2)
        throw ParameterError("gp_abs2 is not set; run calibrate or supply it in the config");
    const auto d = complex_detunings(p);
    const cd denom = p.omega_c_abs2() - d.d21 * d.d31;
    if (!(std::abs(denom) > kPoleFloor * p.omega_c_abs2()))
        throw PoleError("first_order_coherences: |Omega_c|^2 - d21 d31 vanishes");
    const double gp = std::sqrt(*p.gp_abs2);
    return {-gp * std::conj(p.omega_c) * A / denom, gp * d.d21 * A / denom};
}

} // namespace eitq
