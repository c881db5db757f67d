#pragma once

#include "eit_qnlse/params.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace eitq {

/// Default pole guard: |D(omega)| >= floor * |Omega_c|^2.
inline constexpr double kPoleFloor = 1e-6;

/// D(omega) = |Omega_c|^2 - (omega + d21)(omega + d31)   [s^-2]
cd big_d(double omega, const ComplexDetunings& d, cd omega_c);

/// Value and first two omega-derivatives of (omega + d21)/D(omega), i.e. the
/// medium response per unit kappa13.
struct ResponseDerivatives
{
    cd f0;
    cd f1;
    cd f2;
};

ResponseDerivatives response_derivatives(const MediumParams& p, double omega = 0.0,
                                         double pole_floor = kPoleFloor);

/// K(omega) = omega/c + kappa13 (omega + d21)/D(omega)   [cm^-1]
cd linear_dispersion(double omega, const MediumParams& p,
                     double pole_floor = kPoleFloor);

struct TaylorCoefficients
{
    cd K0;        // [cm^-1]
    cd K1;        // [cm^-1 s]
    cd K2;        // [cm^-1 s^2]
    double Vg = 0; // 1/Re K1 [cm/s]
};

TaylorCoefficients taylor_coefficients(const MediumParams& p,
                                       double pole_floor = kPoleFloor);

struct DispersionProfile
{
    std::vector<double> omega;
    std::vector<cd> K;
    double omega_min_absorption = 0.0;
    std::optional<double> peak_below; // Im K maximum left of the window
    std::optional<double> peak_above; // Im K maximum right of the window
};

DispersionProfile transparency_scan(const MediumParams& p, double omega_min,
                                    double omega_max, std::size_t n,
                                    double pole_floor = kPoleFloor);

/// `omega_rad_s,ReK_cm-1,ImK_cm-1`
void write_scan_csv(const DispersionProfile& profile, std::ostream& os);

struct FirstOrderCoherences
{
    cd s21;
    cd s31;
};

/// Linear-response coherences for envelope amplitude A (g_p taken real,
/// positive). Carrier phase excluded.
FirstOrderCoherences first_order_coherences(const MediumParams& p, cd A);

} // namespace eitq
