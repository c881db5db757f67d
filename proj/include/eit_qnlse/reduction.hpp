#pragma once

#include "eit_qnlse/dispersion.hpp"
#include "eit_qnlse/params.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace eitq {

/// Steady-state density matrix of the Lambda atom (sigma_ab = <a|rho|b>).
struct BlochState
{
    double s11 = 1.0;
    double s22 = 0.0;
    double s33 = 0.0;
    cd s21;
    cd s31;
    cd s32;
    double condition_number = 1.0;
};

/**
 * Steady state of the Lambda-system optical Bloch equations in the rotating
 * frame, driven by probe (half) Rabi frequency `omega_p` on |1>-|3> and the
 * control field on |2>-|3>. Populations relax from |3> into |1> and |2> at
 * G13, G23; coherences damp at gamma21, gamma31, gamma32.
 *
 * Solved as an 8x8 real linear system (trace eliminates sigma33). Throws
 * SingularSystemError when the system is numerically singular.
 */
BlochState steady_bloch_solve(const MediumParams& p, cd omega_p);

/// Geometric probe ladder Omega_p/|Omega_c|.
inline const std::vector<double> kDefaultKerrLadder{0.02, 0.03, 0.045, 0.068, 0.1};

struct KerrFitOptions
{
    std::vector<double> ladder = kDefaultKerrLadder;
    int degree = 3;              // polynomial degree in |Omega_p|^2
    double residual_tol = 1e-4;  // relative L2
};

struct KerrFit
{
    cd c1;                 // linear susceptibility sigma31/Omega_p at 0
    cd c3;                 // cubic coefficient per |Omega_p|^2 [s^2]
    std::vector<cd> coefficients; // in x = |Omega_p/Omega_c|^2
    std::vector<double> ladder;
    std::vector<cd> chi;
    double residual = 0.0;
};

/// Fit chi_eff(Omega_p) = sigma31/Omega_p = c1 + c3 |Omega_p|^2 + ...
/// Independent of kappa13 and gp_abs2.
KerrFit kerr_fit(const MediumParams& p, const KerrFitOptions& opts = {});

/// W = kappa13 c3 gp_abs2 [cm^-1]. Needs both couplings.
cd kerr_coefficient(const MediumParams& p, const KerrFitOptions& opts = {});

struct NlseCoefficients
{
    cd K0;
    cd K1;
    double Vg = 0.0;
    cd K2;
    cd W;
    double diffraction = 0.0; // 1/(2 k_p) [cm]
    bool real_part_only = true;

    double k2() const { return K2.real(); }
    double w() const { return W.real(); }
    bool bright() const { return K2.real() > 0.0 && W.real() < 0.0; }
    NlseCoefficients real_parts() const;
};

NlseCoefficients nlse_coefficients(const MediumParams& p, bool real_part_only = true,
                                   const KerrFitOptions& opts = {});

inline constexpr double kReferenceK2 = 4.82e-15; // cm^-1 s^2
inline constexpr double kReferenceW = -2.28e-7;  // cm^-1

struct CalibrationReport
{
    static constexpr int kSchemaVersion = 1;
    double kappa13 = 0.0;
    double gp_abs2 = 0.0;
    double inferred_N = 0.0;
    double inferred_volume = 0.0;     // cm^3
    double single_photon_rabi = 0.0;  // |g_p| [rad/s]
    double Vg = 0.0;
    cd K2;
    cd W;
    double k2_target = 0.0;
    double w_target = 0.0;
    double k2_residual = 0.0; // relative, on re-evaluation
    double w_residual = 0.0;
    double kerr_fit_residual = 0.0;
};

nlohmann::json to_json(const CalibrationReport& r);

struct Calibration
{
    MediumParams params;
    CalibrationReport report;
};

/**
 * Solve kappa13 from Re K2 = k2_target (K2 is linear in kappa13), then
 * gp_abs2 from Re W = w_target at that kappa13. Throws NoSolutionError when
 * either would come out non-positive.
 */
Calibration calibrate(const MediumParams& p, double k2_target = kReferenceK2,
                      double w_target = kReferenceW, const KerrFitOptions& opts = {});

struct EffectiveMasses
{
    double m0 = 0.0;   // -L/(K2 Vg^3)
    double a0 = 0.0;   // -Vg W/L
    double zeta0 = 0.0; // -m0 a0/2, literal
    // -W L/(2 K2 Vg^2) [1/cm], from the [B, B^dag] = L delta normalization.
    double zeta0_phys = 0.0;
    double L = 0.0;
    std::string caveat;
};

/// Throws RegimeError ("no attractive bound state") when K2 W >= 0.
EffectiveMasses effective_masses(const NlseCoefficients& c, double L);

/// Cell length giving effective mass m0: L = -m0 K2 Vg^3.
double cell_length_for_mass(const NlseCoefficients& c, double m0);

} // namespace eitq
