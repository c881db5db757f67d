#pragma once

#include "eit_qnlse/params.hpp"
#include "eit_qnlse/reduction.hpp"

namespace eitq {

/// Free parameters of the bright soliton plus derived B0, l0, Vs.
struct SolitonParams
{
    double eta0 = 0.5;
    double xi0 = 0.0;
    double z0 = 0.0;  // cm
    double phi0 = 0.0;
    double t0 = 0.0;  // s
    double Vg = 0.0;
    double B0 = 0.0;  // [-2/(W Vg t0)]^(1/2)
    double l0 = 0.0;  // [K2 Vg^3 t0/2]^(1/2), cm
    double Vs = 0.0;  // Vg + 4 xi0 l0/t0
};

/// Throws RegimeError unless K2 > 0 and W < 0 (real parts).
SolitonParams soliton_params(const NlseCoefficients& c, double eta0, double xi0,
                             double t0, double z0 = 0.0, double phi0 = 0.0);

/// B(z, t) in the laboratory frame.
cd soliton_envelope(const SolitonParams& sp, double z, double t);

/// Same envelope at comoving coordinate xi = z - Vg t.
inline cd soliton_envelope_comoving(const SolitonParams& sp, double xi, double t)
{
    return soliton_envelope(sp, xi + sp.Vg * t, t);
}

/// sech argument Xi(z, t).
double soliton_xi(const SolitonParams& sp, double z, double t);

/// Everything the carrier field reconstruction needs besides sp.
struct ProbeCarrier
{
    double k_p = 0.0;      // cm^-1
    double K0 = 0.0;       // Re K(0), cm^-1
    double omega_p = 0.0;  // carrier angular frequency, rad/s
    double single_photon_field = 0.0; // sqrt(hbar w_p/(2 eps0 V)) [V/m]
    double gp = 0.0;       // |g_p| [rad/s]
    ComplexDetunings d;
    cd omega_c;
};

/// Needs calibrated couplings (V is inferred from them).
ProbeCarrier probe_carrier(const MediumParams& p);

/// Total carrier phase Theta_s(z, t).
double soliton_carrier_phase(const SolitonParams& sp, const ProbeCarrier& pc,
                             double z, double t);

/// E_p0 = 2 E_single B0 eta0 [V/m]; the field peaks at 2 E_p0.
double probe_e_p0(const SolitonParams& sp, const ProbeCarrier& pc);

/// Scalar probe field 2 E_p0 sech(Xi) cos(Theta_s) [V/m].
double probe_field(const SolitonParams& sp, const ProbeCarrier& pc, double z, double t);
double probe_field(const SolitonParams& sp, const MediumParams& p, double z, double t);

struct CoherenceProfiles
{
    cd s31;
    cd s21;
};

CoherenceProfiles coherence_profiles(const SolitonParams& sp, const ProbeCarrier& pc,
                                     double z, double t);

} // namespace eitq
