#include "eit_qnlse/soliton.hpp"

#include "eit_qnlse/dispersion.hpp"
#include "eit_qnlse/errors.hpp"
#include "eit_qnlse/io.hpp"

#include <cmath>

namespace eitq {

namespace {

constexpr double kHbar = 1.054571817e-34;    // J s
constexpr double kEpsilon0 = 8.8541878128e-12; // F/m

} // namespace

SolitonParams soliton_params(const NlseCoefficients& c, double eta0, double xi0, double t0,
                             double z0, double phi0)
{
    for (double v : {eta0, xi0, t0, z0, phi0})
        if (!std::isfinite(v))
            throw ParameterError("soliton_params: non-finite parameter");
    if (!(t0 > 0.0))
        throw ParameterError("soliton_params: t0 must be > 0");
    if (!(eta0 > 0.0))
        throw ParameterError("soliton_params: eta0 must be > 0");
    const double K2 = c.K2.real(), W = c.W.real(), Vg = c.Vg;
    if (!(K2 > 0.0) || !(W < 0.0))
        throw RegimeError("soliton_params: bright soliton needs K2 > 0 and W < 0 (got K2 = " +
                          format_double(K2) + ", W = " + format_double(W) + ")");
    if (!(Vg > 0.0))
        throw RegimeError("soliton_params: group velocity must be positive");

    SolitonParams sp;
    sp.eta0 = eta0;
    sp.xi0 = xi0;
    sp.z0 = z0;
    sp.phi0 = phi0;
    sp.t0 = t0;
    sp.Vg = Vg;
    sp.B0 = std::sqrt(-2.0 / (W * Vg * t0));
    sp.l0 = std::sqrt(K2 * Vg * Vg * Vg * t0 / 2.0);
    sp.Vs = Vg + 4.0 * xi0 * sp.l0 / t0;
    return sp;
}

double soliton_xi(const SolitonParams& sp, double z, double t)
{
    return (2.0 * sp.eta0 / sp.l0) * (z - sp.Vs * t - sp.z0);
}

cd soliton_envelope(const SolitonParams& sp, double z, double t)
{
    const double theta = -2.0 * sp.xi0 / sp.l0 * z +
                         2.0 * (sp.xi0 * sp.Vg / sp.l0 +
                                2.0 * (sp.xi0 * sp.xi0 - sp.eta0 * sp.eta0) / sp.t0) * t -
                         sp.phi0;
    const double amp = 2.0 * sp.eta0 * sp.B0 / std::cosh(soliton_xi(sp, z, t));
    return std::polar(amp, theta);
}

ProbeCarrier probe_carrier(const MediumParams& p)
{
    if (!p.calibrated())
        throw ParameterError("probe_carrier: needs calibrated kappa13 and gp_abs2");
    ProbeCarrier pc;
    pc.k_p = p.k_p;
    pc.K0 = linear_dispersion(0.0, p).real();
    pc.omega_p = p.c_light * p.k_p;
    const double volume_m3 = *p.inferred_atom_number() / p.atom_density * 1e-6;
    pc.single_photon_field = std::sqrt(kHbar * pc.omega_p / (2.0 * kEpsilon0 * volume_m3));
    pc.gp = std::sqrt(*p.gp_abs2);
    pc.d = complex_detunings(p);
    pc.omega_c = p.omega_c;
    return pc;
}

double soliton_carrier_phase(const SolitonParams& sp, const ProbeCarrier& pc, double z, double t)
{
    const double shift = 2.0 * (sp.xi0 * sp.Vg / sp.l0 +
                                2.0 * (sp.xi0 * sp.xi0 - sp.eta0 * sp.eta0) / sp.t0);
    return (pc.k_p + pc.K0 - 2.0 * sp.xi0 / sp.l0) * z - (pc.omega_p - shift) * t - sp.phi0;
}

double probe_e_p0(const SolitonParams& sp, const ProbeCarrier& pc)
{
    return 2.0 * pc.single_photon_field * sp.B0 * sp.eta0;
}

double probe_field(const SolitonParams& sp, const ProbeCarrier& pc, double z, double t)
{
    return 2.0 * probe_e_p0(sp, pc) / std::cosh(soliton_xi(sp, z, t)) *
           std::cos(soliton_carrier_phase(sp, pc, z, t));
}

double probe_field(const SolitonParams& sp, const MediumParams& p, double z, double t)
{
    return probe_field(sp, probe_carrier(p), z, t);
}

CoherenceProfiles coherence_profiles(const SolitonParams& sp, const ProbeCarrier& pc,
                                     double z, double t)
{
    // First-order coherences of the envelope peak 2 eta0 B0 (photon units),
    // sharing the probe's sech profile and carrier phase.
    const cd denom = std::norm(pc.omega_c) - pc.d.d21 * pc.d.d31;
    const double peak = 2.0 * sp.eta0 * sp.B0;
    const cd carrier = std::polar(1.0 / std::cosh(soliton_xi(sp, z, t)),
                                  soliton_carrier_phase(sp, pc, z, t));
    return {pc.gp * pc.d.d21 * peak / denom * carrier,
            -pc.gp * std::conj(pc.omega_c) * peak / denom * carrier};
}

} // namespace eitq
