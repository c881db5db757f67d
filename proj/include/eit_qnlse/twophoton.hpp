#pragma once

#include "eit_qnlse/params.hpp"

#include <string>
#include <vector>

// Two-photon sector of the (1+1)D quantum NLSE:
//   H = -(1/2 m0)(d1^2 + d2^2) + a0 delta(z1 - z2),   hbar = 1,
// in whatever consistent units m0 and a0 carry. Bound for m0 a0 < 0.

namespace eitq {

struct EnergyParts
{
    double com = 0.0;     // p0^2/(4 m0)
    double binding = 0.0; // -m0 a0^2/4
    double total = 0.0;
};

/// Throws ParameterError for m0 == 0.
EnergyParts total_energy(double m0, double a0, double p0);

struct BoundStateResult
{
    double zeta0 = 0.0;
    double p0 = 0.0;
    double m0 = 0.0;
    double a0 = 0.0;
    EnergyParts energy;
    double box = 0.0;
    std::size_t n = 0;
    std::vector<double> z;   // sample coordinates, [-box/2, box/2]
    std::vector<cd> phi;     // row-major phi[i*n + j] = Phi(z_i, z_j), unit norm on box
    double normalization = 1.0; // factor applied to sqrt(zeta0) exp(...)
    double truncation_error = 0.0; // exp(-zeta0 box), tail mass in |z1-z2|

    /// Phi(z1, z2) at t = 0 with this result's normalization.
    cd phi_at(double z1, double z2) const;
};

/// Samples the bound state on an n x n grid. Requires m0 < 0, a0 > 0
/// (RegimeError otherwise) and box > 10/zeta0.
BoundStateResult analytic_bound_state(double m0, double a0, double p0, double box,
                                      std::size_t n);

struct LatticeGroundState
{
    bool bound = false;
    double E_rel = 0.0;        // binding energy, E = -m0 a0^2/4 convention
    double E_rel_analytic = 0.0;
    double zeta0_fit = 0.0;
    double zeta0_analytic = 0.0;
    double dx = 0.0;
    std::size_t n = 0;
    std::vector<double> r;     // relative coordinate z1 - z2
    std::vector<double> phi;   // even, positive, sum phi^2 dx = 1
    int iterations = 0;
    std::vector<double> trace; // inverse-iteration residual history
};

/**
 * Relative-motion eigenproblem -(1/m0) d_r^2 + a0 delta(r) on n (odd) sites,
 * three-point stencil, delta as a single-site well of strength a0/dx at the
 * centre, Dirichlet ends. The bound state is isolated by a Sturm-count
 * bisection and refined by shifted inverse iteration (tridiagonal solves).
 *
 * For attractive coupling requires dx*n > 20/zeta0 and dx < 1/(50 zeta0).
 * A repulsive coupling returns bound = false.
 */
LatticeGroundState lattice_ground_state(double m0, double a0, std::size_t n, double dx);

struct DensityMap
{
    std::vector<double> axis; // z/L in [0, 1]
    std::vector<double> values; // row-major |Phi|^2
};

DensityMap density_map(const BoundStateResult& result, double L, std::size_t samples);

/// Analytic tail slope of log|Phi|^2 along |z1 - z2|, used by figure checks.
double density_decay_rate(const BoundStateResult& result);

} // namespace eitq
