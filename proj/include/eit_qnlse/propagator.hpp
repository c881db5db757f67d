#pragma once

#include "eit_qnlse/errors.hpp"
#include "eit_qnlse/params.hpp"
#include "eit_qnlse/reduction.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace eitq {

/// Uniform periodic grid in the comoving coordinate xi = z - Vg t.
struct FieldGrid
{
    std::size_t n = 0;
    double xi_span = 0.0; // cm
    double dx = 0.0;
    std::vector<cd> values;
    double Vg = 0.0;
    double t_elapsed = 0.0;

    /// Cell centres, symmetric about xi = 0.
    double xi(std::size_t i) const { return -0.5 * xi_span + (double(i) + 0.5) * dx; }
};

struct EdgeGuard
{
    bool ok = true;
    double edge_to_peak = 0.0;
};

inline constexpr double kEdgeGuardRatio = 1e-6;

EdgeGuard edge_guard(const FieldGrid& g);

/// n must be a power of two >= 64. An edge-guard failure only warns (stderr)
/// unless `strict` is set.
FieldGrid make_grid(std::size_t n, double xi_span, const std::function<cd(double)>& init,
                    double Vg = 0.0, bool strict = false);

/// Coefficients of i (1/Vg) dB/dt = (K2/2) Vg^2 B_xixi - W |B|^2 B.
struct NlseModel
{
    double Vg = 0.0;
    cd K2;
    cd W;

    static NlseModel from(const NlseCoefficients& c);
};

struct Observables
{
    double t = 0.0;
    double norm = 0.0;     // sum |B|^2 dx
    double momentum = 0.0; // Im sum B* dB/dxi dx
    double peak_xi = 0.0;
    double peak_abs = 0.0;
    double rms_width = 0.0;
};

Observables observe(const FieldGrid& g);

/// Spectral norm sum |B_k|^2 dx / n, equal to the spatial norm by Parseval.
double spectral_norm(const FieldGrid& g);

class PropagationError : public NumericError
{
public:
    PropagationError(const std::string& what, FieldGrid last_good, std::size_t step)
        : NumericError(what), m_last_good(std::move(last_good)), m_step(step)
    {
    }
    const FieldGrid& last_good() const { return m_last_good; }
    std::size_t step() const { return m_step; }

private:
    FieldGrid m_last_good;
    std::size_t m_step;
};

/**
 * Symmetric (Strang) split-step Fourier integrator: half Kerr step, full
 * dispersive step in k-space, half Kerr step. The Kerr substep is solved
 * exactly (pure phase for real W, closed-form decay otherwise).
 *
 * Owns FFTW plans for one grid size; not thread-safe, one per propagation.
 */
class SplitStepPropagator
{
public:
    SplitStepPropagator(const NlseModel& model, std::size_t n, double dx);
    ~SplitStepPropagator();
    SplitStepPropagator(const SplitStepPropagator&) = delete;
    SplitStepPropagator& operator=(const SplitStepPropagator&) = delete;

    /// dt may be negative (real coefficients) for time reversal.
    void step(FieldGrid& g, double dt);

    const NlseModel& model() const { return m_model; }

private:
    void kerr(std::span<cd> b, double dt) const;

    struct Plans;
    NlseModel m_model;
    std::size_t m_n;
    double m_dx;
    std::vector<double> m_k;
    std::unique_ptr<Plans> m_plans;
};

struct Snapshot
{
    double t = 0.0;
    std::vector<cd> values;
};

struct PropagationResult
{
    std::vector<Observables> trajectory;
    std::vector<Snapshot> snapshots;
    FieldGrid final_grid;
    std::size_t steps = 0;
};

/// Advance by ceil(T/dt) steps (last step shortened to land on T). Observables
/// every `sample_every` steps; field snapshots every `snapshot_every` (0: none).
PropagationResult propagate(FieldGrid grid, const NlseModel& model, double T, double dt,
                            std::size_t sample_every = 1, std::size_t snapshot_every = 0);

/// Relative L2 residual of the comoving NLSE for `envelope(xi, t)` at time t:
/// central difference in t, spectral second derivative in xi.
double residual(const std::function<cd(double, double)>& envelope, const FieldGrid& grid,
                const NlseModel& model, double t, double dt);

/// Spectral d^2/dxi^2 on a periodic grid.
std::vector<cd> spectral_second_derivative(std::span<const cd> b, double dx);

} // namespace eitq
