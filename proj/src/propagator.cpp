#include "eit_qnlse/propagator.hpp"

#include "eit_qnlse/io.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>

namespace eitq {

namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cd* p) { return reinterpret_cast<fftw_complex*>(p); }

bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

std::vector<double> wavenumbers(std::size_t n, double dx)
{
    std::vector<double> k(n);
    const double dk = kTwoPi / (double(n) * dx);
    for (std::size_t j = 0; j < n; ++j)
        k[j] = dk * (j < n / 2 ? double(j) : double(j) - double(n));
    return k;
}

// One-shot transform pair for diagnostics; the propagator keeps its own plans.
class Fft
{
public:
    explicit Fft(std::size_t n) : m_n(n)
    {
        std::vector<cd> tmp(n);
        std::lock_guard lock(planner_mutex());
        m_fwd = fftw_plan_dft_1d(int(n), as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
        m_bwd = fftw_plan_dft_1d(int(n), as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    ~Fft()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(m_fwd);
        fftw_destroy_plan(m_bwd);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(std::vector<cd>& v) const { fftw_execute_dft(m_fwd, as_fftw(v.data()), as_fftw(v.data())); }
    // unnormalized
    void backward(std::vector<cd>& v) const { fftw_execute_dft(m_bwd, as_fftw(v.data()), as_fftw(v.data())); }

private:
    std::size_t m_n;
    fftw_plan m_fwd;
    fftw_plan m_bwd;
};

std::vector<cd> spectral_derivative(std::span<const cd> b, double dx, int order)
{
    const std::size_t n = b.size();
    std::vector<cd> v(b.begin(), b.end());
    Fft fft(n);
    fft.forward(v);
    const auto k = wavenumbers(n, dx);
    for (std::size_t j = 0; j < n; ++j) {
        if (order == 1)
            v[j] *= (j == n / 2) ? cd(0.0) : cd(0.0, k[j]);
        else
            v[j] *= -k[j] * k[j];
    }
    fft.backward(v);
    for (auto& x : v)
        x /= double(n);
    return v;
}

double l2(const std::vector<cd>& v)
{
    double s = 0.0;
    for (const auto& x : v)
        s += std::norm(x);
    return std::sqrt(s);
}

} // namespace

std::vector<cd> spectral_second_derivative(std::span<const cd> b, double dx)
{
    return spectral_derivative(b, dx, 2);
}

EdgeGuard edge_guard(const FieldGrid& g)
{
    EdgeGuard e;
    if (g.values.empty())
        return e;
    double peak = 0.0;
    for (const auto& v : g.values)
        peak = std::max(peak, std::abs(v));
    if (peak == 0.0)
        return e;
    const double edge = std::max(std::abs(g.values.front()), std::abs(g.values.back()));
    e.edge_to_peak = edge / peak;
    e.ok = e.edge_to_peak < kEdgeGuardRatio;
    return e;
}

FieldGrid make_grid(std::size_t n, double xi_span, const std::function<cd(double)>& init,
                    double Vg, bool strict)
{
    if (n < 64 || !is_pow2(n))
        throw ParameterError("make_grid: n must be a power of two >= 64, got " + std::to_string(n));
    if (!(xi_span > 0.0) || !std::isfinite(xi_span))
        throw ParameterError("make_grid: xi_span must be positive and finite");
    FieldGrid g;
    g.n = n;
    g.xi_span = xi_span;
    g.dx = xi_span / double(n);
    g.Vg = Vg;
    g.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g.values[i] = init(g.xi(i));
    const auto guard = edge_guard(g);
    if (!guard.ok) {
        const std::string msg = "make_grid: envelope at the grid edge is " +
                                format_double(guard.edge_to_peak) +
                                " of peak; periodic wraparound likely, widen xi_span";
        if (strict)
            throw ParameterError(msg);
        std::cerr << "warning: " << msg << '\n';
    }
    return g;
}

NlseModel NlseModel::from(const NlseCoefficients& c)
{
    return {c.Vg, c.K2, c.W};
}

Observables observe(const FieldGrid& g)
{
    Observables o;
    o.t = g.t_elapsed;
    const std::size_t n = g.values.size();
    if (n == 0)
        return o;

    double norm = 0.0, centroid = 0.0;
    std::size_t ipk = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a2 = std::norm(g.values[i]);
        norm += a2;
        centroid += a2 * g.xi(i);
        if (a2 > std::norm(g.values[ipk]))
            ipk = i;
    }
    o.norm = norm * g.dx;
    if (norm == 0.0)
        return o;
    centroid /= norm;

    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        var += std::norm(g.values[i]) * (g.xi(i) - centroid) * (g.xi(i) - centroid);
    o.rms_width = std::sqrt(var / norm);

    const auto db = spectral_derivative(g.values, g.dx, 1);
    double mom = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        mom += (std::conj(g.values[i]) * db[i]).imag();
    o.momentum = mom * g.dx;

    // parabola through the three samples around the maximum of |B|
    const double ym = std::abs(g.values[(ipk + n - 1) % n]);
    const double y0 = std::abs(g.values[ipk]);
    const double yp = std::abs(g.values[(ipk + 1) % n]);
    const double denom = ym - 2.0 * y0 + yp;
    double off = 0.0;
    if (denom < 0.0)
        off = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
    o.peak_xi = g.xi(ipk) + off * g.dx;
    o.peak_abs = y0 - 0.25 * (ym - yp) * off;
    return o;
}

double spectral_norm(const FieldGrid& g)
{
    std::vector<cd> v = g.values;
    Fft fft(v.size());
    fft.forward(v);
    double s = 0.0;
    for (const auto& x : v)
        s += std::norm(x);
    return s * g.dx / double(v.size());
}

// ------------------------------------------------------------ split step

struct SplitStepPropagator::Plans
{
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

SplitStepPropagator::SplitStepPropagator(const NlseModel& model, std::size_t n, double dx)
    : m_model(model), m_n(n), m_dx(dx), m_k(wavenumbers(n, dx)), m_plans(std::make_unique<Plans>())
{
    if (n < 2 || !is_pow2(n))
        throw ParameterError("SplitStepPropagator: n must be a power of two");
    if (!(model.Vg > 0.0))
        throw ParameterError("SplitStepPropagator: Vg must be positive");
    std::vector<cd> tmp(n);
    std::lock_guard lock(planner_mutex());
    m_plans->fwd = fftw_plan_dft_1d(int(n), as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_FORWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
    m_plans->bwd = fftw_plan_dft_1d(int(n), as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
}

SplitStepPropagator::~SplitStepPropagator()
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(m_plans->fwd);
    fftw_destroy_plan(m_plans->bwd);
}

void SplitStepPropagator::kerr(std::span<cd> b, double dt) const
{
    // dB/dt = i Vg W |B|^2 B, solved exactly.
    const cd a = m_model.Vg * m_model.W;
    if (a.imag() == 0.0) {
        for (auto& x : b)
            x *= std::polar(1.0, a.real() * std::norm(x) * dt);
        return;
    }
    for (auto& x : b) {
        const double u0 = std::norm(x);
        const double s = 2.0 * a.imag() * u0 * dt;
        const double growth = 1.0 + s;
        const double phase = std::abs(s) < 1e-8 ? a.real() * u0 * dt * (1.0 - 0.5 * s)
                                                : a.real() / (2.0 * a.imag()) * std::log(growth);
        x *= std::polar(1.0 / std::sqrt(growth), phase);
    }
}

void SplitStepPropagator::step(FieldGrid& g, double dt)
{
    if (g.values.size() != m_n)
        throw ParameterError("SplitStepPropagator::step: grid size mismatch");
    if (!std::isfinite(dt) || dt == 0.0)
        throw ParameterError("SplitStepPropagator::step: dt must be finite and nonzero");

    const double Vg = m_model.Vg;
    const cd disp = cd(0.0, 1.0) * Vg * (m_model.K2 / 2.0) * Vg * Vg * dt;

    kerr(g.values, 0.5 * dt);
    fftw_execute_dft(m_plans->fwd, as_fftw(g.values.data()), as_fftw(g.values.data()));
    const double inv_n = 1.0 / double(m_n);
    for (std::size_t j = 0; j < m_n; ++j)
        g.values[j] *= std::exp(disp * (m_k[j] * m_k[j])) * inv_n;
    fftw_execute_dft(m_plans->bwd, as_fftw(g.values.data()), as_fftw(g.values.data()));
    kerr(g.values, 0.5 * dt);
    g.t_elapsed += dt;
}

PropagationResult propagate(FieldGrid grid, const NlseModel& model, double T, double dt,
                            std::size_t sample_every, std::size_t snapshot_every)
{
    if (!(T > 0.0) || !std::isfinite(T))
        throw ParameterError("propagate: T must be positive and finite");
    if (!(dt > 0.0) || !std::isfinite(dt) || dt > T)
        throw ParameterError("propagate: dt must satisfy 0 < dt <= T");
    if (sample_every == 0)
        throw ParameterError("propagate: sample_every must be >= 1");

    SplitStepPropagator prop(model, grid.n, grid.dx);
    const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
    const double t_start = grid.t_elapsed;

    PropagationResult res;
    res.trajectory.push_back(observe(grid));
    if (snapshot_every)
        res.snapshots.push_back({grid.t_elapsed, grid.values});

    FieldGrid last_good = grid;
    for (std::size_t s = 1; s <= steps; ++s) {
        const double h = (s == steps) ? (t_start + T) - grid.t_elapsed : dt;
        prop.step(grid, h);
        bool finite = true;
        for (const auto& v : grid.values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                finite = false;
                break;
            }
        if (!finite)
            throw PropagationError("propagate: non-finite field at step " + std::to_string(s) +
                                       " (t = " + format_double(grid.t_elapsed) + " s)",
                                   std::move(last_good), s);
        if (s % sample_every == 0 || s == steps)
            res.trajectory.push_back(observe(grid));
        if (snapshot_every && (s % snapshot_every == 0 || s == steps))
            res.snapshots.push_back({grid.t_elapsed, grid.values});
        last_good.values = grid.values;
        last_good.t_elapsed = grid.t_elapsed;
    }
    res.steps = steps;
    res.final_grid = std::move(grid);
    return res;
}

double residual(const std::function<cd(double, double)>& envelope, const FieldGrid& grid,
                const NlseModel& model, double t, double dt)
{
    if (!(dt > 0.0))
        throw ParameterError("residual: dt must be > 0");
    const std::size_t n = grid.n;
    std::vector<cd> bm(n), b0(n), bp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = grid.xi(i);
        bm[i] = envelope(xi, t - dt);
        b0[i] = envelope(xi, t);
        bp[i] = envelope(xi, t + dt);
    }
    const auto bxx = spectral_second_derivative(b0, grid.dx);
    const double Vg = model.Vg;
    std::vector<cd> t1(n), t2(n), t3(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        t1[i] = cd(0.0, 1.0 / Vg) * (bp[i] - bm[i]) / (2.0 * dt);
        t2[i] = -(model.K2 / 2.0) * Vg * Vg * bxx[i];
        t3[i] = model.W * std::norm(b0[i]) * b0[i];
        r[i] = t1[i] + t2[i] + t3[i];
    }
    const double scale = l2(t1) + l2(t2) + l2(t3);
    return scale == 0.0 ? 0.0 : l2(r) / scale;
}

} // namespace eitq
