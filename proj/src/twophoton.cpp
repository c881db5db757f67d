#include "eit_qnlse/twophoton.hpp"

#include "eit_qnlse/errors.hpp"
#include "eit_qnlse/io.hpp"

#include <algorithm>
#include <cmath>

namespace eitq {

EnergyParts total_energy(double m0, double a0, double p0)
{
    if (m0 == 0.0 || !std::isfinite(m0))
        throw ParameterError("total_energy: m0 must be finite and nonzero");
    EnergyParts e;
    e.com = p0 * p0 / (4.0 * m0);
    e.binding = -m0 * a0 * a0 / 4.0;
    e.total = e.com + e.binding;
    return e;
}

cd BoundStateResult::phi_at(double z1, double z2) const
{
    const double mag = normalization * std::sqrt(zeta0) * std::exp(-zeta0 * std::abs(z1 - z2));
    return std::polar(mag, -p0 * (z1 + z2) / 2.0);
}

BoundStateResult analytic_bound_state(double m0, double a0, double p0, double box, std::size_t n)
{
    if (!(m0 < 0.0) || !(a0 > 0.0))
        throw RegimeError("analytic_bound_state: bound state requires m0 < 0 and a0 > 0");
    if (n < 2)
        throw ParameterError("analytic_bound_state: n must be >= 2");
    BoundStateResult r;
    r.m0 = m0;
    r.a0 = a0;
    r.p0 = p0;
    r.zeta0 = -m0 * a0 / 2.0;
    if (!(box > 10.0 / r.zeta0))
        throw ParameterError("analytic_bound_state: box must exceed 10/zeta0 = " +
                             format_double(10.0 / r.zeta0));
    r.energy = total_energy(m0, a0, p0);
    r.box = box;
    r.n = n;
    r.truncation_error = std::exp(-r.zeta0 * box);

    const double h = box / double(n);
    r.z.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        r.z[i] = -0.5 * box + (double(i) + 0.5) * h;

    r.normalization = 1.0;
    r.phi.resize(n * n);
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cd v = r.phi_at(r.z[i], r.z[j]);
            r.phi[i * n + j] = v;
            mass += std::norm(v);
        }
    mass *= h * h;
    r.normalization = 1.0 / std::sqrt(mass);
    for (auto& v : r.phi)
        v *= r.normalization;
    return r;
}

DensityMap density_map(const BoundStateResult& result, double L, std::size_t samples)
{
    if (!(L > 0.0))
        throw ParameterError("density_map: L must be > 0");
    if (samples < 2)
        throw ParameterError("density_map: need at least 2 samples per axis");
    DensityMap m;
    m.axis.resize(samples);
    for (std::size_t k = 0; k < samples; ++k)
        m.axis[k] = double(k) / double(samples - 1);
    const double amp2 = result.normalization * result.normalization * result.zeta0;
    m.values.resize(samples * samples);
    for (std::size_t i = 0; i < samples; ++i)
        for (std::size_t j = 0; j < samples; ++j) {
            const double sep = std::abs(m.axis[i] * L - m.axis[j] * L);
            m.values[i * samples + j] = amp2 * std::exp(-2.0 * result.zeta0 * sep);
        }
    return m;
}

double density_decay_rate(const BoundStateResult& result) { return 2.0 * result.zeta0; }

// ------------------------------------------------------------ lattice

namespace {

// Symmetric tridiagonal with constant off-diagonal -1 and diagonal `diag`.
struct Tridiag
{
    std::vector<double> diag;

    std::size_t size() const { return diag.size(); }

    // Number of eigenvalues below x (Sturm sequence via LDL^T pivots).
    std::size_t count_below(double x) const
    {
        std::size_t neg = 0;
        double d = 1.0;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            d = diag[i] - x - (i ? 1.0 / d : 0.0);
            if (d == 0.0)
                d = -1e-300;
            if (d < 0.0)
                ++neg;
        }
        return neg;
    }

    // (T - sigma) y = b by Thomas elimination; T - sigma must be SPD.
    std::vector<double> solve_shifted(double sigma, const std::vector<double>& b) const
    {
        const std::size_t n = diag.size();
        std::vector<double> c(n), y(n);
        double piv = diag[0] - sigma;
        y[0] = b[0] / piv;
        for (std::size_t i = 1; i < n; ++i) {
            c[i - 1] = -1.0 / piv;
            piv = diag[i] - sigma + c[i - 1];
            y[i] = (b[i] + y[i - 1]) / piv;
        }
        for (std::size_t i = n - 1; i-- > 0;)
            y[i] -= c[i] * y[i + 1];
        return y;
    }

    std::vector<double> apply(const std::vector<double>& x) const
    {
        const std::size_t n = x.size();
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = diag[i] * x[i] - (i ? x[i - 1] : 0.0) - (i + 1 < n ? x[i + 1] : 0.0);
        return y;
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace

LatticeGroundState lattice_ground_state(double m0, double a0, std::size_t n, double dx)
{
    if (n < 3 || n % 2 == 0)
        throw ParameterError("lattice_ground_state: n must be odd and >= 3 (well on the centre site)");
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw ParameterError("lattice_ground_state: dx must be positive");
    if (m0 == 0.0 || !std::isfinite(m0) || !std::isfinite(a0))
        throw ParameterError("lattice_ground_state: m0 must be finite and nonzero");

    const double s = m0 < 0.0 ? -1.0 : 1.0;
    const bool attractive = m0 * a0 < 0.0;
    const double zeta = std::abs(m0 * a0) / 2.0;
    if (attractive) {
        if (!(dx * double(n) > 20.0 / zeta))
            throw ParameterError("lattice_ground_state: discretization regime violated, need n dx > 20/zeta0 = " +
                                 format_double(20.0 / zeta));
        if (!(dx < 1.0 / (50.0 * zeta)))
            throw ParameterError("lattice_ground_state: discretization regime violated, need dx < 1/(50 zeta0) = " +
                                 format_double(1.0 / (50.0 * zeta)));
    }

    // s H_rel scaled by |m0| dx^2: tridiag(-1, 2, -1) + s a0 |m0| dx at the centre.
    const std::size_t centre = n / 2;
    Tridiag T{std::vector<double>(n, 2.0)};
    T.diag[centre] += s * a0 * std::abs(m0) * dx;

    // Sturm bisection for the lowest eigenvalue.
    double lo = *std::min_element(T.diag.begin(), T.diag.end()) - 2.0;
    double hi = *std::max_element(T.diag.begin(), T.diag.end()) + 2.0;
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (T.count_below(mid) >= 1 ? hi : lo) = mid;
    }
    const double sigma = lo - 1e-12 * std::max(1e-6, std::abs(lo));

    LatticeGroundState g;
    g.n = n;
    g.dx = dx;
    std::vector<double> x(n, 1.0 / std::sqrt(double(n)));
    double rho = 0.0;
    constexpr int kMaxIter = 100;
    constexpr double kTol = 1e-13;
    for (int it = 1; it <= kMaxIter; ++it) {
        auto y = T.solve_shifted(sigma, x);
        const double nrm = std::sqrt(dot(y, y));
        for (std::size_t i = 0; i < n; ++i)
            x[i] = y[i] / nrm;
        const auto Tx = T.apply(x);
        rho = dot(x, Tx);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            res += (Tx[i] - rho * x[i]) * (Tx[i] - rho * x[i]);
        res = std::sqrt(res);
        g.trace.push_back(res);
        g.iterations = it;
        if (res < kTol)
            break;
        if (it == kMaxIter) {
            std::string trace;
            for (double r : g.trace)
                trace += " " + format_double(r);
            throw ConvergenceError("lattice_ground_state: inverse iteration did not converge; residuals:" + trace);
        }
    }

    const double lambda = rho / (std::abs(m0) * dx * dx);
    g.E_rel = s * lambda;
    g.bound = attractive && rho < 0.0;
    g.zeta0_analytic = zeta;
    g.E_rel_analytic = -m0 * a0 * a0 / 4.0;

    if (x[centre] < 0.0)
        for (auto& v : x)
            v = -v;
    const double scale = 1.0 / std::sqrt(dot(x, x) * dx);
    g.r.resize(n);
    g.phi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.r[i] = (double(i) - double(centre)) * dx;
        g.phi[i] = x[i] * scale;
    }

    if (g.bound) {
        // least-squares slope of log(phi) against |r| on 1/zeta <= |r| <= 6/zeta
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ar = std::abs(g.r[i]);
            if (ar < 1.0 / zeta || ar > 6.0 / zeta || !(g.phi[i] > 0.0))
                continue;
            const double ly = std::log(g.phi[i]);
            sx += ar;
            sy += ly;
            sxx += ar * ar;
            sxy += ar * ly;
            ++m;
        }
        if (m < 2)
            throw ConvergenceError("lattice_ground_state: too few tail points for the decay fit");
        const double slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
        g.zeta0_fit = -slope;
    }
    return g;
}

} // namespace eitq
