#include "support.hpp"

#include "eit_qnlse/dispersion.hpp"
#include "eit_qnlse/errors.hpp"

#include <limits>

using namespace eitq;
using testing::rel;

namespace {

cd oracle_k(const MediumParams& p, double omega)
{
    return testing::direct_k(omega, *p.kappa13, p.c_light, p.gamma13, p.gamma23, p.gamma21_deph,
                             p.delta2, p.delta3, p.omega_c);
}

MediumParams random_medium(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MediumParams p = rb87_preset();
    p.gamma13 = kTwoPi * 1e6 * (1.0 + 5.0 * u(rng));
    p.gamma23 = kTwoPi * 1e6 * (1.0 + 5.0 * u(rng));
    p.gamma21_deph = kTwoPi * 1e3 * 5.0 * u(rng);
    p.delta3 = kTwoPi * 1e6 * (20.0 + 80.0 * u(rng)) * (u(rng) < 0.5 ? -1.0 : 1.0);
    p.delta2 = kTwoPi * 1e6 * (-1.5 + 3.0 * u(rng));
    p.omega_c = std::polar(kTwoPi * 1e6 * (20.0 + 20.0 * u(rng)), kTwoPi * u(rng));
    p.kappa13 = 1e9 * (1.0 + 9.0 * u(rng));
    return p;
}

} // namespace

TEST_SUITE("dispersion")
{
    TEST_CASE("big D")
    {
        const auto p = rb87_preset();
        const auto d = complex_detunings(p);
        CHECK(rel(big_d(-p.delta2, d, p.omega_c), cd(p.omega_c_abs2(), 0.0)) < 1e-15);

        const cd d0 = big_d(0.0, d, p.omega_c);
        CHECK(rel(d0.real(), 2.811e16) < 1e-3);
        CHECK(rel(d0.imag(), -1.421e14) < 1e-3);
        // -d21 d31 with the control off
        CHECK(rel(big_d(0.0, d, 0.0), -(d.d21 * d.d31)) < 1e-15);
    }

    TEST_CASE("dark resonance and empty medium")
    {
        auto p = testing::calibrated_preset();
        CHECK(linear_dispersion(-p.delta2, p) == cd(-p.delta2 / p.c_light, 0.0));

        p.kappa13 = 0.0;
        for (double w : {-1e8, -3.3e6, 0.0, 2.2e7})
            CHECK(linear_dispersion(w, p) == cd(w / p.c_light, 0.0));
        const auto t = taylor_coefficients(p);
        CHECK(t.K1 == cd(1.0 / p.c_light, 0.0));
        CHECK(t.K2 == cd(0.0, 0.0));

        auto q = rb87_preset();
        CHECK_THROWS_AS(linear_dispersion(0.0, q), ParameterError);
    }

    TEST_CASE("pole guard")
    {
        auto p = testing::calibrated_preset();
        p.gamma13 = p.gamma23 = 1e-30;
        p.omega_c = 0.0;
        p.delta2 = 0.0;
        p.gamma21_deph = 0.0;
        CHECK_THROWS_AS(linear_dispersion(0.0, p), PoleError);
    }

    TEST_CASE("matches direct evaluation")
    {
        const auto& p = testing::calibrated_preset();
        for (double w : {-2e8, -1e7, -p.delta2 + 1.0, 0.0, 5e6, 3e8})
            CHECK(rel(linear_dispersion(w, p), oracle_k(p, w)) < 1e-13);
    }

    TEST_CASE("closed-form derivatives match finite differences")
    {
        std::mt19937_64 rng(20240601);
        const double eps = std::numeric_limits<double>::epsilon();
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = random_medium(rng);
            CAPTURE(trial);
            const auto t = taylor_coefficients(p);
            // transparency window width
            const double scale = std::norm(p.omega_c) / std::abs(complex_detunings(p).d31);
            const double h1 = std::cbrt(eps) * scale;
            const double h2 = std::pow(eps, 1.0 / 6.0) * scale;
            const cd fd1 = (oracle_k(p, h1) - oracle_k(p, -h1)) / (2.0 * h1);
            auto second = [&](double h) { return (oracle_k(p, h) - 2.0 * oracle_k(p, 0.0) + oracle_k(p, -h)) / (h * h); };
            // Richardson-extrapolated central second difference
            const cd fd2 = (4.0 * second(h2 / 2.0) - second(h2)) / 3.0;
            CHECK(rel(t.K1, fd1) < 1e-6);
            CHECK(rel(t.K2, fd2) < 1e-6);
            CHECK(rel(t.K0, oracle_k(p, 0.0)) < 1e-14);
            CHECK(t.Vg == doctest::Approx(1.0 / t.K1.real()).epsilon(1e-15));
        }
    }

    TEST_CASE("reference group-velocity dispersion")
    {
        const auto t = taylor_coefficients(testing::calibrated_preset());
        CHECK(rel(t.K2.real(), 4.82e-15) < 1e-6);
        const double vg_c = t.Vg / kSpeedOfLight;
        CHECK(vg_c > 1.5e-4);
        CHECK(vg_c < 2.5e-4);
    }

    TEST_CASE("transparency scan")
    {
        const auto& p = testing::calibrated_preset();
        const double lo = -kTwoPi * 100e6, hi = kTwoPi * 100e6;
        const auto s = transparency_scan(p, lo, hi, 2001);
        REQUIRE(s.omega.size() == 2001);
        CHECK(s.omega.front() == lo);
        CHECK(s.omega.back() == hi);
        REQUIRE(s.peak_below.has_value());
        REQUIRE(s.peak_above.has_value());
        CHECK(*s.peak_below < s.omega_min_absorption);
        CHECK(s.omega_min_absorption < *s.peak_above);
        CHECK(std::abs(s.omega_min_absorption + p.delta2) < (hi - lo) / 2000.0);
        const double im_peak = oracle_k(p, *s.peak_below).imag();
        CHECK(oracle_k(p, 0.0).imag() < 1e-3 * im_peak);

        auto empty = p;
        empty.kappa13 = 0.0;
        for (const auto& k : transparency_scan(empty, lo, hi, 101).K)
            CHECK(k.imag() == 0.0);

        std::ostringstream os;
        write_scan_csv(transparency_scan(p, lo, hi, 11), os);
        const std::string csv = os.str();
        CHECK(csv.rfind("omega_rad_s,ReK_cm-1,ImK_cm-1\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);

        CHECK_THROWS_AS(transparency_scan(p, hi, lo, 11), ParameterError);
        CHECK_THROWS_AS(transparency_scan(p, lo, hi, 1), ParameterError);
    }

    TEST_CASE("first-order coherences")
    {
        const auto& p = testing::calibrated_preset();
        const auto z = first_order_coherences(p, 0.0);
        CHECK(z.s21 == cd(0.0, 0.0));
        CHECK(z.s31 == cd(0.0, 0.0));

        const cd d21(p.delta2, p.gamma21_deph);
        const cd d31(p.delta3, p.gamma31());
        const cd den = std::norm(p.omega_c) - d21 * d31;
        const double gp = std::sqrt(*p.gp_abs2);
        for (cd a : {cd(1.0, 0.0), cd(0.3, -2.0)}) {
            const auto c = first_order_coherences(p, a);
            CHECK(rel(c.s31, gp * a * d21 / den) < 1e-13);
            CHECK(rel(c.s21, -gp * a * std::conj(p.omega_c) / den) < 1e-13);
            CHECK(rel(c.s21 / c.s31, -std::conj(p.omega_c) / d21) < 1e-13);
        }
    }
}
