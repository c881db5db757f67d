#pragma once

#include <complex>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace eitq {

using cd = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Vacuum light speed [cm/s].
inline constexpr double kSpeedOfLight = 2.998e10;
/// Rb-87 D2 line [cm].
inline constexpr double kRb87D2Wavelength = 780e-7;

/**
 * Physical constants of the Lambda-type medium.
 *
 * Units: angular frequencies in rad/s, lengths in cm, times in s,
 * densities in cm^-3. kappa13 = |g_p|^2 N / c [cm^-1 s^-1] and
 * gp_abs2 = |g_p|^2 [s^-2] stay unset until calibrated or supplied.
 */
struct MediumParams
{
    double gamma13 = 0.0;
    double gamma23 = 0.0;
    double gamma21_deph = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
    cd omega_c{0.0, 0.0};
    double atom_density = 0.0;
    std::optional<double> kappa13;
    std::optional<double> gp_abs2;
    double k_p = kTwoPi / kRb87D2Wavelength;
    double cell_length = 1.0;
    double c_light = kSpeedOfLight;

    /// Optical coherence damping (G13 + G23)/2.
    double gamma31() const { return 0.5 * (gamma13 + gamma23); }
    double gamma32() const { return 0.5 * (gamma13 + gamma23); }
    double gamma21() const { return gamma21_deph; }
    double omega_c_abs2() const { return std::norm(omega_c); }
    bool calibrated() const { return kappa13.has_value() && gp_abs2.has_value(); }

    /// kappa13 * c / gp_abs2, the atom count N implied by the couplings.
    std::optional<double> inferred_atom_number() const;

    bool operator==(const MediumParams&) const = default;
};

/// Throws InvariantError naming the offending field.
void validate(const MediumParams& p);

/// Cold Rb-87 parameter set (D2 line, symmetric decay, far-detuned EIT).
MediumParams rb87_preset();

struct ComplexDetunings
{
    cd d21;
    cd d31;
};

/// d21 = Delta2 + i gamma21, d31 = Delta3 + i gamma31.
ComplexDetunings complex_detunings(const MediumParams& p);

struct EitCondition
{
    double ratio = 0.0;
    bool satisfied = false;
    bool floor_used = false;
    double floor = 0.0;
    double threshold = 0.0;
};

/// |Omega_c|^2 / (max(gamma21, floor) gamma31) against `threshold`.
EitCondition eit_condition(const MediumParams& p, double floor = kTwoPi * 1.0,
                           double threshold = 100.0);

// Config files: UTF-8 `key = value unit` lines, '#' comments.
MediumParams parse_config(std::string_view text,
                          const std::string& source = "<string>");
std::string format_config(const MediumParams& p);
MediumParams load_config(const std::filesystem::path& path);
void save_config(const MediumParams& p, const std::filesystem::path& path);

} // namespace eitq
