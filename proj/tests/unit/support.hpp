#pragma once

#include "eit_qnlse/params.hpp"
#include "eit_qnlse/reduction.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testing {

using cd = std::complex<double>;

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
inline double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

inline std::string config_path(const std::string& name)
{
    return std::string(EITQ_CONFIG_DIR) + "/" + name;
}

// Preset with calibrated couplings, computed once.
inline const eitq::MediumParams& calibrated_preset()
{
    static const eitq::MediumParams p = eitq::calibrate(eitq::rb87_preset()).params;
    return p;
}

inline const eitq::NlseCoefficients& calibrated_coefficients()
{
    static const eitq::NlseCoefficients c = eitq::nlse_coefficients(calibrated_preset());
    return c;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag)
{
    static std::mt19937_64 rng(std::random_device{}());
    auto dir = std::filesystem::temp_directory_path() /
               ("eitq_test_" + tag + "_" + std::to_string(rng() % 1000000007));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Independent evaluation of K(omega) straight from the Lambda-system formula.
inline cd direct_k(double omega, double kappa, double c, double g13, double g23, double g21,
                   double delta2, double delta3, cd omega_c)
{
    const cd d21(delta2, g21);
    const cd d31(delta3, 0.5 * (g13 + g23));
    const cd num = omega + d21;
    const cd den = std::norm(omega_c) - (omega + d21) * (omega + d31);
    return omega / c + kappa * num / den;
}

} // namespace testing
