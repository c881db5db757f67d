#include "eit_qnlse/params.hpp"

#include "eit_qnlse/errors.hpp"
#include "eit_qnlse/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace eitq {

std::optional<double> MediumParams::inferred_atom_number() const
{
    if (!kappa13 || !gp_abs2 || *gp_abs2 == 0.0)
        return std::nullopt;
    return *kappa13 * c_light / *gp_abs2;
}

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw InvariantError("invalid medium parameters: " + what);
}

bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

void validate(const MediumParams& p)
{
    const std::pair<const char*, double> all[] = {
        {"gamma13", p.gamma13},   {"gamma23", p.gamma23},
        {"gamma21_deph", p.gamma21_deph}, {"delta2", p.delta2},
        {"delta3", p.delta3},     {"atom_density", p.atom_density},
        {"k_p", p.k_p},           {"cell_length", p.cell_length},
        {"c_light", p.c_light}};
    for (auto [name, v] : all)
        require(std::isfinite(v), std::string(name) + " must be finite");
    require(finite(p.omega_c), "omega_c must be finite");

    require(p.gamma13 >= 0.0, "gamma13 must be >= 0");
    require(p.gamma23 >= 0.0, "gamma23 must be >= 0");
    require(p.gamma21_deph >= 0.0, "gamma21_deph must be >= 0");
    require(p.atom_density > 0.0, "atom_density must be > 0");
    require(p.cell_length > 0.0, "cell_length must be > 0");
    require(p.k_p > 0.0, "k_p must be > 0");
    require(p.c_light > 0.0, "c_light must be > 0");
    require(p.gamma31() > 0.0, "gamma31 = (gamma13 + gamma23)/2 must be > 0");

    if (p.kappa13)
        require(std::isfinite(*p.kappa13) && *p.kappa13 >= 0.0,
                "kappa13 must be finite and >= 0");
    if (p.gp_abs2)
        require(std::isfinite(*p.gp_abs2) && *p.gp_abs2 > 0.0,
                "gp_abs2 must be finite and > 0");
    if (p.kappa13 && p.gp_abs2) {
        // N = kappa13 c / |g_p|^2 must be a positive count; recomputing
        // kappa13 from it has to agree.
        const double n = *p.inferred_atom_number();
        require(std::isfinite(n) && n > 0.0, "kappa13 c / gp_abs2 must be a positive atom number");
        const double back = n * *p.gp_abs2 / p.c_light;
        require(std::abs(back - *p.kappa13) <= 1e-6 * std::abs(*p.kappa13),
                "kappa13 and gp_abs2 inconsistent");
    }
}

MediumParams rb87_preset()
{
    MediumParams p;
    p.gamma13 = kTwoPi * 3e6;
    p.gamma23 = kTwoPi * 3e6;
    p.gamma21_deph = 0.0;
    p.delta3 = kTwoPi * 60e6;
    p.delta2 = kTwoPi * 1.2e6;
    p.atom_density = 8e10;
    p.omega_c = cd(kTwoPi * 28e6, 0.0);
    p.k_p = kTwoPi / kRb87D2Wavelength;
    p.cell_length = 1.0;
    p.c_light = kSpeedOfLight;
    return p;
}

ComplexDetunings complex_detunings(const MediumParams& p)
{
    for (double v : {p.delta2, p.delta3, p.gamma13, p.gamma23, p.gamma21_deph})
        if (!std::isfinite(v))
            throw ParameterError("complex_detunings: non-finite input");
    return {cd(p.delta2, p.gamma21()), cd(p.delta3, p.gamma31())};
}

EitCondition eit_condition(const MediumParams& p, double floor, double threshold)
{
    EitCondition e;
    e.floor = floor;
    e.threshold = threshold;
    e.floor_used = p.gamma21() < floor;
    const double g21 = e.floor_used ? floor : p.gamma21();
    e.ratio = p.omega_c_abs2() / (g21 * p.gamma31());
    e.satisfied = e.ratio > threshold;
    return e;
}

// ---------------------------------------------------------------- config

namespace {

enum class Dim { AngularFrequency, Density, Wavenumber, Length, Speed, Coupling, RateSquared };

struct FieldSpec
{
    Dim dim;
    bool required;
    bool complex;
};

const std::map<std::string, FieldSpec>& field_table()
{
    static const std::map<std::string, FieldSpec> t{
        {"gamma13", {Dim::AngularFrequency, true, false}},
        {"gamma23", {Dim::AngularFrequency, true, false}},
        {"gamma21_deph", {Dim::AngularFrequency, false, false}},
        {"delta2", {Dim::AngularFrequency, true, false}},
        {"delta3", {Dim::AngularFrequency, true, false}},
        {"omega_c", {Dim::AngularFrequency, true, true}},
        {"atom_density", {Dim::Density, true, false}},
        {"kappa13", {Dim::Coupling, false, false}},
        {"gp_abs2", {Dim::RateSquared, false, false}},
        {"k_p", {Dim::Wavenumber, false, false}},
        {"cell_length", {Dim::Length, false, false}},
        {"c_light", {Dim::Speed, false, false}},
    };
    return t;
}

// Unit suffix -> (dimension, factor to the stored unit).
const std::map<std::string, std::pair<Dim, double>>& unit_table()
{
    static const std::map<std::string, std::pair<Dim, double>> t{
        {"rad_s", {Dim::AngularFrequency, 1.0}},
        {"Hz_x2pi", {Dim::AngularFrequency, kTwoPi}},
        {"kHz_x2pi", {Dim::AngularFrequency, kTwoPi * 1e3}},
        {"MHz_x2pi", {Dim::AngularFrequency, kTwoPi * 1e6}},
        {"GHz_x2pi", {Dim::AngularFrequency, kTwoPi * 1e9}},
        {"cm-3", {Dim::Density, 1.0}},
        {"cm-1", {Dim::Wavenumber, 1.0}},
        {"cm", {Dim::Length, 1.0}},
        {"cm_s", {Dim::Speed, 1.0}},
        {"cm-1_s-1", {Dim::Coupling, 1.0}},
        {"s-2", {Dim::RateSquared, 1.0}},
    };
    return t;
}

const char* canonical_unit(Dim d)
{
    switch (d) {
    case Dim::AngularFrequency: return "rad_s";
    case Dim::Density: return "cm-3";
    case Dim::Wavenumber: return "cm-1";
    case Dim::Length: return "cm";
    case Dim::Speed: return "cm_s";
    case Dim::Coupling: return "cm-1_s-1";
    case Dim::RateSquared: return "s-2";
    }
    return "";
}

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

bool parse_real(std::string_view s, double& out)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

// "a", "a+bi", "a-bi", "bi"
bool parse_complex(std::string_view s, cd& out)
{
    double re = 0.0;
    if (parse_real(s, re)) {
        out = {re, 0.0};
        return true;
    }
    if (s.empty() || s.back() != 'i')
        return false;
    s.remove_suffix(1);
    // split at the last sign that is not an exponent sign or leading sign
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            double im = 0.0;
            if (parse_real(s.substr(0, k), re) && parse_real(s.substr(k), im)) {
                out = {re, im};
                return true;
            }
            return false;
        }
    }
    double im = 0.0;
    if (parse_real(s, im)) {
        out = {0.0, im};
        return true;
    }
    return false;
}

std::string format_complex(cd z)
{
    if (z.imag() == 0.0 && !std::signbit(z.imag()))
        return format_double(z.real());
    std::string im = format_double(z.imag());
    if (im.front() != '-')
        im.insert(im.begin(), '+');
    return format_double(z.real()) + im + "i";
}

} // namespace

MediumParams parse_config(std::string_view text, const std::string& source)
{
    MediumParams p;
    std::set<std::string> seen;

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(source, lineno, "", "expected 'key = value unit'");
        std::string key(trim(line.substr(0, eq)));
        std::string_view rhs = trim(line.substr(eq + 1));

        auto spec_it = field_table().find(key);
        if (spec_it == field_table().end())
            throw ConfigError(source, lineno, key, "unknown key");
        if (!seen.insert(key).second)
            throw ConfigError(source, lineno, key, "duplicate key");
        const FieldSpec& spec = spec_it->second;

        auto sp = rhs.find_first_of(" \t");
        if (sp == std::string_view::npos)
            throw UnitError(source, lineno, key,
                            std::string("missing unit suffix (expected e.g. ") +
                                canonical_unit(spec.dim) + ")");
        std::string_view value_text = trim(rhs.substr(0, sp));
        std::string unit(trim(rhs.substr(sp)));

        auto unit_it = unit_table().find(unit);
        if (unit_it == unit_table().end() || unit_it->second.first != spec.dim)
            throw UnitError(source, lineno, key,
                            "unexpected unit '" + unit + "' (expected " +
                                canonical_unit(spec.dim) + "-compatible unit)");
        const double factor = unit_it->second.second;

        cd value;
        if (spec.complex) {
            if (!parse_complex(value_text, value))
                throw ConfigError(source, lineno, key, "cannot parse number '" + std::string(value_text) + "'");
        } else {
            double v = 0.0;
            if (!parse_real(value_text, v))
                throw ConfigError(source, lineno, key, "cannot parse number '" + std::string(value_text) + "'");
            value = v;
        }
        // factor 1.0 keeps the stored bits untouched
        if (factor != 1.0)
            value *= factor;

        const double r = value.real();
        if (key == "gamma13") p.gamma13 = r;
        else if (key == "gamma23") p.gamma23 = r;
        else if (key == "gamma21_deph") p.gamma21_deph = r;
        else if (key == "delta2") p.delta2 = r;
        else if (key == "delta3") p.delta3 = r;
        else if (key == "omega_c") p.omega_c = value;
        else if (key == "atom_density") p.atom_density = r;
        else if (key == "kappa13") p.kappa13 = r;
        else if (key == "gp_abs2") p.gp_abs2 = r;
        else if (key == "k_p") p.k_p = r;
        else if (key == "cell_length") p.cell_length = r;
        else if (key == "c_light") p.c_light = r;
    }

    for (const auto& [key, spec] : field_table())
        if (spec.required && !seen.count(key))
            throw ConfigError(source, lineno, key, "missing required field '" + key + "'");

    validate(p);
    return p;
}

std::string format_config(const MediumParams& p)
{
    std::ostringstream os;
    os << "# Lambda-medium parameters (rad_s, cm, s)\n";
    auto put = [&](const char* key, double v, Dim d) {
        os << key << " = " << format_double(v) << ' ' << canonical_unit(d) << '\n';
    };
    put("gamma13", p.gamma13, Dim::AngularFrequency);
    put("gamma23", p.gamma23, Dim::AngularFrequency);
    put("gamma21_deph", p.gamma21_deph, Dim::AngularFrequency);
    put("delta2", p.delta2, Dim::AngularFrequency);
    put("delta3", p.delta3, Dim::AngularFrequency);
    os << "omega_c = " << format_complex(p.omega_c) << " rad_s\n";
    put("atom_density", p.atom_density, Dim::Density);
    if (p.kappa13)
        put("kappa13", *p.kappa13, Dim::Coupling);
    if (p.gp_abs2)
        put("gp_abs2", *p.gp_abs2, Dim::RateSquared);
    put("k_p", p.k_p, Dim::Wavenumber);
    put("cell_length", p.cell_length, Dim::Length);
    put("c_light", p.c_light, Dim::Speed);
    return os.str();
}

MediumParams load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParameterError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

void save_config(const MediumParams& p, const std::filesystem::path& path)
{
    validate(p);
    std::ofstream out(path);
    if (!out)
        throw ParameterError("cannot write config file '" + path.string() + "'");
    out << format_config(p);
    if (!out)
        throw ParameterError("write failed for '" + path.string() + "'");
}

} // namespace eitq
