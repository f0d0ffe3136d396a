// sweep.hpp — Declarative parameter grids over the dimensionless inputs, evaluated to CSV

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "boundent/dynamics.hpp"
#include "boundent/equilibrium.hpp"
#include "boundent/model.hpp"
#include "boundent/spectral.hpp"

namespace boundent {

// Malformed sweep description; the message names the offending field.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Param { omegaL, zOverL, betaOmega, time };
enum class Spacing { linear, log, list };
enum class Output {
    ratioA,
    ratioANearBoundary,
    ratioAUnbounded,
    ratioB,
    conditionLHS,
    creationFlag,
    criticalTemperatureK,
    concurrenceTrajectory,
    equilibriumConcurrence,
};

inline const std::map<std::string, Param>& param_names() {
    static const std::map<std::string, Param> m{{"omegaL", Param::omegaL},
                                                {"zOverL", Param::zOverL},
                                                {"betaOmega", Param::betaOmega},
                                                {"time", Param::time}};
    return m;
}

inline const std::map<std::string, Output>& output_names() {
    static const std::map<std::string, Output> m{
        {"ratioA", Output::ratioA},
        {"ratioANearBoundary", Output::ratioANearBoundary},
        {"ratioAUnbounded", Output::ratioAUnbounded},
        {"ratioB", Output::ratioB},
        {"conditionLHS", Output::conditionLHS},
        {"creationFlag", Output::creationFlag},
        {"criticalTemperatureK", Output::criticalTemperatureK},
        {"concurrenceTrajectory", Output::concurrenceTrajectory},
        {"equilibriumConcurrence", Output::equilibriumConcurrence}};
    return m;
}

template <class E>
std::string name_of(const std::map<std::string, E>& table, E value) {
    for (const auto& [k, v] : table)
        if (v == value) return k;
    return "?";
}

inline std::string name_of(Param p) { return name_of(param_names(), p); }
inline std::string name_of(Output o) { return name_of(output_names(), o); }

struct Axis {
    Param param = Param::omegaL;
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    Spacing spacing = Spacing::linear;
    std::vector<double> values; // used when spacing == list

    std::vector<double> points() const {
        if (spacing == Spacing::list) return values;
        std::vector<double> p(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            const double f = static_cast<double>(i) / (count - 1);
            p[i] = spacing == Spacing::linear ? min + f * (max - min)
                                              : std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
        }
        p.front() = min;
        p.back() = max;
        return p;
    }
};

struct SiBlock {
    double omega_rad_per_s;
    double L_m;
    double z_m; // +inf for no plate
};

struct SweepSpec {
    std::vector<Axis> axes; // at most two; the first varies slowest
    std::map<Param, double> fixed{{Param::omegaL, 2.027},
                                  {Param::zOverL, kInf},
                                  {Param::betaOmega, kInf},
                                  {Param::time, 0.0}};
    std::vector<Output> outputs;
    std::optional<SiBlock> si;
};

// Converts a token to a number; accepts inf/unbounded and nan.
inline double parse_number(const std::string& raw, const std::string& field) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "inf" || s == "+inf" || s == "unbounded" || s == "infinity") return kInf;
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw SpecError("field '" + field + "': cannot parse number '" + raw + "'");
    }
}

inline void validate(const SweepSpec& spec) {
    if (spec.axes.size() > 2) throw SpecError("field 'axes': at most two axes are supported");
    if (spec.outputs.empty()) throw SpecError("field 'outputs': at least one output is required");
    for (std::size_t i = 0; i < spec.axes.size(); ++i) {
        const Axis& a = spec.axes[i];
        const std::string f = "axes." + name_of(a.param);
        for (std::size_t j = 0; j < i; ++j)
            if (spec.axes[j].param == a.param) throw SpecError("field '" + f + "': axis listed twice");
        if (a.spacing == Spacing::list) {
            if (a.values.empty()) throw SpecError("field '" + f + ".values': must not be empty");
            continue;
        }
        if (a.count < 2) throw SpecError("field '" + f + ".count': must be >= 2");
        if (!(a.min < a.max)) throw SpecError("field '" + f + ".min': must be < max");
        if (!std::isfinite(a.min) || !std::isfinite(a.max))
            throw SpecError("field '" + f + "': bounds must be finite");
        if (a.spacing == Spacing::log && !(a.min > 0.0))
            throw SpecError("field '" + f + ".spacing': log spacing requires min > 0");
    }
    for (Output o : spec.outputs)
        if (o == Output::criticalTemperatureK && !spec.si)
            throw SpecError("field 'outputs': criticalTemperatureK needs the 'si' block");
    if (spec.si) {
        if (!(spec.si->omega_rad_per_s > 0.0)) throw SpecError("field 'si.omega_rad_per_s': must be > 0");
        if (!(spec.si->L_m >= 0.0)) throw SpecError("field 'si.L_m': must be >= 0");
        if (!(spec.si->z_m > 0.0)) throw SpecError("field 'si.z_m': must be > 0");
    }
}

inline Axis parse_axis_token(const std::string& name, const std::string& desc) {
    // min:max:count[:linear|log]
    auto it = param_names().find(name);
    if (it == param_names().end()) throw SpecError("field 'axes': unknown axis '" + name + "'");
    Axis a;
    a.param = it->second;
    std::vector<std::string> parts;
    std::stringstream ss(desc);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    const std::string f = "axes." + name;
    if (parts.size() < 3 || parts.size() > 4)
        throw SpecError("field '" + f + "': expected min:max:count[:linear|log]");
    a.min = parse_number(parts[0], f + ".min");
    a.max = parse_number(parts[1], f + ".max");
    const double c = parse_number(parts[2], f + ".count");
    if (c != std::floor(c) || c > 1e7) throw SpecError("field '" + f + ".count': must be an integer");
    a.count = static_cast<int>(c);
    if (parts.size() == 4) {
        if (parts[3] == "linear") a.spacing = Spacing::linear;
        else if (parts[3] == "log") a.spacing = Spacing::log;
        else throw SpecError("field '" + f + ".spacing': expected linear or log");
    }
    return a;
}

inline Output parse_output(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto it = output_names().find(s);
    if (it == output_names().end()) throw SpecError("field 'outputs': unknown output '" + s + "'");
    return it->second;
}

inline void set_fixed(SweepSpec& spec, const std::string& name, double value) {
    auto it = param_names().find(name);
    if (it == param_names().end()) throw SpecError("field 'fixed': unknown parameter '" + name + "'");
    spec.fixed[it->second] = value;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Flat key=value form:
//   axis.omegaL = 0.01:10:500:linear
//   fixed.betaOmega = inf
//   outputs = ratioA, ratioB
//   si.omega_rad_per_s = 1e14
inline SweepSpec parse_sweep_keyvalue(std::istream& in) {
    SweepSpec spec;
    std::string line;
    int lineno = 0;
    std::map<std::string, double> si;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SpecError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key.rfind("axis.", 0) == 0) {
                spec.axes.push_back(parse_axis_token(key.substr(5), value));
            } else if (key.rfind("fixed.", 0) == 0) {
                set_fixed(spec, key.substr(6), parse_number(value, key));
            } else if (key == "outputs") {
                std::stringstream ss(value);
                for (std::string o; std::getline(ss, o, ',');) spec.outputs.push_back(parse_output(o));
            } else if (key.rfind("si.", 0) == 0) {
                si[key.substr(3)] = parse_number(value, key);
            } else {
                throw SpecError("field '" + key + "': unknown key");
            }
        } catch (const SpecError& e) {
            throw SpecError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!si.empty()) {
        for (const char* k : {"omega_rad_per_s", "L_m", "z_m"})
            if (!si.count(k)) throw SpecError(std::string("field 'si.") + k + "': missing");
        spec.si = SiBlock{si["omega_rad_per_s"], si["L_m"], si["z_m"]};
    }
    validate(spec);
    return spec;
}

inline double json_number(const nlohmann::json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_number(j.get<std::string>(), field);
    throw SpecError("field '" + field + "': expected a number");
}

// JSON form:
//   {"axes": [{"name": "omegaL", "min": 0.01, "max": 10, "count": 500, "spacing": "linear"}],
//    "fixed": {"zOverL": "unbounded"}, "outputs": ["ratioA"],
//    "si": {"omega_rad_per_s": 1e14, "L_m": 6.08e-6, "z_m": 1e-10}}
inline SweepSpec parse_sweep_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw SpecError("JSON sweep spec must be an object");
    SweepSpec spec;
    for (const auto& [key, val] : j.items())
        if (key != "axes" && key != "fixed" && key != "outputs" && key != "si")
            throw SpecError("field '" + key + "': unknown key");
    if (j.contains("axes")) {
        if (!j["axes"].is_array()) throw SpecError("field 'axes': expected an array");
        for (const auto& a : j["axes"]) {
            if (!a.contains("name") || !a["name"].is_string()) throw SpecError("field 'axes.name': missing");
            const std::string name = a["name"].get<std::string>();
            auto it = param_names().find(name);
            if (it == param_names().end()) throw SpecError("field 'axes': unknown axis '" + name + "'");
            const std::string f = "axes." + name;
            Axis ax;
            ax.param = it->second;
            const std::string spacing = a.value("spacing", std::string("linear"));
            if (spacing == "list") {
                ax.spacing = Spacing::list;
                if (!a.contains("values") || !a["values"].is_array())
                    throw SpecError("field '" + f + ".values': expected an array");
                for (const auto& v : a["values"]) ax.values.push_back(json_number(v, f + ".values"));
            } else {
                if (spacing == "linear") ax.spacing = Spacing::linear;
                else if (spacing == "log") ax.spacing = Spacing::log;
                else throw SpecError("field '" + f + ".spacing': expected linear, log or list");
                for (const char* k : {"min", "max", "count"})
                    if (!a.contains(k)) throw SpecError("field '" + f + "." + k + "': missing");
                ax.min = json_number(a["min"], f + ".min");
                ax.max = json_number(a["max"], f + ".max");
                if (!a["count"].is_number_integer()) throw SpecError("field '" + f + ".count': must be an integer");
                ax.count = a["count"].get<int>();
            }
            spec.axes.push_back(ax);
        }
    }
    if (j.contains("fixed")) {
        if (!j["fixed"].is_object()) throw SpecError("field 'fixed': expected an object");
        for (const auto& [k, v] : j["fixed"].items()) set_fixed(spec, k, json_number(v, "fixed." + k));
    }
    if (j.contains("outputs")) {
        if (!j["outputs"].is_array()) throw SpecError("field 'outputs': expected an array");
        for (const auto& o : j["outputs"]) {
            if (!o.is_string()) throw SpecError("field 'outputs': entries must be strings");
            spec.outputs.push_back(parse_output(o.get<std::string>()));
        }
    }
    if (j.contains("si")) {
        const auto& s = j["si"];
        for (const char* k : {"omega_rad_per_s", "L_m", "z_m"})
            if (!s.contains(k)) throw SpecError(std::string("field 'si.") + k + "': missing");
        spec.si = SiBlock{json_number(s["omega_rad_per_s"], "si.omega_rad_per_s"),
                          json_number(s["L_m"], "si.L_m"), json_number(s["z_m"], "si.z_m")};
    }
    validate(spec);
    return spec;
}

// Picks the parser from the first non-blank character.
inline SweepSpec parse_sweep_text(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_sweep_json(text);
    std::istringstream in(text);
    return parse_sweep_keyvalue(in);
}

inline SweepSpec load_sweep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open sweep config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_sweep_text(buf.str());
}

// 9 significant digits; inf/nan spelled out.
inline std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

struct CriticalTemperature {
    bool always_entangled = false; // ratioA >= 1: entanglement is born at any finite temperature
    double beta_omega = kInf;      // threshold beta*omega (inf when never entangled)
    double temperature = 0.0;      // 1/beta in the same natural units as omega
    std::optional<double> kelvin;  // present when SI data were supplied
};

// Threshold beta*omega solving tanh^2(beta omega / 2) = 1 - ratioA by bisection.
inline CriticalTemperature critical_beta_omega(double ratio_a) {
    CriticalTemperature ct;
    if (ratio_a >= 1.0 - 1e-12) {
        ct.always_entangled = true;
        ct.beta_omega = 0.0;
        ct.temperature = kInf;
        return ct;
    }
    const double target = 1.0 - ratio_a;
    if (ratio_a <= 0.0) return ct; // needs tanh^2 = 1: only at zero temperature
    auto f = [&](double bw) { return ratio_B_squared(bw) - target; };
    double lo = 0.0, hi = 1.0;
    while (f(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) return ct;
    }
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) hi = mid;
        else lo = mid;
    }
    ct.beta_omega = 0.5 * (lo + hi);
    return ct;
}

inline CriticalTemperature critical_temperature(const AtomPairGeometry& g,
                                                std::optional<double> omega_rad_per_s = std::nullopt) {
    CriticalTemperature ct = critical_beta_omega(ratio_A_squared(g));
    if (!ct.always_entangled) ct.temperature = std::isinf(ct.beta_omega) ? 0.0 : g.omega / ct.beta_omega;
    if (omega_rad_per_s) {
        using C = PhysicalConstants;
        ct.kelvin = ct.always_entangled ? kInf
                    : std::isinf(ct.beta_omega)
                        ? 0.0
                        : C::hbar * *omega_rad_per_s / (C::k_boltzmann * ct.beta_omega);
    }
    return ct;
}

struct SweepResult {
    std::string csv;
    std::vector<std::string> warnings;
    std::size_t rows = 0;
    std::size_t failed_rows = 0;
};

namespace detail {

inline bool needs_dynamics(Output o) {
    return o == Output::concurrenceTrajectory || o == Output::equilibriumConcurrence;
}

// Natural-unit point with omega = 1, so lengths are measured in 1/omega.
inline std::pair<AtomPairGeometry, ThermalBath> point_model(double omega_L, double z_over_L,
                                                            double beta_omega) {
    if (!(omega_L >= 0.0)) throw std::invalid_argument("omegaL must be >= 0");
    BoundaryDistance z = BoundaryDistance::unbounded();
    if (!std::isinf(z_over_L)) {
        if (omega_L == 0.0) throw std::invalid_argument("finite zOverL needs omegaL > 0");
        z = BoundaryDistance::at(z_over_L * omega_L);
    }
    return {AtomPairGeometry(1.0, omega_L, z), ThermalBath(beta_omega)};
}

inline double evaluate(Output o, const std::map<Param, double>& p, const SweepSpec& spec) {
    const double wl = p.at(Param::omegaL);
    const double zl = p.at(Param::zOverL);
    const double bw = p.at(Param::betaOmega);
    switch (o) {
    case Output::ratioA: return ratio_A_squared(wl, zl);
    case Output::ratioANearBoundary: return wl == 0.0 ? 1.0 : ratio_A_near_boundary(wl).leading;
    case Output::ratioAUnbounded: return ratio_A_squared(wl, kInf);
    case Output::ratioB: return ratio_B_squared(bw);
    case Output::conditionLHS: return ratio_A_squared(wl, zl) + ratio_B_squared(bw);
    case Output::creationFlag: return ratio_A_squared(wl, zl) + ratio_B_squared(bw) > 1.0 ? 1.0 : 0.0;
    case Output::criticalTemperatureK: {
        const CriticalTemperature ct = critical_beta_omega(ratio_A_squared(wl, zl));
        if (ct.always_entangled) return kInf;
        if (std::isinf(ct.beta_omega)) return 0.0;
        using C = PhysicalConstants;
        return C::hbar * spec.si->omega_rad_per_s / (C::k_boltzmann * ct.beta_omega);
    }
    case Output::concurrenceTrajectory: {
        const auto [g, bath] = point_model(wl, zl, bw);
        const double t = p.at(Param::time);
        if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
        const BlochState start = BlochState::excited_ground();
        if (t == 0.0) return concurrence(start);
        return concurrence(evolve_to(start, kossakowski(g, bath), g.n, t, 1e-10));
    }
    case Output::equilibriumConcurrence: {
        const auto [g, bath] = point_model(wl, zl, bw);
        return equilibrium(g, bath, BlochState::excited_ground().tau()).concurrence;
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace detail

// Evaluates every grid point in row-major order (first axis slowest).
inline SweepResult run_sweep(const SweepSpec& spec) {
    validate(spec);
    SweepResult res;
    std::map<Param, double> base = spec.fixed;
    if (spec.si) {
        // SI geometry sets the defaults; explicit axes still override.
        base[Param::omegaL] = spec.si->omega_rad_per_s * spec.si->L_m / PhysicalConstants::c_light;
        base[Param::zOverL] = std::isinf(spec.si->z_m) ? kInf
                              : spec.si->L_m == 0.0    ? kInf
                                                       : spec.si->z_m / spec.si->L_m;
    }

    std::ostringstream os;
    bool first = true;
    for (const Axis& a : spec.axes) {
        os << (first ? "" : ",") << name_of(a.param);
        first = false;
    }
    for (Output o : spec.outputs) {
        os << (first ? "" : ",") << name_of(o);
        first = false;
    }
    os << '\n';

    const std::vector<double> outer = spec.axes.empty() ? std::vector<double>{0.0} : spec.axes[0].points();
    const std::vector<double> inner = spec.axes.size() < 2 ? std::vector<double>{0.0} : spec.axes[1].points();
    for (double u : outer) {
        for (double v : inner) {
            std::map<Param, double> p = base;
            std::vector<double> coords;
            if (!spec.axes.empty()) {
                p[spec.axes[0].param] = u;
                coords.push_back(u);
            }
            if (spec.axes.size() > 1) {
                p[spec.axes[1].param] = v;
                coords.push_back(v);
            }
            std::vector<double> values;
            bool failed = false;
            for (Output o : spec.outputs) {
                try {
                    values.push_back(detail::evaluate(o, p, spec));
                } catch (const std::exception& e) {
                    values.push_back(std::numeric_limits<double>::quiet_NaN());
                    std::ostringstream w;
                    w << "row " << res.rows + 1 << " (";
                    for (std::size_t i = 0; i < coords.size(); ++i)
                        w << (i ? ", " : "") << name_of(spec.axes[i].param) << "=" << format_value(coords[i]);
                    w << "): " << name_of(o) << ": " << e.what();
                    res.warnings.push_back(w.str());
                    failed = true;
                }
            }
            bool first_col = true;
            for (double c : coords) {
                os << (first_col ? "" : ",") << format_value(c);
                first_col = false;
            }
            for (double x : values) {
                os << (first_col ? "" : ",") << format_value(x);
                first_col = false;
            }
            os << '\n';
            ++res.rows;
            if (failed) ++res.failed_rows;
        }
    }
    res.csv = os.str();
    return res;
}

} // namespace boundent
