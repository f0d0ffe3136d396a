// evolve_config.hpp — key=value run descriptions for single trajectories and their CSV form

#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "boundent/dynamics.hpp"
#include "boundent/equilibrium.hpp"
#include "boundent/sweep.hpp"

namespace boundent {

// omega = 1            level spacing (natural units)
// L = 2.027            separation
// z = unbounded        plate distance, or a positive number
// beta = inf           inverse temperature
// n = 0, 0, 1          quantization axis
// initial = excited_ground   or 15 comma-separated Bloch components (rho0i, rhoi0, rhoij row-major)
struct EvolveConfig {
    double omega = 1.0;
    double L = 0.0;
    double z = kInf;
    double beta = kInf;
    Vec3 n{0.0, 0.0, 1.0};
    BlochState initial = BlochState::excited_ground();

    AtomPairGeometry geometry() const {
        return AtomPairGeometry(omega, L, std::isinf(z) ? BoundaryDistance::unbounded() : BoundaryDistance::at(z), n);
    }
    ThermalBath bath() const { return ThermalBath(beta); }
};

inline std::vector<double> parse_list(const std::string& value, const std::string& field) {
    std::vector<double> out;
    std::stringstream ss(value);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(parse_number(tok, field));
    return out;
}

inline EvolveConfig parse_evolve_config(std::istream& in) {
    EvolveConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw SpecError(where + "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "omega") c.omega = parse_number(value, key);
            else if (key == "L") c.L = parse_number(value, key);
            else if (key == "z") c.z = parse_number(value, key);
            else if (key == "beta") c.beta = parse_number(value, key);
            else if (key == "n") {
                const auto v = parse_list(value, key);
                if (v.size() != 3) throw SpecError("field 'n': expected 3 components");
                c.n = {v[0], v[1], v[2]};
            } else if (key == "initial") {
                if (value == "excited_ground") {
                    c.initial = BlochState::excited_ground();
                } else {
                    const auto v = parse_list(value, key);
                    if (v.size() != 15) throw SpecError("field 'initial': expected excited_ground or 15 numbers");
                    BlochVector15 b;
                    for (int i = 0; i < 15; ++i) b(i) = v[i];
                    c.initial = BlochState::unpack(b);
                }
            } else {
                throw SpecError("field '" + key + "': unknown key");
            }
        } catch (const SpecError& e) {
            throw SpecError(where + e.what());
        }
    }
    try {
        (void)c.geometry();
        (void)c.bath();
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("invalid parameters: ") + e.what());
    }
    if (min_eigenvalue(bloch_to_matrix(c.initial)) < -1e-10)
        throw SpecError("field 'initial': not a positive semidefinite state");
    return c;
}

inline EvolveConfig load_evolve_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open evolve config '" + path + "'");
    return parse_evolve_config(in);
}

struct EvolveOutput {
    std::string csv;
    Trajectory trajectory;
    double final_concurrence = 0.0;
    double equilibrium_residual = 0.0; // max-norm of the generator at the final state
};

inline EvolveOutput evolve_csv(const EvolveConfig& cfg, double t_end, double tol) {
    const AtomPairGeometry g = cfg.geometry();
    const KossakowskiSet k = kossakowski(g, cfg.bath());
    EvolveOutput out;
    out.trajectory = evolve(cfg.initial, k, g.n, t_end, tol);

    std::ostringstream os;
    os << "t,concurrence,pptMinEig,tau";
    for (int i = 1; i <= 3; ++i) os << ",rho0" << i;
    for (int i = 1; i <= 3; ++i) os << ",rho" << i << "0";
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) os << ",rho" << i << j;
    os << ",equilibriumResidual\n";

    const auto& tr = out.trajectory;
    for (std::size_t r = 0; r < tr.times.size(); ++r) {
        const BlochState& s = tr.states[r];
        const DensityMatrix4 m = bloch_to_matrix(s);
        const double c = concurrence(m);
        os << format_value(tr.times[r]) << ',' << format_value(c) << ',' << format_value(ppt_min_eigenvalue(m))
           << ',' << format_value(s.tau());
        const BlochVector15 v = s.pack();
        for (int i = 0; i < 15; ++i) os << ',' << format_value(v(i));
        os << ',';
        if (r + 1 == tr.times.size()) {
            out.final_concurrence = c;
            out.equilibrium_residual = lindblad_rhs(s, k, g.n).pack().cwiseAbs().maxCoeff();
            os << format_value(out.equilibrium_residual);
        }
        os << '\n';
    }
    out.csv = os.str();
    return out;
}

} // namespace boundent
