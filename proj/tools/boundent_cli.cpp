// boundent_cli.cpp — Command-line front end: sweeps, critical temperatures, figure data, trajectories
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "boundent/boundent.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitUsage;
    }
    out << text;
    return 0;
}

struct SweepArgs {
    std::string config;
    std::vector<std::string> axes;  // name=min:max:count[:spacing]
    std::vector<std::string> fixed; // name=value
    std::string outputs;
    std::optional<double> si_omega, si_L, si_z;
    std::string out;
};

boundent::SweepSpec build_sweep(const SweepArgs& a) {
    using namespace boundent;
    SweepSpec spec;
    if (!a.config.empty()) spec = load_sweep_file(a.config);
    if (!a.axes.empty()) spec.axes.clear();
    for (const auto& ax : a.axes) {
        const auto eq = ax.find('=');
        if (eq == std::string::npos) throw SpecError("--axis '" + ax + "': expected name=min:max:count[:spacing]");
        spec.axes.push_back(parse_axis_token(ax.substr(0, eq), ax.substr(eq + 1)));
    }
    for (const auto& f : a.fixed) {
        const auto eq = f.find('=');
        if (eq == std::string::npos) throw SpecError("--fixed '" + f + "': expected name=value");
        set_fixed(spec, f.substr(0, eq), parse_number(f.substr(eq + 1), "fixed." + f.substr(0, eq)));
    }
    if (!a.outputs.empty()) {
        spec.outputs.clear();
        std::stringstream ss(a.outputs);
        for (std::string o; std::getline(ss, o, ',');) spec.outputs.push_back(parse_output(o));
    }
    if (a.si_omega || a.si_L || a.si_z) {
        if (!(a.si_omega && a.si_L && a.si_z))
            throw SpecError("field 'si': --si-omega, --si-L and --si-z must be given together");
        spec.si = SiBlock{*a.si_omega, *a.si_L, *a.si_z};
    }
    validate(spec);
    return spec;
}

int run_sweep_cmd(const SweepArgs& a) {
    const boundent::SweepResult r = boundent::run_sweep(build_sweep(a));
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    if (const int rc = emit(r.csv, a.out)) return rc;
    return r.rows > 0 && r.failed_rows == r.rows ? kExitNumeric : 0;
}

struct CriticalArgs {
    double omega = 1.0;
    double L = -1.0;
    std::string z = "unbounded";
    std::optional<double> omega_si, L_m;
    std::string z_m = "unbounded";
    std::string out;
};

int run_critical_cmd(const CriticalArgs& a) {
    using namespace boundent;
    std::optional<double> omega_si;
    std::optional<AtomPairGeometry> geom;
    if (a.omega_si || a.L_m) {
        if (!(a.omega_si && a.L_m)) throw SpecError("--omega-si and --L-m must be given together");
        const NaturalParameters p = from_si({*a.omega_si, *a.L_m, parse_number(a.z_m, "z-m"), 0.0});
        geom = p.geometry;
        omega_si = a.omega_si;
    } else {
        if (a.L < 0.0) throw SpecError("critical-temp needs --L (natural units) or --omega-si/--L-m");
        const double z = parse_number(a.z, "z");
        geom = AtomPairGeometry(a.omega, a.L, std::isinf(z) ? BoundaryDistance::unbounded() : BoundaryDistance::at(z));
    }
    const CriticalTemperature ct = critical_temperature(*geom, omega_si);
    const DimensionlessParams d = dimensionless(*geom, ThermalBath::zero_temperature());
    std::ostringstream os;
    os << "omegaL,zOverL,ratioA,betaOmegaCritical,criticalTemperature" << (ct.kelvin ? ",criticalTemperatureK" : "")
       << '\n';
    os << format_value(d.omega_L) << ','
       << format_value(d.z_kind == ZOverL::finite ? d.z_over_L : kInf) << ','
       << format_value(ratio_A_squared(*geom)) << ',' << format_value(ct.beta_omega) << ','
       << format_value(ct.temperature);
    if (ct.kelvin) os << ',' << format_value(*ct.kelvin);
    os << '\n';
    if (ct.always_entangled) std::cerr << "note: (A2/A1)^2 >= 1, entanglement is born at every finite temperature\n";
    return emit(os.str(), a.out);
}

int run_reproduce_cmd(const std::string& figure, const std::string& out) {
    const boundent::Reproduction r = boundent::reproduce(figure);
    for (const auto& s : r.summary) std::cerr << s << '\n';
    if (const int rc = emit(r.csv, out)) return rc;
    return r.rows > 0 && r.failed_rows == r.rows ? kExitNumeric : 0;
}

int run_evolve_cmd(const std::string& config, double t_end, double tol, const std::string& out) {
    const boundent::EvolveConfig cfg = boundent::load_evolve_config(config);
    const boundent::EvolveOutput r = boundent::evolve_csv(cfg, t_end, tol);
    std::cerr << "final concurrence " << boundent::format_value(r.final_concurrence) << ", equilibrium residual "
              << boundent::format_value(r.equilibrium_residual) << ", steps " << r.trajectory.diagnostics.accepted
              << " accepted / " << r.trajectory.diagnostics.rejected << " rejected\n";
    return emit(r.csv, out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement generation between two atoms in a thermal bath near a reflecting plane"};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto* sw = app.add_subcommand("sweep", "Evaluate outputs over a grid of (omegaL, zOverL, betaOmega, time)");
    sw->add_option("--config", sweep.config, "Sweep spec file (key=value or JSON)");
    sw->add_option("--axis", sweep.axes, "Axis as name=min:max:count[:linear|log]; repeat for a second axis");
    sw->add_option("--fixed", sweep.fixed, "Fixed parameter as name=value (inf/unbounded allowed)");
    sw->add_option("--outputs", sweep.outputs, "Comma-separated outputs");
    sw->add_option("--si-omega", sweep.si_omega, "Transition frequency in rad/s (enables Kelvin output)");
    sw->add_option("--si-L", sweep.si_L, "Separation in m");
    sw->add_option("--si-z", sweep.si_z, "Plate distance in m (inf for none)");
    sw->add_option("--out", sweep.out, "Write CSV here instead of stdout");

    CriticalArgs crit;
    auto* ct = app.add_subcommand("critical-temp", "Temperature below which entanglement is created");
    ct->add_option("--omega", crit.omega, "Level spacing (natural units)");
    ct->add_option("--L", crit.L, "Separation (natural units)");
    ct->add_option("--z", crit.z, "Plate distance (natural units) or 'unbounded'");
    ct->add_option("--omega-si", crit.omega_si, "Level spacing in rad/s");
    ct->add_option("--L-m", crit.L_m, "Separation in m");
    ct->add_option("--z-m", crit.z_m, "Plate distance in m or 'unbounded'");
    ct->add_option("--out", crit.out, "Write CSV here instead of stdout");

    std::string figure, repro_out;
    auto* rp = app.add_subcommand("reproduce", "Emit the canonical data for fig2, fig3, fig4 or hydrogen-example");
    rp->add_option("figure", figure, "Figure name")->required();
    rp->add_option("--out", repro_out, "Write CSV here instead of stdout");

    std::string evolve_config, evolve_out;
    double t_end = 0.0, tol = 1e-10;
    auto* ev = app.add_subcommand("evolve", "Integrate one trajectory from a key=value config");
    ev->add_option("config", evolve_config, "Config file")->required();
    ev->add_option("--t-end", t_end, "Final time (units of 1/omega)")->required();
    ev->add_option("--tol", tol, "Local error tolerance in [1e-12, 1e-4]");
    ev->add_option("--out", evolve_out, "Write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sw) return run_sweep_cmd(sweep);
        if (*ct) return run_critical_cmd(crit);
        if (*rp) return run_reproduce_cmd(figure, repro_out);
        if (*ev) return run_evolve_cmd(evolve_config, t_end, tol, evolve_out);
    } catch (const boundent::SpecError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const boundent::IntegrationError& e) {
        std::cerr << "integration failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const boundent::InvalidStateError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}
