#include "mho/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "mho/airy.hpp"
#include "mho/classical_density.hpp"
#include "mho/dynamics.hpp"
#include "mho/errors.hpp"
#include "mho/motion.hpp"
#include "mho/orbit_geometry.hpp"
#include "mho/params.hpp"
#include "mho/quantum.hpp"

namespace mho::cli {
namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string>;

constexpr double kPi = std::numbers::pi;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    json summary = json::object();
    /// gnuplot plot command; DATA is replaced by the quoted data file name.
    std::string plot;
};

struct Common {
    double c = 1.0;
    double kappa2 = 1.0;
    double hbar = 1.0;
    bool natural = false;
    std::string format = "csv";
    std::optional<double> tol;
    std::string out;
    bool gnuplot = false;
};

struct Inputs {
    std::vector<double> x0;
    std::vector<double> p0;
    std::optional<double> energy;
    std::optional<double> angular_momentum;
    std::optional<double> lambda;
    std::optional<double> periods;
    std::optional<double> t_end;
    int samples = 1001;
    std::string anchor = "rmin";
    double phi0 = 0.0;
    int points = 201;
    std::string method = "elliptic";
    int sweep = 0;
    double periodicity_tol = 1e-6;
    long max_denominator = 64;
    std::optional<double> rmax;
    int levels = 10;
    std::optional<int> level;
    std::string space = "position";
    int grid_points = 400;
    int segment_samples = 401;
    bool levels_given = false;
};

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> tolerances{
        {"classify", classical::kDefaultClassifyTol},
        {"orbit", classical::default_orbit_options().rel_tol},
        {"apsidal", 1e-8},
        {"trajectory", 1e-8},
        {"segment", 1e-12},
        {"spectrum", 1e-12},
        {"wavefunction", 1e-6},
        {"density-compare", 1e-6},
        {"virial", 1e-8},
    };
    return tolerances;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
    return buf;
}

std::string csv_field(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    const auto& s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + '"';
}

std::string render_csv(const Table& table) {
    std::string text;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) text += ',';
        text += table.columns[i];
    }
    text += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) text += ',';
            text += csv_field(row[i]);
        }
        text += '\n';
    }
    return text;
}

std::string render_json(const Table& table, const std::string& command, const OscillatorParams& params,
                        double tol) {
    json doc;
    doc["meta"] = {
        {"command", command},
        {"params", {{"c", params.c}, {"kappa2", params.kappa2}, {"hbar", params.hbar}}},
        {"tolerances", {{"tol", tol}}},
        {"version", kSchemaVersion},
        {"summary", table.summary},
    };
    json data = json::array();
    for (const auto& row : table.rows) {
        json item = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
                        item[table.columns[i]] = v + 0.0;  // no negative zero
                    } else {
                        item[table.columns[i]] = v;
                    }
                },
                row[i]);
        }
        data.push_back(std::move(item));
    }
    doc["data"] = std::move(data);
    return doc.dump(2) + "\n";
}

std::string render_gnuplot(const Table& table, const std::filesystem::path& data_path) {
    const std::string data = "'" + data_path.filename().string() + "'";
    std::string plot = table.plot;
    for (auto pos = plot.find("DATA"); pos != std::string::npos; pos = plot.find("DATA", pos + data.size())) {
        plot.replace(pos, 4, data);
    }
    std::filesystem::path image = data_path.filename();
    image.replace_extension(".png");
    return "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set terminal pngcairo size 900,700\n"
           "set output '" + image.string() + "'\n" + plot + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw DomainError("cannot open output file " + path.string());
    file << text;
    if (!file) throw DomainError("failed writing output file " + path.string());
}

void check(bool ok, const std::string& what) {
    if (!ok) throw ConvergenceError(what + " exceeds --tol", 0.0, 0.0);
}

classical::Invariants2D resolve_invariants(const Inputs& in, const OscillatorParams& params) {
    const bool has_state = !in.x0.empty() || !in.p0.empty();
    if (has_state) {
        if (in.x0.size() != 2 || in.p0.size() != 2) throw DomainError("--x0 and --p0 need two values each");
        if (in.energy || in.angular_momentum || in.lambda) {
            throw DomainError("give either --x0/--p0 or --energy with --J/--lambda");
        }
        return classical::invariants_of({{in.x0[0], in.x0[1]}, {in.p0[0], in.p0[1]}}, params);
    }
    if (!in.energy) throw DomainError("need --x0 and --p0, or --energy with --J or --lambda");
    if (in.angular_momentum && in.lambda) throw DomainError("--J and --lambda are exclusive");
    if (in.angular_momentum) return {*in.energy, *in.angular_momentum};
    if (in.lambda) return {*in.energy, classical::angular_momentum_for(*in.lambda, *in.energy, params)};
    throw DomainError("--energy needs --J or --lambda");
}

/// Phase state at r_min on the x axis, moving with the sign of J.
classical::PhaseState state_from(const Inputs& in, const classical::Invariants2D& inv,
                                 const OscillatorParams& params) {
    if (!in.x0.empty()) return {{in.x0[0], in.x0[1]}, {in.p0[0], in.p0[1]}};
    const auto cls = classical::classify(inv, params);
    const double r = cls.radii.r_min;
    if (!(r > 0.0)) throw SingularFieldError("J = 0 has no orbit integration; use the segment command");
    return {{r, 0.0}, {0.0, inv.angular_momentum / r}};
}

Table cmd_classify(const Inputs& in, const OscillatorParams& params, double tol) {
    const auto inv = resolve_invariants(in, params);
    const auto cls = classical::classify(inv, params, tol);
    Table t;
    t.columns = {"energy", "angular_momentum", "lambda", "type", "r_min", "r_max", "r_minus"};
    t.rows.push_back({inv.energy, inv.angular_momentum, cls.lambda, std::string(classical::to_string(cls.type)),
                      cls.radii.r_min, cls.radii.r_max, cls.radii.r_minus});
    t.plot = "set style data points\nplot DATA using 5:(0) title 'r_min', DATA using 6:(0) title 'r_max'";
    return t;
}

Table cmd_orbit(const Inputs& in, const OscillatorParams& params, double tol) {
    const auto inv = resolve_invariants(in, params);
    const auto state = state_from(in, inv, params);
    if (in.samples < 2) throw DomainError("--samples must be >= 2");
    if (in.periods && in.t_end) throw DomainError("--periods and --t-end are exclusive");
    const double t_radial = classical::radial_period(inv, params);
    const double t_end = in.t_end ? *in.t_end : in.periods.value_or(1.0) * t_radial;
    if (!(t_end > 0.0)) throw DomainError("orbit duration must be positive");

    numerics::OdeOptions options;
    options.rel_tol = tol;
    options.abs_tol = 1e-2 * tol;
    const auto sim = classical::simulate(state, params, t_end, options);
    const auto e0 = sim.initial.energy, j0 = sim.initial.angular_momentum;

    Table t;
    t.columns = {"t", "x1", "x2", "p1", "p2", "r", "p_norm", "energy_drift", "angular_momentum_drift"};
    for (int i = 0; i < in.samples; ++i) {
        const double time = i == in.samples - 1 ? t_end : t_end * i / (in.samples - 1);
        const auto s = classical::from_flat(sim.solution(time));
        const auto inv_t = classical::invariants_of(s, params);
        t.rows.push_back({time, s.x.x, s.x.y, s.p.x, s.p.y, s.x.norm(), s.p.norm(),
                          (inv_t.energy - e0) / e0, (inv_t.angular_momentum - j0) / std::abs(j0)});
    }
    const auto& d = sim.diagnostics;
    const auto cls = classical::classify(sim.initial, params);
    t.summary = {
        {"energy", e0},
        {"angular_momentum", j0},
        {"lambda", cls.lambda},
        {"type", std::string(classical::to_string(cls.type))},
        {"radial_period", t_radial},
        {"t_end", t_end},
        {"max_energy_drift", d.max_energy_drift},
        {"max_angular_momentum_drift", d.max_angular_momentum_drift},
        {"max_speed_defect", d.max_speed_defect},
        {"max_xp_residual", d.max_xp_residual},
        {"r_min_observed", d.r_min_observed},
        {"r_max_observed", d.r_max_observed},
        {"r_min_closed_form", cls.radii.r_min},
        {"r_max_closed_form", cls.radii.r_max},
        {"radial_extrema", sim.extrema.size()},
        {"accepted_steps", sim.solution.statistics().accepted},
    };
    t.plot = "set size ratio -1\nplot DATA using 2:3 with lines title 'x(t)'";
    return t;
}

std::vector<Cell> apsidal_row(const classical::Invariants2D& inv, const OscillatorParams& params, double tol,
                              const Inputs& in) {
    const double lambda = classical::motion_parameter(inv, params);
    const double elliptic = classical::apsidal_angle(inv, params, classical::OrbitMethod::Elliptic);
    const double quadrature = classical::apsidal_angle(inv, params, classical::OrbitMethod::Quadrature);
    check(std::abs(elliptic - quadrature) <= tol, "elliptic vs quadrature apsidal angle difference");
    const auto per = classical::detect_periodicity(elliptic, in.max_denominator, in.periodicity_tol);
    return {lambda,
            inv.energy,
            inv.angular_momentum,
            elliptic,
            quadrature,
            per.ratio,
            static_cast<long long>(per.periodic),
            static_cast<long long>(per.numerator),
            static_cast<long long>(per.denominator),
            classical::radial_period(inv, params)};
}

Table cmd_apsidal(const Inputs& in, const OscillatorParams& params, double tol) {
    Table t;
    t.columns = {"lambda",     "energy",   "angular_momentum", "delta_phi_elliptic", "delta_phi_quadrature",
                 "ratio_over_pi", "periodic", "numerator",        "denominator",        "radial_period"};
    if (in.sweep > 0) {
        if (in.sweep < 2) throw DomainError("--sweep needs at least 2 points");
        if (!in.x0.empty() || in.angular_momentum || in.lambda) {
            throw DomainError("--sweep takes only --energy");
        }
        const double energy = in.energy.value_or(1.0);
        for (int i = 0; i < in.sweep; ++i) {
            const double lambda = 0.01 + 0.98 * i / (in.sweep - 1);
            const classical::Invariants2D inv{energy, classical::angular_momentum_for(lambda, energy, params)};
            t.rows.push_back(apsidal_row(inv, params, tol, in));
        }
    } else {
        t.rows.push_back(apsidal_row(resolve_invariants(in, params), params, tol, in));
    }
    t.plot = "plot DATA using 1:6 with linespoints title 'delta_phi / pi'";
    return t;
}

Table cmd_trajectory(const Inputs& in, const OscillatorParams& params, double tol) {
    const auto inv = resolve_invariants(in, params);
    if (in.points < 2) throw DomainError("--points must be >= 2");
    classical::Anchor anchor;
    if (in.anchor == "rmin") {
        anchor = classical::Anchor::FromRmin;
    } else if (in.anchor == "rmax") {
        anchor = classical::Anchor::FromRmax;
    } else {
        throw DomainError("--anchor must be rmin or rmax");
    }
    const bool elliptic = in.method == "elliptic";
    const auto method = elliptic ? classical::OrbitMethod::Elliptic : classical::OrbitMethod::Quadrature;
    const auto other = elliptic ? classical::OrbitMethod::Quadrature : classical::OrbitMethod::Elliptic;
    const auto cls = classical::classify(inv, params);
    if (cls.type != classical::MotionType::Annulus) {
        throw DegenerateOrbitError("trajectory needs an annulus orbit (0 < lambda < 1)");
    }
    const double r_min = cls.radii.r_min, r_max = cls.radii.r_max;

    Table t;
    t.columns = {"r", "phi", "x1", "x2"};
    for (int i = 0; i < in.points; ++i) {
        const double r = i == in.points - 1 ? r_max : r_min + (r_max - r_min) * i / (in.points - 1);
        const double phi = classical::trajectory_angle(r, inv, params, anchor, in.phi0, method);
        const double phi_other = classical::trajectory_angle(r, inv, params, anchor, in.phi0, other);
        check(std::abs(phi - phi_other) <= tol, "elliptic vs quadrature angle difference");
        t.rows.push_back({r, phi, r * std::cos(phi), r * std::sin(phi)});
    }
    t.summary = {{"lambda", cls.lambda}, {"r_min", r_min}, {"r_max", r_max}, {"method", in.method}};
    t.plot = "set size ratio -1\nplot DATA using 3:4 with lines title 'phi(r)'";
    return t;
}

Table cmd_segment(const Inputs& in, const OscillatorParams& params, double tol) {
    if (in.rmax && in.energy) throw DomainError("--rmax and --energy are exclusive");
    if (in.segment_samples < 2) throw DomainError("--samples must be >= 2");
    const double r_max = in.rmax.value_or(1.0);
    if (!(r_max > 0.0)) throw DomainError("--rmax must be positive");
    const double energy = in.energy ? *in.energy : 0.5 * params.kappa2 * r_max * r_max;
    const double period = classical::segment_period(energy, params);
    const double span = in.periods.value_or(1.0) * period;
    if (!(span > 0.0)) throw DomainError("--periods must be positive");

    Table t;
    t.columns = {"t", "x", "p"};
    const int samples = in.segment_samples;
    for (int i = 0; i < samples; ++i) {
        const double time = i == samples - 1 ? span : span * i / (samples - 1);
        const auto pt = classical::segment_motion(time, energy, params);
        const double e = params.c * pt.p + 0.5 * params.kappa2 * pt.x * pt.x;
        check(std::abs(e - energy) <= tol * energy, "segment energy identity residual");
        t.rows.push_back({time, pt.x, pt.p});
    }
    t.summary = {{"energy", energy}, {"r_max", classical::segment_rmax(energy, params)}, {"period", period}};
    t.plot = "plot DATA using 1:2 with lines title 'x(t)', DATA using 1:3 with lines title 'p(t)'";
    return t;
}

Table cmd_spectrum(const Inputs& in, const OscillatorParams& params, double tol) {
    if (in.levels < 1) throw DomainError("--levels must be >= 1");
    Table t;
    t.columns = {"n", "airy_zero", "airy_prime_at_zero", "energy", "ai_at_zero"};
    for (int n = 1; n <= in.levels; ++n) {
        const auto lv = quantum::energy_level(n, params);
        const double residual = specfun::airy_ai(lv.airy_zero);
        check(std::abs(residual) <= tol, "|Ai(a_n)|");
        t.rows.push_back({static_cast<long long>(n), lv.airy_zero, lv.airy_prime_at_zero, lv.energy, residual});
    }
    t.plot = "plot DATA using 1:4 with linespoints title 'E_n'";
    return t;
}

Table cmd_wavefunction(const Inputs& in, const OscillatorParams& params, double tol) {
    const int n = in.level.value_or(1);
    if (in.grid_points < 1) throw DomainError("--points must be >= 1");
    quantum::RadialWavefunction wf;
    if (in.space == "momentum") {
        wf = quantum::momentum_wavefunction(n, params, quantum::default_momentum_grid(n, params, in.grid_points));
    } else if (in.space == "position") {
        wf = quantum::position_wavefunction(n, params, quantum::default_position_grid(n, params, in.grid_points));
    } else {
        throw DomainError("--space must be momentum or position");
    }
    check(wf.normalization_defect <= tol, "normalization defect");
    const std::string q = wf.space == quantum::Space::Momentum ? "k" : "r";
    Table t;
    t.columns = {q, "psi", "radial_density"};
    for (std::size_t i = 0; i < wf.grid.size(); ++i) {
        const double g = wf.grid[i], v = wf.values[i];
        t.rows.push_back({g, v, 4.0 * kPi * g * g * v * v});
    }
    const auto lv = quantum::energy_level(n, params);
    t.summary = {{"n", n},
                 {"space", std::string(quantum::to_string(wf.space))},
                 {"energy", lv.energy},
                 {"beta", wf.beta},
                 {"normalization_defect", wf.normalization_defect}};
    t.plot = "plot DATA using 1:2 with lines title 'psi_n'";
    return t;
}

template <class F>
auto fan_out(int first, int last, F&& f) {
    using R = decltype(f(first));
    std::vector<std::future<R>> jobs;
    for (int n = first; n <= last; ++n) jobs.push_back(std::async(std::launch::async, f, n));
    std::vector<R> results;
    for (auto& job : jobs) results.push_back(job.get());
    return results;
}

Table cmd_density_compare(const Inputs& in, const OscillatorParams& params, double tol) {
    if (in.level && in.levels_given) throw DomainError("--n and --levels are exclusive");
    int first = in.level.value_or(1), last = first;
    if (in.levels_given) {
        if (in.levels < 1) throw DomainError("--levels must be >= 1");
        first = 1;
        last = in.levels;
    }
    if (in.grid_points < 1) throw DomainError("--points must be >= 1");
    params.validate();
    const auto results = fan_out(first, last, [&](int n) {
        return quantum::density_compare(n, params, quantum::default_position_grid(n, params, in.grid_points));
    });

    Table t;
    t.columns = {"n", "r", "rho_quantum", "rho_classical", "radial_quantum", "radial_classical"};
    json levels = json::array();
    bool decreasing = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& dc = results[i];
        check(std::abs(dc.quantum_norm.value - 1.0) <= tol, "quantum density norm defect");
        if (i > 0 && !(dc.l1_distance.value < results[i - 1].l1_distance.value)) decreasing = false;
        for (const auto& row : dc.rows) {
            const double w = 4.0 * kPi * row.r * row.r;
            t.rows.push_back({static_cast<long long>(dc.n), row.r, row.rho_quantum, row.rho_classical,
                              w * row.rho_quantum, w * row.rho_classical});
        }
        levels.push_back({{"n", dc.n},
                          {"energy", dc.energy},
                          {"r_max", dc.r_max},
                          {"l1_distance", dc.l1_distance.value},
                          {"l1_error", dc.l1_distance.abs_error_estimate},
                          {"quantum_norm", dc.quantum_norm.value},
                          {"kolmogorov_distance", dc.kolmogorov_distance}});
    }
    t.summary = {{"levels", levels}, {"l1_decreasing", decreasing}};
    t.plot = "plot DATA using 2:5 with lines title '4 pi r^2 rho_n', DATA using 2:6 with lines title '4 pi r^2 rho_cl'";
    return t;
}

Table cmd_virial(const Inputs& in, const OscillatorParams& params, double tol) {
    if (in.levels < 1) throw DomainError("--levels must be >= 1");
    params.validate();
    const auto results = fan_out(1, in.levels, [&](int n) { return quantum::expectations(n, params); });
    Table t;
    t.columns = {"n",      "energy",        "kinetic",  "potential",       "kinetic_over_energy", "potential_over_energy",
                 "mean_r", "mean_r_error",  "half_r_max", "mean_r_relative_deviation"};
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& e = results[i];
        const double k = e.kinetic / e.energy, v = e.potential / e.energy;
        check(std::abs(k - 2.0 / 3.0) <= tol && std::abs(v - 1.0 / 3.0) <= tol, "virial ratio deviation");
        const double half = 0.5 * std::sqrt(2.0 * e.energy) / params.kappa();
        t.rows.push_back({static_cast<long long>(i + 1), e.energy, e.kinetic, e.potential, k, v, e.mean_r,
                          e.mean_r_error, half, (e.mean_r - half) / e.mean_r});
    }
    t.plot = "plot DATA using 1:5 with linespoints title 'T / E', DATA using 1:6 with linespoints title 'V / E'";
    return t;
}

void add_common(CLI::App* sub, Common& common) {
    auto* c = sub->add_option("--c", common.c, "speed of light c (m/s)");
    auto* k = sub->add_option("--kappa2", common.kappa2, "spring constant kappa^2 (J/m^2)");
    auto* h = sub->add_option("--hbar", common.hbar, "reduced Planck constant (J s)");
    sub->add_flag("--natural", common.natural, "set c = kappa^2 = hbar = 1")->excludes(c)->excludes(k)->excludes(h);
    sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", common.tol, "command tolerance (see README)");
    sub->add_option("--out", common.out, "output file (default: standard output)");
    sub->add_flag("--gnuplot", common.gnuplot, "also write a gnuplot script next to --out");
}

void add_invariants(CLI::App* sub, Inputs& in) {
    sub->add_option("--x0", in.x0, "initial position x1 x2 (m)")->expected(2);
    sub->add_option("--p0", in.p0, "initial momentum p1 p2 (J s/m)")->expected(2);
    sub->add_option("--energy", in.energy, "energy E (J)");
    sub->add_option("--J", in.angular_momentum, "angular momentum J (J s)");
    sub->add_option("--lambda", in.lambda, "orbit parameter in [0, 1], with --energy");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Relativistic massless harmonic oscillator: classical orbits and quantum levels", "mho"};
    app.require_subcommand(1);

    Common common;
    Inputs in;
    using Handler = Table (*)(const Inputs&, const OscillatorParams&, double);
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto add = [&](const char* name, const char* description, Handler handler) {
        auto* sub = app.add_subcommand(name, description);
        add_common(sub, common);
        commands.emplace_back(sub, handler);
        return sub;
    };

    auto* classify = add("classify", "classify the motion and report turning radii", cmd_classify);
    add_invariants(classify, in);

    auto* orbit = add("orbit", "integrate Hamilton's equations and report drift diagnostics", cmd_orbit);
    add_invariants(orbit, in);
    orbit->add_option("--periods", in.periods, "duration in radial periods (default 1)");
    orbit->add_option("--t-end", in.t_end, "duration (s)");
    orbit->add_option("--samples", in.samples, "output samples");

    auto* apsidal = add("apsidal", "apsidal angle by two routes and its periodicity", cmd_apsidal);
    add_invariants(apsidal, in);
    apsidal->add_option("--sweep", in.sweep, "sweep lambda over [0.01, 0.99] with this many points");
    apsidal->add_option("--periodicity-tol", in.periodicity_tol, "tolerance on delta_phi / pi = m / n");
    apsidal->add_option("--max-denominator", in.max_denominator, "largest n tried");

    auto* trajectory = add("trajectory", "polar angle phi(r) between the turning radii", cmd_trajectory);
    add_invariants(trajectory, in);
    trajectory->add_option("--anchor", in.anchor, "rmin or rmax");
    trajectory->add_option("--phi0", in.phi0, "angle at the anchor radius");
    trajectory->add_option("--points", in.points, "number of radii");
    trajectory->add_option("--method", in.method, "elliptic or quadrature")
        ->check(CLI::IsMember({"elliptic", "quadrature"}));

    auto* segment = add("segment", "exact J = 0 motion x(t), p(t)", cmd_segment);
    segment->add_option("--rmax", in.rmax, "turning radius (m), default 1");
    segment->add_option("--energy", in.energy, "energy E (J)");
    segment->add_option("--periods", in.periods, "number of periods (default 1)");
    segment->add_option("--samples", in.segment_samples, "output samples");

    auto* spectrum = add("spectrum", "energy levels E_n from the Airy zeros", cmd_spectrum);
    spectrum->add_option("--levels", in.levels, "number of levels");

    auto* wavefunction = add("wavefunction", "normalized l = 0 wavefunction on the default grid", cmd_wavefunction);
    wavefunction->add_option("--n", in.level, "level index (default 1)");
    wavefunction->add_option("--space", in.space, "momentum or position")
        ->check(CLI::IsMember({"momentum", "position"}));
    wavefunction->add_option("--points", in.grid_points, "grid points");

    auto* density = add("density-compare", "quantum vs classical radial densities", cmd_density_compare);
    density->add_option("--n", in.level, "single level index (default 1)");
    auto* levels = density->add_option("--levels", in.levels, "compare levels 1..N");
    density->add_option("--points", in.grid_points, "grid points per level");

    auto* virial = add("virial", "kinetic, potential and <r> expectation values", cmd_virial);
    virial->add_option("--levels", in.levels, "number of levels");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        err << app.help();
        return kInputError;
    }
    in.levels_given = levels->count() > 0;

    std::string name;
    Handler handler = nullptr;
    for (const auto& [sub, h] : commands) {
        if (sub->parsed()) {
            name = sub->get_name();
            handler = h;
        }
    }

    try {
        OscillatorParams params{common.c, common.kappa2, common.hbar};
        if (common.natural) params = OscillatorParams::natural();
        params.validate();
        const double tol = common.tol.value_or(default_tolerances().at(name));
        if (!(tol > 0.0)) throw DomainError("--tol must be positive");
        if (common.gnuplot && (common.out.empty() || common.format != "csv")) {
            throw DomainError("--gnuplot needs --out and --format csv");
        }

        const Table table = handler(in, params, tol);
        const std::string text =
            common.format == "json" ? render_json(table, name, params, tol) : render_csv(table);
        if (common.out.empty()) {
            out << text;
        } else {
            write_file(common.out, text);
            if (common.gnuplot) {
                std::filesystem::path script = common.out;
                script.replace_extension(".gp");
                write_file(script, render_gnuplot(table, common.out));
            }
        }
        if (common.format == "csv" && !table.summary.empty()) {
            for (const auto& [key, value] : table.summary.items()) err << "# " << key << " = " << value.dump() << "\n";
        }
        return kSuccess;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    }
}

}  // namespace mho::cli
