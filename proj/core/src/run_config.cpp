#include "ctap/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ctap {
namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
    }
    if (pos != v.size())
        throw std::invalid_argument("config: trailing junk for " + key + ": '" + v + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& v) {
    const double d = parse_double(key, v);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw std::invalid_argument("config: expected integer for " + key + ": '" + v + "'");
    return i;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Dispatch table shared by the parser and apply_override.
void set_key(RunConfig& c, const std::string& key, const std::string& value) {
    static const std::map<std::string, std::function<void(RunConfig&, const std::string&,
                                                          const std::string&)>>
        setters = {
            {"plan.t_f", [](RunConfig& c, auto& k, auto& v) { c.t_f = parse_double(k, v); }},
            {"plan.d_max", [](RunConfig& c, auto& k, auto& v) { c.d_max = parse_double(k, v); }},
            {"plan.d_min", [](RunConfig& c, auto& k, auto& v) { c.d_min = parse_double(k, v); }},
            {"plan.overlap_fraction",
             [](RunConfig& c, auto& k, auto& v) { c.overlap_fraction = parse_double(k, v); }},
            {"plan.ramp_fraction",
             [](RunConfig& c, auto& k, auto& v) { c.ramp_fraction = parse_double(k, v); }},
            {"plan.dwell_fraction",
             [](RunConfig& c, auto& k, auto& v) { c.dwell_fraction = parse_double(k, v); }},
            {"plan.ramp", [](RunConfig& c, auto&, auto& v) { c.ramp = v; }},
            {"grid.nx", [](RunConfig& c, auto& k, auto& v) { c.nx = parse_int(k, v); }},
            {"grid.ny", [](RunConfig& c, auto& k, auto& v) { c.ny = parse_int(k, v); }},
            {"grid.lx", [](RunConfig& c, auto& k, auto& v) { c.lx = parse_double(k, v); }},
            {"grid.ly", [](RunConfig& c, auto& k, auto& v) { c.ly = parse_double(k, v); }},
            {"sim.dt", [](RunConfig& c, auto& k, auto& v) { c.dt = parse_double(k, v); }},
            {"sim.nonlinearity_U",
             [](RunConfig& c, auto& k, auto& v) { c.nonlinearity_U = parse_double(k, v); }},
            {"sim.record_stride",
             [](RunConfig& c, auto& k, auto& v) { c.record_stride = parse_int(k, v); }},
            {"sim.schedule_samples",
             [](RunConfig& c, auto& k, auto& v) { c.schedule_samples = parse_int(k, v); }},
            {"sweep.parameter", [](RunConfig& c, auto&, auto& v) { c.sweep.parameter = v; }},
            {"sweep.start",
             [](RunConfig& c, auto& k, auto& v) { c.sweep.start = parse_double(k, v); }},
            {"sweep.stop",
             [](RunConfig& c, auto& k, auto& v) { c.sweep.stop = parse_double(k, v); }},
            {"sweep.count",
             [](RunConfig& c, auto& k, auto& v) { c.sweep.count = parse_int(k, v); }},
            {"sweep.inner_start",
             [](RunConfig& c, auto& k, auto& v) { c.sweep.inner_start = parse_double(k, v); }},
            {"sweep.inner_stop",
             [](RunConfig& c, auto& k, auto& v) { c.sweep.inner_stop = parse_double(k, v); }},
            {"sweep.inner_count",
             [](RunConfig& c, auto& k, auto& v) { c.sweep.inner_count = parse_int(k, v); }},
            {"output.dir", [](RunConfig& c, auto&, auto& v) { c.output_dir = v; }},
        };
    const auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument("config: unknown key '" + key + "'");
    it->second(c, key, value);
}

}  // namespace

RunConfig default_config() { return RunConfig{}; }

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    os << "plan.t_f = " << fmt_double(c.t_f) << "\n";
    os << "plan.d_max = " << fmt_double(c.d_max) << "\n";
    os << "plan.d_min = " << fmt_double(c.d_min) << "\n";
    os << "plan.overlap_fraction = " << fmt_double(c.overlap_fraction) << "\n";
    os << "plan.ramp_fraction = " << fmt_double(c.ramp_fraction) << "\n";
    os << "plan.dwell_fraction = " << fmt_double(c.dwell_fraction) << "\n";
    os << "plan.ramp = " << c.ramp << "\n";
    os << "grid.nx = " << c.nx << "\n";
    os << "grid.ny = " << c.ny << "\n";
    os << "grid.lx = " << fmt_double(c.lx) << "\n";
    os << "grid.ly = " << fmt_double(c.ly) << "\n";
    os << "sim.dt = " << fmt_double(c.dt) << "\n";
    os << "sim.nonlinearity_U = " << fmt_double(c.nonlinearity_U) << "\n";
    os << "sim.record_stride = " << c.record_stride << "\n";
    os << "sim.schedule_samples = " << c.schedule_samples << "\n";
    os << "sweep.parameter = " << c.sweep.parameter << "\n";
    os << "sweep.start = " << fmt_double(c.sweep.start) << "\n";
    os << "sweep.stop = " << fmt_double(c.sweep.stop) << "\n";
    os << "sweep.count = " << c.sweep.count << "\n";
    os << "sweep.inner_start = " << fmt_double(c.sweep.inner_start) << "\n";
    os << "sweep.inner_stop = " << fmt_double(c.sweep.inner_stop) << "\n";
    os << "sweep.inner_count = " << c.sweep.inner_count << "\n";
    os << "output.dir = " << c.output_dir << "\n";
    return os.str();
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key = value");
        set_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

void apply_override(RunConfig& c, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override '" + assignment + "' is not key=value");
    set_key(c, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void validate_config(const RunConfig& c) {
    validate_plan(make_plan(c));  // checks t_f, distances, fractions, tiling
    if (c.ramp != "sin2" && c.ramp != "linear_smoothed")
        throw std::invalid_argument("config: plan.ramp must be sin2 or linear_smoothed");
    auto pow2 = [](int n) { return n > 0 && (n & (n - 1)) == 0; };
    if (!pow2(c.nx) || !pow2(c.ny))
        throw std::invalid_argument("config: grid.nx and grid.ny must be powers of two");
    if (!(c.lx > 0.0) || !(c.ly > 0.0))
        throw std::invalid_argument("config: grid.lx and grid.ly must be positive");
    if (c.d_max + 6.0 > c.ly)
        throw std::invalid_argument("config: traps need >= 6 length units of y margin");
    if (c.lx < 6.0) throw std::invalid_argument("config: grid.lx must be >= 6");
    if (!(c.dt > 0.0)) throw std::invalid_argument("config: sim.dt must be positive");
    const double kx = M_PI / c.lx * (c.nx / 2), ky = M_PI / c.ly * (c.ny / 2);
    if (c.dt * 0.5 * (kx * kx + ky * ky) >= 1.0)
        throw std::invalid_argument("config: sim.dt too large for this grid (dt * Ek_max >= 1)");
    if (!(c.nonlinearity_U >= 0.0))
        throw std::invalid_argument("config: sim.nonlinearity_U must be >= 0");
    if (c.record_stride < 1)
        throw std::invalid_argument("config: sim.record_stride must be >= 1");
    if (c.schedule_samples < 9)
        throw std::invalid_argument("config: sim.schedule_samples must be >= 9");
    if (!c.sweep.parameter.empty()) {
        if (c.sweep.parameter != "t_f" && c.sweep.parameter != "d_min" &&
            c.sweep.parameter != "nonlinearity_U")
            throw std::invalid_argument(
                "config: sweep.parameter must be t_f, d_min or nonlinearity_U");
        if (c.sweep.count < 2) throw std::invalid_argument("config: sweep.count must be >= 2");
        if (!(c.sweep.stop > c.sweep.start))
            throw std::invalid_argument("config: sweep.stop must exceed sweep.start");
        if (c.sweep.parameter == "t_f" && !(c.sweep.start > 0.0))
            throw std::invalid_argument("config: t_f sweep must start above 0");
        if (c.sweep.parameter == "d_min" &&
            (!(c.sweep.start > 0.0) || !(c.sweep.stop < c.d_max)))
            throw std::invalid_argument("config: d_min sweep must stay inside (0, d_max)");
        if (c.sweep.parameter == "nonlinearity_U" && !(c.sweep.start >= 0.0))
            throw std::invalid_argument("config: nonlinearity_U sweep must start at >= 0");
        if (c.sweep.parameter != "t_f") {
            if (c.sweep.inner_count < 4 || !(c.sweep.inner_stop > c.sweep.inner_start) ||
                !(c.sweep.inner_start > 0.0))
                throw std::invalid_argument(
                    "config: nested t_f window needs 0 < inner_start < inner_stop, "
                    "inner_count >= 4");
        }
    }
}

TrajectoryPlan make_plan(const RunConfig& c) {
    TrajectoryPlan p;
    p.t_f = c.t_f;
    p.d_max = c.d_max;
    p.d_min = c.d_min;
    p.overlap_fraction = c.overlap_fraction;
    p.ramp_fraction = c.ramp_fraction;
    p.dwell_fraction = c.dwell_fraction;
    p.ramp = c.ramp == "linear_smoothed" ? RampShape::linear_smoothed : RampShape::sin2;
    return p;
}

Grid2D make_grid(const RunConfig& c) { return Grid2D::make(c.nx, c.ny, c.lx, c.ly); }

SimConfig make_sim_config(const RunConfig& c) {
    SimConfig s;
    s.plan = make_plan(c);
    s.dt = c.dt;
    s.nonlinearity_U = c.nonlinearity_U;
    s.record_stride = c.record_stride;
    return s;
}

}  // namespace ctap
