#include "hhgsq/config.hpp"

#include "hhgsq/errors.hpp"
#include "json_format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace hhgsq {

namespace detail {

namespace {

void dump_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    out += s;
}

void dump_rec(const json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad_in;
            out += json(it.key()).dump();
            out += ": ";
            dump_rec(it.value(), out, indent + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        bool scalar = true;
        for (const auto& e : j) scalar = scalar && !e.is_structured();
        if (scalar) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                dump_rec(j[i], out, indent + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad_in;
            dump_rec(j[i], out, indent + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case json::value_t::number_float:
        dump_number(out, j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

} // namespace

std::string dump_json(const json& j) {
    std::string out;
    dump_rec(j, out, 0);
    out += "\n";
    return out;
}

json complex_pair(double re, double im) {
    return json::array({re, im});
}

} // namespace detail

using detail::json;

RunConfig::RunConfig() {
    physics.sweep = log_space(1e-4, 2.0, 17);
}

std::vector<double> log_space(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw ValidationError("log_space needs 0 < lo < hi and count >= 2");
    std::vector<double> v(static_cast<std::size_t>(count));
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (count - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

void RunConfig::validate() const {
    Violations v;
    v.check(pulse.n_cycles >= 1, "pulse.n_cycles must be >= 1");
    if (pulse.peak_field) {
        v.check(std::isfinite(*pulse.peak_field) && *pulse.peak_field >= 0.0, "pulse.peak_field must be >= 0");
    } else {
        v.check(std::isfinite(pulse.intensity_w_cm2) && pulse.intensity_w_cm2 >= 0.0,
                "pulse.intensity_w_cm2 must be >= 0");
    }
    if (pulse.carrier_frequency) {
        v.check(std::isfinite(*pulse.carrier_frequency) && *pulse.carrier_frequency > 0.0,
                "pulse.carrier_frequency must be > 0");
    } else {
        v.check(std::isfinite(pulse.wavelength_nm) && pulse.wavelength_nm > 0.0, "pulse.wavelength_nm must be > 0");
    }
    v.check(std::isfinite(pulse.t0), "pulse.t0 must be finite");
    v.check(std::isfinite(atom.ip_excited) && atom.ip_excited > 0.0, "atom.ip_excited must be > 0");
    v.check(std::isfinite(atom.ip_ground) && atom.ip_ground > atom.ip_excited,
            "atom.ip_ground must exceed atom.ip_excited");
    v.check(std::isfinite(atom.d_eg), "atom.d_eg must be finite");
    v.check(std::isfinite(atom.epsilon) && atom.epsilon > 0.0, "atom.epsilon must be > 0");
    v.check(numerics.n_samples >= DipoleSeries::min_samples, "numerics.n_samples must be >= 1024");
    v.check(numerics.n_cutoff >= 2, "numerics.n_cutoff must be >= 2");
    v.check(numerics.theta_points >= 2, "numerics.theta_points must be >= 2");
    v.check(numerics.quad_cap >= 1, "numerics.quad_cap must be >= 1");
    v.check(numerics.threads >= 0, "numerics.threads must be >= 0");
    const auto& w = numerics.wigner;
    v.check(w.x_max > w.x_min && w.p_max > w.p_min, "numerics.wigner ranges must be increasing");
    v.check(w.nx >= 2 && w.np >= 2, "numerics.wigner needs at least 2 points per axis");
    for (const auto& pr : numerics.fock_spot_checks) {
        v.check(pr[0] >= 1 && pr[1] >= 1 && pr[0] <= physics.q_max && pr[1] <= physics.q_max && pr[0] != pr[1],
                "numerics.fock_spot_checks pair (" + std::to_string(pr[0]) + ", " + std::to_string(pr[1]) +
                    ") must name two distinct modes in [1, q_max]");
    }
    v.check(std::isfinite(physics.n_at_gl2) && physics.n_at_gl2 > 0.0, "physics.n_at_gl2 must be > 0");
    v.check(std::isfinite(physics.g_l) && physics.g_l > 0.0, "physics.g_l must be > 0");
    v.check(physics.q_max >= 1, "physics.q_max must be >= 1");
    for (double s : physics.sweep) v.check(std::isfinite(s) && s > 0.0, "physics.sweep values must be > 0");
    v.check(!io.out_dir.empty(), "io.out_dir must not be empty");
    v.check(io.dipole_source == "sfa" || (io.dipole_source.rfind("file:", 0) == 0 && io.dipole_source.size() > 5),
            "io.dipole_source must be 'sfa' or 'file:PATH'");
    v.raise_if_any();
}

LaserPulse RunConfig::laser() const {
    LaserPulse p;
    p.peak_field = pulse.peak_field ? *pulse.peak_field : field_from_intensity(pulse.intensity_w_cm2);
    p.carrier_frequency = pulse.carrier_frequency ? *pulse.carrier_frequency : frequency_from_wavelength(pulse.wavelength_nm);
    p.n_cycles = pulse.n_cycles;
    p.t0 = pulse.t0;
    p.validate();
    return p;
}

ModeGrid RunConfig::grid() const {
    ModeGrid g;
    g.q_max = physics.q_max;
    g.fundamental = laser().carrier_frequency;
    g.coupling_scale = physics.g_l;
    g.validate();
    return g;
}

namespace {

class Reader {
public:
    explicit Reader(Violations& v) : v_(v) {}

    void object(const json& j, const std::string& path, const std::set<std::string>& allowed) {
        if (!j.is_object()) {
            v_.add(path + " must be an object");
            return;
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!allowed.count(it.key())) v_.add("unknown key " + path + "." + it.key());
        }
    }

    template <typename T>
    void number(const json& j, const char* key, const std::string& path, T& out) {
        if (!j.is_object() || !j.contains(key)) return;
        const json& e = j.at(key);
        if constexpr (std::is_integral_v<T>) {
            if (!e.is_number_integer()) {
                v_.add(path + "." + key + " must be an integer");
                return;
            }
            if constexpr (std::is_unsigned_v<T>) {
                if (e.get<long long>() < 0) {
                    v_.add(path + "." + key + " must be non-negative");
                    return;
                }
            }
            out = e.get<T>();
        } else {
            if (!e.is_number()) {
                v_.add(path + "." + key + " must be a number");
                return;
            }
            out = e.get<T>();
        }
    }

    void optional_number(const json& j, const char* key, const std::string& path, std::optional<double>& out) {
        if (!j.is_object() || !j.contains(key)) return;
        const json& e = j.at(key);
        if (e.is_null()) {
            out.reset();
            return;
        }
        if (!e.is_number()) {
            v_.add(path + "." + key + " must be a number");
            return;
        }
        out = e.get<double>();
    }

    void string(const json& j, const char* key, const std::string& path, std::string& out) {
        if (!j.is_object() || !j.contains(key)) return;
        const json& e = j.at(key);
        if (!e.is_string()) {
            v_.add(path + "." + key + " must be a string");
            return;
        }
        out = e.get<std::string>();
    }

private:
    Violations& v_;
};

const json& sub(const json& j, const char* key) {
    static const json empty = json::object();
    if (j.is_object() && j.contains(key)) return j.at(key);
    return empty;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    Violations v;
    Reader r(v);
    r.object(j, "config", {"pulse", "atom", "numerics", "physics", "io"});

    const json& pj = sub(j, "pulse");
    r.object(pj, "pulse", {"intensity_w_cm2", "peak_field", "wavelength_nm", "carrier_frequency", "n_cycles", "t0"});
    r.number(pj, "intensity_w_cm2", "pulse", cfg.pulse.intensity_w_cm2);
    r.optional_number(pj, "peak_field", "pulse", cfg.pulse.peak_field);
    r.number(pj, "wavelength_nm", "pulse", cfg.pulse.wavelength_nm);
    r.optional_number(pj, "carrier_frequency", "pulse", cfg.pulse.carrier_frequency);
    r.number(pj, "n_cycles", "pulse", cfg.pulse.n_cycles);
    r.number(pj, "t0", "pulse", cfg.pulse.t0);

    const json& aj = sub(j, "atom");
    r.object(aj, "atom", {"ip_ground", "ip_excited", "d_eg", "epsilon"});
    r.number(aj, "ip_ground", "atom", cfg.atom.ip_ground);
    r.number(aj, "ip_excited", "atom", cfg.atom.ip_excited);
    r.number(aj, "d_eg", "atom", cfg.atom.d_eg);
    r.number(aj, "epsilon", "atom", cfg.atom.epsilon);

    const json& nj = sub(j, "numerics");
    r.object(nj, "numerics", {"n_samples", "n_cutoff", "theta_points", "quad_cap", "generator_mode", "db_convention",
                              "wigner", "threads", "fock_spot_checks"});
    r.number(nj, "n_samples", "numerics", cfg.numerics.n_samples);
    r.number(nj, "n_cutoff", "numerics", cfg.numerics.n_cutoff);
    r.number(nj, "theta_points", "numerics", cfg.numerics.theta_points);
    r.number(nj, "quad_cap", "numerics", cfg.numerics.quad_cap);
    r.number(nj, "threads", "numerics", cfg.numerics.threads);
    std::string mode = generator_mode_name(cfg.numerics.generator_mode);
    r.string(nj, "generator_mode", "numerics", mode);
    try {
        cfg.numerics.generator_mode = parse_generator_mode(mode);
    } catch (const ValidationError& e) {
        v.add("numerics." + std::string(e.what()));
    }
    std::string db = db_convention_name(cfg.numerics.db_convention);
    r.string(nj, "db_convention", "numerics", db);
    try {
        cfg.numerics.db_convention = parse_db_convention(db);
    } catch (const ValidationError& e) {
        v.add("numerics." + std::string(e.what()));
    }
    const json& wj = sub(nj, "wigner");
    r.object(wj, "numerics.wigner", {"x_min", "x_max", "p_min", "p_max", "nx", "np"});
    r.number(wj, "x_min", "numerics.wigner", cfg.numerics.wigner.x_min);
    r.number(wj, "x_max", "numerics.wigner", cfg.numerics.wigner.x_max);
    r.number(wj, "p_min", "numerics.wigner", cfg.numerics.wigner.p_min);
    r.number(wj, "p_max", "numerics.wigner", cfg.numerics.wigner.p_max);
    r.number(wj, "nx", "numerics.wigner", cfg.numerics.wigner.nx);
    r.number(wj, "np", "numerics.wigner", cfg.numerics.wigner.np);
    if (nj.is_object() && nj.contains("fock_spot_checks")) {
        const json& sc = nj.at("fock_spot_checks");
        std::vector<std::array<int, 2>> pairs;
        bool ok = sc.is_array();
        if (ok) {
            for (const auto& e : sc) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                    ok = false;
                    break;
                }
                pairs.push_back({e[0].get<int>(), e[1].get<int>()});
            }
        }
        if (ok) {
            cfg.numerics.fock_spot_checks = pairs;
        } else {
            v.add("numerics.fock_spot_checks must be an array of [q1, q2] integer pairs");
        }
    }

    const json& hj = sub(j, "physics");
    r.object(hj, "physics", {"n_at_gl2", "g_l", "q_max", "sweep"});
    r.number(hj, "n_at_gl2", "physics", cfg.physics.n_at_gl2);
    r.number(hj, "g_l", "physics", cfg.physics.g_l);
    r.number(hj, "q_max", "physics", cfg.physics.q_max);
    if (hj.is_object() && hj.contains("sweep")) {
        const json& sw = hj.at("sweep");
        std::vector<double> vals;
        bool ok = sw.is_array();
        if (ok) {
            for (const auto& e : sw) {
                if (!e.is_number()) {
                    ok = false;
                    break;
                }
                vals.push_back(e.get<double>());
            }
        }
        if (ok) {
            cfg.physics.sweep = vals;
        } else {
            v.add("physics.sweep must be an array of numbers");
        }
    }

    const json& ij = sub(j, "io");
    r.object(ij, "io", {"out_dir", "dipole_source"});
    r.string(ij, "out_dir", "io", cfg.io.out_dir);
    r.string(ij, "dipole_source", "io", cfg.io.dipole_source);

    v.raise_if_any();
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

namespace detail {

json config_json(const RunConfig& cfg) {
    json j = json::object();
    json p = json::object();
    p["intensity_w_cm2"] = cfg.pulse.intensity_w_cm2;
    p["peak_field"] = cfg.pulse.peak_field ? json(*cfg.pulse.peak_field) : json(nullptr);
    p["wavelength_nm"] = cfg.pulse.wavelength_nm;
    p["carrier_frequency"] = cfg.pulse.carrier_frequency ? json(*cfg.pulse.carrier_frequency) : json(nullptr);
    p["n_cycles"] = cfg.pulse.n_cycles;
    p["t0"] = cfg.pulse.t0;
    j["pulse"] = p;
    j["atom"] = {{"ip_ground", cfg.atom.ip_ground},
                 {"ip_excited", cfg.atom.ip_excited},
                 {"d_eg", cfg.atom.d_eg},
                 {"epsilon", cfg.atom.epsilon}};
    json n = json::object();
    n["n_samples"] = cfg.numerics.n_samples;
    n["n_cutoff"] = cfg.numerics.n_cutoff;
    n["theta_points"] = cfg.numerics.theta_points;
    n["quad_cap"] = cfg.numerics.quad_cap;
    n["generator_mode"] = generator_mode_name(cfg.numerics.generator_mode);
    n["db_convention"] = db_convention_name(cfg.numerics.db_convention);
    const auto& w = cfg.numerics.wigner;
    n["wigner"] = {{"x_min", w.x_min}, {"x_max", w.x_max}, {"p_min", w.p_min},
                   {"p_max", w.p_max}, {"nx", w.nx},       {"np", w.np}};
    n["threads"] = cfg.numerics.threads;
    json sc = json::array();
    for (const auto& pr : cfg.numerics.fock_spot_checks) sc.push_back(json::array({pr[0], pr[1]}));
    n["fock_spot_checks"] = sc;
    j["numerics"] = n;
    j["physics"] = {{"n_at_gl2", cfg.physics.n_at_gl2},
                    {"g_l", cfg.physics.g_l},
                    {"q_max", cfg.physics.q_max},
                    {"sweep", cfg.physics.sweep}};
    j["io"] = {{"out_dir", cfg.io.out_dir}, {"dipole_source", cfg.io.dipole_source}};
    return j;
}

json derived_json(const RunConfig& cfg) {
    const LaserPulse lp = cfg.laser();
    return {{"peak_field", lp.peak_field},
            {"carrier_frequency", lp.carrier_frequency},
            {"t0", lp.t0},
            {"t_end", lp.t_end()},
            {"n_at", cfg.n_at()}};
}

} // namespace detail

std::string config_to_json(const RunConfig& cfg) {
    return detail::dump_json(detail::config_json(cfg));
}

} // namespace hhgsq
