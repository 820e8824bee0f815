// config.cpp — Scenario configuration: JSON parsing, validation and serialization

#include "noneq_qthermo/config.hpp"

#include "noneq_qthermo/errors.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <sstream>

namespace nqt {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 12> kKeys{
    "eta_over_eta_c", "omega_c", "kT0",   "alpha0_re",        "alpha0_im", "dt",
    "t_end",          "n_max",   "tail_tol", "omega_max_factor", "stride",    "format"};

[[noreturn]] void reject(std::string_view key, const std::string& value,
                         std::string_view constraint) {
    std::ostringstream msg;
    msg << "config key \"" << key << "\" = " << value << ": " << constraint;
    throw ConfigError(msg.str());
}

std::string show(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

double read_number(const json& value, std::string_view key) {
    if (!value.is_number()) {
        reject(key, value.dump(), "must be a number");
    }
    return value.get<double>();
}

void require(bool ok, std::string_view key, double value, std::string_view constraint) {
    if (!ok) {
        reject(key, show(value), constraint);
    }
}

} // namespace

const char* to_string(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "json";
}

BathSpec SimulationConfig::bath() const {
    return {eta_over_eta_c * kOmega0 / omega_c, omega_c, kT0};
}

TimeGrid SimulationConfig::grid() const { return TimeGrid::covering(t_end, dt); }

CoherentInit SimulationConfig::init() const { return {{alpha0_re, alpha0_im}}; }

QuadratureSettings SimulationConfig::quadrature() const {
    QuadratureSettings q;
    q.omega_max_factor = omega_max_factor;
    return q;
}

void SimulationConfig::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    require(finite(eta_over_eta_c) && eta_over_eta_c >= 0.0, "eta_over_eta_c", eta_over_eta_c,
            "must be finite and >= 0");
    require(finite(omega_c) && omega_c > 0.0, "omega_c", omega_c, "must be finite and > 0");
    require(finite(kT0) && kT0 >= 0.0, "kT0", kT0, "must be finite and >= 0");
    require(finite(alpha0_re), "alpha0_re", alpha0_re, "must be finite");
    require(finite(alpha0_im), "alpha0_im", alpha0_im, "must be finite");
    require(finite(dt) && dt > 0.0, "dt", dt, "must be finite and > 0");
    require(finite(t_end) && t_end >= 4.0 * dt, "t_end", t_end,
            "must be finite and span at least 4 steps of dt");
    const double steps = t_end / dt;
    require(std::abs(steps - std::round(steps)) <= 1e-9 * std::max(1.0, steps), "t_end", t_end,
            "must be a whole multiple of dt");
    if (n_max && *n_max == 0) {
        reject("n_max", "0", "must be \"auto\" or an integer >= 1");
    }
    require(finite(tail_tol) && tail_tol > 0.0 && tail_tol < 1.0, "tail_tol", tail_tol,
            "must lie in (0, 1)");
    require(finite(omega_max_factor) && omega_max_factor > 0.0, "omega_max_factor",
            omega_max_factor, "must be finite and > 0");
    if (stride == 0) {
        reject("stride", "0", "must be an integer >= 1");
    }
}

SimulationConfig parse_config(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    std::string unknown;
    for (const auto& item : doc.items()) {
        bool known = false;
        for (std::string_view k : kKeys) {
            known = known || item.key() == k;
        }
        if (!known) {
            unknown += unknown.empty() ? "" : ", ";
            unknown += "\"" + item.key() + "\"";
        }
    }
    if (!unknown.empty()) {
        throw ConfigError("unknown config key(s): " + unknown);
    }

    SimulationConfig c;
    auto number = [&](const char* key, double& field) {
        if (doc.contains(key)) {
            field = read_number(doc[key], key);
        }
    };
    number("eta_over_eta_c", c.eta_over_eta_c);
    number("omega_c", c.omega_c);
    number("kT0", c.kT0);
    number("alpha0_re", c.alpha0_re);
    number("alpha0_im", c.alpha0_im);
    number("dt", c.dt);
    number("t_end", c.t_end);
    number("tail_tol", c.tail_tol);
    number("omega_max_factor", c.omega_max_factor);

    if (doc.contains("n_max")) {
        const json& v = doc["n_max"];
        if (v.is_string() && v.get<std::string>() == "auto") {
            c.n_max.reset();
        } else if (v.is_number_integer() && v.get<long long>() >= 1) {
            c.n_max = static_cast<std::size_t>(v.get<long long>());
        } else {
            reject("n_max", v.dump(), "must be \"auto\" or an integer >= 1");
        }
    }
    if (doc.contains("stride")) {
        const json& v = doc["stride"];
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            reject("stride", v.dump(), "must be an integer >= 1");
        }
        c.stride = static_cast<std::size_t>(v.get<long long>());
    }
    if (doc.contains("format")) {
        const json& v = doc["format"];
        if (v == "csv") {
            c.format = OutputFormat::csv;
        } else if (v == "json") {
            c.format = OutputFormat::json;
        } else {
            reject("format", v.dump(), "must be \"csv\" or \"json\"");
        }
    }
    c.validate();
    return c;
}

std::string serialize_config(const SimulationConfig& c) {
    nlohmann::ordered_json doc;
    doc["eta_over_eta_c"] = c.eta_over_eta_c;
    doc["omega_c"] = c.omega_c;
    doc["kT0"] = c.kT0;
    doc["alpha0_re"] = c.alpha0_re;
    doc["alpha0_im"] = c.alpha0_im;
    doc["dt"] = c.dt;
    doc["t_end"] = c.t_end;
    if (c.n_max) {
        doc["n_max"] = *c.n_max;
    } else {
        doc["n_max"] = "auto";
    }
    doc["tail_tol"] = c.tail_tol;
    doc["omega_max_factor"] = c.omega_max_factor;
    doc["stride"] = c.stride;
    doc["format"] = to_string(c.format);
    return doc.dump(2);
}

} // namespace nqt
