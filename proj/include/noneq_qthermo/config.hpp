// config.hpp — Scenario configuration: JSON parsing, validation and serialization

#pragma once

#include "noneq_qthermo/bath_kernels.hpp"
#include "noneq_qthermo/fock_state.hpp"
#include "noneq_qthermo/propagator.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace nqt {

enum class OutputFormat { csv, json };

struct SimulationConfig {
    // JSON keys, in serialization order.
    double eta_over_eta_c{0.1};
    double omega_c{10.0};
    double kT0{20.0};
    double alpha0_re{1.0};
    double alpha0_im{0.0};
    double dt{0.001};
    double t_end{30.0};
    std::optional<std::size_t> n_max; // empty selects the automatic truncation
    double tail_tol{kDefaultTailTol};
    double omega_max_factor{50.0};
    std::size_t stride{10};
    OutputFormat format{OutputFormat::csv};

    // Solver floors. Not part of the JSON schema; recorded in meta.json.
    double u_floor{1e-12};
    double s_floor{1e-8};
    double q_floor{1e-8};

    BathSpec bath() const;
    TimeGrid grid() const;
    CoherentInit init() const;
    QuadratureSettings quadrature() const;

    // Throws ConfigError naming the offending key, its value and the constraint.
    void validate() const;

    bool operator==(const SimulationConfig&) const = default;
};

const char* to_string(OutputFormat format);

// Parses a JSON object. Missing keys keep their defaults; unknown keys and
// invalid values throw ConfigError.
SimulationConfig parse_config(std::string_view source);

// JSON text with every key present. parse_config(serialize_config(c)) == c whenever
// the solver floors hold their defaults, since they are not JSON keys.
std::string serialize_config(const SimulationConfig& config);

} // namespace nqt
