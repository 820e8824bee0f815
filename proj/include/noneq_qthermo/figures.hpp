// figures.hpp — Plot-ready data files for the three figure parameter sets

#pragma once

#include "noneq_qthermo/config.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace nqt {

struct FigureOptions {
    double dt{0.001};
    double t_end{30.0};
    std::size_t stride{10};
};

// Base parameters shared by every figure: eta = 0.1 eta_c, omega_c = 10, alpha0 = 1.
SimulationConfig figure_config(double temperature, const FigureOptions& options = {});

// Temperatures swept in the multi-curve figures.
inline constexpr double kFigureTemperatures[] = {15.0, 20.0, 25.0};

// Writes fig1a.dat and fig1b.dat (kT0 = 20), fig2a..fig2d.dat or fig3a..fig3c.dat
// (one column per temperature) into `directory`. Returns the files written.
// Throws DomainError for an unknown id.
std::vector<std::filesystem::path> figure_data(std::string_view id,
                                               const std::filesystem::path& directory,
                                               const FigureOptions& options = {});

} // namespace nqt
