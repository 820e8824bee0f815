// validation.cpp — Acceptance criteria and module invariants as a runnable suite

#include "noneq_qthermo/validation.hpp"

#include "noneq_qthermo/bath_kernels.hpp"
#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/figures.hpp"
#include "noneq_qthermo/fock_state.hpp"
#include "noneq_qthermo/gaussian_state.hpp"
#include "noneq_qthermo/numerics.hpp"
#include "noneq_qthermo/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <unistd.h>

namespace nqt {

bool ValidationReport::passed() const {
    auto ok = [](const CheckResult& c) { return c.passed || c.skipped; };
    return std::all_of(acceptance.begin(), acceptance.end(), ok) &&
           std::all_of(invariants.begin(), invariants.end(), ok);
}

std::string format_check(const CheckResult& c) {
    const char* status = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
    char head[256];
    std::snprintf(head, sizeof head, "%-34s %s  measured=%-12.4g bound=%-10.3g %7.2fs", c.id.c_str(),
                  status, c.measured, c.bound, c.seconds);
    std::string line = head;
    line += "  " + c.title;
    if (!c.detail.empty()) {
        line += " [" + c.detail + "]";
    }
    return line;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

constexpr double kSpohnTol = 1e-6;
constexpr double kOrderingTol = 1e-6;
constexpr double kMonotoneTol = 1e-8;
constexpr double kClausiusTol = 1e-8;
constexpr double kFirstLawTol = 1e-6;
constexpr double kThermalTol = 0.02;
constexpr double kEquilibriumCoherence = 1e-3;
// The transient of the work rate ends when |dW/dt| first falls below this
// fraction of its peak after the peak.
constexpr double kTransientFraction = 0.01;
// Slack on the sign of dW/dt, relative to its peak, for the t0 endpoint where it vanishes.
constexpr double kWorkSignSlack = 1e-6;
constexpr double kWorkSpreadTol = 0.05;

struct Suite {
    ValidationOptions options;
    const CheckCallback& on_result;
    ValidationReport report;
    std::optional<std::vector<ScenarioResult>> sweep_runs;
    double sweep_seconds{0.0};

    void emit(CheckResult c, bool acceptance) {
        if (on_result) {
            on_result(c);
        }
        (acceptance ? report.acceptance : report.invariants).push_back(std::move(c));
    }

    std::vector<double> sweep_temperatures() const {
        if (options.fast) {
            return {20.0};
        }
        return {std::begin(kFigureTemperatures), std::end(kFigureTemperatures)};
    }

    SimulationConfig sweep_config(double temperature) const {
        FigureOptions fo;
        fo.dt = options.dt;
        fo.t_end = options.t_end;
        fo.stride = options.stride;
        return figure_config(temperature, fo);
    }

    const std::vector<ScenarioResult>& sweep() {
        if (!sweep_runs) {
            const Clock::time_point start = Clock::now();
            const auto temps = sweep_temperatures();
            sweep_runs = simulate_temperatures(sweep_config(temps.front()), temps);
            sweep_seconds = seconds_since(start);
        }
        return *sweep_runs;
    }

    const ScenarioResult& reference_run() {
        for (const ScenarioResult& r : sweep()) {
            if (r.config.kT0 == 20.0) {
                return r;
            }
        }
        return sweep().front();
    }

    // Runs `body`; any module error becomes a failed check carrying the message.
    template <class Body>
    void check(const std::string& id, const std::string& title, bool acceptance, Body body) {
        CheckResult c;
        c.id = id;
        c.title = title;
        const Clock::time_point start = Clock::now();
        try {
            body(c);
        } catch (const Error& e) {
            c.passed = false;
            c.detail = std::string(e.kind()) + " error: " + e.what();
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = std::string("exception: ") + e.what();
        }
        c.seconds = seconds_since(start);
        emit(std::move(c), acceptance);
    }
};

std::vector<std::complex<double>> u_on(double step, double t_end) {
    const SimulationConfig c = figure_config(20.0);
    return solve_u(c.bath(), TimeGrid::covering(t_end, step)).u;
}

// Direct trapezoid double sum over [0, t_j]^2 in the original integration variables.
std::vector<double> v_brute_force(const std::vector<std::complex<double>>& u, const BathSpec& bath,
                                  double h, double& worst_imag) {
    const std::size_t n = u.size();
    std::vector<std::complex<double>> gt(2 * n - 1);
    for (std::size_t m = 0; m < gt.size(); ++m) {
        const double lag = (static_cast<double>(m) - static_cast<double>(n - 1)) * h;
        gt[m] = g_tilde_series(lag, bath);
    }
    std::vector<double> v(n, 0.0);
    worst_imag = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        std::complex<double> total{0.0, 0.0};
        for (std::size_t k = 0; k <= j; ++k) {
            const double wk = (k == 0 || k == j) ? 0.5 : 1.0;
            std::complex<double> inner{0.0, 0.0};
            for (std::size_t l = 0; l <= j; ++l) {
                const double wl = (l == 0 || l == j) ? 0.5 : 1.0;
                // g~(t_k - t_l)
                inner += wl * gt[k + (n - 1) - l] * std::conj(u[j - l]);
            }
            total += wk * u[j - k] * inner;
        }
        total *= h * h;
        v[j] = total.real();
        worst_imag = std::max(worst_imag, std::abs(total.imag()) / std::max(std::abs(total), 1e-300));
    }
    return v;
}

void acceptance_checks(Suite& s) {
    s.check("AC01", "closed system eta = 0: |u|-1, v, dQ/dt, dW/dt <= 1e-8, < 5 s", true,
            [&](CheckResult& c) {
                const Clock::time_point start = Clock::now();
                SimulationConfig config = figure_config(20.0);
                config.eta_over_eta_c = 0.0;
                const ScenarioResult r = simulate(config);
                const double elapsed = seconds_since(start);
                double du = 0.0, dv = 0.0, dq = 0.0, dw = 0.0;
                for (std::size_t j = 0; j < r.ledger.records.size(); ++j) {
                    du = std::max(du, std::abs(std::abs(r.propagator.u[j]) - 1.0));
                    dv = std::max(dv, std::abs(r.propagator.v[j]));
                    dq = std::max(dq, std::abs(r.ledger.records[j].heat_rate));
                    dw = std::max(dw, std::abs(r.ledger.records[j].work_rate));
                }
                c.measured = std::max({du, dv, dq, dw});
                c.bound = 1e-8;
                c.passed = c.measured <= c.bound && elapsed < 5.0;
                c.detail = "|u|-1=" + fmt(du) + " v=" + fmt(dv) + " dQ=" + fmt(dq) + " dW=" +
                           fmt(dw) + " runtime=" + fmt(elapsed) + "s";
            });

    s.check("AC02", "second-order convergence of u: error ratio in [3.5, 4.5], < 120 s", true,
            [&](CheckResult& c) {
                const Clock::time_point start = Clock::now();
                const double t_end = 30.0;
                const auto coarse = u_on(0.002, t_end);
                const auto mid = u_on(0.001, t_end);
                const auto fine = u_on(0.0005, t_end);
                double d1 = 0.0, d2 = 0.0;
                for (std::size_t j = 0; j < coarse.size(); ++j) {
                    d1 = std::max(d1, std::abs(coarse[j] - mid[2 * j]));
                }
                for (std::size_t j = 0; j < mid.size(); ++j) {
                    d2 = std::max(d2, std::abs(mid[j] - fine[2 * j]));
                }
                const double elapsed = seconds_since(start);
                c.measured = d1 / d2;
                c.bound = 4.0;
                c.passed = c.measured >= 3.5 && c.measured <= 4.5 && elapsed < 120.0;
                c.detail = "max|u(2h)-u(h)|=" + fmt(d1) + " max|u(h)-u(h/2)|=" + fmt(d2) +
                           " h=0.001 runtime=" + fmt(elapsed) + "s";
            });

    s.check("AC03", "v: brute-force double sum vs production, 200 points, rel <= 1e-10, < 30 s", true,
            [&](CheckResult& c) {
                const Clock::time_point start = Clock::now();
                const SimulationConfig config = figure_config(20.0);
                const double h = 0.01;
                const TimeGrid grid{0.0, h, 200};
                const KernelSamples kernels = build_kernel_samples(config.bath(), h, grid.count);
                const USolution u = solve_u(kernels, grid);
                const auto v = compute_v_diag(kernels, u.u, grid);
                double worst_imag = 0.0;
                const auto oracle = v_brute_force(u.u, config.bath(), h, worst_imag);
                double worst = 0.0;
                for (std::size_t j = 1; j < grid.count; ++j) {
                    worst = std::max(worst, std::abs(v[j] - oracle[j]) / std::abs(oracle[j]));
                }
                const double elapsed = seconds_since(start);
                c.measured = worst;
                c.bound = 1e-10;
                c.passed = worst <= c.bound && elapsed < 30.0;
                c.detail = "max relative imaginary part of the double sum=" + fmt(worst_imag) +
                           " runtime=" + fmt(elapsed) + "s";
            });

    s.check("AC04", "Gaussian vs Fock-eigensolve S at kT0 = 2, 20 times, <= 1e-4, < 120 s", true,
            [&](CheckResult& c) {
                const Clock::time_point start = Clock::now();
                const SimulationConfig config = figure_config(2.0);
                const PropagatorSolution sol = solve_propagator(config.bath(), config.grid());
                const CoherentInit init = config.init();
                const std::size_t n_max = auto_n_max(sol, init);
                const auto gaussian = von_neumann_series(sol, init);
                double worst = 0.0;
                const std::size_t last = sol.grid.count - 1;
                for (std::size_t k = 1; k <= 20; ++k) {
                    const std::size_t j = (k * last) / 20;
                    const FockDensityMatrix rho = density_matrix_at(sol, init, j, n_max);
                    worst = std::max(worst, std::abs(von_neumann_fock(rho) -
                                                     static_cast<double>(gaussian[j])));
                }
                const double elapsed = seconds_since(start);
                c.measured = worst;
                c.bound = 1e-4;
                c.passed = worst <= c.bound && elapsed < 120.0;
                c.detail = "n_max=" + std::to_string(n_max) + " runtime=" + fmt(elapsed) + "s";
            });

    const std::string sweep_note =
        std::string("kT0 in {") + (s.options.fast ? "20" : "15, 20, 25") + "}, dt=" +
        fmt(s.options.dt) + ", t_end=" + fmt(s.options.t_end);

    s.check("AC05", "first law |dU/dt - dW/dt - dQ/dt| <= 1e-6 max(1, |dU/dt|)", true,
            [&](CheckResult& c) {
                double worst = 0.0;
                double at = 0.0;
                for (const ScenarioResult& r : s.sweep()) {
                    for (const ThermoRecord& rec : r.ledger.records) {
                        const double ratio = std::abs(rec.first_law_residual) /
                                             std::max(1.0, std::abs(rec.energy_rate));
                        if (ratio > worst) {
                            worst = ratio;
                            at = rec.time;
                        }
                    }
                }
                c.measured = worst;
                c.bound = kFirstLawTol;
                c.passed = worst <= c.bound;
                c.detail = sweep_note + ", worst at t=" + fmt(at) + ", sweep " +
                           fmt(s.sweep_seconds) + "s";
            });

    s.check("AC06", "thermalization: T(t_end) and n(t_end) within 2%", true, [&](CheckResult& c) {
        double worst = 0.0;
        std::string detail;
        for (const ScenarioResult& r : s.sweep()) {
            const ThermoRecord& end = r.ledger.records.back();
            const double t0 = r.config.kT0;
            const double rel_t = std::abs(end.temperature - t0) / t0;
            const double bose = bose_occupation(r.coefficients.omega_ren.back(), t0);
            const double rel_n = std::abs(end.occupation - bose) / bose;
            worst = std::max({worst, rel_t, rel_n});
            detail += "kT0=" + fmt(t0) + ": T=" + fmt(end.temperature) + " n=" +
                      fmt(end.occupation) + " nbar(omega)=" + fmt(bose) + "; ";
        }
        c.measured = std::isfinite(worst) ? worst : std::numeric_limits<double>::infinity();
        c.bound = kThermalTol;
        c.passed = c.measured <= c.bound;
        c.detail = detail + "t_end=" + fmt(s.options.t_end);
    });

    s.check("AC07", "entropy ordering S_energy - S >= -1e-6, C(t_end) <= 1e-3", true,
            [&](CheckResult& c) {
                double min_gap = std::numeric_limits<double>::infinity();
                double worst_end = 0.0;
                for (const ScenarioResult& r : s.sweep()) {
                    for (const ThermoRecord& rec : r.ledger.records) {
                        min_gap = std::min(min_gap, rec.coherence);
                    }
                    worst_end = std::max(worst_end, r.ledger.records.back().coherence);
                }
                c.measured = worst_end;
                c.bound = kEquilibriumCoherence;
                c.passed = min_gap >= -kOrderingTol && worst_end <= c.bound;
                c.detail = "min(S_energy - S)=" + fmt(min_gap) + ", measured is max C(t_end)";
            });

    s.check("AC08", "Spohn inequality Phi_C >= -1e-6", true, [&](CheckResult& c) {
        double min_phi = std::numeric_limits<double>::infinity();
        for (const ScenarioResult& r : s.sweep()) {
            for (const ThermoRecord& rec : r.ledger.records) {
                min_phi = std::min(min_phi, rec.flux_coherence);
            }
        }
        c.measured = min_phi;
        c.bound = -kSpohnTol;
        c.passed = min_phi >= c.bound;
        c.detail = "measured is min Phi_C";
    });

    s.check("AC09", "flux crossover: Phi_C > Phi_Q early, then Phi_Q > Phi_C", true,
            [&](CheckResult& c) {
                const auto& recs = s.reference_run().ledger.records;
                std::size_t cross = 0;
                for (std::size_t j = 1; j < recs.size(); ++j) {
                    if (recs[j].flux_heat > recs[j].flux_coherence) {
                        cross = j;
                        break;
                    }
                }
                c.bound = 0.0;
                if (cross <= 1) {
                    c.passed = false;
                    c.detail = cross == 0 ? "Phi_Q never exceeds Phi_C"
                                          : "Phi_Q already dominates at the first step";
                    return;
                }
                const double t_star = recs[cross].time;
                const double window = 1.0;
                bool after = true;
                std::size_t j = cross;
                for (; j < recs.size() && recs[j].time <= t_star + window; ++j) {
                    after = after && recs[j].flux_heat > recs[j].flux_coherence;
                }
                std::size_t reversals = 0;
                for (std::size_t k = cross + 1; k < recs.size(); ++k) {
                    reversals += recs[k].flux_heat <= recs[k].flux_coherence ? 1 : 0;
                }
                c.measured = t_star;
                c.passed = after;
                c.detail = "t*=" + fmt(t_star) + ", Phi_Q > Phi_C on [t*, t*+1]: " +
                           (after ? "yes" : "no") + ", later samples with Phi_Q <= Phi_C: " +
                           std::to_string(reversals);
            });

    s.check("AC10", "S_energy non-decreasing, F non-increasing (step change >= -1e-8)", true,
            [&](CheckResult& c) {
                double worst_s = 0.0, worst_f = 0.0, at_s = 0.0, at_f = 0.0;
                for (const ScenarioResult& r : s.sweep()) {
                    const auto& recs = r.ledger.records;
                    const auto rows = sampled_indices(recs.size(), s.options.stride);
                    for (std::size_t k = 1; k < rows.size(); ++k) {
                        const ThermoRecord& a = recs[rows[k - 1]];
                        const ThermoRecord& b = recs[rows[k]];
                        const double ds = b.energy_entropy - a.energy_entropy;
                        const double df = a.free_energy - b.free_energy;
                        if (ds < worst_s) {
                            worst_s = ds;
                            at_s = b.time;
                        }
                        if (!(df >= worst_f)) {
                            worst_f = std::isnan(df) ? -std::numeric_limits<double>::infinity() : df;
                            at_f = b.time;
                        }
                    }
                }
                c.measured = std::min(worst_s, worst_f);
                c.bound = -kMonotoneTol;
                c.passed = c.measured >= c.bound;
                c.detail = "worst dS_energy=" + fmt(worst_s) + " at t=" + fmt(at_s) +
                           ", worst -dF=" + fmt(worst_f) + " at t=" + fmt(at_f) + ", on every " +
                           std::to_string(s.options.stride) + "th sample";
            });

    s.check("AC11", "dW/dt <= 0 in the transient; curves differ by < 5% of peak |dW/dt|", true,
            [&](CheckResult& c) {
                const auto& runs = s.sweep();
                double worst_sign = 0.0;
                double peak_all = 0.0;
                std::string detail;
                for (const ScenarioResult& r : runs) {
                    const auto& recs = r.ledger.records;
                    std::size_t at_peak = 0;
                    for (std::size_t j = 0; j < recs.size(); ++j) {
                        if (std::abs(recs[j].work_rate) > std::abs(recs[at_peak].work_rate)) {
                            at_peak = j;
                        }
                    }
                    const double peak = std::abs(recs[at_peak].work_rate);
                    peak_all = std::max(peak_all, peak);
                    std::size_t end = at_peak;
                    while (end < recs.size() && std::abs(recs[end].work_rate) >= kTransientFraction * peak) {
                        ++end;
                    }
                    for (std::size_t j = 0; j < end; ++j) {
                        worst_sign = std::max(worst_sign, recs[j].work_rate / peak);
                    }
                    detail += "kT0=" + fmt(r.config.kT0) + ": transient [0, " +
                              fmt(recs[std::min(end, recs.size() - 1)].time) + "], peak " +
                              fmt(peak) + "; ";
                }
                double spread = 0.0;
                if (runs.size() > 1) {
                    for (std::size_t j = 0; j < runs.front().ledger.records.size(); ++j) {
                        double lo = std::numeric_limits<double>::infinity();
                        double hi = -lo;
                        for (const ScenarioResult& r : runs) {
                            lo = std::min(lo, r.ledger.records[j].work_rate);
                            hi = std::max(hi, r.ledger.records[j].work_rate);
                        }
                        spread = std::max(spread, (hi - lo) / peak_all);
                    }
                    detail += "max spread / peak=" + fmt(spread);
                } else {
                    detail += "spread not measured with a single temperature";
                }
                c.measured = spread;
                c.bound = kWorkSpreadTol;
                c.passed = worst_sign <= kWorkSignSlack && spread < c.bound;
                c.detail = detail + ", max dW/dt / peak in transient=" + fmt(worst_sign);
            });

    s.check("AC12", "Clausius |dQ/dt - T dS_energy/dt| <= 1e-8 relative where T is stable", true,
            [&](CheckResult& c) {
                double worst = 0.0;
                std::size_t stable = 0;
                for (const ScenarioResult& r : s.sweep()) {
                    for (const ThermoRecord& rec : r.ledger.records) {
                        if (rec.temperature_flag != TemperatureFlag::stable) {
                            continue;
                        }
                        ++stable;
                        const double rhs = rec.temperature * rec.flux_heat;
                        const double scale = std::max(std::abs(rec.heat_rate), std::abs(rhs));
                        if (scale > 0.0) {
                            worst = std::max(worst, std::abs(rec.heat_rate - rhs) / scale);
                        }
                    }
                }
                c.measured = worst;
                c.bound = kClausiusTol;
                c.passed = stable > 0 && worst <= c.bound;
                c.detail = std::to_string(stable) + " stable samples";
            });
}

void invariant_checks(Suite& s) {
    const BathSpec bath = figure_config(20.0).bath();

    s.check("INV.bath_kernels.series_vs_quadrature", "g~ series vs panel quadrature, rel <= 1e-8",
            false, [&](CheckResult& c) {
                double worst = 0.0;
                for (double lag : {0.0, 0.05, 0.5, 2.0}) {
                    const auto a = g_tilde_series(lag, bath);
                    const auto b = g_tilde_kernel(lag, bath);
                    worst = std::max(worst, std::abs(a - b) / std::abs(a));
                }
                c.measured = worst;
                c.bound = 1e-8;
                c.passed = worst <= c.bound;
            });

    s.check("INV.bath_kernels.g_closed_form", "g closed form vs quadrature, rel <= 1e-8", false,
            [&](CheckResult& c) {
                double worst = 0.0;
                for (double lag : {0.0, 0.05, 0.5, 2.0}) {
                    const auto a = g_kernel(lag, bath);
                    const auto b = g_kernel_quadrature(lag, bath);
                    worst = std::max(worst, std::abs(a - b) / std::abs(a));
                }
                c.measured = worst;
                c.bound = 1e-8;
                c.passed = worst <= c.bound;
            });

    s.check("INV.coefficients.initial_values", "omega(t0) = omega0, gamma(t0) = 0", false,
            [&](CheckResult& c) {
                const MasterCoefficients& k = s.reference_run().coefficients;
                c.measured = std::max(std::abs(k.omega_ren[0] - kOmega0), std::abs(k.gamma[0]));
                c.bound = 1e-12;
                c.passed = c.measured <= c.bound;
            });

    s.check("INV.coefficients.decay_identity", "d|u|^2/dt + 2 gamma |u|^2 = 0", false,
            [&](CheckResult& c) {
                const ScenarioResult& r = s.reference_run();
                std::vector<double> mod2(r.propagator.u.size());
                for (std::size_t j = 0; j < mod2.size(); ++j) {
                    mod2[j] = std::norm(r.propagator.u[j]);
                }
                const auto d = num::derivative(std::span<const double>(mod2), r.propagator.grid.step);
                double worst = 0.0;
                for (std::size_t j = 0; j < mod2.size(); ++j) {
                    worst = std::max(worst, std::abs(d[j] + 2.0 * r.coefficients.gamma[j] * mod2[j]));
                }
                c.measured = worst;
                c.bound = 1e-6;
                c.passed = worst <= c.bound;
            });

    s.check("INV.coefficients.gamma_plateau", "late-time gamma at the resolvent pole 0.0253346 (5%)",
            false, [&](CheckResult& c) {
                const auto& g = s.reference_run().coefficients.gamma;
                const double pole = 0.025334645699046;
                c.measured = g.back();
                c.bound = pole;
                c.passed = std::abs(g.back() - pole) <= 0.05 * pole;
            });

    s.check("INV.coefficients.gamma_tilde_nonnegative", "gamma~ >= -1e-6", false,
            [&](CheckResult& c) {
                double lo = std::numeric_limits<double>::infinity();
                for (const ScenarioResult& r : s.sweep()) {
                    for (double x : r.coefficients.gamma_tilde) {
                        lo = std::min(lo, x);
                    }
                }
                c.measured = lo;
                c.bound = -1e-6;
                c.passed = lo >= c.bound;
            });

    s.check("INV.fock_state.matrix_properties",
            "Hermitian, trace = 1 - tail, populations = diagonal (kT0 = 2)", false,
            [&](CheckResult& c) {
                const SimulationConfig config = figure_config(2.0);
                const PropagatorSolution sol = solve_propagator(config.bath(), config.grid());
                const CoherentInit init = config.init();
                const std::size_t n_max = auto_n_max(sol, init);
                double worst = 0.0;
                for (std::size_t k = 0; k <= 5; ++k) {
                    const std::size_t j = k * (sol.grid.count - 1) / 5;
                    const FockDensityMatrix rho = density_matrix_at(sol, init, j, n_max);
                    const auto p = populations_at(sol, init, j, n_max);
                    const double herm = (rho.elements - rho.elements.adjoint()).cwiseAbs().maxCoeff();
                    const double trace =
                        std::abs(rho.elements.trace().real() - (1.0 - rho.tail_mass));
                    double diag = 0.0;
                    for (std::size_t n = 0; n <= n_max; ++n) {
                        diag = std::max(diag, std::abs(p[n] - rho.populations[n]));
                    }
                    worst = std::max({worst, herm, trace, diag});
                }
                c.measured = worst;
                c.bound = 1e-12;
                c.passed = worst <= c.bound;
            });

    s.check("INV.gaussian_state.entropy_monotone", "S non-decreasing on the kT0 = 20 run", false,
            [&](CheckResult& c) {
                const auto& recs = s.reference_run().ledger.records;
                const auto rows = sampled_indices(recs.size(), s.options.stride);
                double worst = 0.0;
                for (std::size_t k = 1; k < rows.size(); ++k) {
                    worst = std::min(worst, recs[rows[k]].vn_entropy - recs[rows[k - 1]].vn_entropy);
                }
                c.measured = worst;
                c.bound = -kMonotoneTol;
                c.passed = worst >= c.bound;
            });

    s.check("INV.thermo_ledger.entropy_balance", "Sigma - Phi_Q - Phi_C and endpoint balance <= 1e-10",
            false, [&](CheckResult& c) {
                double worst = 0.0;
                for (const ScenarioResult& r : s.sweep()) {
                    worst = std::max(worst, r.ledger.max_balance_residual);
                    const auto b = integrate_balance(r.ledger.records, r.ledger.records.size() - 1);
                    worst = std::max(worst, std::abs(b.residual));
                }
                c.measured = worst;
                c.bound = 1e-10;
                c.passed = worst <= c.bound;
            });

    s.check("INV.thermo_ledger.equilibrium_rates", "|dQ/dt|, |dW/dt| at t_end <= 1e-3", false,
            [&](CheckResult& c) {
                double worst = 0.0;
                for (const ScenarioResult& r : s.sweep()) {
                    const ThermoRecord& end = r.ledger.records.back();
                    worst = std::max({worst, std::abs(end.heat_rate), std::abs(end.work_rate)});
                }
                c.measured = worst;
                c.bound = 1e-3;
                c.passed = worst <= c.bound;
            });

    s.check("INV.cli_io.config_round_trip", "parse(serialize(config)) == config", false,
            [&](CheckResult& c) {
                SimulationConfig config = figure_config(25.0);
                config.alpha0_im = -0.3;
                config.n_max = 400;
                config.format = OutputFormat::json;
                c.passed = parse_config(serialize_config(config)) == config;
                c.measured = c.passed ? 0.0 : 1.0;
            });

    s.check("INV.cli_io.determinism", "identical series bytes from two single-thread runs", false,
            [&](CheckResult& c) {
                const int previous = num::thread_count();
                num::set_thread_count(1);
                SimulationConfig config = figure_config(20.0);
                config.t_end = 2.0;
                const auto base = std::filesystem::temp_directory_path() /
                                  ("noneq_qthermo_determinism_" + std::to_string(::getpid()));
                std::string bytes[2];
                for (int k = 0; k < 2; ++k) {
                    const auto dir = base / std::to_string(k);
                    const RunOutcome out = run_scenario(config, dir);
                    if (!out.ok) {
                        throw NumericalError(out.error_message);
                    }
                    std::ifstream in(dir / "series.csv", std::ios::binary);
                    bytes[k].assign(std::istreambuf_iterator<char>(in), {});
                }
                std::filesystem::remove_all(base);
                num::set_thread_count(previous);
                c.passed = !bytes[0].empty() && bytes[0] == bytes[1];
                c.measured = c.passed ? 0.0 : 1.0;
                c.detail = std::to_string(bytes[0].size()) + " bytes";
            });
}

} // namespace

ValidationReport run_validation(const ValidationOptions& options, const CheckCallback& on_result) {
    Suite suite{options, on_result, {}, std::nullopt, 0.0};
    acceptance_checks(suite);
    if (options.invariants) {
        invariant_checks(suite);
    }
    return std::move(suite.report);
}

} // namespace nqt
