// fock_state.cpp — Truncated Fock-basis density matrix, populations and entropies

#include "noneq_qthermo/fock_state.hpp"

#include "noneq_qthermo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nqt {

namespace {

constexpr double kNegativeV = -1e-14;
constexpr double kNegativePopulation = -1e-14;
constexpr double kNegativeEigen = -1e-10;
constexpr long double kNegligible = 1e-40L;
constexpr long double kRescale = 1e100L;

long double checked_v(double v) {
    if (!(v >= kNegativeV)) {
        std::ostringstream msg;
        msg << "noise function v = " << v << " < 0; upstream solver failure";
        throw DomainError(msg.str());
    }
    return std::max(0.0L, static_cast<long double>(v));
}

void check_tail(double tail, double tail_tol, std::size_t n_max, double time) {
    if (tail > tail_tol) {
        std::ostringstream msg;
        msg << "Fock truncation n_max = " << n_max << " leaves tail mass " << tail
            << " > " << tail_tol << " at t = " << time << "; raise n_max";
        throw TruncationError(msg.str());
    }
}

} // namespace

DisplacedThermal state_at(const PropagatorSolution& sol, const CoherentInit& init,
                          std::size_t t_index) {
    if (t_index >= sol.u.size() || t_index >= sol.v.size()) {
        throw DomainError("state_at: time index outside the solved grid");
    }
    return {sol.u[t_index] * init.alpha0, sol.v[t_index]};
}

std::vector<long double> displaced_thermal_populations(const DisplacedThermal& state,
                                                       std::size_t n_max) {
    const long double v = checked_v(state.v);
    const long double a2 = std::norm(state.alpha);
    const long double onev = 1.0L + v;
    const long double r = v / onev;
    const long double c = a2 / (onev * onev);
    const long double mean = a2 + v;

    std::vector<long double> p(n_max + 1, 0.0L);
    p[0] = std::exp(-a2 / onev) / onev;
    if (n_max == 0) {
        return p;
    }
    p[1] = (r + c) * p[0];
    long double peak = std::max(p[0], p[1]);
    for (std::size_t n = 1; n < n_max; ++n) {
        const auto ln = static_cast<long double>(n);
        const long double next = (((2.0L * ln + 1.0L) * r + c) * p[n] - ln * r * r * p[n - 1]) /
                                 (ln + 1.0L);
        p[n + 1] = next;
        peak = std::max(peak, next);
        if (ln + 1.0L > mean && next < kNegligible * peak && next < p[n]) {
            break;
        }
    }
    return p;
}

Eigen::MatrixXcd displaced_thermal_elements(const DisplacedThermal& state, std::size_t n_max) {
    const long double v = checked_v(state.v);
    const long double a2 = std::norm(state.alpha);
    const long double onev = 1.0L + v;
    const long double r = v / onev;
    const long double c = a2 / (onev * onev);
    const long double log_abs_alpha = 0.5L * std::log(a2);
    const double phase = std::arg(state.alpha);
    const std::size_t dim = n_max + 1;

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(dim));
    for (std::size_t d = 0; d < dim; ++d) {
        if (d > 0 && a2 == 0.0L) {
            break; // no displacement: rho is diagonal
        }
        const auto ld = static_cast<long double>(d);
        // <d|rho|0> = e^{-|alpha|^2/(1+v)} alpha^d / ((1+v)^{d+1} sqrt(d!))
        const long double log_pref = -a2 / onev + (d > 0 ? ld * log_abs_alpha : 0.0L) -
                                     (ld + 1.0L) * std::log(onev) -
                                     0.5L * std::lgamma(ld + 1.0L);
        const std::complex<double> rotation = std::polar(1.0, static_cast<double>(d) * phase);

        long double scale = 0.0L; // log of the factor divided out of f
        long double f_prev = 0.0L;
        long double f = 1.0L;
        for (std::size_t n = 0; n + d < dim; ++n) {
            const auto magnitude = static_cast<double>(std::exp(log_pref + scale) * f);
            const std::complex<double> value = magnitude * rotation;
            const auto row = static_cast<Eigen::Index>(n + d);
            const auto col = static_cast<Eigen::Index>(n);
            rho(row, col) = value;
            rho(col, row) = std::conj(value);

            const auto ln = static_cast<long double>(n);
            const long double next =
                (((2.0L * ln + 1.0L + ld) * r + c) * f - r * r * std::sqrt(ln * (ln + ld)) * f_prev) /
                std::sqrt((ln + 1.0L) * (ln + 1.0L + ld));
            f_prev = f;
            f = next;
            if (f > kRescale) {
                f /= kRescale;
                f_prev /= kRescale;
                scale += std::log(kRescale);
            }
        }
    }
    return rho;
}

std::vector<double> populations_at(const PropagatorSolution& sol, const CoherentInit& init,
                                   std::size_t t_index, std::size_t n_max, double tail_tol) {
    const std::vector<long double> p = displaced_thermal_populations(state_at(sol, init, t_index),
                                                                     n_max);
    long double total = 0.0L;
    for (long double x : p) {
        total += x;
    }
    check_tail(static_cast<double>(1.0L - total), tail_tol, n_max, sol.grid.time(t_index));
    return {p.begin(), p.end()};
}

FockDensityMatrix density_matrix_at(const PropagatorSolution& sol, const CoherentInit& init,
                                    std::size_t t_index, std::size_t n_max, double tail_tol) {
    FockDensityMatrix out;
    out.time = sol.grid.time(t_index);
    out.n_max = n_max;
    out.elements = displaced_thermal_elements(state_at(sol, init, t_index), n_max);
    out.populations.resize(n_max + 1);
    long double total = 0.0L;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double p = out.elements(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)).real();
        out.populations[n] = p;
        total += p;
    }
    out.tail_mass = static_cast<double>(1.0L - total);
    check_tail(out.tail_mass, tail_tol, n_max, out.time);
    return out;
}

std::size_t auto_n_max(const PropagatorSolution& sol, const CoherentInit& init, double tail_tol) {
    const std::size_t count = std::min(sol.u.size(), sol.v.size());
    if (count == 0) {
        throw DomainError("auto_n_max: empty propagator solution");
    }
    // The widest distributions sit at the largest v and the largest mean occupation.
    const double a2 = std::norm(init.alpha0);
    std::size_t at_v = 0;
    std::size_t at_mean = 0;
    double v_max = sol.v[0];
    double mean_max = std::norm(sol.u[0]) * a2 + sol.v[0];
    for (std::size_t j = 1; j < count; ++j) {
        if (sol.v[j] > v_max) {
            v_max = sol.v[j];
            at_v = j;
        }
        const double mean = std::norm(sol.u[j]) * a2 + sol.v[j];
        if (mean > mean_max) {
            mean_max = mean;
            at_mean = j;
        }
    }
    const std::size_t probes[] = {0, at_v, at_mean, count - 1};

    auto n_max = static_cast<std::size_t>(std::ceil(10.0 * (a2 + std::max(0.0, v_max))));
    n_max = std::max<std::size_t>(n_max, 8);
    for (int doubling = 0; doubling < 20; ++doubling, n_max *= 2) {
        bool fits = true;
        for (std::size_t j : probes) {
            const auto p = displaced_thermal_populations(state_at(sol, init, j), n_max);
            long double total = 0.0L;
            for (long double x : p) {
                total += x;
            }
            if (static_cast<double>(1.0L - total) > tail_tol) {
                fits = false;
                break;
            }
        }
        if (fits) {
            return n_max;
        }
    }
    throw TruncationError("auto_n_max: no truncation up to 2^20 doublings meets the tail tolerance");
}

template <class Real>
static Real entropy_sum(std::span<const Real> p) {
    Real s = 0;
    for (Real x : p) {
        if (x < static_cast<Real>(kNegativePopulation)) {
            std::ostringstream msg;
            msg << "energy_entropy: probability " << static_cast<double>(x) << " < 0";
            throw DomainError(msg.str());
        }
        if (x > 0) {
            s -= x * std::log(x);
        }
    }
    return s;
}

double energy_entropy(std::span<const double> p) { return entropy_sum(p); }

long double energy_entropy(std::span<const long double> p) { return entropy_sum(p); }

EnergyEntropySeries energy_entropy_series(const PropagatorSolution& sol,
                                          const CoherentInit& init, std::size_t n_max,
                                          double tail_tol) {
    const std::size_t count = sol.grid.count;
    for (std::size_t j = 0; j < count; ++j) {
        checked_v(sol.v[j]);
    }
    EnergyEntropySeries out;
    out.entropy.resize(count);
    out.tail_mass.resize(count);
    const long total_count = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 512)
    for (long j = 0; j < total_count; ++j) {
        const auto p = displaced_thermal_populations(
            state_at(sol, init, static_cast<std::size_t>(j)), n_max);
        long double total = 0.0L;
        long double s = 0.0L;
        for (long double x : p) {
            total += x;
            if (x > 0.0L) {
                s -= x * std::log(x);
            }
        }
        out.entropy[static_cast<std::size_t>(j)] = s;
        out.tail_mass[static_cast<std::size_t>(j)] = static_cast<double>(1.0L - total);
    }
    for (std::size_t j = 0; j < count; ++j) {
        out.worst_tail = std::max(out.worst_tail, out.tail_mass[j]);
        check_tail(out.tail_mass[j], tail_tol, n_max, sol.grid.time(j));
    }
    return out;
}

double von_neumann_fock(const FockDensityMatrix& rho) {
    const Eigen::MatrixXcd& m = rho.elements;
    const double asymmetry = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asymmetry > 1e-12) {
        std::ostringstream msg;
        msg << "von_neumann_fock: matrix not Hermitian, max |rho - rho^dagger| = " << asymmetry;
        throw NumericalError(msg.str());
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("von_neumann_fock: eigensolver did not converge");
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda < kNegativeEigen) {
            std::ostringstream msg;
            msg << "von_neumann_fock: eigenvalue " << lambda << " < " << kNegativeEigen
                << " at t = " << rho.time;
            throw TruncationError(msg.str());
        }
        if (lambda > 0.0) {
            s -= lambda * std::log(lambda);
        }
    }
    return s;
}

double coherence_rel_entropy(double s_energy, double s_vn) {
    const double c = s_energy - s_vn;
    if (c < -kCoherenceTol) {
        std::ostringstream msg;
        msg << "relative entropy of coherence " << c << " < -" << kCoherenceTol
            << " (energy entropy " << s_energy << ", von Neumann entropy " << s_vn << ")";
        throw InconsistencyError(msg.str());
    }
    return c;
}

} // namespace nqt
