// propagator.cpp — Volterra integro-differential solver for u(t,t0) and the noise function v(t,t)

#include "noneq_qthermo/propagator.hpp"

#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nqt {

TimeGrid TimeGrid::covering(double t_end, double step, double t_start) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw DomainError("time grid: step must be finite and > 0");
    }
    if (!(t_end > t_start)) {
        throw DomainError("time grid: t_end must exceed t_start");
    }
    const double intervals = (t_end - t_start) / step;
    const double whole = std::round(intervals);
    if (std::abs(intervals - whole) > 1e-9 * std::max(1.0, whole)) {
        std::ostringstream msg;
        msg << "time grid: (t_end - t_start) = " << (t_end - t_start)
            << " is not a whole multiple of step " << step;
        throw DomainError(msg.str());
    }
    TimeGrid g{t_start, step, static_cast<std::size_t>(whole) + 1};
    g.validate();
    return g;
}

void TimeGrid::validate() const {
    if (!(step > 0.0) || count < 2) {
        throw DomainError("time grid: need step > 0 and at least 2 samples");
    }
}

namespace {

// Column-split copy of a lag table stored back to front, so that the
// memory sums walk both operands forwards.
struct ReversedTable {
    std::vector<double> re;
    std::vector<double> im;
    std::size_t last{0};

    explicit ReversedTable(std::span<const std::complex<double>> table)
        : re(table.size()), im(table.size()), last(table.size() - 1) {
        for (std::size_t m = 0; m < table.size(); ++m) {
            re[last - m] = table[m].real();
            im[last - m] = table[m].imag();
        }
    }
};

// sum_{k=0}^{len-1} K[lag0 - k] * x[k] with K read through the reversed table.
inline std::complex<double> lagged_dot(const ReversedTable& kernel, std::size_t lag0,
                                       const double* xr, const double* xi, std::size_t len) {
    const double* kr = kernel.re.data() + (kernel.last - lag0);
    const double* ki = kernel.im.data() + (kernel.last - lag0);
    double sr = 0.0;
    double si = 0.0;
#pragma omp simd reduction(+ : sr, si)
    for (std::size_t k = 0; k < len; ++k) {
        sr += kr[k] * xr[k] - ki[k] * xi[k];
        si += kr[k] * xi[k] + ki[k] * xr[k];
    }
    return {sr, si};
}

constexpr std::size_t kTargetBlock = 64;
constexpr std::size_t kSourceChunk = 1024;

// out[b] = sum_{k=src_begin}^{src_end-1} K[t_b - k] x[k] for t_b = first_target + b.
// Walking sources in cache-sized chunks keeps each chunk resident for the whole block.
void history_sums(const ReversedTable& kernel, const double* xr, const double* xi,
                  std::size_t src_begin, std::size_t src_end, std::size_t first_target,
                  std::size_t targets, std::complex<double>* out) {
    for (std::size_t b = 0; b < targets; ++b) {
        out[b] = {0.0, 0.0};
    }
    for (std::size_t k0 = src_begin; k0 < src_end; k0 += kSourceChunk) {
        const std::size_t len = std::min(kSourceChunk, src_end - k0);
        for (std::size_t b = 0; b < targets; ++b) {
            out[b] += lagged_dot(kernel, first_target + b - k0, xr + k0, xi + k0, len);
        }
    }
}

} // namespace

USolution solve_u(const KernelSamples& kernels, const TimeGrid& grid) {
    grid.validate();
    if (kernels.size() < grid.count) {
        throw DomainError("solve_u: kernel table shorter than the time grid");
    }
    const std::size_t n = grid.count;
    const double h = grid.step;
    const std::complex<double> iw0{0.0, kOmega0};
    const std::complex<double> g0 = kernels.g_samples[0];
    const bool coupled = std::abs(g0) > 0.0;

    USolution out;
    out.u.resize(n);
    out.u_dot.resize(n);
    std::vector<double> ur(n), ui(n);

    out.u[0] = 1.0;
    out.u_dot[0] = -iw0;
    ur[0] = 1.0;
    ui[0] = 0.0;

    const ReversedTable table(std::span(kernels.g_samples).first(n));
    const std::complex<double> denom = 1.0 + 0.5 * h * (iw0 + 0.5 * h * g0);

    std::complex<double> history[kTargetBlock];
    for (std::size_t block = 1; block < n; block += kTargetBlock) {
        const std::size_t block_end = std::min(n, block + kTargetBlock);
        if (coupled) {
            // sum_{k=1}^{block-1} g_{i-k} u_k for every target i in the block
            history_sums(table, ur.data(), ui.data(), 1, block, block, block_end - block, history);
        }
        for (std::size_t i = block; i < block_end; ++i) {
            // Known part of the memory integral at t_i: all samples but u_i.
            std::complex<double> known{0.0, 0.0};
            if (coupled) {
                known = history[i - block] + 0.5 * kernels.g_samples[i] * out.u[0];
                if (i > block) {
                    known += lagged_dot(table, i - block, ur.data() + block, ui.data() + block,
                                        i - block);
                }
                known *= h;
            }
            const std::complex<double> next =
                (out.u[i - 1] + 0.5 * h * (out.u_dot[i - 1] - known)) / denom;
            out.u[i] = next;
            out.u_dot[i] = -iw0 * next - known - 0.5 * h * g0 * next;
            ur[i] = next.real();
            ui[i] = next.imag();
        }
    }

    double worst = 0.0;
    std::size_t worst_at = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(out.u[i]) > worst) {
            worst = std::abs(out.u[i]);
            worst_at = i;
        }
    }
    if (worst > 1.0 + kContractivityTol) {
        std::ostringstream msg;
        msg << "|u| = " << worst << " exceeds 1 + " << kContractivityTol << " at t = "
            << grid.time(worst_at) << "; time step likely too coarse";
        out.warnings.push_back(msg.str());
    }
    return out;
}

USolution solve_u(const BathSpec& bath, const TimeGrid& grid) {
    return solve_u(build_kernel_samples(bath, grid.step, grid.count), grid);
}

std::vector<double> compute_v_diag(const KernelSamples& kernels,
                                   std::span<const std::complex<double>> u,
                                   const TimeGrid& grid) {
    grid.validate();
    const std::size_t n = grid.count;
    if (u.size() < n || kernels.size() < n) {
        throw DomainError("compute_v_diag: inputs shorter than the time grid");
    }
    const double h = grid.step;
    const double g0 = kernels.gtilde_samples[0].real();

    // y_a = c_a u_a with trapezoid end weight c_0 = 1/2.
    std::vector<double> yr(n), yi(n);
    for (std::size_t a = 0; a < n; ++a) {
        const double c = (a == 0) ? 0.5 : 1.0;
        yr[a] = c * u[a].real();
        yi[a] = c * u[a].imag();
    }

    // r_j = sum_{a<j} y_a g~_{j-a}; independent in j.
    std::vector<std::complex<double>> r(n);
    if (g0 != 0.0 || std::abs(kernels.gtilde_samples[n - 1]) > 0.0) {
        const ReversedTable table(std::span(kernels.gtilde_samples).first(n));
        const long blocks = static_cast<long>((n + kTargetBlock - 1) / kTargetBlock);
#pragma omp parallel for schedule(dynamic, 1)
        for (long b = 0; b < blocks; ++b) {
            const std::size_t first = static_cast<std::size_t>(b) * kTargetBlock;
            const std::size_t last = std::min(n, first + kTargetBlock);
            std::complex<double> history[kTargetBlock];
            history_sums(table, yr.data(), yi.data(), 0, first, first, last - first, history);
            for (std::size_t j = std::max<std::size_t>(first, 1); j < last; ++j) {
                r[j] = history[j - first] +
                       lagged_dot(table, j - first, yr.data() + first, yi.data() + first, j - first);
            }
        }
    }

    std::vector<double> v(n, 0.0);
    long double inner = 0.0L; // sum over a, b < j of y_a g~_{b-a} conj(y_b)
    for (std::size_t j = 1; j < n; ++j) {
        const std::size_t i = j - 1;
        const std::complex<double> yi_c{yr[i], yi[i]};
        inner += 2.0L * static_cast<long double>((std::conj(yi_c) * r[i]).real()) +
                 static_cast<long double>(g0 * std::norm(yi_c));
        const std::complex<double> z = 0.5 * u[j];
        const long double edge = 2.0L * static_cast<long double>((std::conj(z) * r[j]).real()) +
                                 static_cast<long double>(g0 * std::norm(z));
        v[j] = static_cast<double>(static_cast<long double>(h) * static_cast<long double>(h) *
                                   (inner + edge));
    }
    return v;
}

std::vector<double> v_dot_diag(std::span<const double> v, const TimeGrid& grid) {
    if (v.size() != grid.count) {
        throw DomainError("v_dot_diag: series length does not match the grid");
    }
    return num::derivative(v, grid.step);
}

PropagatorSolution attach_noise(const BathSpec& bath, const TimeGrid& grid, const USolution& u) {
    const KernelSamples kernels = build_kernel_samples(bath, grid.step, grid.count);
    PropagatorSolution sol;
    sol.grid = grid;
    sol.u = u.u;
    sol.u_dot = u.u_dot;
    sol.warnings = u.warnings;
    sol.v = compute_v_diag(kernels, sol.u, grid);
    sol.v_dot = v_dot_diag(sol.v, grid);
    for (std::size_t j = 0; j < sol.v.size(); ++j) {
        if (sol.v[j] < -kContractivityTol) {
            std::ostringstream msg;
            msg << "v(t,t) = " << sol.v[j] << " < 0 at t = " << grid.time(j);
            sol.warnings.push_back(msg.str());
            break;
        }
    }
    return sol;
}

PropagatorSolution solve_propagator(const BathSpec& bath, const TimeGrid& grid) {
    bath.validate();
    grid.validate();
    const KernelSamples kernels = build_kernel_samples(bath, grid.step, grid.count);
    const USolution u = solve_u(kernels, grid);
    PropagatorSolution sol;
    sol.grid = grid;
    sol.u = u.u;
    sol.u_dot = u.u_dot;
    sol.warnings = u.warnings;
    sol.v = compute_v_diag(kernels, sol.u, grid);
    sol.v_dot = v_dot_diag(sol.v, grid);
    return sol;
}

} // namespace nqt
