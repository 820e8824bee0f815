// validation.hpp — Acceptance criteria and module invariants as a runnable suite

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace nqt {

struct CheckResult {
    std::string id;    // "AC01".."AC12" or "INV.<module>.<name>"
    std::string title;
    bool passed{false};
    bool skipped{false};
    double measured{0.0};
    double bound{0.0};
    std::string detail;
    double seconds{0.0};
};

struct ValidationOptions {
    bool fast{false};      // sweep criteria on kT0 = 20 only
    double dt{0.0005};     // grid for the temperature sweep
    double t_end{150.0};
    std::size_t stride{10}; // output rows used for the monotonicity checks
    bool invariants{true};
};

struct ValidationReport {
    std::vector<CheckResult> acceptance;
    std::vector<CheckResult> invariants;

    bool passed() const;
};

using CheckCallback = std::function<void(const CheckResult&)>;

// Runs every criterion, reporting each result through `on_result` as it completes.
ValidationReport run_validation(const ValidationOptions& options,
                                const CheckCallback& on_result = {});

// One fixed-width line: id, PASS/FAIL/SKIP, measured vs bound, runtime, detail.
std::string format_check(const CheckResult& check);

} // namespace nqt
