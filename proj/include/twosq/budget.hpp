#pragma once

#include <cstdint>

namespace twosq {

// Effort limits for factoring work. All caps are per factorize() call;
// rho_iteration_cap applies to each composite cofactor separately.
// total_time_cap_ms == 0 disables the wall-clock cap.
struct EffortBudget {
    std::uint64_t trial_division_bound = 100'000;
    std::uint64_t rho_iteration_cap = 100'000'000;
    std::uint64_t total_time_cap_ms = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

}  // namespace twosq
