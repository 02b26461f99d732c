#pragma once

#include <optional>
#include <utility>

#include "twosq/core_arith.hpp"

namespace twosq {

enum class Status { yes, no, unknown };

// Decision certificate for "is N a sum of two squares".
//  yes: witness (x, y), x >= y >= 0, x^2 + y^2 = N.
//  no:  bad_prime (p, r) with p = 3 mod 4 and p^r || N, r odd. When the bad
//       prime itself resisted the budget, blocking_divisor instead names an
//       unfactored divisor = 3 mod 4 that proves the verdict.
//  unknown: blocking_divisor is an unfactored composite divisor = 1 mod 4.
struct TwoSquaresVerdict {
    Status status = Status::unknown;
    std::optional<std::pair<Int, Int>> witness;
    std::optional<std::pair<Int, unsigned>> bad_prime;
    std::optional<Int> blocking_divisor;

    static TwoSquaresVerdict yes(Int x, Int y);
    static TwoSquaresVerdict no(Int p, unsigned r);
    static TwoSquaresVerdict no_by_divisor(Int d);
    static TwoSquaresVerdict unknown(Int d);
};

// Full classification of N >= 1 within the given effort budget.
TwoSquaresVerdict classify(const Int& n, const EffortBudget& budget = {},
                           std::uint64_t seed = kDefaultSeed);

// Exact representation from a complete factorization whose 3-mod-4 primes all
// occur to even powers. Deterministic: composition keeps the larger-x branch.
std::pair<Int, Int> represent(const Int& n, const Factorization& fac);

// p = x^2 + y^2 for a prime p = 1 mod 4 (Cornacchia descent).
std::pair<Int, Int> cornacchia_prime(const Int& p);

// (a^2+b^2)(c^2+d^2) -> both Diophantus composition branches; returns the
// canonical pair of the branch with the larger maximum component.
std::pair<Int, Int> compose_diophantus(const std::pair<Int, Int>& u,
                                       const std::pair<Int, Int>& v);

// Exhaustive scan for n <= 10^14; canonical pair (max x) or none.
std::optional<std::pair<Int, Int>> brute_force(const Int& n);

// S(x) * sqrt(ln x) / x where S counts 1 <= n <= x expressible as a sum of
// two squares. Sieve-based; 2 <= x <= 10^8.
double density_ratio(std::uint64_t x);

// S(x) itself (same bounds); exposed for the density experiment.
std::uint64_t sots_count(std::uint64_t x);

}  // namespace twosq
