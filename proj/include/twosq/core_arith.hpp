#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "twosq/budget.hpp"

namespace twosq {

using Int = mpz_class;

// Raised when an effort budget runs out before a question is settled.
struct budget_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CofactorStatus { one, probable_prime, composite_unfactored };

// Partial or complete factorization: value = prod(p^e) * cofactor.
// Primes are strictly increasing and pass is_probable_prime.
struct Factorization {
    Int value;
    std::vector<std::pair<Int, unsigned>> factors;
    Int cofactor = 1;
    CofactorStatus cofactor_status = CofactorStatus::one;

    bool complete() const { return cofactor_status == CofactorStatus::one; }
    Int reconstruct() const;
    // exponent of p, counting the cofactor only if it equals p
    unsigned exponent_of(const Int& p) const;
};

// base^exp mod modulus, reduced into [0, modulus). exp >= 0, modulus >= 1.
Int mod_pow(const Int& base, const Int& exp, const Int& modulus);

// Extended quadratic residue symbol (a/n) for odd n >= 1, via binary reciprocity.
int jacobi(const Int& a, const Int& n);

// Smallest k >= 1 with a^k = 1 mod m; requires gcd(a, m) = 1, m >= 2.
// Found by factoring the Carmichael function of m and descending through divisors.
Int multiplicative_order(const Int& a, const Int& m,
                         const EffortBudget& budget = {});

// Carmichael function of m (m >= 1); needs a complete factorization of m.
Int carmichael_lambda(const Int& m, const EffortBudget& budget = {});

// Strong probable prime test. Deterministic below the published 13-witness
// bound (~3.3e24); above that, the fixed witnesses plus 20 seeded ones.
bool is_probable_prime(const Int& n, std::uint64_t seed = kDefaultSeed);

// Trial division then Brent's rho, deterministic for a given budget and seed.
// n >= 1; exhausted effort is reported through cofactor_status, never thrown.
Factorization factorize(const Int& n, const EffortBudget& budget = {},
                        std::uint64_t seed = kDefaultSeed);

// r with p^r || n (p >= 2, n >= 1). No factoring involved.
unsigned exact_valuation(const Int& p, const Int& n);

// Exact integer square root if n is a perfect square.
std::optional<Int> perfect_square_root(const Int& n);

// (base, k) with n = base^k and k >= 2 maximal; none if n is not a perfect power.
std::optional<std::pair<Int, unsigned>> perfect_power(const Int& n);

// Primes below the internal sieve bound (ascending).
const std::vector<std::uint32_t>& small_primes();

// ---- incremental factoring, used by the classifier ----

// Called with each confirmed prime divisor; return false to stop early.
using PrimeObserver = std::function<bool(const Int& prime)>;

// Factor n, reporting primes as they are confirmed. Remaining unfactored
// composite chunks are returned (empty means complete or early-stopped).
// stride > 1 restricts trial division to candidates = 1 mod stride.
std::vector<Int> factor_streaming(const Int& n, const EffortBudget& budget,
                                  std::uint64_t seed, std::uint64_t stride,
                                  const PrimeObserver& on_prime);

namespace stats {
// Number of factorize()/factor_streaming() invocations in this process.
std::uint64_t factoring_calls();
void reset_factoring_calls();
}  // namespace stats

}  // namespace twosq
