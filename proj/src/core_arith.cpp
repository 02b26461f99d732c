#include "twosq/core_arith.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>

namespace twosq {

namespace {

std::atomic<std::uint64_t> g_factoring_calls{0};

using Clock = std::chrono::steady_clock;

struct Deadline {
    Clock::time_point end;
    bool enabled = false;
    explicit Deadline(std::uint64_t ms) {
        if (ms > 0) {
            enabled = true;
            end = Clock::now() + std::chrono::milliseconds(ms);
        }
    }
    bool expired() const { return enabled && Clock::now() > end; }
};

constexpr std::uint32_t kSieveBound = 1'000'000;

std::vector<std::uint32_t> build_sieve() {
    std::vector<bool> comp(kSieveBound + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= kSieveBound; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= kSieveBound; j += i)
                comp[j] = true;
        }
    }
    return primes;
}

// deterministic witness set: valid for all n < 3,317,044,064,679,887,385,961,981
const char* kDeterministicBound = "3317044064679887385961981";
constexpr unsigned kFixedWitnesses[] = {2,  3,  5,  7,  11, 13, 17,
                                        19, 23, 29, 31, 37, 41};

bool miller_rabin_round(const Int& n, const Int& base, const Int& d, unsigned r) {
    Int x = mod_pow(base, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// ---- 64-bit fast path ----

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) { a %= b; std::swap(a, b); }
    return a;
}

// Brent's rho on 64-bit values; returns 0 on iteration cap.
std::uint64_t rho_u64(std::uint64_t n, std::uint64_t cap) {
    std::uint64_t spent = 0;
    for (std::uint64_t c = 1;; c += 2) {
        std::uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min<std::uint64_t>(128, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += lim;
                spent += lim;
                if (spent > cap) return 0;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
    }
}

// Brent's rho on mpz; returns 0 on iteration cap / deadline.
Int rho_mpz(const Int& n, std::uint64_t cap, const Deadline& deadline) {
    std::uint64_t spent = 0;
    for (unsigned long c = 1;; c += 2) {
        Int y = 2, q = 1, g = 1, x, ys, diff;
        std::uint64_t r = 1;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                y = y * y + c;
                y %= n;
            }
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min<std::uint64_t>(128, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = y * y + c;
                    y %= n;
                    diff = x - y;
                    q *= abs(diff);
                    q %= n;
                }
                g = gcd(q, n);
                k += lim;
                spent += lim;
                if (spent > cap || deadline.expired()) return 0;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = ys * ys + c;
                ys %= n;
                diff = x - ys;
                g = gcd(Int(abs(diff)), n);
            }
        }
        if (g != n) return g;
    }
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = build_sieve();
    return primes;
}

Int Factorization::reconstruct() const {
    Int prod = cofactor;
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        prod *= pe;
    }
    return prod;
}

unsigned Factorization::exponent_of(const Int& p) const {
    for (const auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

Int mod_pow(const Int& base, const Int& exp, const Int& modulus) {
    if (modulus < 1) throw std::invalid_argument("mod_pow: modulus must be >= 1");
    if (exp < 0) throw std::invalid_argument("mod_pow: negative exponent");
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

int jacobi(const Int& a, const Int& n) {
    if (n <= 0 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("jacobi: n must be odd and positive");
    Int aa = a % n;
    if (aa < 0) aa += n;
    Int nn = n;
    int result = 1;
    while (aa != 0) {
        while (mpz_even_p(aa.get_mpz_t())) {
            aa >>= 1;
            unsigned long r = mpz_fdiv_ui(nn.get_mpz_t(), 8);
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(aa, nn);
        if (mpz_fdiv_ui(aa.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(nn.get_mpz_t(), 4) == 3)
            result = -result;
        aa %= nn;
    }
    return nn == 1 ? result : 0;
}

bool is_probable_prime(const Int& n, std::uint64_t seed) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t()) && n.get_ui() <= kSieveBound) {
        const auto& primes = small_primes();
        return std::binary_search(primes.begin(), primes.end(),
                                  static_cast<std::uint32_t>(n.get_ui()));
    }
    for (unsigned p : kFixedWitnesses)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;

    Int d = n - 1;
    unsigned r = 0;
    while (mpz_even_p(d.get_mpz_t())) { d >>= 1; ++r; }
    for (unsigned a : kFixedWitnesses)
        if (!miller_rabin_round(n, Int(a), d, r)) return false;

    static const Int kBound(kDeterministicBound);
    if (n < kBound) return true;

    std::uint64_t state = seed ^ mpz_fdiv_ui(n.get_mpz_t(), 0xFFFFFFFFFFFFFFC5ULL);
    for (int i = 0; i < 20; ++i) {
        Int base = 2 + Int(splitmix64(state)) % (n - 3);
        if (!miller_rabin_round(n, base, d, r)) return false;
    }
    return true;
}

unsigned exact_valuation(const Int& p, const Int& n) {
    if (p < 2) throw std::invalid_argument("exact_valuation: p must be >= 2");
    if (n < 1) throw std::invalid_argument("exact_valuation: n must be >= 1");
    Int rest;
    return static_cast<unsigned>(
        mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

std::optional<Int> perfect_square_root(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r == n) return r;
    return std::nullopt;
}

std::optional<std::pair<Int, unsigned>> perfect_power(const Int& n) {
    if (n < 2) return std::nullopt;
    Int base = n;
    unsigned total = 1;
    bool reduced = true;
    while (reduced) {
        reduced = false;
        std::size_t bits = mpz_sizeinbase(base.get_mpz_t(), 2);
        for (std::uint32_t k : small_primes()) {
            if (k > bits) break;
            Int root;
            if (mpz_root(root.get_mpz_t(), base.get_mpz_t(), k) != 0) {
                base = root;
                total *= k;
                reduced = true;
                break;
            }
        }
    }
    if (total < 2) return std::nullopt;
    return std::make_pair(base, total);
}

namespace {

// Shared trial-division + rho driver. Confirmed primes are removed from the
// running remainder with their exact exponent, so exponents stay correct even
// when rho splits share prime content. On exit the remainder equals the
// product of the returned unfactored chunks.
void run_factoring(const Int& n, const EffortBudget& budget, std::uint64_t seed,
                   std::uint64_t stride, const PrimeObserver& on_prime,
                   std::map<Int, unsigned>* out_map, std::vector<Int>* out_chunks) {
    Deadline deadline(budget.total_time_cap_ms);
    Int rest = n;
    bool stopped = false;
    std::vector<Int> noted;

    auto note_prime = [&](const Int& p) {
        Int t = rest;
        unsigned e = static_cast<unsigned>(
            mpz_remove(rest.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
        if (e == 0) return;
        noted.push_back(p);
        if (out_map) (*out_map)[p] += e;
        if (on_prime && !on_prime(p)) stopped = true;
    };
    auto strip_noted = [&](Int m) {
        Int t;
        for (const Int& p : noted) {
            if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
                mpz_remove(t.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
                m = t;
            }
        }
        return m;
    };

    // trial division
    if (stride <= 1) {
        for (std::uint32_t p : small_primes()) {
            if (p > budget.trial_division_bound) break;
            if (Int(p) * p > rest) break;
            if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                note_prime(Int(p));
                if (stopped) return;
            }
        }
    } else {
        // All prime divisors of n are assumed = 1 mod stride, so ascending
        // candidates q = 1 mod stride that still divide must be prime.
        for (Int q = stride + 1; q <= budget.trial_division_bound; q += stride) {
            if (q * q > rest) break;
            if (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t()) &&
                is_probable_prime(q, seed)) {
                note_prime(q);
                if (stopped) return;
            }
        }
    }
    if (rest == 1) return;
    if (is_probable_prime(rest, seed)) {
        note_prime(rest);
        return;
    }

    // rho on composite chunks
    std::vector<Int> failed;
    std::vector<Int> work{rest};
    while (!work.empty() && !stopped) {
        Int m = strip_noted(work.back());
        work.pop_back();
        if (m == 1) continue;
        if (is_probable_prime(m, seed)) {
            note_prime(m);
            continue;
        }
        if (auto pw = perfect_power(m)) {
            work.push_back(pw->first);
            continue;
        }
        Int g;
        if (mpz_fits_ulong_p(m.get_mpz_t()) && sizeof(unsigned long) == 8) {
            std::uint64_t gg = rho_u64(m.get_ui(), budget.rho_iteration_cap);
            g = gg ? Int(gg) : Int(0);
        } else {
            g = rho_mpz(m, budget.rho_iteration_cap, deadline);
        }
        if (g == 0 || deadline.expired()) {
            failed.push_back(m);
            continue;
        }
        work.push_back(g);
        work.push_back(m / g);
    }
    if (stopped) return;

    // late notes may have reduced earlier failed chunks
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Int> keep;
        for (const Int& c : failed) {
            Int m = strip_noted(c);
            if (m == 1) { changed = true; continue; }
            if (is_probable_prime(m, seed)) {
                note_prime(m);
                changed = true;
                continue;
            }
            if (m != c) changed = true;
            keep.push_back(m);
        }
        failed = std::move(keep);
        if (stopped) return;
    }
    if (out_chunks) *out_chunks = std::move(failed);
}

}  // namespace

Factorization factorize(const Int& n, const EffortBudget& budget,
                        std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    g_factoring_calls.fetch_add(1, std::memory_order_relaxed);
    Factorization f;
    f.value = n;
    if (n == 1) return f;

    std::map<Int, unsigned> found;
    std::vector<Int> chunks;
    run_factoring(n, budget, seed, 1, nullptr, &found, &chunks);

    for (auto& [p, e] : found) f.factors.emplace_back(p, e);
    f.cofactor = 1;
    for (const Int& c : chunks) f.cofactor *= c;
    if (f.cofactor == 1) {
        f.cofactor_status = CofactorStatus::one;
    } else if (chunks.size() == 1 && is_probable_prime(f.cofactor)) {
        f.cofactor_status = CofactorStatus::probable_prime;
    } else {
        f.cofactor_status = CofactorStatus::composite_unfactored;
    }
    return f;
}

std::vector<Int> factor_streaming(const Int& n, const EffortBudget& budget,
                                  std::uint64_t seed, std::uint64_t stride,
                                  const PrimeObserver& on_prime) {
    if (n < 1) throw std::invalid_argument("factor_streaming: n must be >= 1");
    g_factoring_calls.fetch_add(1, std::memory_order_relaxed);
    if (n == 1) return {};
    std::vector<Int> chunks;
    run_factoring(n, budget, seed, stride, on_prime, nullptr, &chunks);
    return chunks;
}

Int carmichael_lambda(const Int& m, const EffortBudget& budget) {
    if (m < 1) throw std::invalid_argument("carmichael_lambda: m must be >= 1");
    Factorization f = factorize(m, budget);
    if (!f.complete()) throw budget_exhausted("carmichael_lambda: factoring failed");
    Int lambda = 1;
    for (const auto& [p, e] : f.factors) {
        Int part;
        if (p == 2) {
            part = e == 1 ? 1 : (e == 2 ? 2 : Int(Int(1) << (e - 2)));
        } else {
            Int pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
            part = pe * (p - 1);
        }
        lambda = lcm(lambda, part);
    }
    return lambda;
}

Int multiplicative_order(const Int& a, const Int& m, const EffortBudget& budget) {
    if (m < 2) throw std::invalid_argument("multiplicative_order: m must be >= 2");
    if (gcd(a, m) != 1)
        throw std::invalid_argument("multiplicative_order: gcd(a, m) != 1");
    Int lambda = carmichael_lambda(m, budget);
    Factorization lf = factorize(lambda, budget);
    if (!lf.complete())
        throw budget_exhausted("multiplicative_order: cannot factor lambda(m)");
    Int ord = lambda;
    for (const auto& [q, e] : lf.factors) {
        for (unsigned i = 0; i < e; ++i) {
            Int cand = ord / q;
            if (mpz_divisible_p(ord.get_mpz_t(), q.get_mpz_t()) &&
                mod_pow(a, cand, m) == 1) {
                ord = cand;
            } else {
                break;
            }
        }
    }
    return ord;
}

namespace stats {
std::uint64_t factoring_calls() {
    return g_factoring_calls.load(std::memory_order_relaxed);
}
void reset_factoring_calls() {
    g_factoring_calls.store(0, std::memory_order_relaxed);
}
}  // namespace stats

}  // namespace twosq
