#include "twosq/two_squares.hpp"

#include <cmath>
#include <vector>

namespace twosq {

TwoSquaresVerdict TwoSquaresVerdict::yes(Int x, Int y) {
    TwoSquaresVerdict v;
    v.status = Status::yes;
    if (x < y) std::swap(x, y);
    v.witness = std::make_pair(std::move(x), std::move(y));
    return v;
}

TwoSquaresVerdict TwoSquaresVerdict::no(Int p, unsigned r) {
    TwoSquaresVerdict v;
    v.status = Status::no;
    v.bad_prime = std::make_pair(std::move(p), r);
    return v;
}

TwoSquaresVerdict TwoSquaresVerdict::no_by_divisor(Int d) {
    TwoSquaresVerdict v;
    v.status = Status::no;
    v.blocking_divisor = std::move(d);
    return v;
}

TwoSquaresVerdict TwoSquaresVerdict::unknown(Int d) {
    TwoSquaresVerdict v;
    v.status = Status::unknown;
    v.blocking_divisor = std::move(d);
    return v;
}

std::pair<Int, Int> compose_diophantus(const std::pair<Int, Int>& u,
                                       const std::pair<Int, Int>& v) {
    const auto& [a, b] = u;
    const auto& [c, d] = v;
    Int x1 = a * c + b * d, y1 = abs(Int(a * d - b * c));
    Int x2 = abs(Int(a * c - b * d)), y2 = a * d + b * c;
    if (x1 < y1) std::swap(x1, y1);
    if (x2 < y2) std::swap(x2, y2);
    return x1 >= x2 ? std::make_pair(x1, y1) : std::make_pair(x2, y2);
}

std::pair<Int, Int> cornacchia_prime(const Int& p) {
    if (p == 2) return {1, 1};
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) != 1)
        throw std::invalid_argument("cornacchia_prime: p must be 2 or 1 mod 4");
    // smallest non-residue gives a square root of -1
    Int t;
    for (std::uint32_t q : small_primes()) {
        if (jacobi(Int(q), p) == -1) {
            t = mod_pow(Int(q), (p - 1) / 4, p);
            break;
        }
    }
    if (t == 0) throw std::logic_error("cornacchia_prime: no non-residue found");
    // Euclidean descent until the remainder drops below sqrt(p)
    Int a = p, b = t;
    while (b * b > p) {
        Int r = a % b;
        a = b;
        b = r;
    }
    Int y2 = p - b * b;
    auto y = perfect_square_root(y2);
    if (!y) throw std::logic_error("cornacchia_prime: descent failed");
    Int x = b;
    if (x < *y) std::swap(x, *y);
    return {x, *y};
}

std::pair<Int, Int> represent(const Int& n, const Factorization& fac) {
    if (!fac.complete())
        throw std::invalid_argument("represent: factorization is incomplete");
    if (fac.value != n)
        throw std::invalid_argument("represent: factorization does not match n");
    Int scalar = 1;
    std::pair<Int, Int> acc{1, 0};
    bool have_rep = false;
    for (const auto& [p, e] : fac.factors) {
        unsigned long rem = mpz_fdiv_ui(p.get_mpz_t(), 4);
        Int half_pow;
        mpz_pow_ui(half_pow.get_mpz_t(), p.get_mpz_t(), e / 2);
        if (rem == 3) {
            if (e % 2 != 0)
                throw std::invalid_argument("represent: odd power of a 3-mod-4 prime");
            scalar *= half_pow;
            continue;
        }
        scalar *= half_pow;
        if (e % 2 == 1) {
            auto rep = cornacchia_prime(p);
            acc = have_rep ? compose_diophantus(acc, rep) : rep;
            have_rep = true;
        }
    }
    Int x = acc.first * scalar, y = acc.second * scalar;
    if (x < y) std::swap(x, y);
    if (x * x + y * y != n) throw std::logic_error("represent: witness check failed");
    return {x, y};
}

namespace {

bool is_square_u64(std::uint64_t v, std::uint64_t& root) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    root = r;
    return r * r == v;
}

}  // namespace

std::optional<std::pair<Int, Int>> brute_force(const Int& n) {
    static const Int kLimit = Int("100000000000000");
    if (n < 0 || n > kLimit)
        throw std::invalid_argument("brute_force: n out of exhaustive range");
    std::uint64_t v = mpz_get_ui(n.get_mpz_t());
    for (std::uint64_t y = 0; 2 * y * y <= v; ++y) {
        std::uint64_t x;
        if (is_square_u64(v - y * y, x)) return std::make_pair(Int(x), Int(y));
    }
    return std::nullopt;
}

std::uint64_t sots_count(std::uint64_t x) {
    if (x < 2 || x > 100'000'000)
        throw std::invalid_argument("sots_count: x must be in [2, 1e8]");
    std::vector<bool> mark(x + 1, false);
    for (std::uint64_t i = 0; i * i <= x; ++i)
        for (std::uint64_t j = i; i * i + j * j <= x; ++j) mark[i * i + j * j] = true;
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= x; ++n)
        if (mark[n]) ++count;
    return count;
}

double density_ratio(std::uint64_t x) {
    std::uint64_t s = sots_count(x);
    return static_cast<double>(s) * std::sqrt(std::log(static_cast<double>(x))) /
           static_cast<double>(x);
}

TwoSquaresVerdict classify(const Int& n, const EffortBudget& budget,
                           std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("classify: n must be >= 1");
    if (n == 1) return TwoSquaresVerdict::yes(1, 0);

    Int odd = n >> exact_valuation(2, n);
    std::optional<TwoSquaresVerdict> verdict;
    Factorization partial;  // rebuilt below for the yes path

    auto on_prime = [&](const Int& p) {
        if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
            unsigned r = exact_valuation(p, n);
            if (r % 2 == 1) {
                verdict = TwoSquaresVerdict::no(p, r);
                return false;
            }
        }
        return true;
    };
    auto chunks = factor_streaming(odd, budget, seed, 1, on_prime);
    if (verdict) return *verdict;

    if (chunks.empty()) {
        Factorization fac = factorize(n, budget, seed);
        auto [x, y] = represent(n, fac);
        return TwoSquaresVerdict::yes(std::move(x), std::move(y));
    }
    Int blocking = 1;
    for (const Int& c : chunks) blocking *= c;
    if (mpz_fdiv_ui(blocking.get_mpz_t(), 4) == 3)
        return TwoSquaresVerdict::no_by_divisor(blocking);
    return TwoSquaresVerdict::unknown(blocking);
}

}  // namespace twosq
