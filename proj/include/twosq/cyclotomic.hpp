#pragma once

#include <string>
#include <vector>

#include "twosq/core_arith.hpp"

namespace twosq {

// Dense univariate polynomial over Z, constant term first.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Int> coeffs);
    static Polynomial from_ui(const std::vector<long>& coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    const Int& coeff(std::size_t i) const;
    const std::vector<Int>& coeffs() const { return coeffs_; }
    const Int& leading() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

    Polynomial scaled(const Int& c) const;
    // multiply by x^k
    Polynomial shifted(std::size_t k) const;
    // exact division; throws std::logic_error on a nonzero remainder
    Polynomial divided_exact(const Polynomial& d) const;
    Polynomial pow(unsigned e) const;
    // substitute x -> inner
    Polynomial compose(const Polynomial& inner) const;
    // substitute x -> x^k
    Polynomial inflate(std::size_t k) const;
    Int eval(const Int& x) const;

    std::string str(const std::string& var = "x") const;

  private:
    void normalize();
    std::vector<Int> coeffs_;
};

// Mobius function of n >= 1.
int moebius(const Int& n, const EffortBudget& budget = {});

// All divisors of n, ascending.
std::vector<Int> divisors_of(const Int& n, const EffortBudget& budget = {});

// nth cyclotomic polynomial, exact integer coefficients (n >= 1).
Polynomial cyclotomic_poly(unsigned long n);

// Phi_n(a), switching to the Mobius quotient form for large degrees.
Int eval_cyclotomic(unsigned long n, const Int& a);

// a^n + 1 = prod over delta | n of Phi_{2 delta}(a), n odd.
struct CyclotomicFactorList {
    Int a;
    unsigned long n;
    std::vector<std::pair<unsigned long, Int>> entries;  // (delta, Phi_{2 delta}(a))
};
CyclotomicFactorList factor_a_n_plus_1(const Int& a, unsigned long n);

enum class PrimeRole { not_divisor, primitive_divisor, intrinsic_divisor };

// Role of prime p relative to Phi_n(a): primitive (n = ord_p(a)) or intrinsic
// (p | n and n = ord_p(a) * p^k). Requires n >= 2, a >= 2.
PrimeRole prime_in_cyclotomic(const Int& p, unsigned long n, const Int& a,
                              const EffortBudget& budget = {});

// Valuation lift: with p^e || a^m + 1 and n = m*c*p^k odd (gcd(c, p) = 1),
// the valuation of p in a^n + 1 equals e + k.
unsigned predict_valuation(const Int& p, const Int& a, unsigned long m,
                           unsigned long n);

}  // namespace twosq
