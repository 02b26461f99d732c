#include "twosq/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace twosq {

Polynomial::Polynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

Polynomial Polynomial::from_ui(const std::vector<long>& coeffs) {
    std::vector<Int> c(coeffs.begin(), coeffs.end());
    return Polynomial(std::move(c));
}

void Polynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Int& Polynomial::coeff(std::size_t i) const {
    static const Int zero = 0;
    return i < coeffs_.size() ? coeffs_[i] : zero;
}

const Int& Polynomial::leading() const {
    static const Int zero = 0;
    return coeffs_.empty() ? zero : coeffs_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Int> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<Int> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
    std::vector<Int> c = coeffs_;
    for (Int& v : c) v = -v;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Int> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(const Int& k) const {
    std::vector<Int> c = coeffs_;
    for (Int& v : c) v *= k;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Int> c(coeffs_.size() + k, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i + k] = coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::divided_exact(const Polynomial& d) const {
    if (d.is_zero()) throw std::logic_error("polynomial division by zero");
    std::vector<Int> rem = coeffs_;
    if (rem.size() < d.coeffs_.size())
        throw std::logic_error("polynomial division is not exact");
    std::vector<Int> quot(rem.size() - d.coeffs_.size() + 1, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
        Int& top = rem[i + d.coeffs_.size() - 1];
        if (top == 0) continue;
        Int q;
        mpz_fdiv_qr(q.get_mpz_t(), top.get_mpz_t(), top.get_mpz_t(),
                    d.leading().get_mpz_t());
        if (top != 0) throw std::logic_error("polynomial division is not exact");
        quot[i] = q;
        for (std::size_t j = 0; j + 1 < d.coeffs_.size(); ++j)
            rem[i + j] -= q * d.coeffs_[j];
    }
    for (const Int& r : rem)
        if (r != 0) throw std::logic_error("polynomial division is not exact");
    return Polynomial(std::move(quot));
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = Polynomial::from_ui({1});
    Polynomial base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
    Polynomial acc;  // zero
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = acc * inner;
        acc = acc + Polynomial({coeffs_[i]});
    }
    return acc;
}

Polynomial Polynomial::inflate(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("inflate: k must be >= 1");
    if (is_zero()) return {};
    std::vector<Int> c((coeffs_.size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * k] = coeffs_[i];
    return Polynomial(std::move(c));
}

Int Polynomial::eval(const Int& x) const {
    Int acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Int& c = coeffs_[i];
        if (c == 0) continue;
        Int a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

int moebius(const Int& n, const EffortBudget& budget) {
    if (n < 1) throw std::invalid_argument("moebius: n must be >= 1");
    Factorization f = factorize(n, budget);
    if (!f.complete()) throw budget_exhausted("moebius: factoring failed");
    int sign = 1;
    for (const auto& [p, e] : f.factors) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::vector<Int> divisors_of(const Int& n, const EffortBudget& budget) {
    if (n < 1) throw std::invalid_argument("divisors_of: n must be >= 1");
    Factorization f = factorize(n, budget);
    if (!f.complete()) throw budget_exhausted("divisors_of: factoring failed");
    std::vector<Int> ds{1};
    for (const auto& [p, e] : f.factors) {
        std::size_t base = ds.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

Polynomial cyclotomic_poly(unsigned long n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_poly: n must be >= 1");
    // Phi_n = (x^n - 1) / prod of Phi_d over proper divisors, built bottom-up
    std::map<unsigned long, Polynomial> phi;
    std::vector<Int> nds = divisors_of(Int(n));
    for (const Int& dz : nds) {
        unsigned long d = dz.get_ui();
        std::vector<Int> xd(d + 1, 0);
        xd[0] = -1;
        xd[d] = 1;
        Polynomial num{std::move(xd)};
        for (const Int& ez : nds) {
            unsigned long e = ez.get_ui();
            if (e < d && d % e == 0) num = num.divided_exact(phi.at(e));
        }
        phi.emplace(d, std::move(num));
    }
    return phi.at(n);
}

Int eval_cyclotomic(unsigned long n, const Int& a) {
    if (n == 0) throw std::invalid_argument("eval_cyclotomic: n must be >= 1");
    // Horner on the coefficients for small degrees or degenerate bases; the
    // quotient form prod (a^d - 1)^mu(n/d) otherwise.
    bool tiny_base = abs(a) <= 1;
    if (n <= 2 || tiny_base) return cyclotomic_poly(n).eval(a);

    unsigned long degree = 1;  // Euler phi of n
    {
        Factorization f = factorize(Int(n));
        Int phi = 1;
        for (const auto& [p, e] : f.factors) {
            Int pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
            phi *= pe * (p - 1);
        }
        degree = phi.get_ui();
    }
    if (degree < 512) return cyclotomic_poly(n).eval(a);

    Int num = 1, den = 1;
    for (const Int& dz : divisors_of(Int(n))) {
        unsigned long d = dz.get_ui();
        int mu = moebius(Int(n / d));
        if (mu == 0) continue;
        Int ad;
        mpz_pow_ui(ad.get_mpz_t(), a.get_mpz_t(), d);
        if (mu == 1)
            num *= ad - 1;
        else
            den *= ad - 1;
    }
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error("eval_cyclotomic: quotient form not exact");
    return q;
}

CyclotomicFactorList factor_a_n_plus_1(const Int& a, unsigned long n) {
    if (n % 2 == 0) throw std::invalid_argument("factor_a_n_plus_1: n must be odd");
    if (a < 2) throw std::invalid_argument("factor_a_n_plus_1: a must be >= 2");
    CyclotomicFactorList out;
    out.a = a;
    out.n = n;
    Int product = 1;
    for (const Int& dz : divisors_of(Int(n))) {
        unsigned long d = dz.get_ui();
        Int value = eval_cyclotomic(2 * d, a);
        product *= value;
        out.entries.emplace_back(d, std::move(value));
    }
    Int expect;
    mpz_pow_ui(expect.get_mpz_t(), a.get_mpz_t(), n);
    expect += 1;
    if (product != expect)
        throw std::logic_error("factor_a_n_plus_1: product identity failed");
    return out;
}

PrimeRole prime_in_cyclotomic(const Int& p, unsigned long n, const Int& a,
                              const EffortBudget& budget) {
    if (!is_probable_prime(p))
        throw std::invalid_argument("prime_in_cyclotomic: p must be prime");
    if (n < 2 || a < 2)
        throw std::invalid_argument("prime_in_cyclotomic: need n >= 2, a >= 2");
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) return PrimeRole::not_divisor;
    Int ord = multiplicative_order(a, p, budget);
    if (!mpz_divisible_p(Int(n).get_mpz_t(), p.get_mpz_t())) {
        return ord == n ? PrimeRole::primitive_divisor : PrimeRole::not_divisor;
    }
    // p | n: intrinsic iff n = ord * p^k (k >= 1)
    Int reduced = n;
    Int t;
    mpz_remove(t.get_mpz_t(), reduced.get_mpz_t(), p.get_mpz_t());
    return t == ord ? PrimeRole::intrinsic_divisor : PrimeRole::not_divisor;
}

unsigned predict_valuation(const Int& p, const Int& a, unsigned long m,
                           unsigned long n) {
    if (m == 0 || n == 0)
        throw std::invalid_argument("predict_valuation: m, n must be >= 1");
    if (n % 2 == 0) throw std::invalid_argument("predict_valuation: n must be odd");
    if (n % m != 0) throw std::invalid_argument("predict_valuation: m must divide n");
    Int am;
    mpz_pow_ui(am.get_mpz_t(), a.get_mpz_t(), m);
    am += 1;
    unsigned e = exact_valuation(p, am);
    if (e == 0)
        throw std::invalid_argument("predict_valuation: p does not divide a^m + 1");
    unsigned k = exact_valuation(p, Int(n / m));
    return e + k;
}

}  // namespace twosq
