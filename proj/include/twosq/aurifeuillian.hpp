#pragma once

#include <utility>
#include <vector>

#include "twosq/cyclotomic.hpp"

namespace twosq {

// F, G with Phi_n(x) = F(x)^2 - k x^q G(x)^2, normalized to F(0) = 1 and a
// positive leading coefficient of G. k squarefree, n = 2 mod 4, q odd.
struct AurifeuillianPair {
    long k = 0;
    unsigned long n = 0;
    unsigned long q = 1;
    Polynomial F;
    Polynomial G;
};

// Discriminant of Q(sqrt(k)) in absolute value: |k| for k = 1 mod 4, else 4|k|.
Int discriminant_abs(long k);

// k squarefree with |k| >= 2, n = 2 mod 4, |d(k)| | 2n and |d(k)| not | n.
bool aurifeuillian_admissible(long k, unsigned long n);

// Solve for the pair by undetermined coefficients on the squarefree core of
// n/2, lifted through x -> x^q. Verified against Phi_n by exact expansion.
AurifeuillianPair aurifeuillian_pair(long k, unsigned long n);

// For k < 0: Phi_n(-k v^2) = F(-k v^2)^2 + (|k|^{(q+1)/2} v^q G(-k v^2))^2.
// Returns (|F(..)|, |k|^{(q+1)/2} v^q |G(..)|) in that order.
std::pair<Int, Int> sots_of_phi(long k, const Int& v, unsigned long n);

// For k > 0: the coprime split Phi_n(k v^2) = f * g with
// f, g = F(k v^2) +- k^{(q+1)/2} v^q G(k v^2).
std::pair<Int, Int> aurifeuillian_split(long k, const Int& v, unsigned long n);

namespace detail {
// All base-case solutions up to sign normalization (test hook; the production
// solver requires exactly one).
std::vector<std::pair<Polynomial, Polynomial>> solve_aurifeuillian_base(
    long k, unsigned long n0, long coeff_bound);
}  // namespace detail

}  // namespace twosq
