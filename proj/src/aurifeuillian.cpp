#include "twosq/aurifeuillian.hpp"

#include <algorithm>
#include <functional>

namespace twosq {

Int discriminant_abs(long k) {
    long r = ((k % 4) + 4) % 4;
    Int ak = std::abs(k);
    return r == 1 ? ak : 4 * ak;
}

namespace {

bool squarefree(long k) {
    Factorization f = factorize(Int(std::abs(k)));
    for (const auto& [p, e] : f.factors)
        if (e > 1) return false;
    return true;
}

unsigned long radical(unsigned long n) {
    Factorization f = factorize(Int(n));
    Int r = 1;
    for (const auto& [p, e] : f.factors) r *= p;
    return r.get_ui();
}

}  // namespace

bool aurifeuillian_admissible(long k, unsigned long n) {
    if (k == 0 || k == 1 || k == -1) return false;
    if (!squarefree(k)) return false;
    if (n % 4 != 2) return false;
    Int d = discriminant_abs(k);
    return Int(2 * n) % d == 0 && Int(n) % d != 0;
}

namespace detail {

std::vector<std::pair<Polynomial, Polynomial>> solve_aurifeuillian_base(
    long k, unsigned long n0, long coeff_bound) {
    const Polynomial phi_poly = cyclotomic_poly(n0);
    const std::size_t phi = phi_poly.degree();
    const std::size_t D = phi / 2;
    const std::size_t E = D - 1;
    const Int K = k;

    std::vector<std::pair<Polynomial, Polynomial>> found;

    for (int eps : {1, -1}) {
        for (int epsg : {1, -1}) {
            std::vector<std::optional<Int>> f(D + 1), g(E + 1);

            // assignment with reversal symmetry f[D-i] = eps f[i], g[E-j] = epsg g[j]
            std::function<bool(std::vector<std::optional<Int>>&, std::size_t,
                               const Int&, int)>
                assign = [&](std::vector<std::optional<Int>>& arr, std::size_t i,
                             const Int& v, int sign) {
                    if (arr[i]) return *arr[i] == v;
                    arr[i] = v;
                    std::size_t j = arr.size() - 1 - i;
                    if (j != i) {
                        Int mv = sign == 1 ? v : Int(-v);
                        if (arr[j]) return *arr[j] == mv;
                        arr[j] = mv;
                    } else if (sign == -1 && v != 0) {
                        return false;
                    }
                    return true;
                };

            auto known_f_sum = [&](std::size_t t) {
                // sum over i+j=t of f_i f_j, skipping the (0, t) pair if unset
                Int s = 0;
                for (std::size_t i = 0; 2 * i <= t; ++i) {
                    std::size_t j = t - i;
                    if (j > D) continue;
                    if (!f[i] || !f[j]) continue;
                    s += (i == j ? Int(*f[i] * *f[j])
                                 : Int(2 * *f[i] * *f[j]));
                }
                return s;
            };
            auto known_g_sum = [&](std::size_t t1) {
                Int s = 0;
                for (std::size_t i = 0; 2 * i <= t1; ++i) {
                    std::size_t j = t1 - i;
                    if (j > E) continue;
                    if (!g[i] || !g[j]) continue;
                    s += (i == j ? Int(*g[i] * *g[j])
                                 : Int(2 * *g[i] * *g[j]));
                }
                return s;
            };

            std::function<void(std::size_t)> dfs = [&](std::size_t t) {
                if (t > phi) {
                    std::vector<Int> fc(D + 1), gc(E + 1);
                    for (std::size_t i = 0; i <= D; ++i) fc[i] = *f[i];
                    for (std::size_t i = 0; i <= E; ++i) gc[i] = *g[i];
                    found.emplace_back(Polynomial(std::move(fc)),
                                       Polynomial(std::move(gc)));
                    return;
                }
                const Int target = phi_poly.coeff(t);
                bool uf = t <= D && !f[t];
                bool ug = t >= 1 && t - 1 <= E && !g[t - 1];

                auto try_f_then_recurse = [&]() {
                    // resolve f[t] from the equation, everything else known
                    Int sf = known_f_sum(t);
                    Int sg = t >= 1 ? known_g_sum(t - 1) : Int(0);
                    if (uf) {
                        Int num = target + K * sg - sf;
                        if (num % 2 != 0) return;
                        auto fs = f;
                        auto gs = g;
                        if (assign(f, t, num / 2, eps)) dfs(t + 1);
                        f = fs;
                        g = gs;
                    } else {
                        if (sf - K * sg == target) dfs(t + 1);
                    }
                };

                if (!ug) {
                    try_f_then_recurse();
                    return;
                }
                // g[t-1] unknown
                if (t - 1 == 0) {
                    // appears squared: k g0^2 = sf - target (+ resolves f[t] too)
                    for (long v = 0; v <= coeff_bound; ++v) {
                        for (int sgn : {1, -1}) {
                            if (v == 0 && sgn == -1) continue;
                            auto fs = f;
                            auto gs = g;
                            if (assign(g, 0, Int(sgn * v), epsg)) try_f_then_recurse();
                            f = fs;
                            g = gs;
                        }
                    }
                    return;
                }
                if (!uf && g[0] && *g[0] != 0) {
                    // linear in g[t-1]: 2 k g0 g[t-1] = sf - k sg_known - target
                    Int sf = known_f_sum(t);
                    Int sg = known_g_sum(t - 1);  // excludes the (0, t-1) pair
                    Int num = sf - K * sg - target;
                    Int den = 2 * K * *g[0];
                    if (num % den == 0) {
                        auto fs = f;
                        auto gs = g;
                        if (assign(g, t - 1, num / den, epsg)) dfs(t + 1);
                        f = fs;
                        g = gs;
                    }
                    return;
                }
                // enumerate g[t-1]
                for (long v = -coeff_bound; v <= coeff_bound; ++v) {
                    auto fs = f;
                    auto gs = g;
                    if (assign(g, t - 1, Int(v), epsg)) try_f_then_recurse();
                    f = fs;
                    g = gs;
                }
            };

            if (assign(f, 0, 1, eps)) dfs(1);
        }
    }

    // normalize (F(0) = 1, leading G > 0) and dedupe
    std::vector<std::pair<Polynomial, Polynomial>> out;
    for (auto& [F, G] : found) {
        Polynomial Fn = F.coeff(0) < 0 ? -F : F;
        Polynomial Gn = G.leading() < 0 ? -G : G;
        bool dup = false;
        for (const auto& [F2, G2] : out)
            if (F2 == Fn && G2 == Gn) dup = true;
        if (!dup) out.emplace_back(std::move(Fn), std::move(Gn));
    }
    return out;
}

}  // namespace detail

AurifeuillianPair aurifeuillian_pair(long k, unsigned long n) {
    if (k == 0 || k == 1 || k == -1)
        throw std::invalid_argument("aurifeuillian_pair: k must have |k| >= 2");
    if (!squarefree(k))
        throw std::invalid_argument("aurifeuillian_pair: k must be squarefree");
    if (!aurifeuillian_admissible(k, n))
        throw std::invalid_argument("aurifeuillian_pair: (k, n) is not admissible");

    unsigned long u = n / 2;
    unsigned long s = radical(u);
    unsigned long q = u / s;
    unsigned long n0 = 2 * s;

    std::vector<std::pair<Polynomial, Polynomial>> sols;
    for (long bound : {4L, 16L, 64L, 256L}) {
        sols = detail::solve_aurifeuillian_base(k, n0, bound);
        if (!sols.empty()) break;
    }
    if (sols.empty())
        throw std::logic_error("aurifeuillian_pair: no solution found");
    if (sols.size() > 1)
        throw std::logic_error("aurifeuillian_pair: solution is not unique");

    AurifeuillianPair pair;
    pair.k = k;
    pair.n = n;
    pair.q = q;
    pair.F = sols[0].first.inflate(q);
    pair.G = sols[0].second.inflate(q);

    // exact identity check against Phi_n
    Polynomial lhs = pair.F * pair.F -
                     (pair.G * pair.G).shifted(q).scaled(Int(k));
    if (!(lhs == cyclotomic_poly(n)))
        throw std::logic_error("aurifeuillian_pair: identity check failed");
    if (pair.F.coeff(0) != 1 || pair.F.leading() <= 0 ||
        pair.F.degree() <= pair.G.degree())
        throw std::logic_error("aurifeuillian_pair: normalization failed");
    return pair;
}

namespace {

Int k_half_power(long k, unsigned long q, const Int& v) {
    // |k|^{(q+1)/2} * v^q
    Int kk = std::abs(k);
    Int a, b;
    mpz_pow_ui(a.get_mpz_t(), kk.get_mpz_t(), (q + 1) / 2);
    mpz_pow_ui(b.get_mpz_t(), v.get_mpz_t(), q);
    return a * b;
}

}  // namespace

std::pair<Int, Int> sots_of_phi(long k, const Int& v, unsigned long n) {
    if (k >= 0) throw std::invalid_argument("sots_of_phi: k must be negative");
    if (v < 1) throw std::invalid_argument("sots_of_phi: v must be >= 1");
    AurifeuillianPair pair = aurifeuillian_pair(k, n);
    Int x0 = Int(-k) * v * v;
    Int first = abs(pair.F.eval(x0));
    Int second = k_half_power(k, pair.q, v) * abs(pair.G.eval(x0));
    if (first * first + second * second != eval_cyclotomic(n, x0))
        throw std::logic_error("sots_of_phi: representation check failed");
    return {first, second};
}

std::pair<Int, Int> aurifeuillian_split(long k, const Int& v, unsigned long n) {
    if (k <= 0) throw std::invalid_argument("aurifeuillian_split: k must be positive");
    if (v < 1) throw std::invalid_argument("aurifeuillian_split: v must be >= 1");
    AurifeuillianPair pair = aurifeuillian_pair(k, n);
    Int x0 = Int(k) * v * v;
    Int fe = pair.F.eval(x0);
    Int h = k_half_power(k, pair.q, v) * pair.G.eval(x0);
    Int f = fe + h, g = fe - h;
    if (f <= 0 || g <= 0)
        throw std::logic_error("aurifeuillian_split: factors not positive");
    if (f * g != eval_cyclotomic(n, x0))
        throw std::logic_error("aurifeuillian_split: product check failed");
    if (gcd(f, g) != 1)
        throw std::logic_error("aurifeuillian_split: factors not coprime");
    return {f, g};
}

}  // namespace twosq
