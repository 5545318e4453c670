#pragma once

// Exact number-theoretic kernel: primality, quadratic symbols, modular and
// 2-adic square roots, two-squares decompositions, Pell units, polynomial
// roots mod p, and class numbers of imaginary quadratic orders.
//
// Everything below 2^64 runs on machine words with 128-bit intermediates;
// Pell units and downstream rational geometry use arbitrary precision.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "congruent/errors.hpp"

namespace congruent {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 mod) {
    if (mod == 1) return 0;
    u64 r = 1;
    base %= mod;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, mod);
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return r;
}

inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(u64 n) {
    u64 r = isqrt(n);
    return r * r == n;
}

// Deterministic Miller-Rabin; the 12 smallest primes as witnesses certify
// every n < 2^64.
inline bool is_prime(u64 n) {
    constexpr std::array<u64, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (u64 q : witnesses) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : witnesses) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<u64> primes_below(u64 limit) {
    std::vector<u64> out;
    if (limit < 3) return out;
    std::vector<bool> sieve(limit, true);
    for (u64 i = 2; i * i < limit; ++i) {
        if (!sieve[i]) continue;
        for (u64 j = i * i; j < limit; j += i) sieve[j] = false;
    }
    for (u64 i = 2; i < limit; ++i) {
        if (sieve[i]) out.push_back(i);
    }
    return out;
}

// A certified prime. Construction checks primality; trusted() skips the
// check for sieve output.
class PrimeP {
public:
    explicit PrimeP(u64 n) : value_(n) {
        if (!is_prime(n)) throw domain_error("PrimeP: " + std::to_string(n) + " is not prime");
    }

    static PrimeP trusted(u64 n) {
        PrimeP p;
        p.value_ = n;
        return p;
    }

    u64 value() const { return value_; }
    int residue_mod8() const { return static_cast<int>(value_ % 8); }
    bool odd() const { return (value_ & 1) != 0; }

private:
    PrimeP() = default;
    u64 value_ = 0;
};

// Jacobi symbol (a|n); equals the Legendre symbol for prime n.
inline int jacobi(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) throw domain_error("jacobi: modulus must be positive and odd");
    a %= n;
    if (a < 0) a += n;
    i64 m = n;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = m % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) t = -t;
        a %= m;
    }
    return m == 1 ? t : 0;
}

// Tonelli-Shanks. Returns the canonical smaller root s (s <= p - s);
// sqrt_mod(0) = 0; nonresidues raise no_root_error.
inline u64 sqrt_mod(i64 a, const PrimeP& p) {
    const u64 pv = p.value();
    if (!p.odd()) throw domain_error("sqrt_mod: p must be an odd prime");
    i64 am = a % static_cast<i64>(pv);
    if (am < 0) am += static_cast<i64>(pv);
    const u64 n = static_cast<u64>(am);
    if (n == 0) return 0;
    if (jacobi(static_cast<i64>(n), static_cast<i64>(pv)) != 1)
        throw no_root_error("sqrt_mod: " + std::to_string(a) + " is not a square mod " +
                            std::to_string(pv));

    u64 s;
    if (pv % 4 == 3) {
        s = powmod(n, (pv + 1) / 4, pv);
    } else {
        u64 q = pv - 1;
        int e = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++e;
        }
        u64 z = 2;
        while (jacobi(static_cast<i64>(z), static_cast<i64>(pv)) != -1) ++z;
        u64 c = powmod(z, q, pv);
        u64 x = powmod(n, (q + 1) / 2, pv);
        u64 t = powmod(n, q, pv);
        int m = e;
        while (t != 1) {
            u64 tt = t;
            int i = 0;
            while (tt != 1) {
                tt = mulmod(tt, tt, pv);
                ++i;
            }
            u64 b = c;
            for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, pv);
            x = mulmod(x, b, pv);
            c = mulmod(b, b, pv);
            t = mulmod(t, c, pv);
            m = i;
        }
        s = x;
    }
    return std::min(s, pv - s);
}

// p = a^2 + b^2 with a odd, b even, both positive. Unique for p = 1 mod 4.
struct TwoSquares {
    u64 a;  // odd
    u64 b;  // even; divisible by 4 when p = 1 mod 8
};

inline TwoSquares cornacchia(const PrimeP& p) {
    const u64 pv = p.value();
    if (pv % 4 != 1) throw domain_error("cornacchia: p must be 1 mod 4");
    u64 r0 = pv;
    u64 r1 = sqrt_mod(-1, p);
    while (r1 * r1 > pv) {
        u64 r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    const u64 x = r1;
    const u64 y2 = pv - x * x;
    const u64 y = isqrt(y2);
    if (y * y != y2)
        throw internal_inconsistency("cornacchia: descent failed for " + std::to_string(pv));
    TwoSquares ts{};
    if (x % 2 == 1) {
        ts.a = x;
        ts.b = y;
    } else {
        ts.a = y;
        ts.b = x;
    }
    return ts;
}

// Fundamental unit (t + u*sqrt(p))/d of Q(sqrt(p)), d in {1,2},
// norm = (t^2 - p u^2)/d^2 in {-1,+1}.
struct PellUnit {
    BigInt t;
    BigInt u;
    int d;
    int norm;
};

inline BigInt icbrt(const BigInt& n) {
    if (n <= 0) return 0;
    BigInt lo = 0, hi = BigInt(1) << (static_cast<unsigned>(boost::multiprecision::msb(n)) / 3 + 2);
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) / 2;
        if (mid * mid * mid <= n)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

inline PellUnit fundamental_unit(const PrimeP& p) {
    const u64 pv = p.value();
    if (!p.odd()) throw domain_error("fundamental_unit: p must be an odd prime");

    // Continued fraction of sqrt(p): fundamental solution of x^2 - p y^2 = +-1.
    const u64 a0 = isqrt(pv);
    u64 m = 0, d = 1, a = a0;
    BigInt h_prev = 1, h = a0;
    BigInt k_prev = 0, k = 1;
    u64 period = 0;
    while (true) {
        m = d * a - m;
        d = (pv - m * m) / d;
        ++period;
        if (d == 1) break;
        a = (a0 + m) / d;
        BigInt h_next = BigInt(a) * h + h_prev;
        BigInt k_next = BigInt(a) * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    const int norm = (period % 2 == 1) ? -1 : 1;
    if (h * h - BigInt(pv) * k * k != norm)
        throw internal_inconsistency("fundamental_unit: Pell recurrence broke for " +
                                     std::to_string(pv));

    // Half-integer refinement: the unit index [O_K^* : Z[sqrt(p)]^*] is 1 or 3.
    // A half-integer cube root (t + u sqrt(p))/2 of h + k sqrt(p) satisfies
    // t^3 - 3*norm*t = 2h with u^2 = (t^2 - 4*norm)/p.
    if (pv % 4 == 1) {
        const BigInt target = 2 * h;
        const BigInt t0 = icbrt(target);
        for (BigInt t = t0 - 2; t <= t0 + 2; ++t) {
            if (t <= 0) continue;
            if (t * t * t - 3 * norm * t != target) continue;
            BigInt u2 = t * t - 4 * norm;
            if (u2 % pv != 0) continue;
            u2 /= pv;
            const BigInt u = boost::multiprecision::sqrt(u2);
            if (u * u != u2) continue;
            if (t % 2 == 0) continue;
            return PellUnit{t, u, 2, norm};
        }
    }
    return PellUnit{h, k, 1, norm};
}

// Truncation mod 2^k of the 2-adic square root of a that is = 1 mod 4.
// Pinned down by demanding s^2 = a mod 2^(k+1): that one extra bit rejects
// the shadow root s + 2^(k-1).
inline u64 two_adic_sqrt(i64 a, int k) {
    if (k < 3 || k > 60) throw domain_error("two_adic_sqrt: precision must be in [3, 60]");
    const u128 mod_hi = static_cast<u128>(1) << (k + 1);
    i64 ar = a % static_cast<i64>(mod_hi);
    if (ar < 0) ar += static_cast<i64>(mod_hi);
    const u128 aa = static_cast<u128>(ar);
    if (aa % 8 != 1)
        throw no_root_error("two_adic_sqrt: " + std::to_string(a) + " is not 1 mod 8");
    u128 s = 1;
    for (int j = 3; j <= k; ++j) {
        const u128 mod_j = static_cast<u128>(1) << (j + 1);
        if ((s * s - aa) % mod_j != 0) s += static_cast<u128>(1) << (j - 1);
    }
    return static_cast<u64>(s);
}

// ---- polynomial roots over F_p ----------------------------------------
//
// Coefficients ascending (coeffs[i] multiplies x^i). Distinct roots via
// gcd with the Frobenius polynomial x^p - x, then quadratic-character
// splitting; each root is verified by evaluation.

namespace detail {

using Poly = std::vector<u64>;  // ascending, trimmed, over F_p

inline void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline u64 poly_eval(const Poly& f, u64 x, u64 p) {
    u64 v = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) v = (mulmod(v, x, p) + *it) % p;
    return v;
}

inline Poly poly_rem(Poly f, const Poly& g, u64 p) {
    // g monic
    poly_trim(f);
    while (f.size() >= g.size() && !f.empty()) {
        const u64 c = f.back();
        const std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i) {
            u64 sub = mulmod(c, g[i], p);
            f[i + shift] = (f[i + shift] + p - sub) % p;
        }
        poly_trim(f);
    }
    return f;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    return poly_rem(std::move(c), g, p);
}

inline Poly poly_powmod(Poly base, u64 exp, const Poly& g, u64 p) {
    Poly r{1};
    base = poly_rem(std::move(base), g, p);
    while (exp) {
        if (exp & 1) r = poly_mulmod(r, base, g, p);
        base = poly_mulmod(base, base, g, p);
        exp >>= 1;
    }
    return r;
}

inline void poly_make_monic(Poly& f, u64 p) {
    if (f.empty() || f.back() == 1) return;
    const u64 inv = powmod(f.back(), p - 2, p);
    for (auto& c : f) c = mulmod(c, inv, p);
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        poly_make_monic(b, p);
        Poly r = poly_rem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    poly_make_monic(a, p);
    return a;
}

// g is monic and splits into distinct linear factors; collect its roots.
inline void split_roots(Poly g, u64 p, std::vector<u64>& out) {
    poly_trim(g);
    while (g.size() > 1) {
        if (g.size() == 2) {
            out.push_back((p - g[0]) % p);
            return;
        }
        if (g.size() == 3) {
            // x^2 + Bx + C, distinct roots
            const u64 B = g[1], C = g[0];
            const u64 disc = (mulmod(B, B, p) + p - mulmod(4 % p, C, p)) % p;
            const u64 r = sqrt_mod(static_cast<i64>(disc), PrimeP::trusted(p));
            const u64 inv2 = powmod(2, p - 2, p);
            out.push_back(mulmod((r + p - B) % p, inv2, p));
            out.push_back(mulmod((p - r + p - B) % p, inv2, p));
            return;
        }
        // quadratic-character split with deterministic shifts
        for (u64 c = 0;; ++c) {
            const Poly lin{c % p, 1};
            Poly w = poly_powmod(lin, (p - 1) / 2, g, p);
            // try gcd(g, w - 1), gcd(g, w + 1), gcd(g, x + c)
            Poly w1 = w;
            if (w1.empty()) w1 = {p - 1};
            else w1[0] = (w1[0] + p - 1) % p;
            poly_trim(w1);
            Poly h = poly_gcd(g, w1, p);
            if (h.size() <= 1 || h.size() >= g.size()) {
                Poly w2 = w;
                if (w2.empty()) w2 = {1};
                else w2[0] = (w2[0] + 1) % p;
                poly_trim(w2);
                h = poly_gcd(g, w2, p);
            }
            if (h.size() <= 1 || h.size() >= g.size()) h = poly_gcd(g, lin, p);
            if (h.size() > 1 && h.size() < g.size()) {
                Poly q = g;
                // q = g / h by repeated subtraction: use poly_rem on reversed logic
                // simple long division quotient
                Poly quot(g.size() - h.size() + 1, 0);
                Poly rem = g;
                while (rem.size() >= h.size() && !rem.empty()) {
                    const u64 lead = rem.back();
                    const std::size_t shift = rem.size() - h.size();
                    quot[shift] = lead;
                    for (std::size_t i = 0; i < h.size(); ++i) {
                        u64 sub = mulmod(lead, h[i], p);
                        rem[i + shift] = (rem[i + shift] + p - sub) % p;
                    }
                    poly_trim(rem);
                }
                split_roots(h, p, out);
                poly_trim(quot);
                g = std::move(quot);
                break;
            }
        }
    }
}

}  // namespace detail

// All roots of poly (ascending integer coefficients) in F_p, sorted.
inline std::vector<u64> roots_mod_p(const std::vector<i64>& coeffs, const PrimeP& p) {
    const u64 pv = p.value();
    if (!p.odd()) throw domain_error("roots_mod_p: p must be an odd prime");

    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == 0) --deg;
    if (deg == 0) throw domain_error("roots_mod_p: zero polynomial");
    if (coeffs[deg - 1] % static_cast<i64>(pv) == 0)
        throw domain_error("roots_mod_p: p divides the leading coefficient");

    detail::Poly f(deg);
    for (std::size_t i = 0; i < deg; ++i) {
        i64 c = coeffs[i] % static_cast<i64>(pv);
        if (c < 0) c += static_cast<i64>(pv);
        f[i] = static_cast<u64>(c);
    }
    detail::poly_trim(f);

    std::vector<u64> roots;
    if (f.size() <= 1) return roots;

    // factor out x
    std::size_t zeros = 0;
    while (zeros < f.size() && f[zeros] == 0) ++zeros;
    if (zeros > 0) {
        roots.push_back(0);
        f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(zeros));
    }

    if (f.size() > 1) {
        detail::poly_make_monic(f, pv);
        detail::Poly xp = detail::poly_powmod({0, 1}, pv, f, pv);
        // xp - x
        if (xp.size() < 2) xp.resize(2, 0);
        xp[1] = (xp[1] + pv - 1) % pv;
        detail::poly_trim(xp);
        detail::Poly g = detail::poly_gcd(f, xp, pv);
        if (g.size() > 1) detail::split_roots(g, pv, roots);
    }

    std::sort(roots.begin(), roots.end());
    for (u64 r : roots) {
        detail::Poly check(deg);
        for (std::size_t i = 0; i < deg; ++i) {
            i64 c = coeffs[i] % static_cast<i64>(pv);
            if (c < 0) c += static_cast<i64>(pv);
            check[i] = static_cast<u64>(c);
        }
        if (detail::poly_eval(check, r, pv) != 0)
            throw internal_inconsistency("roots_mod_p: bogus root survived splitting");
    }
    return roots;
}

// Class number h(D) for D < 0, D = 0 or 1 mod 4: count of reduced primitive
// forms (a,b,c), b^2 - 4ac = D, |b| <= a <= c, b >= 0 when |b| = a or a = c.
inline u64 class_number_disc(i64 D) {
    if (D >= 0) throw domain_error("class_number_disc: discriminant must be negative");
    const i64 r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) throw domain_error("class_number_disc: D must be 0 or 1 mod 4");

    u64 h = 0;
    for (i64 b = (r == 0) ? 0 : 1; 3 * b * b <= -D; b += 2) {
        const i64 m4 = b * b - D;
        const i64 m = m4 / 4;
        for (i64 a = std::max<i64>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) continue;
            const i64 c = m / a;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            h += (b == 0 || b == a || a == c) ? 1 : 2;
        }
    }
    return h;
}

}  // namespace arith
}  // namespace congruent
