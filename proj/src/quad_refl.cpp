#include "onrefl/quad_refl.hpp"

#include <algorithm>
#include <stdexcept>

namespace onrefl {

namespace {

i64 floor_div(i64 x, i64 y) {
    i64 q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
}

// x mod p^k with x^2 = D, D reduced into any range
i64 sqrt_count_prime_power(i64 p, int k, i64 D) {
    const i64 pk = ipow64(p, k);
    D %= pk;
    if (D < 0) D += pk;
    if (D == 0) return ipow64(p, k / 2);
    const int v = valuation64(D, p);
    if (v % 2) return 0;
    const i64 u = D / ipow64(p, v);
    const int m = k - v;
    i64 unit_roots;
    if (p == 2) {
        if (m == 1) unit_roots = 1;
        else if (m == 2) unit_roots = (u % 4 == 1) ? 2 : 0;
        else unit_roots = (u % 8 == 1) ? 4 : 0;
    } else {
        unit_roots = 1 + legendre(u, p);
    }
    return unit_roots * ipow64(p, v / 2);
}

}  // namespace

i64 sqrt_count_mod(i64 m, i64 D) {
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    i64 r = 1;
    if (m == 1) return r;
    for (auto& [p, k] : factor64(m)) r *= sqrt_count_prime_power(p, k, D);
    return r;
}

std::vector<BinaryQuadraticForm> enumerate_superdisc(const Integer& n_big) {
    if (n_big == 0) throw std::invalid_argument("superdiscriminant must be nonzero");
    const i64 n = to_i64(n_big);
    std::vector<BinaryQuadraticForm> out;
    for (i64 d : divisors64(n)) {
        for (i64 a : {d, -d}) {
            const i64 D = n / a;
            const i64 A = a < 0 ? -a : a;
            for (i64 b = -A + 1; b <= A; ++b) {
                const i64 num = b * b - D;
                if (num % (4 * a) != 0) continue;
                out.push_back({a, b, num / (4 * a)});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BinaryQuadraticForm normalize_translation(const BinaryQuadraticForm& f) {
    if (f.a == 0) throw std::invalid_argument("leading coefficient must be nonzero");
    const Integer A = f.a < 0 ? Integer(-f.a) : f.a;
    // b + 2 a t in (-|a|, |a|]
    const Integer num = A - f.b, den = 2 * A;
    Integer t = num / den;
    if ((num % den != 0) && (num < 0)) t -= 1;
    return translate_quadratic(f, f.a > 0 ? t : Integer(-t));
}

SuperdiscCounts q_counts_enumerated(i64 n) {
    SuperdiscCounts c;
    for (const auto& f : enumerate_superdisc(n)) {
        ++c.q;
        const bool real = disc_quadratic(f) > 0;
        const bool even = f.b % 2 == 0;
        c.qplus += real;
        c.q2 += even;
        c.q2plus += real && even;
    }
    return c;
}

SuperdiscCounts q_counts(i64 n) {
    if (n == 0) throw std::invalid_argument("superdiscriminant must be nonzero");
    SuperdiscCounts c;
    for (i64 d : divisors64(n)) {
        for (i64 a : {d, -d}) {
            const i64 D = n / a;
            // b ranges over residues mod 2|a|; b^2 = D mod 4|a| is 2|a|-periodic
            const i64 all = sqrt_count_mod(4 * d, D) / 2;
            // even b = 2b' with b' mod |a| and b'^2 = D/4 mod |a|
            const i64 even = (floor_div(D, 4) * 4 == D) ? sqrt_count_mod(d, D / 4) : 0;
            c.q += all;
            c.q2 += even;
            if (D > 0) {
                c.qplus += all;
                c.q2plus += even;
            }
        }
    }
    return c;
}

VerificationRecord verify_quadratic_on(i64 n) {
    Stopwatch sw;
    const SuperdiscCounts c = q_counts(n), c4 = q_counts(4 * n);
    auto r = make_record("quad-on", "n=" + std::to_string(n), {Rational(c4.q2plus), Rational(c4.q2)},
                         {Rational(c.q), Rational(2 * c.qplus)});
    r.ms = sw.ms();
    return r;
}

VerificationRecord verify_legendre_identity(i64 p1, i64 p3) {
    if (!is_prime64(p1) || !is_prime64(p3) || p1 % 4 != 1 || p3 % 4 != 3)
        throw std::invalid_argument("need primes p1 = 1 mod 4 and p3 = 3 mod 4");
    Stopwatch sw;
    const SuperdiscCounts c = q_counts(p1 * p3), c4 = q_counts(4 * p1 * p3);
    auto r = make_record("legendre", "p1=" + std::to_string(p1) + ",p3=" + std::to_string(p3),
                         {Rational(c.qplus), Rational(c4.q2)},
                         {Rational(5 + legendre(p1, p3)), Rational(10 + 2 * legendre(p3, p1))});
    r.ms = sw.ms();
    return r;
}

}  // namespace onrefl
