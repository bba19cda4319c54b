#include "onrefl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace onrefl {

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
    const Integer n = boost::multiprecision::numerator(x);
    const Integer d = boost::multiprecision::denominator(x);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

i64 to_i64(const Integer& x) {
    static const Integer lo = std::numeric_limits<i64>::min();
    static const Integer hi = std::numeric_limits<i64>::max();
    if (x < lo || x > hi) throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
    return static_cast<i64>(x);
}

i64 gcd64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 isqrt64(i64 n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square64(i64 n, i64* root) {
    if (n < 0) return false;
    i64 r = isqrt64(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

bool is_prime64(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

i64 powmod64(i64 b, i64 e, i64 m) {
    i128 r = 1 % m, x = ((b % m) + m) % m;
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

i64 ipow64(i64 b, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

int valuation64(i64 n, i64 p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<std::pair<i64, int>> factor64(i64 n) {
    if (n == 0) throw std::domain_error("factor of zero");
    if (n < 0) n = -n;
    std::vector<std::pair<i64, int>> out;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree64(i64 n) {
    for (auto& [p, e] : factor64(n))
        if (e > 1) return false;
    return true;
}

std::vector<i64> prime_divisors64(i64 n) {
    std::vector<i64> out;
    for (auto& [p, e] : factor64(n)) out.push_back(p);
    return out;
}

std::vector<i64> divisors64(i64 n) {
    std::vector<i64> out{1};
    for (auto& [p, e] : factor64(n)) {
        const std::size_t m = out.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < m; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<i64> primes_below(i64 n) {
    std::vector<i64> out;
    for (i64 k = 2; k < n; ++k)
        if (is_prime64(k)) out.push_back(k);
    return out;
}

int legendre(i64 a, i64 p) {
    i64 r = powmod64(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

Rational rat(i64 num, i64 den) { return Rational(Integer(num), Integer(den)); }

}  // namespace onrefl
