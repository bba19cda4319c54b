#pragma once

// Independent reference computations used to freeze expected values.

#include "onrefl/forms.hpp"
#include "onrefl/reduce.hpp"

#include <map>
#include <queue>
#include <set>
#include <vector>

namespace oracle {

using namespace onrefl;

// determinant by cofactor expansion
inline Rational det(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

// Disc(f) = -Res(f, f') / a for f = a x^3 + b x^2 + c x + d, a != 0
inline Rational disc_by_resultant(i64 a, i64 b, i64 c, i64 d) {
    const Rational A = a, B = b, C = c, D = d;
    std::vector<std::vector<Rational>> s = {
        {A, B, C, D, 0},
        {0, A, B, C, D},
        {3 * A, 2 * B, C, 0, 0},
        {0, 3 * A, 2 * B, C, 0},
        {0, 0, 3 * A, 2 * B, C},
    };
    return -det(s) / A;
}

inline Integer eval(const BinaryCubicForm& f, const Integer& x, const Integer& y) {
    return f.a * x * x * x + f.b * x * x * y + f.c * x * y * y + f.d * y * y * y;
}

inline bool action_matches_evaluation(const UnimodularMatrix& g, const BinaryCubicForm& f, const BinaryCubicForm& h) {
    for (int x = -3; x <= 3; ++x)
        for (int y = -3; y <= 3; ++y) {
            const Integer X = g.a11 * x + g.a21 * y, Y = g.a12 * x + g.a22 * y;
            if (eval(h, x, y) * g.det() != eval(f, X, Y)) return false;
        }
    return true;
}

inline i64 md(i64 x, i64 m) { return ((x % m) + m) % m; }

inline i64 eval_mod(i64 a, i64 b, i64 c, i64 d, i64 x, i64 y, i64 m) {
    return md(md(a * x * x * x, m) + md(b * x * x * y, m) + md(c * x * y * y, m) + md(d * y * y * y, m), m);
}

// distinct roots on P^1(F_p) by evaluation, repeated factors via the discriminant
inline SplittingType splitting_type_by_roots(i64 a, i64 b, i64 c, i64 d, i64 p) {
    if (md(a, p) == 0 && md(b, p) == 0 && md(c, p) == 0 && md(d, p) == 0) return SplittingType::S0;
    int roots = eval_mod(a, b, c, d, 1, 0, p) == 0;
    for (i64 x = 0; x < p; ++x) roots += eval_mod(a, b, c, d, x, 1, p) == 0;
    const bool repeated = md(static_cast<i64>(disc_cubic({a, b, c, d}) % p), p) == 0;
    if (roots == 0) return SplittingType::S3;
    if (roots == 1) return repeated ? SplittingType::S1_3 : SplittingType::S12;
    if (roots == 2) return SplittingType::S1_2_1;
    return SplittingType::S111;
}

inline i64 euler_phi(i64 n) {
    i64 r = n;
    for (i64 p : prime_divisors64(n)) r = r / p * (p - 1);
    return r;
}

// points of P^1(Z/N) counted through primitive pairs modulo unit scaling
template <class Accept>
i64 projective_count(i64 N, Accept accept) {
    i64 pairs = 0;
    for (i64 x = 0; x < N; ++x)
        for (i64 y = 0; y < N; ++y) {
            if (gcd64(gcd64(x, y), N) != 1) continue;
            pairs += accept(x, y);
        }
    return pairs / euler_phi(N);
}

inline i64 projective_root_count(i64 a, i64 b, i64 c, i64 d, i64 N) {
    return projective_count(N, [&](i64 x, i64 y) { return eval_mod(a, b, c, d, x, y, N) == 0; });
}

inline i64 simple_projective_root_count(i64 a, i64 b, i64 c, i64 d, i64 N) {
    return projective_count(N, [&](i64 x, i64 y) {
        if (eval_mod(a, b, c, d, x, y, N) != 0) return false;
        for (i64 p : prime_divisors64(N)) {
            const i64 fx = md(3 * a * x * x + 2 * b * x * y + c * y * y, p);
            const i64 fy = md(b * x * x + 2 * c * x * y + 3 * d * y * y, p);
            if (fx == 0 && fy == 0) return false;
        }
        return true;
    });
}

inline const std::vector<reduce::Mat>& generators() {
    static const std::vector<reduce::Mat> g = {
        {0, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}, {-1, 0, 0, 1}, {1, -1, 0, 1}, {1, 0, -1, 1}};
    return g;
}

// matrices reachable from the identity through generators with entries bounded by cap
inline const std::vector<reduce::Mat>& bounded_group(i64 cap) {
    static std::map<i64, std::vector<reduce::Mat>> memo;
    auto it = memo.find(cap);
    if (it != memo.end()) return it->second;
    std::set<reduce::Mat> seen{{1, 0, 0, 1}};
    std::queue<reduce::Mat> q;
    q.push({1, 0, 0, 1});
    while (!q.empty()) {
        const auto m = q.front();
        q.pop();
        for (const auto& g : generators()) {
            const auto n = g * m;
            if (std::abs(n.a11) > cap || std::abs(n.a12) > cap || std::abs(n.a21) > cap || std::abs(n.a22) > cap)
                continue;
            if (seen.insert(n).second) q.push(n);
        }
    }
    return memo[cap] = std::vector<reduce::Mat>(seen.begin(), seen.end());
}

inline int stabilizer_by_bfs(const BinaryCubicForm& f, i64 cap) {
    const reduce::Cubic64 g{to_i64(f.a), to_i64(f.b), to_i64(f.c), to_i64(f.d)};
    int n = 0;
    for (const auto& m : bounded_group(cap)) n += reduce::act(m, g) == g;
    return n;
}

struct OracleOrbit {
    reduce::Cubic64 least;
    int stabilizer;
};

// All forms of discriminant D in the box |coeff| <= box, grouped into orbits by
// breadth-first search over generator moves that keep coefficients within cap.
inline std::vector<OracleOrbit> orbits_by_box_bfs(i64 D, i64 box, i64 cap) {
    using C = reduce::Cubic64;
    std::set<C> boxed;
    for (i64 a = -box; a <= box; ++a)
        for (i64 b = -box; b <= box; ++b)
            for (i64 c = -box; c <= box; ++c)
                for (i64 d = -box; d <= box; ++d) {
                    const C f{a, b, c, d};
                    if (reduce::disc(f) == D) boxed.insert(f);
                }
    std::set<C> assigned;
    std::vector<OracleOrbit> out;
    for (const C& start : boxed) {
        if (assigned.count(start)) continue;
        std::set<C> seen{start};
        std::queue<C> q;
        q.push(start);
        C least = start;
        while (!q.empty()) {
            const C f = q.front();
            q.pop();
            if (boxed.count(f)) {
                assigned.insert(f);
                least = std::min(least, f);
            }
            for (const auto& g : generators()) {
                const C h = reduce::act(g, f);
                if (std::abs(h.a) > cap || std::abs(h.b) > cap || std::abs(h.c) > cap || std::abs(h.d) > cap) continue;
                if (seen.insert(h).second) q.push(h);
            }
        }
        out.push_back({least, stabilizer_by_bfs({least.a, least.b, least.c, least.d}, 40)});
    }
    return out;
}

// C + Z x/p for x ranging over C/pC; x/p is kept as p x over p^2
inline bool has_index_p_overring(const BinaryCubicForm& f, i64 p) {
    const CubicRingTable t = cubic_ring_of_form(f);
    const RingElement xi{0, 1, 0}, eta{0, 0, 1};
    for (i64 u0 = 0; u0 < p; ++u0)
        for (i64 u1 = 0; u1 < p; ++u1)
            for (i64 u2 = 0; u2 < p; ++u2) {
                if (u0 == 0 && u1 == 0 && u2 == 0) continue;
                const RingElement x{u0, u1, u2};
                // y / p^2 lies in C + Z x/p
                auto inside = [&](const RingElement& y) {
                    for (i64 k = 0; k < p; ++k) {
                        bool ok = true;
                        for (int i = 0; i < 3 && ok; ++i) ok = (y[i] - p * k * x[i]) % (p * p) == 0;
                        if (ok) return true;
                    }
                    return false;
                };
                auto times_p = [p](RingElement y) {
                    for (auto& v : y) v *= p;
                    return y;
                };
                if (inside(times_p(t.mul(x, xi))) && inside(times_p(t.mul(x, eta))) && inside(t.mul(x, x)))
                    return true;
            }
    return false;
}

// C + Z x/p + Z y/p with x, y independent modulo p
inline bool has_elementary_overring(const BinaryCubicForm& f, i64 p) {
    const CubicRingTable t = cubic_ring_of_form(f);
    const RingElement xi{0, 1, 0}, eta{0, 0, 1};
    std::vector<RingElement> vecs;
    for (i64 u0 = 0; u0 < p; ++u0)
        for (i64 u1 = 0; u1 < p; ++u1)
            for (i64 u2 = 0; u2 < p; ++u2)
                if (u0 || u1 || u2) vecs.push_back({u0, u1, u2});
    for (const auto& x : vecs)
        for (const auto& y : vecs) {
            // independence: some 2x2 minor is a unit
            const Integer m0 = x[0] * y[1] - x[1] * y[0], m1 = x[0] * y[2] - x[2] * y[0], m2 = x[1] * y[2] - x[2] * y[1];
            if (m0 % p == 0 && m1 % p == 0 && m2 % p == 0) continue;
            auto inside = [&](const RingElement& z) {
                for (i64 k = 0; k < p; ++k)
                    for (i64 l = 0; l < p; ++l) {
                        bool ok = true;
                        for (int i = 0; i < 3 && ok; ++i) ok = (z[i] - p * (k * x[i] + l * y[i])) % (p * p) == 0;
                        if (ok) return true;
                    }
                return false;
            };
            auto times_p = [p](RingElement z) {
                for (auto& v : z) v *= p;
                return z;
            };
            if (inside(times_p(t.mul(x, xi))) && inside(times_p(t.mul(x, eta))) && inside(times_p(t.mul(y, xi))) &&
                inside(times_p(t.mul(y, eta))) && inside(t.mul(x, x)) && inside(t.mul(x, y)) && inside(t.mul(y, y)))
                return true;
        }
    return false;
}

}  // namespace oracle
