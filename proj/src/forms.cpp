#include "onrefl/forms.hpp"

#include "onrefl/reduce.hpp"

#include <stdexcept>

namespace onrefl {

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
}

std::string to_string(SplittingType s) {
    switch (s) {
        case SplittingType::S111: return "111";
        case SplittingType::S12: return "12";
        case SplittingType::S3: return "3";
        case SplittingType::S1_2_1: return "1^21";
        case SplittingType::S1_3: return "1^3";
        case SplittingType::S0: return "0";
    }
    return "?";
}

Integer disc_quadratic(const BinaryQuadraticForm& f) { return f.b * f.b - 4 * f.a * f.c; }

Integer superdiscriminant(const BinaryQuadraticForm& f) { return f.a * disc_quadratic(f); }

Integer disc_cubic(const BinaryCubicForm& f) {
    return reduce::disc(reduce::Cubic<Integer>{f.a, f.b, f.c, f.d});
}

BinaryCubicForm act_cubic(const UnimodularMatrix& g, const BinaryCubicForm& f) {
    if (!g.valid()) throw std::invalid_argument("matrix is not unimodular");
    const Integer &al = g.a11, &be = g.a12, &ga = g.a21, &de = g.a22;
    const Integer &a = f.a, &b = f.b, &c = f.c, &d = f.d;
    Integer A = a * al * al * al + b * al * al * be + c * al * be * be + d * be * be * be;
    Integer D = a * ga * ga * ga + b * ga * ga * de + c * ga * de * de + d * de * de * de;
    Integer B = 3 * a * al * al * ga + b * (al * al * de + 2 * al * be * ga) +
                c * (2 * al * be * de + be * be * ga) + 3 * d * be * be * de;
    Integer C = 3 * a * al * ga * ga + b * (2 * al * ga * de + be * ga * ga) +
                c * (al * de * de + 2 * be * ga * de) + 3 * d * be * de * de;
    if (g.det() == -1) return {-A, -B, -C, -D};
    return {A, B, C, D};
}

BinaryQuadraticForm translate_quadratic(const BinaryQuadraticForm& f, const Integer& t) {
    return {f.a, f.b + 2 * f.a * t, f.a * t * t + f.b * t + f.c};
}

BinaryQuadraticForm hessian(const BinaryCubicForm& f) {
    return {f.b * f.b - 3 * f.a * f.c, f.b * f.c - 9 * f.a * f.d, f.c * f.c - 3 * f.b * f.d};
}

BinaryQuadraticForm act_quadratic(const UnimodularMatrix& g, const BinaryQuadraticForm& h) {
    const Integer &al = g.a11, &be = g.a12, &ga = g.a21, &de = g.a22;
    return {h.a * al * al + h.b * al * be + h.c * be * be,
            2 * h.a * al * ga + h.b * (al * de + be * ga) + 2 * h.c * be * de,
            h.a * ga * ga + h.b * ga * de + h.c * de * de};
}

RingElement CubicRingTable::mul(const RingElement& u, const RingElement& v) const {
    RingElement r{u[0] * v[0], u[0] * v[1] + u[1] * v[0], u[0] * v[2] + u[2] * v[0]};
    auto add = [&r](const RingElement& w, const Integer& s) {
        for (int i = 0; i < 3; ++i) r[i] += s * w[i];
    };
    add(xi_xi, u[1] * v[1]);
    add(eta_eta, u[2] * v[2]);
    add(xi_eta, u[1] * v[2] + u[2] * v[1]);
    return r;
}

Integer CubicRingTable::trace(const RingElement& u) const {
    // trace of multiplication by u on the basis (1, xi, eta)
    Integer tr = 0;
    const RingElement basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i) tr += mul(u, basis[i])[i];
    return tr;
}

bool CubicRingTable::associative() const {
    const RingElement basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const auto& x : basis)
        for (const auto& y : basis)
            for (const auto& z : basis)
                if (mul(mul(x, y), z) != mul(x, mul(y, z))) return false;
    return true;
}

Integer CubicRingTable::discriminant() const {
    const RingElement basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Integer m[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = trace(mul(basis[i], basis[j]));
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

CubicRingTable cubic_ring_of_form(const BinaryCubicForm& f) {
    return {{-f.a * f.d, 0, 0}, {-f.a * f.c, f.b, -f.a}, {-f.b * f.d, f.d, -f.c}};
}

int trace_ideal_exponent_at_3(const BinaryCubicForm& f) {
    return (f.b % 3 == 0 && f.c % 3 == 0) ? 1 : 0;
}

Integer content(const BinaryCubicForm& f) {
    Integer g = gcd(gcd(f.a, f.b), gcd(f.c, f.d));
    return g < 0 ? Integer(-g) : g;
}

namespace {

i64 mod_p(const Integer& x, i64 p) {
    Integer r = x % p;
    if (r < 0) r += p;
    return static_cast<i64>(r);
}

// multiplicities of the roots of f mod p on P^1; empty when f vanishes mod p
// returns false for the zero form
bool root_multiplicities(const BinaryCubicForm& f, i64 p, std::vector<int>& mult) {
    i64 c[4] = {mod_p(f.a, p), mod_p(f.b, p), mod_p(f.c, p), mod_p(f.d, p)};
    if (!c[0] && !c[1] && !c[2] && !c[3]) return false;
    mult.clear();
    // [1:0] is a root of multiplicity = number of leading zero coefficients
    int inf = 0;
    while (inf < 3 && c[inf] == 0) ++inf;
    if (inf > 0) mult.push_back(inf);
    // finite part: polynomial a x^3 + b x^2 + c x + d, coefficients high to low
    std::vector<i64> poly(c + inf, c + 4);
    for (i64 r = 0; r < p && poly.size() > 1; ++r) {
        int m = 0;
        while (poly.size() > 1) {
            // synthetic division by (x - r)
            std::vector<i64> q(poly.size() - 1);
            i64 acc = 0;
            for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
                acc = (acc * r + poly[i]) % p;
                q[i] = acc;
            }
            const i64 rem = (acc * r + poly.back()) % p;
            if (rem != 0) break;
            poly = q;
            ++m;
        }
        if (m > 0) mult.push_back(m);
    }
    return true;
}

}  // namespace

SplittingType splitting_type(const BinaryCubicForm& f, i64 p) {
    std::vector<int> mult;
    if (!root_multiplicities(f, p, mult)) return SplittingType::S0;
    int total = 0, mx = 0;
    for (int m : mult) {
        total += m;
        mx = std::max(mx, m);
    }
    if (total == 0) return SplittingType::S3;
    if (total == 1) return SplittingType::S12;
    if (mx == 3) return SplittingType::S1_3;
    if (mx == 2) return SplittingType::S1_2_1;
    return SplittingType::S111;
}

i64 root_count_mod_p(const BinaryCubicForm& f, i64 p) {
    std::vector<int> mult;
    if (!root_multiplicities(f, p, mult)) return p + 1;
    return static_cast<i64>(mult.size());
}

i64 simple_root_count_mod_p(const BinaryCubicForm& f, i64 p) {
    std::vector<int> mult;
    if (!root_multiplicities(f, p, mult)) return 0;
    i64 n = 0;
    for (int m : mult) n += (m == 1);
    return n;
}

i64 simple_root_count_mod_N(const BinaryCubicForm& f, i64 N) {
    if (N < 1 || !is_squarefree64(N)) throw std::invalid_argument("N must be squarefree and positive");
    i64 r = 1;
    if (N == 1) return r;
    for (i64 p : prime_divisors64(N)) r *= simple_root_count_mod_p(f, p);
    return r;
}

i64 root_count_mod_N(const BinaryCubicForm& f, i64 N) {
    if (N < 1 || !is_squarefree64(N)) throw std::invalid_argument("N must be squarefree and positive");
    i64 r = 1;
    if (N == 1) return r;
    for (i64 p : prime_divisors64(N)) r *= root_count_mod_p(f, p);
    return r;
}

int stabilizer_order_cubic(const BinaryCubicForm& f) {
    if (disc_cubic(f) == 0) throw std::domain_error("degenerate cubic form");
    return reduce::canonicalize(reduce::Cubic<Integer>{f.a, f.b, f.c, f.d}).stabilizer;
}

}  // namespace onrefl
