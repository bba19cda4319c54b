#include "onrefl/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>

namespace onrefl {

namespace {

using Poly = std::vector<Integer>;

Poly poly_divide_exact(Poly num, const Poly& den) {
    // den monic
    const std::size_t dn = den.size() - 1;
    Poly q(num.size() - dn, 0);
    for (std::size_t k = num.size(); k-- > dn;) {
        const Integer c = num[k];
        q[k - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
    }
    return q;
}

int euler_phi(int N) {
    int r = N;
    for (auto& [p, k] : factor64(N)) r = r / static_cast<int>(p) * static_cast<int>(p - 1);
    return r;
}

// remainder of a polynomial with rational coefficients modulo Phi_N
std::vector<Rational> reduce_mod_phi(int N, std::vector<Rational> c) {
    const Poly& phi = cyclotomic_polynomial(N);
    const std::size_t d = phi.size() - 1;
    for (std::size_t k = c.size(); k-- > d;) {
        const Rational lead = c[k];
        if (lead == 0) continue;
        for (std::size_t j = 0; j <= d; ++j) c[k - d + j] -= lead * Rational(phi[j]);
    }
    c.resize(d, Rational(0));
    return c;
}

i64 mod_pos(i64 x, i64 m) {
    x %= m;
    return x < 0 ? x + m : x;
}

// unit part of an Integer at p and its valuation
std::pair<int, Integer> split_p(Integer n, i64 p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return {v, n};
}

int odd_legendre(const Integer& u, i64 p) {
    Integer r = u % p;
    if (r < 0) r += p;
    return legendre(static_cast<i64>(r), p);
}

i64 residue(const Integer& u, i64 m) {
    Integer r = u % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(int N) {
    static std::mutex mu;
    static std::map<int, Poly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    if (N < 1) throw std::invalid_argument("cyclotomic order must be positive");
    Poly p(N + 1, 0);
    p[0] = -1;
    p[N] = 1;
    for (i64 d : divisors64(N)) {
        if (d == N) continue;
        auto jt = cache.find(static_cast<int>(d));
        Poly phid;
        if (jt != cache.end()) {
            phid = jt->second;
        } else {
            // divisors come in increasing order, so smaller factors are cached
            Poly pd(d + 1, 0);
            pd[0] = -1;
            pd[d] = 1;
            for (i64 dd : divisors64(d)) {
                if (dd == d) continue;
                pd = poly_divide_exact(pd, cache.at(static_cast<int>(dd)));
            }
            cache[static_cast<int>(d)] = pd;
            phid = pd;
        }
        p = poly_divide_exact(p, phid);
    }
    return cache[N] = p;
}

Cyclotomic::Cyclotomic(int N, const Rational& c) : N_(N), c_(euler_phi(N), Rational(0)) {
    cyclotomic_polynomial(N);
    c_[0] = c;
}

Cyclotomic Cyclotomic::from_powers(int N, const std::vector<Rational>& powers) {
    Cyclotomic r(N);
    r.c_ = reduce_mod_phi(N, powers);
    return r;
}

Cyclotomic Cyclotomic::zeta_power(int N, i64 k) {
    std::vector<Rational> v(N, Rational(0));
    v[mod_pos(k, N)] = 1;
    return from_powers(N, v);
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    if (N_ != o.N_) throw std::invalid_argument("cyclotomic orders differ");
    Cyclotomic r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + o * Rational(-1); }

Cyclotomic Cyclotomic::operator*(const Rational& s) const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (N_ != o.N_) throw std::invalid_argument("cyclotomic orders differ");
    std::vector<Rational> prod(c_.size() + o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    Cyclotomic r(N_);
    r.c_ = reduce_mod_phi(N_, prod);
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const { return N_ == o.N_ && c_ == o.c_; }

std::string Cyclotomic::str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += "+";
        s += to_string(c_[i]);
        if (i) s += "*z" + std::to_string(N_) + "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

int hilbert_symbol(const Rational& a, const Rational& b, i64 p) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    if (!is_prime64(p)) throw std::invalid_argument("hilbert symbol needs a prime or 0");
    auto [va1, ua1] = split_p(numerator(a), p);
    auto [va2, ua2] = split_p(denominator(a), p);
    auto [vb1, ub1] = split_p(numerator(b), p);
    auto [vb2, ub2] = split_p(denominator(b), p);
    // a = p^alpha u with u = ua1 * ua2 up to squares
    const int alpha = va1 - va2, beta = vb1 - vb2;
    const Integer u = ua1 * ua2, v = ub1 * ub2;
    if (p != 2) {
        int s = 1;
        if ((alpha & 1) && (beta & 1) && p % 4 == 3) s = -s;
        if (beta & 1) s *= odd_legendre(u, p);
        if (alpha & 1) s *= odd_legendre(v, p);
        return s;
    }
    const i64 u8 = residue(u, 8), v8 = residue(v, 8);
    auto eps = [](i64 x) { return ((x - 1) / 2) & 1; };
    auto omega = [](i64 x) { return ((x * x - 1) / 8) & 1; };
    const i64 ex = eps(u8) * eps(v8) + (alpha & 1) * omega(v8) + (beta & 1) * omega(u8);
    return (ex & 1) ? -1 : 1;
}

std::size_t FiniteGroup::size() const {
    std::size_t n = 1;
    for (int o : orders) n *= static_cast<std::size_t>(o);
    return n;
}

std::vector<int> FiniteGroup::element(std::size_t index) const {
    std::vector<int> x(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
        x[i] = static_cast<int>(index % orders[i]);
        index /= orders[i];
    }
    return x;
}

std::size_t FiniteGroup::index(const std::vector<int>& x) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) n = n * orders[i] + static_cast<std::size_t>(mod_pos(x[i], orders[i]));
    return n;
}

std::size_t FiniteGroup::add(std::size_t x, std::size_t y) const {
    auto a = element(x), b = element(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return index(a);
}

std::size_t FiniteGroup::neg(std::size_t x) const {
    auto a = element(x);
    for (auto& c : a) c = -c;
    return index(a);
}

std::vector<std::size_t> H1Model::level_space(int i) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < G.size(); ++x)
        if (level[x] >= i) out.push_back(x);
    return out;
}

std::vector<std::size_t> H1Model::level_space_dual(int i) const {
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < Gdual.size(); ++y)
        if (level_dual[y] >= i) out.push_back(y);
    return out;
}

bool H1Model::perfect() const {
    const std::size_t n = G.size(), m = Gdual.size();
    if (n != m) return false;
    for (std::size_t x = 1; x < n; ++x) {
        bool hit = false;
        for (std::size_t y = 0; y < m && !hit; ++y) hit = pair(x, y) != 0;
        if (!hit) return false;
    }
    for (std::size_t y = 1; y < m; ++y) {
        bool hit = false;
        for (std::size_t x = 0; x < n && !hit; ++x) hit = pair(x, y) != 0;
        if (!hit) return false;
    }
    return true;
}

H1Model H1Model::dual() const {
    H1Model d;
    d.name = name + "'";
    d.q = q;
    d.e = e;
    d.h0 = h0dual;
    d.h0dual = h0;
    d.N = N;
    d.G = Gdual;
    d.Gdual = G;
    d.level = level_dual;
    d.level_dual = level;
    d.rep = rep;
    d.pairing.resize(pairing.size());
    for (std::size_t x = 0; x < G.size(); ++x)
        for (std::size_t y = 0; y < Gdual.size(); ++y) d.pairing[y * G.size() + x] = pair(x, y);
    return d;
}

H1Model build_square_class_model(i64 p) {
    if (!is_prime64(p)) throw std::invalid_argument("square-class model needs a prime");
    H1Model m;
    m.name = "squares(p=" + std::to_string(p) + ")";
    m.q = p;
    m.e = p == 2 ? 1 : 0;
    m.h0 = m.h0dual = 2;
    m.N = 2;
    if (p == 2) {
        // (sign, power of 5, power of 2)
        m.G.orders = {2, 2, 2};
    } else {
        // (nonresidue, power of p)
        m.G.orders = {2, 2};
    }
    i64 u = 2;
    if (p != 2)
        while (legendre(u, p) != -1) ++u;
    const std::size_t n = m.G.size();
    m.rep.resize(n);
    m.level.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto c = m.G.element(x);
        Rational r = 1;
        if (p == 2) {
            if (c[0]) r *= -1;
            if (c[1]) r *= 5;
            if (c[2]) r *= 2;
            m.level[x] = c[2] ? -1 : c[0] ? 0 : c[1] ? 1 : 2;
        } else {
            if (c[0]) r *= u;
            if (c[1]) r *= p;
            m.level[x] = c[1] ? -1 : c[0] ? 0 : 1;
        }
        m.rep[x] = r;
    }
    m.Gdual = m.G;
    m.level_dual = m.level;
    m.pairing.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) m.pairing[x * n + y] = hilbert_symbol(m.rep[x], m.rep[y], p) == -1 ? 1 : 0;
    return m;
}

H1Model build_generic_model(i64 p, int f, int e, int h0, int h0dual) {
    if (!is_prime64(p) || f < 1 || e < 0 || h0 < 1 || h0dual < 1)
        throw std::invalid_argument("bad generic model parameters");
    H1Model m;
    m.q = ipow64(p, f);
    m.e = e;
    m.h0 = h0;
    m.h0dual = h0dual;
    m.name = "model(q=" + std::to_string(m.q) + ",e=" + std::to_string(e) + ",h0=" + std::to_string(h0) +
             ",h0'=" + std::to_string(h0dual) + ")";
    const int fe = f * e;
    int N = std::lcm(h0, h0dual);
    if (fe > 0) N = std::lcm(N, static_cast<int>(p));
    m.N = N;
    // G = (b, v_0 .. v_{fe-1}, a), G' = (a', v'_0 .. v'_{fe-1}, b')
    m.G.orders.push_back(h0dual);
    for (int i = 0; i < fe; ++i) m.G.orders.push_back(static_cast<int>(p));
    m.G.orders.push_back(h0);
    m.Gdual.orders.push_back(h0);
    for (int i = 0; i < fe; ++i) m.Gdual.orders.push_back(static_cast<int>(p));
    m.Gdual.orders.push_back(h0dual);

    auto level_of = [&](const std::vector<int>& x) {
        // the identity has level e + 1 whether or not L_e is already trivial
        if (x[0] != 0) return -1;
        for (int k = 0; k < e; ++k)
            for (int j = 0; j < f; ++j)
                if (x[1 + k * f + j] != 0) return k;
        if (x.back() != 0) return e;
        return e + 1;
    };
    const std::size_t n = m.G.size(), nd = m.Gdual.size();
    m.level.resize(n);
    m.level_dual.resize(nd);
    for (std::size_t x = 0; x < n; ++x) m.level[x] = level_of(m.G.element(x));
    for (std::size_t y = 0; y < nd; ++y) m.level_dual[y] = level_of(m.Gdual.element(y));
    m.pairing.resize(n * nd);
    for (std::size_t x = 0; x < n; ++x) {
        const auto a = m.G.element(x);
        for (std::size_t y = 0; y < nd; ++y) {
            const auto b = m.Gdual.element(y);
            i64 s = static_cast<i64>(N / h0dual) * a[0] * b.back() + static_cast<i64>(N / h0) * a.back() * b[0];
            if (fe > 0) {
                i64 dot = 0;
                for (int k = 0; k < e; ++k)
                    for (int j = 0; j < f; ++j) dot += a[1 + k * f + j] * b[1 + (e - 1 - k) * f + j];
                s += static_cast<i64>(N / p) * dot;
            }
            m.pairing[x * nd + y] = static_cast<int>(mod_pos(s, N));
        }
    }
    return m;
}

TameCubicModels build_tame_cubic_model(i64 p, bool Dsquare, bool minus3Dsquare) {
    if (!is_prime64(p) || p == 3) throw std::invalid_argument("tame cubic model needs a prime other than 3");
    const bool m3square = p != 2 && legendre(p - 3, p) == 1;
    if (m3square && Dsquare != minus3Dsquare)
        throw std::invalid_argument("-3 is a square here, so D and -3D have the same class");
    if (!m3square && Dsquare && minus3Dsquare)
        throw std::invalid_argument("D and -3D cannot both be squares when -3 is not");
    if (Dsquare && minus3Dsquare) {
        // H^1 = F_3^2 with an alternating pairing; coordinates (ramified, unramified)
        H1Model m;
        m.name = "tame(p=" + std::to_string(p) + ",9)";
        m.q = p;
        m.e = 0;
        m.h0 = m.h0dual = 3;
        m.N = 3;
        m.G.orders = {3, 3};
        m.Gdual = m.G;
        m.level.resize(9);
        m.pairing.resize(81);
        for (std::size_t x = 0; x < 9; ++x) {
            const auto a = m.G.element(x);
            m.level[x] = a[0] ? -1 : a[1] ? 0 : 1;
            for (std::size_t y = 0; y < 9; ++y) {
                const auto b = m.G.element(y);
                m.pairing[x * 9 + y] = static_cast<int>(mod_pos(a[0] * b[1] - a[1] * b[0], 3));
            }
        }
        m.level_dual = m.level;
        return {m, m.dual()};
    }
    H1Model m = build_generic_model(p, 1, 0, Dsquare ? 3 : 1, minus3Dsquare ? 3 : 1);
    m.name = "tame(p=" + std::to_string(p) + "," + (Dsquare ? "D" : "-") + (minus3Dsquare ? "-3D" : "-") + ")";
    return {m, m.dual()};
}

GroupFunction rational_function(const H1Model& m, const std::vector<Rational>& values) {
    GroupFunction f;
    f.reserve(values.size());
    for (const auto& v : values) f.emplace_back(m.N, v);
    return f;
}

GroupFunction indicator(const H1Model& m, const std::vector<std::size_t>& subset) {
    GroupFunction f(m.G.size(), Cyclotomic(m.N));
    for (auto x : subset) f[x] = Cyclotomic(m.N, 1);
    return f;
}

namespace {

GroupFunction transform_impl(const GroupFunction& f, std::size_t n, std::size_t nd, int N, int scale,
                             const std::function<int(std::size_t, std::size_t)>& pair) {
    // nonzero coefficients over a common denominator
    struct Term {
        std::size_t x;
        int j;
        Integer num;
    };
    std::vector<Term> terms;
    Integer den = 1;
    for (std::size_t x = 0; x < n; ++x) {
        const auto& c = f[x].coeffs();
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) den = boost::multiprecision::lcm(den, denominator(c[j]));
    }
    bool small = true;
    for (std::size_t x = 0; x < n; ++x) {
        const auto& c = f[x].coeffs();
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] == 0) continue;
            Integer v = numerator(c[j]) * (den / denominator(c[j]));
            if (boost::multiprecision::abs(v) > Integer(1) << 60) small = false;
            terms.push_back({x, static_cast<int>(j), v});
        }
    }
    std::vector<i64> small_num;
    if (small)
        for (const auto& t : terms) small_num.push_back(static_cast<i64>(t.num));
    GroupFunction out(nd, Cyclotomic(N));
    const Rational inv = Rational(1) / (Integer(scale) * den);
    for (std::size_t y = 0; y < nd; ++y) {
        std::vector<Rational> acc(N, Rational(0));
        if (small) {
            std::vector<i128> a(N, 0);
            for (std::size_t t = 0; t < terms.size(); ++t)
                a[(terms[t].j + pair(terms[t].x, y)) % N] += small_num[t];
            for (int k = 0; k < N; ++k) {
                const bool neg = a[k] < 0;
                unsigned __int128 u = neg ? -static_cast<unsigned __int128>(a[k]) : static_cast<unsigned __int128>(a[k]);
                Integer v = static_cast<std::uint64_t>(u >> 64);
                v <<= 64;
                v += static_cast<std::uint64_t>(u);
                acc[k] = neg ? Rational(-v) : Rational(v);
            }
        } else {
            std::vector<Integer> a(N, 0);
            for (const auto& t : terms) a[(t.j + pair(t.x, y)) % N] += t.num;
            for (int k = 0; k < N; ++k) acc[k] = a[k];
        }
        out[y] = Cyclotomic::from_powers(N, acc) * inv;
    }
    return out;
}

}  // namespace

GroupFunction fourier_transform(const GroupFunction& f, const H1Model& m) {
    if (f.size() != m.G.size()) throw std::invalid_argument("function size does not match the model");
    return transform_impl(f, m.G.size(), m.Gdual.size(), m.N, m.h0,
                          [&](std::size_t x, std::size_t y) { return m.pair(x, y); });
}

GroupFunction fourier_transform_dual(const GroupFunction& f, const H1Model& m) {
    if (f.size() != m.Gdual.size()) throw std::invalid_argument("function size does not match the dual model");
    return transform_impl(f, m.Gdual.size(), m.G.size(), m.N, m.h0dual,
                          [&](std::size_t y, std::size_t x) { return m.pair(x, y); });
}

std::vector<std::size_t> generated_subgroup(const FiniteGroup& G, const std::vector<std::size_t>& gens) {
    std::vector<char> in(G.size(), 0);
    std::vector<std::size_t> members{0};
    in[0] = 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (auto g : gens) {
            const std::size_t z = G.add(members[i], g);
            if (!in[z]) {
                in[z] = 1;
                members.push_back(z);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

std::vector<std::size_t> annihilator(const H1Model& m, const std::vector<std::size_t>& S) {
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < m.Gdual.size(); ++y) {
        bool ok = true;
        for (auto x : S)
            if (m.pair(x, y) != 0) {
                ok = false;
                break;
            }
        if (ok) out.push_back(y);
    }
    return out;
}

LevelVector::LevelVector(const LevelParams& P) : P_(P), c_(P.e + 3, Rational(0)) {}

LevelVector LevelVector::basis(const LevelParams& P, int i, const Rational& c) {
    LevelVector v(P);
    v.add(i, c);
    return v;
}

void LevelVector::check(int i) const {
    if (i < P_.min_level() || i > P_.max_level())
        throw std::invalid_argument("level index " + std::to_string(i) + " does not exist for these split flags");
}

Rational LevelVector::coeff(int i) const {
    if (i < -1 || i > P_.e + 1) return 0;
    return c_[i + 1];
}

void LevelVector::add(int i, const Rational& c) {
    if (c == 0) return;
    check(i);
    c_[i + 1] += c;
}

Rational LevelVector::value_at_level(int l) const {
    Rational s = 0;
    for (int i = -1; i <= std::min(l, P_.e + 1); ++i) s += c_[i + 1];
    return s;
}

LevelVector LevelVector::operator+(const LevelVector& o) const {
    if (!(P_ == o.P_)) throw std::invalid_argument("level vectors over different parameters");
    LevelVector r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

LevelVector LevelVector::operator-(const LevelVector& o) const { return *this + o * Rational(-1); }

LevelVector LevelVector::operator*(const Rational& s) const {
    LevelVector r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

LevelVector LevelVector::operator*(const LevelVector& o) const {
    if (!(P_ == o.P_)) throw std::invalid_argument("level vectors over different parameters");
    LevelVector r(P_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < c_.size(); ++j) r.c_[std::max(i, j)] += c_[i] * o.c_[j];
    return r;
}

bool LevelVector::operator==(const LevelVector& o) const { return P_ == o.P_ && c_ == o.c_; }

bool LevelVector::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

std::string LevelVector::str() const {
    std::string s;
    for (int i = -1; i <= P_.e + 1; ++i) {
        if (c_[i + 1] == 0) continue;
        if (!s.empty()) s += " + ";
        s += to_string(c_[i + 1]) + "*L" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

LevelVector level_fourier(const LevelVector& v) {
    const LevelParams& P = v.params();
    LevelVector out(P.dual());
    const Rational qe = Rational(ipow64(P.q, P.e));
    for (int i = -1; i <= P.e + 1; ++i) {
        const Rational c = v.coeff(i);
        if (c == 0) continue;
        if (i == -1) {
            out.add(P.e + 1, c * qe * P.h0dual);
        } else if (i == P.e + 1) {
            out.add(-1, c / P.h0);
        } else {
            out.add(P.e - i, c * Rational(ipow64(P.q, P.e - i)));
        }
    }
    return out;
}

OffsetDisc level_offset_disc(int e, int b, int level) {
    if (e < 0 || (b != 0 && b != 1)) throw std::invalid_argument("bad ramification data");
    if (level < -1 || level > e) throw std::invalid_argument("level out of range");
    const int h = level == -1 ? 3 : (((level + b) & 1) ? 1 : 2);
    return {h, std::max(0, 3 * e + 2 - 3 * level - h)};
}

std::vector<VerificationRecord> verify_model_identities(const H1Model& m, int random_subgroups) {
    std::vector<VerificationRecord> out;
    const std::string P = m.name;
    const i64 qe = ipow64(m.q, m.e);
    const std::size_t n = m.G.size();

    {
        Stopwatch sw;
        std::vector<Rational> lhs{Rational(static_cast<i64>(n))}, rhs{Rational(qe * m.h0 * m.h0dual)};
        for (int i = 0; i <= m.e; ++i) {
            lhs.emplace_back(static_cast<i64>(m.level_space(i).size()));
            rhs.emplace_back(ipow64(m.q, m.e - i) * m.h0);
        }
        auto r = make_record("levels-size", P, lhs, rhs);
        r.ms = sw.ms();
        out.push_back(r);
    }
    {
        Stopwatch sw;
        i64 bad = m.perfect() ? 0 : 1;
        for (int i = -1; i <= m.e + 1; ++i)
            if (annihilator(m, m.level_space(i)) != m.level_space_dual(m.e - i)) ++bad;
        auto r = make_record("levels-perp", P, {Rational(bad)}, {Rational(0)});
        r.ms = sw.ms();
        out.push_back(r);
    }
    {
        Stopwatch sw;
        i64 bad = 0;
        auto expect = [&](int i, const Rational& scale, int j) {
            const GroupFunction lhs = fourier_transform(indicator(m, m.level_space(i)), m);
            GroupFunction rhs(m.Gdual.size(), Cyclotomic(m.N));
            for (auto y : m.level_space_dual(j)) rhs[y] = Cyclotomic(m.N, scale);
            if (lhs != rhs) ++bad;
        };
        for (int i = 0; i <= m.e; ++i) expect(i, Rational(ipow64(m.q, m.e - i)), m.e - i);
        if (m.h0 > 1) expect(m.e + 1, Rational(1, m.h0), -1);
        if (m.h0dual > 1) expect(-1, Rational(qe * m.h0dual), m.e + 1);
        auto r = make_record("levels-fourier", P, {Rational(bad)}, {Rational(0)});
        r.ms = sw.ms();
        out.push_back(r);
    }
    std::mt19937_64 rng(0x5eed + n);
    {
        Stopwatch sw;
        std::vector<std::vector<std::size_t>> subs;
        for (int i = -1; i <= m.e + 1; ++i) subs.push_back(m.level_space(i));
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (int k = 0; k < random_subgroups; ++k) {
            std::vector<std::size_t> gens;
            for (int g = 0; g <= k % 3; ++g) gens.push_back(pick(rng));
            subs.push_back(generated_subgroup(m.G, gens));
        }
        i64 bad = 0;
        for (const auto& S : subs) {
            const GroupFunction lhs = fourier_transform(indicator(m, S), m);
            GroupFunction rhs(m.Gdual.size(), Cyclotomic(m.N));
            const Rational c(static_cast<i64>(S.size()), m.h0);
            for (auto y : annihilator(m, S)) rhs[y] = Cyclotomic(m.N, c);
            if (lhs != rhs) ++bad;
        }
        auto r = make_record("subgroup-duality", P, {Rational(bad)}, {Rational(0)});
        r.note = std::to_string(subs.size()) + " subgroups";
        r.ms = sw.ms();
        out.push_back(r);
    }
    {
        Stopwatch sw;
        std::uniform_int_distribution<int> val(-5, 5);
        i64 bad = 0;
        for (int k = 0; k < 3; ++k) {
            std::vector<Rational> vals(n);
            for (auto& v : vals) v = Rational(val(rng), 1 + (k % 2));
            const GroupFunction f = rational_function(m, vals);
            const GroupFunction ff = fourier_transform_dual(fourier_transform(f, m), m);
            for (std::size_t x = 0; x < n; ++x)
                if (ff[x] != f[m.G.neg(x)] * Rational(qe)) {
                    ++bad;
                    break;
                }
        }
        auto r = make_record("double-transform", P, {Rational(bad)}, {Rational(0)});
        r.ms = sw.ms();
        out.push_back(r);
    }
    return out;
}

}  // namespace onrefl
