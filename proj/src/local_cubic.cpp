#include "onrefl/local_cubic.hpp"

#include <stdexcept>

namespace onrefl {

namespace {

Integer bigpow(i64 q, int k) { return boost::multiprecision::pow(Integer(q), static_cast<unsigned>(k)); }

Integer ceil_div6(int x) { return x >= 0 ? (x + 5) / 6 : -((-x) / 6); }

// |L_i| for the level filtration of T
Integer level_space_size(const CubicTorsor& T, int i) {
    if (i <= -1) return bigpow(T.q, T.e) * T.h0() * T.h0dual();
    if (i >= T.e + 1) return 1;
    return bigpow(T.q, T.e - i) * T.h0();
}

std::vector<FamilyDescriptor> families_impl(const CubicTorsor& T, int n, bool printed_zone1) {
    T.check();
    if (n < 0 || n % 2 != T.nT) throw std::invalid_argument("family index has the wrong parity");
    std::vector<FamilyDescriptor> out;
    const int n3 = n / 3;
    for (int k = 0; k <= n3; ++k) {
        const bool I = 6 * k < n;
        const bool III = 6 * k > 6 * n3 - n + 3 * T.e;
        const Rational th(bigpow(T.q, n3 - k));
        if (I) {
            const Rational th1 = printed_zone1 ? Rational(T.h0()) : Rational(bigpow(T.q, k) * T.h0());
            out.push_back({n, k, Zone::I, T.max_level(), false, th1});
            // only for e = 0: the cell is also in zone III
            if (III && T.dual_split) out.push_back({n, k, Zone::III, -1, true, th});
        } else if (III) {
            out.push_back({n, k, Zone::III, T.min_level(), false, th});
        } else {
            out.push_back({n, k, Zone::II, T.e - 2 * k + n3, false, th});
        }
    }
    return out;
}

LevelVector counter_impl(const CubicTorsor& T, int n, int t, bool printed_zone1) {
    LevelVector v(T.params());
    if (n < 0 || n % 2 != T.nT) return v;
    for (const auto& f : families_impl(T, n, printed_zone1)) {
        if (f.k < t) continue;
        v.add(f.support, f.thickness);
        if (f.exact) v.add(f.support + 1, -f.thickness);
    }
    return v;
}

bool in_both_outer_zones(int n, int k, int e) { return 6 * k < n && 6 * k > 6 * (n / 3) - n + 3 * e; }

LevelVector cell_vector(const LevelParams& P, const std::vector<FamilyDescriptor>& fams, int k) {
    LevelVector v(P);
    for (const auto& f : fams) {
        if (f.k != k) continue;
        v.add(f.support, f.thickness);
        if (f.exact) v.add(f.support + 1, -f.thickness);
    }
    return v;
}

Zone swapped(Zone z) { return z == Zone::I ? Zone::III : z == Zone::III ? Zone::I : Zone::II; }

std::string cubic_params(i64 q, int e, int t, int nT, int nmax) {
    return "q=" + std::to_string(q) + ",e=" + std::to_string(e) + ",t=" + std::to_string(t) +
           ",nT=" + std::to_string(nT) + ",nmax=" + std::to_string(nmax);
}

}  // namespace

void CubicTorsor::check() const {
    if (q < 2 || e < 0) throw std::invalid_argument("bad residue data");
    if (nT != 0 && nT != 1) throw std::invalid_argument("n_T must be 0 or 1");
    if (split && nT != 0) throw std::invalid_argument("a split torsor is unramified");
    if (dual_split && nT_dual() != 0) throw std::invalid_argument("a split dual torsor is unramified");
}

std::string CubicTorsor::str() const {
    return "q=" + std::to_string(q) + ",e=" + std::to_string(e) + ",nT=" + std::to_string(nT) +
           ",T" + (split ? "split" : "nonsplit") + ",T'" + (dual_split ? "split" : "nonsplit");
}

std::vector<CubicTorsor> torsors_with(i64 q, int e, int nT) {
    std::vector<CubicTorsor> out;
    for (bool s : {false, true})
        for (bool ds : {false, true}) {
            CubicTorsor T{q, e, nT, s, ds};
            if (s && nT != 0) continue;
            if (ds && T.nT_dual() != 0) continue;
            out.push_back(T);
        }
    return out;
}

std::vector<FamilyDescriptor> families(const CubicTorsor& T, int n) { return families_impl(T, n, false); }

LevelVector family_counter(const CubicTorsor& T, int n, int t) { return counter_impl(T, n, t, false); }

std::vector<LocalCubicAlgebra> algebras_of(const CubicTorsor& T) {
    T.check();
    std::vector<LocalCubicAlgebra> out;
    for (int l = T.min_level(); l <= T.max_level(); ++l) {
        if (l == T.e + 1) {
            out.push_back({l, SplittingType::S111, 0});
        } else if (l == T.e) {
            if (T.split)
                out.push_back({l, SplittingType::S3, 0});
            else if (T.nT == 0)
                out.push_back({l, SplittingType::S12, 0});
            else
                out.push_back({l, SplittingType::S1_2_1, 1});
        } else {
            out.push_back({l, SplittingType::S1_3, level_offset_disc(T.e, T.nT_dual(), l).disc});
        }
    }
    return out;
}

Integer g_one_cubed(i64 q, int d0, int d, int t) {
    if (d < 3 * t) return 0;
    const int r = d <= 6 * t - d0 ? d / 3 - t + 1 : (d - d0) / 6 + 1;
    return (bigpow(q, r) - 1) / (q - 1);
}

Integer g_three(i64 q, int d, int t) {
    if (d < 3 * t) return 0;
    const int r = d <= 6 * t ? d / 3 - t + 1 : d / 2 - 2 * static_cast<int>(ceil_div6(d)) + 1;
    return (bigpow(q, r) - 1) / (q - 1);
}

Integer g_split_root(i64 q, int d0, int d, int t) {
    const int r = std::max(t, static_cast<int>(ceil_div6(d - d0)));
    return (bigpow(q, r) - bigpow(q, t)) / (q - 1);
}

Integer traced_count(const TracedCountParams& P) {
    if (P.q < 2 || P.t < 0 || P.d0 < 0) throw std::invalid_argument("bad traced count parameters");
    if (P.d < P.d0 || (P.d - P.d0) % 2 != 0) throw std::invalid_argument("d must exceed d0 by an even amount");
    auto need = [&](bool ok) {
        if (!ok) throw std::invalid_argument("discriminant of the maximal order does not fit the splitting type");
    };
    switch (P.splitting) {
        case SplittingType::S111:
            need(P.d0 == 0);
            return g_three(P.q, P.d, P.t) + 3 * g_split_root(P.q, 0, P.d, P.t);
        case SplittingType::S3:
            need(P.d0 == 0);
            return g_three(P.q, P.d, P.t);
        case SplittingType::S12:
            need(P.d0 == 0);
            return g_three(P.q, P.d, P.t) + g_split_root(P.q, 0, P.d, P.t);
        case SplittingType::S1_2_1:
            need(P.d0 == 1);
            return g_one_cubed(P.q, 1, P.d, P.t) + g_split_root(P.q, 1, P.d, P.t);
        case SplittingType::S1_3:
            need(P.d0 >= 2);
            return g_one_cubed(P.q, P.d0, P.d, P.t);
        case SplittingType::S0:
            break;
    }
    throw std::invalid_argument("no maximal order of splitting type 0");
}

std::pair<int, int> involution(int n, int k, int e, int t) {
    if (e < 0 || t < 0 || t > e || k < t || 3 * k > n) throw std::invalid_argument("involution outside its range");
    return {n + 3 * e - 6 * t, n / 3 - k + e - t};
}

VerificationRecord verify_family_zeta_consistency(int nT, int e, i64 q, int nmax) {
    Stopwatch sw;
    i64 bad = 0, checked = 0, printed_bad = 0;
    std::string first;
    for (const auto& T : torsors_with(q, e, nT)) {
        const auto algs = algebras_of(T);
        for (int t = 0; t <= e; ++t)
            for (int d = nT; d <= nmax; d += 2) {
                const LevelVector g = family_counter(T, d, t);
                const LevelVector gp = counter_impl(T, d, t, true);
                for (const auto& L : algs) {
                    const Rational lhs = g.value_at_level(L.level);
                    const Rational rhs = d >= L.d0 ? Rational(traced_count({L.sigma, L.d0, d, t, q})) : Rational(0);
                    ++checked;
                    if (gp.value_at_level(L.level) != rhs) ++printed_bad;
                    if (lhs != rhs && bad++ == 0)
                        first = T.str() + ",level=" + std::to_string(L.level) + "," + to_string(L.sigma) +
                                ",d0=" + std::to_string(L.d0) + ",d=" + std::to_string(d) + ",t=" + std::to_string(t) +
                                ": " + to_string(lhs) + " vs " + to_string(rhs);
                }
            }
    }
    auto r = make_record("family-zeta",
                         "q=" + std::to_string(q) + ",e=" + std::to_string(e) + ",nT=" + std::to_string(nT) +
                             ",nmax=" + std::to_string(nmax),
                         {Rational(bad), Rational(checked)}, {Rational(0), Rational(checked)});
    r.note = first.empty() ? "zone I thickness |H0|q^k; the bare |H0| would miss " + std::to_string(printed_bad) + " counts"
                           : first;
    r.ms = sw.ms();
    return r;
}

VerificationRecord verify_involution_identities(i64 q, int e, int t, int nT, int nmax) {
    Stopwatch sw;
    i64 bad = 0, checked = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
        if (bad++ == 0) first = what;
    };
    const int td = e - t;
    for (const auto& T : torsors_with(q, e, nT)) {
        const CubicTorsor Td = T.dual();
        for (int n = nT; n <= nmax; n += 2)
            for (const auto& f : families(T, n)) {
                if (f.k < t) continue;
                ++checked;
                const auto [n2, k2] = involution(n, f.k, e, t);
                const std::string where = T.str() + ",n=" + std::to_string(n) + ",k=" + std::to_string(f.k) + ",zone " +
                                          to_string(f.zone);
                if (!(td <= k2 && 3 * k2 <= n2)) {
                    fail(where + ": image out of range");
                    continue;
                }
                if (n2 % 2 != Td.nT) fail(where + ": parity");
                if (involution(n2, k2, e, td) != std::make_pair(n, f.k)) fail(where + ": not an involution");
                const auto image_side = families(Td, n2);
                if (in_both_outer_zones(n, f.k, e)) {
                    // the two families of a tame overlap cell only pair up as a whole
                    if (f.zone == Zone::III) continue;
                    const LevelVector lhs = level_fourier(cell_vector(T.params(), families(T, n), f.k));
                    const LevelVector rhs = cell_vector(Td.params(), image_side, k2) * Rational(bigpow(q, t));
                    if (!(lhs == rhs)) fail(where + ": overlap cell is not dual");
                    continue;
                }
                const FamilyDescriptor* img = nullptr;
                for (const auto& g : image_side)
                    if (g.k == k2 && g.zone == swapped(f.zone)) img = img ? nullptr : &g;
                if (!img) {
                    fail(where + ": no unique image family");
                    continue;
                }
                if (img->support != e - f.support) fail(where + ": support is not the annihilator");
                // the duality constant q^t enters alongside |supp F| / |H0(T)|
                const Rational ratio = Rational(level_space_size(T, f.support)) / (bigpow(q, t) * T.h0());
                if (img->thickness != ratio * f.thickness) fail(where + ": thickness ratio");
            }
    }
    auto r = make_record("involution", cubic_params(q, e, t, nT, nmax), {Rational(bad), Rational(checked)},
                         {Rational(0), Rational(checked)});
    r.note = first;
    r.ms = sw.ms();
    return r;
}

VerificationRecord verify_local_cubic_duality(i64 q, int e, int t, int nT, int nmax) {
    Stopwatch sw;
    if (t < 0 || t > e) throw std::invalid_argument("t out of range");
    i64 bad = 0, checked = 0;
    std::string first;
    const Rational qt(bigpow(q, t));
    for (const auto& T : torsors_with(q, e, nT))
        for (int n = nT; n <= nmax; n += 2) {
            ++checked;
            const LevelVector lhs = level_fourier(family_counter(T, n, t));
            const LevelVector rhs = family_counter(T.dual(), n + 3 * e - 6 * t, e - t) * qt;
            if (!(lhs == rhs) && bad++ == 0)
                first = T.str() + ",n=" + std::to_string(n) + ": " + lhs.str() + " vs " + rhs.str();
        }
    auto r = make_record("local-cubic", cubic_params(q, e, t, nT, nmax), {Rational(bad), Rational(checked)},
                         {Rational(0), Rational(checked)});
    r.note = first;
    r.ms = sw.ms();
    return r;
}

std::vector<Rational> tame_order_counts(const H1Model& m, bool split, bool ramified, int d) {
    std::vector<Rational> f(m.G.size(), Rational(0));
    for (std::size_t x = 0; x < f.size(); ++x) {
        SplittingType s;
        int d0;
        if (x == 0) {
            s = split ? SplittingType::S111 : ramified ? SplittingType::S1_2_1 : SplittingType::S12;
            d0 = ramified ? 1 : 0;
        } else if (m.level[x] == -1) {
            s = SplittingType::S1_3;
            d0 = 2;
        } else {
            s = SplittingType::S3;
            d0 = 0;
        }
        if (d >= d0 && (d - d0) % 2 == 0) f[x] = Rational(traced_count({s, d0, d, 0, m.q}));
    }
    return f;
}

VerificationRecord verify_tame_duality(i64 p, bool Dsquare, bool minus3Dsquare, bool ramified, int dmax) {
    Stopwatch sw;
    if (!is_prime64(p) || p == 3) throw std::invalid_argument("tame duality needs a prime other than 3");
    const bool m3square = p != 2 && legendre(p - 3, p) == 1;
    if (!Dsquare && !minus3Dsquare && !m3square) ramified = true;
    if (ramified && (Dsquare || minus3Dsquare)) throw std::invalid_argument("a ramified D is not a square");
    if (!ramified && !Dsquare && minus3Dsquare == m3square)
        throw std::invalid_argument("inconsistent flags for an unramified nonsplit torsor");
    const TameCubicModels models = build_tame_cubic_model(p, Dsquare, minus3Dsquare);
    std::vector<Rational> lhs, rhs;
    for (int d = ramified ? 1 : 0; d <= dmax; d += 2) {
        const auto f = tame_order_counts(models.M, Dsquare, ramified, d);
        const auto fd = tame_order_counts(models.Mdual, minus3Dsquare, ramified, d);
        const GroupFunction fh = fourier_transform(rational_function(models.M, f), models.M);
        for (std::size_t y = 0; y < fh.size(); ++y) {
            lhs.push_back(fh[y].is_rational() ? fh[y].rational_part() : Rational(-1));
            rhs.push_back(fd[y]);
        }
    }
    auto r = make_record("tame-cubic", "p=" + std::to_string(p) + ",D" + (Dsquare ? "sq" : "nsq") + ",-3D" +
                                           (minus3Dsquare ? "sq" : "nsq") + (ramified ? ",ram" : ",unram") +
                                           ",dmax=" + std::to_string(dmax),
                         lhs, rhs);
    r.ms = sw.ms();
    return r;
}

CubicRingTable table_split() {
    // 1 = (1,1,1), xi = (1,0,0), eta = (0,1,0)
    return {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}};
}

CubicRingTable table_times_quadratic(i64 m) {
    // 1 = (1;1), xi = (0;sqrt m), eta = (1;0)
    return {{0, 0, 0}, {m, 0, -m}, {0, 0, 1}};
}

CubicRingTable table_monogenic(i64 c2, i64 c1, i64 c0) {
    // xi = x, eta = x^2
    return {{-c0, -c1, -c2}, {0, 0, 1}, {c2 * c0, c2 * c1 - c0, c2 * c2 - c1}};
}

i64 count_traced_suborders(const CubicRingTable& R, i64 p, int k, int t) {
    if (k < 0 || t < 0) throw std::invalid_argument("bad index data");
    const Integer pt = bigpow(p, t);
    if (Integer(3) % pt != 0) return 0;
    i64 count = 0;
    for (int a = 0; a <= k; ++a) {
        const i64 pa = ipow64(p, a), pb = ipow64(p, k - a);
        for (i64 x = 0; x < pb; ++x) {
            const RingElement g1{0, pa, x}, g2{0, 0, pb};
            auto member = [&](const RingElement& v) {
                if (v[1] % pa != 0) return false;
                return (v[2] - (v[1] / pa) * x) % pb == 0;
            };
            if (!member(R.mul(g1, g1)) || !member(R.mul(g1, g2)) || !member(R.mul(g2, g2))) continue;
            if (R.trace(g1) % pt != 0 || R.trace(g2) % pt != 0) continue;
            ++count;
        }
    }
    return count;
}

VerificationRecord verify_subring_oracle(const std::string& label, const CubicRingTable& R, i64 p, SplittingType sigma,
                                         int dmax, int tmax) {
    Stopwatch sw;
    Integer D = R.discriminant();
    if (D == 0) throw std::invalid_argument("degenerate ring");
    int d0 = 0;
    while (D % p == 0) {
        D /= p;
        ++d0;
    }
    std::vector<Rational> lhs, rhs;
    for (int t = 0; t <= tmax; ++t)
        for (int d = d0; d <= dmax; d += 2) {
            lhs.emplace_back(count_traced_suborders(R, p, (d - d0) / 2, t));
            rhs.emplace_back(traced_count({sigma, d0, d, t, p}));
        }
    auto r = make_record("subring-oracle", label + ",p=" + std::to_string(p) + ",d0=" + std::to_string(d0) +
                                               ",dmax=" + std::to_string(dmax) + ",tmax=" + std::to_string(tmax),
                         lhs, rhs);
    r.ms = sw.ms();
    return r;
}

}  // namespace onrefl
