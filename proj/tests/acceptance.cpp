// One line per acceptance criterion; exit status 1 if any line fails.

#include "onrefl/cohomology.hpp"
#include "onrefl/cubic_enum.hpp"
#include "onrefl/local_cubic.hpp"
#include "onrefl/local_quad.hpp"
#include "onrefl/quad_refl.hpp"
#include "oracles.hpp"

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

using namespace onrefl;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << "  " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

// runs f and turns an exception into a failing line
template <class F>
void criterion(int n, const std::string& what, F f) {
    Stopwatch sw;
    bool ok = false;
    std::string detail;
    try {
        ok = f(detail);
    } catch (const std::exception& ex) {
        detail = std::string("exception: ") + ex.what();
    }
    std::ostringstream s;
    s << detail << (detail.empty() ? "" : ", ") << static_cast<long long>(sw.ms()) << " ms";
    report(n, ok, what, s.str());
}

bool prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Euler's criterion
int euler_symbol(i64 a, i64 p) {
    i64 r = 1, b = ((a % p) + p) % p, k = (p - 1) / 2;
    while (k) {
        if (k & 1) r = r * b % p;
        b = b * b % p;
        k >>= 1;
    }
    return r == 1 ? 1 : (r == 0 ? 0 : -1);
}

struct Tally {
    long long checked = 0, bad = 0;
    std::string first;
    void add(const VerificationRecord& r) {
        ++checked;
        if (!r.pass) {
            if (!bad++) first = r.theorem + " " + r.params + " " + format_vector(r.lhs) + " vs " + format_vector(r.rhs);
        }
    }
    bool ok() const { return checked > 0 && bad == 0; }
    std::string str() const {
        std::string s = std::to_string(checked) + " checked, " + std::to_string(bad) + " failed";
        if (bad) s += "; first: " + first;
        return s;
    }
};

}  // namespace

int main() {
    criterion(1, "superdiscriminant 15, 60, 240 counts and the five listed forms", [](std::string& d) {
        const SuperdiscCounts c15 = q_counts(15), c60 = q_counts(60), c240 = q_counts(240);
        bool ok = c15.q == 5 && c15.qplus == 4;
        ok &= c60.q == 18 && c60.q2 == 8 && c60.qplus == 13 && c60.q2plus == 5;
        ok &= c240.q2plus == 18 && c240.q2 == 26;
        std::set<BinaryQuadraticForm> listed;
        for (const BinaryQuadraticForm& f : std::vector<BinaryQuadraticForm>{
                 {-1, 1, -4}, {15, 1, 0}, {15, -1, 0}, {15, 11, 2}, {15, -11, 2}})
            listed.insert(normalize_translation(f));
        const auto found = enumerate_superdisc(15);
        ok &= std::set<BinaryQuadraticForm>(found.begin(), found.end()) == listed && found.size() == 5;
        // the omitted -x^2 - x - 4 is a translate of a listed form
        ok &= listed.count(normalize_translation({-1, -1, -4})) == 1;
        d = "q(15)=" + std::to_string(c15.q) + " q2(240)=" + std::to_string(c240.q2);
        return ok;
    });

    criterion(2, "quadratic reflection identities for 0 < |n| <= 20000", [](std::string& d) {
        Tally t;
        for (i64 n = 1; n <= 20000; ++n) {
            t.add(verify_quadratic_on(n));
            t.add(verify_quadratic_on(-n));
        }
        d = t.str();
        return t.ok();
    });

    criterion(3, "Legendre symbol instances for prime pairs below 200", [](std::string& d) {
        long long pairs = 0, bad = 0;
        for (i64 p1 = 5; p1 < 200; p1 += 4)
            for (i64 p3 = 3; p3 < 200; p3 += 4) {
                if (!prime(p1) || !prime(p3)) continue;
                ++pairs;
                const SuperdiscCounts a = q_counts_enumerated(p1 * p3), b = q_counts_enumerated(4 * p1 * p3);
                if (a.qplus != 5 + euler_symbol(p1, p3) || b.q2 != 10 + 2 * euler_symbol(p3, p1)) ++bad;
            }
        d = std::to_string(pairs) + " pairs, " + std::to_string(bad) + " failed";
        return pairs > 0 && bad == 0;
    });

    criterion(4, "traced cubic identity h3(-27D) = c h(D) for 0 < |D| <= 1000", [](std::string& d) {
        Tally t;
        for (i64 D = -1000; D <= 1000; ++D)
            if (D) t.add(verify_cubic_on(D));
        d = t.str();
        return t.ok();
    });

    criterion(5, "orbit counts and stabilizers against box search for 0 < |D| <= 50", [](std::string& d) {
        long long bad = 0, total = 0;
        for (i64 D = -50; D <= 50; ++D) {
            if (!D) continue;
            const i64 start = std::max<i64>(4, std::abs(D) / 4 + 2);
            auto prev = oracle::orbits_by_box_bfs(D, start, 2 * start + 8);
            for (i64 box = start + 1; box < start + 6; ++box) {
                auto next = oracle::orbits_by_box_bfs(D, box, 2 * box + 8);
                if (next.size() == prev.size()) break;
                prev = std::move(next);
            }
            std::multiset<std::pair<reduce::Cubic64, int>> theirs, ours;
            for (const auto& o : prev) theirs.insert({reduce::canonicalize(o.least).form, o.stabilizer});
            for (const auto& o : orbits(D)) ours.insert({o.form, o.stabilizer});
            total += static_cast<long long>(ours.size());
            if (ours != theirs) ++bad;
        }
        d = std::to_string(total) + " orbits, " + std::to_string(bad) + " discriminants disagree";
        return bad == 0;
    });

    criterion(6, "level-space transforms and subgroup duality on explicit models", [](std::string& d) {
        Tally t;
        const std::vector<std::pair<i64, int>> grid{{2, 1}, {3, 1}, {5, 1}, {9, 2}};
        for (auto [q, e] : grid) {
            const i64 p = q == 9 ? 3 : q;
            const int f = q == 9 ? 2 : 1;
            for (int h0 : {1, 2, 3})
                for (int h0d : {1, 2, 3})
                    for (const auto& r : verify_model_identities(build_generic_model(p, f, e, h0, h0d))) t.add(r);
        }
        for (i64 p : {2, 3, 5, 7, 13})
            for (const auto& r : verify_model_identities(build_square_class_model(p))) t.add(r);
        d = t.str();
        return t.ok();
    });

    criterion(7, "explicit quadratic duality on square classes, odd p <= 37 and p = 2, vI <= 8", [](std::string& d) {
        Tally t;
        for (i64 p = 2; p <= 37; ++p) {
            if (!prime(p)) continue;
            const int e = p == 2 ? 1 : 0;
            for (int s = 0; s <= e; ++s)
                for (int vI = 0; vI <= 8; ++vI) t.add(verify_local_quad_duality_direct(p, s, vI));
        }
        d = t.str();
        return t.ok();
    });

    criterion(8, "quadratic closed form, symbolic duality and the e = 2 table", [](std::string& d) {
        Tally t;
        for (i64 q : {2, 3, 4, 5, 9, 27}) {
            for (int e = 0; e <= 4; ++e)
                for (int s = 0; s <= e; ++s) {
                    t.add(verify_local_quad_duality(q, e, s, 40));
                    if (e >= 1) t.add(verify_gf_closed_form(q, e, s, 40));
                }
            t.add(verify_quad_table(q));
        }
        d = t.str();
        return t.ok();
    });

    criterion(9, "cubic families against traced counts, involution and symbolic duality", [](std::string& d) {
        Tally t;
        for (i64 q : {3, 9, 27})
            for (int e = 0; e <= 4; ++e)
                for (int nT = 0; nT <= 1; ++nT) {
                    t.add(verify_family_zeta_consistency(nT, e, q, 60));
                    for (int s = 0; s <= e; ++s) {
                        t.add(verify_involution_identities(q, e, s, nT, 60));
                        t.add(verify_local_cubic_duality(q, e, s, nT, 60));
                    }
                }
        d = t.str();
        return t.ok();
    });

    criterion(10, "traced counts against Hermite normal form subring enumeration", [](std::string& d) {
        using S = SplittingType;
        struct Case {
            std::string name;
            CubicRingTable R;
            i64 p;
            S s;
            int dmax, tmax;
        };
        const std::vector<Case> cases{
            {"Z^3", table_split(), 3, S::S111, 8, 1},
            {"ZxZ[sqrt3]", table_times_quadratic(3), 3, S::S1_2_1, 8, 1},
            {"x^3-x-1", table_monogenic(0, -1, -1), 3, S::S3, 8, 1},
            {"x^3+3x+3", table_monogenic(0, 3, 3), 3, S::S1_3, 8, 1},
            {"x^3-3", table_monogenic(0, 0, -3), 3, S::S1_3, 8, 1},
            {"Z^3", table_split(), 5, S::S111, 6, 0},
            {"ZxZ[sqrt2]", table_times_quadratic(2), 5, S::S12, 6, 0},
            {"x^3+x+1", table_monogenic(0, 1, 1), 5, S::S3, 6, 0},
            {"ZxZ[sqrt5]", table_times_quadratic(5), 5, S::S1_2_1, 6, 0},
            {"x^3-5", table_monogenic(0, 0, -5), 5, S::S1_3, 6, 0},
        };
        Tally t;
        for (const auto& c : cases) t.add(verify_subring_oracle(c.name, c.R, c.p, c.s, c.dmax, c.tmax));
        d = t.str();
        return t.ok();
    });

    criterion(11, "tame duality for p in {2,5,7,11,13}, every admissible flag pair, d <= 8", [](std::string& d) {
        Tally t;
        for (i64 p : {2, 5, 7, 11, 13}) {
            const bool m3 = p % 3 == 1;
            for (bool Ds : {false, true})
                for (bool m3Ds : {false, true}) {
                    if (m3 ? Ds != m3Ds : Ds && m3Ds) continue;
                    t.add(verify_tame_duality(p, Ds, m3Ds, false, 8));
                    if (!Ds && !m3Ds && m3) t.add(verify_tame_duality(p, Ds, m3Ds, true, 8));
                }
        }
        d = t.str();
        return t.ok();
    });

    criterion(12, "discriminant reduction identities for p in {2,5,7}, |D| <= 300, and q in {10,35}",
              [](std::string& d) {
                  Tally tame, one, multi;
                  long long wild = 0, wild_bad = 0;
                  for (i64 p : {2, 5, 7})
                      for (i64 D = -300; D <= 300; ++D) {
                          if (!D) continue;
                          if (D % p) tame.add(verify_thm72(D, p));
                          if (D % (p * p)) continue;
                          if (wild_at(D, p)) {
                              // outside the tame hypothesis: the stated identity must miss exactly the
                              // wild 1^2 1 term and the completed identity must hold
                              ++wild;
                              const auto stated = verify_disc_reduction(D, p);
                              const auto full = verify_disc_reduction(D, p, true);
                              if (!full.pass || stated.lhs[0] - stated.rhs[0] != wild_reduction_term(D, p)) ++wild_bad;
                              continue;
                          }
                          one.add(verify_disc_reduction(D, p));
                          for (i64 s = 0; s < p; ++s) multi.add(verify_disc_reduction_multi(D, p, s));
                      }
                  for (auto [q, D] : std::vector<std::pair<i64, i64>>{{10, -300}, {35, 1225}})
                      for (i64 s = 0; s < q; ++s) multi.add(verify_disc_reduction_multi(D, q, s));
                  d = "tame " + tame.str() + "; one prime " + one.str() + "; several primes " + multi.str() +
                      "; wild 2-adic D " + std::to_string(wild) + " with " + std::to_string(wild_bad) + " off by other than the wild term";
                  return tame.ok() && one.ok() && multi.ok() && wild_bad == 0;
              });

    criterion(13, "Z[1/15] weight 3/2 and the nine listed forms of discriminant -3", [](std::string& d) {
        const Rational h = class_number(1, {LocalSelector::simple_roots_composite(15)});
        const auto forms = listed_z15_forms();
        bool ok = h == Rational(3, 2) && forms.size() == 9;
        ok &= z1n_rhs(1, 15, Z1NVariant::C) == 3 * h;
        for (const auto& f : forms) ok &= disc_rational_cubic(f[0], f[1], f[2], f[3]) == -3;
        d = "h = " + to_string(h) + ", full class count over Z[1/15] not computed";
        return ok;
    });

    criterion(14, "Shintani coefficient functional equation for |disc| <= 500", [](std::string& d) {
        Tally t;
        for (const auto& r : verify_shintani(500)) t.add(r);
        d = t.str();
        return t.ok();
    });

    std::cout << (failures ? "acceptance: FAIL" : "acceptance: PASS") << std::endl;
    return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
