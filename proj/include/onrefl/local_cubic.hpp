#pragma once

#include "onrefl/cohomology.hpp"
#include "onrefl/forms.hpp"
#include "onrefl/local_quad.hpp"
#include "onrefl/record.hpp"

#include <string>
#include <utility>
#include <vector>

namespace onrefl {

// Resolvent torsor T of a cubic algebra over a local field with residue
// size q and e = v(3); `split` is T = K x K, `dual_split` is T' = K x K.
struct CubicTorsor {
    i64 q = 3;
    int e = 1;
    int nT = 0;
    bool split = false;
    bool dual_split = false;

    int h0() const { return split ? 3 : 1; }
    int h0dual() const { return dual_split ? 3 : 1; }
    int nT_dual() const { return (nT + e) % 2; }
    int min_level() const { return dual_split ? -1 : 0; }
    int max_level() const { return split ? e + 1 : e; }
    LevelParams params() const { return {q, e, h0(), h0dual()}; }
    CubicTorsor dual() const { return {q, e, nT_dual(), dual_split, split}; }
    void check() const;
    std::string str() const;
};

// every flag combination compatible with the parities
std::vector<CubicTorsor> torsors_with(i64 q, int e, int nT);

struct FamilyDescriptor {
    int n = 0, k = 0;
    Zone zone = Zone::II;
    int support = 0;     // level index of the support L_support
    bool exact = false;  // support is L_support minus L_{support+1}
    Rational thickness;
};

// Families F_{n,k}. Zone I has thickness |H0(T)| q^k. When e = 0 and n is
// prime to 3, one cell lies in zones I and III at once; it then carries a
// second family on the level -1 classes alone (only when T' is split).
std::vector<FamilyDescriptor> families(const CubicTorsor& T, int n);

// g_{n,t}: sum over families with k >= t of thickness times the support indicator
LevelVector family_counter(const CubicTorsor& T, int n, int t);

struct LocalCubicAlgebra {
    int level;
    SplittingType sigma;
    int d0;  // discriminant valuation of the maximal order
};
// one entry per level occurring in H^1(T)
std::vector<LocalCubicAlgebra> algebras_of(const CubicTorsor& T);

struct TracedCountParams {
    SplittingType splitting = SplittingType::S111;
    int d0 = 0, d = 0, t = 0;
    i64 q = 3;
};

Integer g_one_cubed(i64 q, int d0, int d, int t);
Integer g_three(i64 q, int d, int t);
// split-root part: r = t while d - d0 <= 6t, then ceil((d - d0)/6)
Integer g_split_root(i64 q, int d0, int d, int t);
Integer traced_count(const TracedCountParams& P);

std::pair<int, int> involution(int n, int k, int e, int t);

VerificationRecord verify_family_zeta_consistency(int nT, int e, i64 q, int nmax);
VerificationRecord verify_involution_identities(i64 q, int e, int t, int nT, int nmax);
VerificationRecord verify_local_cubic_duality(i64 q, int e, int t, int nT, int nmax);

// tame duality on the explicit H^1 models. With both flags false, T is
// ramified unless p = 1 mod 3, where `ramified` decides.
VerificationRecord verify_tame_duality(i64 p, bool Dsquare, bool minus3Dsquare, bool ramified = false, int dmax = 8);
// orders of discriminant valuation d in the algebra of each class; for a
// ramified T, d is measured as if K x T had discriminant valuation 1
std::vector<Rational> tame_order_counts(const H1Model& m, bool split, bool ramified, int d);

// rings with basis 1, xi, eta for the oracle
CubicRingTable table_split();
// Z x Z[sqrt(m)]
CubicRingTable table_times_quadratic(i64 m);
// Z[x]/(x^3 + c2 x^2 + c1 x + c0)
CubicRingTable table_monogenic(i64 c2, i64 c1, i64 c0);

// subrings of index p^k containing 1 whose trace ideal lies in p^t,
// enumerated by Hermite normal forms of the image in O/Z
i64 count_traced_suborders(const CubicRingTable& R, i64 p, int k, int t);

VerificationRecord verify_subring_oracle(const std::string& label, const CubicRingTable& R, i64 p, SplittingType sigma, int dmax, int tmax);

}  // namespace onrefl
