#pragma once

#include "onrefl/cohomology.hpp"
#include "onrefl/record.hpp"

#include <string>
#include <vector>

namespace onrefl {

enum class Zone { I, II, III };
std::string to_string(Zone z);

// Truncated power series in Z with LevelVector coefficients, Z^0 .. Z^order.
class LevelSeries {
public:
    LevelSeries(const LevelParams& P, int order);
    const LevelParams& params() const { return P_; }
    int order() const { return order_; }
    // coefficient of Z^n; zero outside [0, order]
    LevelVector coeff(int n) const;
    void add(int n, const LevelVector& v);
    // adds s(Z) * L_i
    void add_series(int i, const std::vector<Rational>& s);
    LevelSeries operator+(const LevelSeries& o) const;
    bool operator==(const LevelSeries& o) const;

private:
    LevelParams P_;
    int order_;
    std::vector<LevelVector> c_;
};

// power series expansion of num(Z) / den(Z) to the given order, den(0) != 0
std::vector<Rational> expand_rational(const std::vector<Rational>& num, const std::vector<Rational>& den, int order);

inline LevelParams quad_level_params(i64 q, int e) { return {q, e, 2, 2}; }

// zone from m = v(4a) - v(D): I for m <= 0, II for 1 <= m <= 2e, III beyond
Zone quad_zone(int e, int v_a, int v_D);
LevelVector zone_contribution(i64 q, int e, int t, int v_a, int v_D);

// sum of zone contributions with v_a + v_D <= order
LevelSeries gf_assemble(i64 q, int e, int t, int order);
// expansion of the rational closed form, e >= 1
LevelSeries gf_closed_form(i64 q, int e, int t, int order);

// number of (v(D'), b) with D' in the class of `cls`, v(a) = vI - v(D'),
// v(b) >= t, b mod 2a, b^2 = D' mod 4a; counted over Z_p by residue lifting
i64 local_count_direct(i64 p, int t, int vI, const Rational& cls);

// counter F_t(vI) as a function on the square-class model
std::vector<Rational> local_counter_on_model(const H1Model& m, int t, int vI);

// symbolic: level_fourier(F_t) = q^t Z^{-(2e - 4t)} F_{e-t}, coefficientwise
VerificationRecord verify_local_quad_duality(i64 q, int e, int t, int order);
// explicit: the Hilbert-pairing transform of the direct counter on the square classes of Q_p
VerificationRecord verify_local_quad_duality_direct(i64 p, int t, int vI);
// closed form against zone assembly
VerificationRecord verify_gf_closed_form(i64 q, int e, int t, int order);
// direct counts against the symbolic coefficients evaluated on each class
VerificationRecord verify_zone_partition(i64 p, int t, int vI);

struct TableCell {
    int v_a, v_D;
    bool empty;
    int qpow;   // thickness q^qpow
    int level;  // support L_level; -2 for L_{-1} - L_0
};
// the e = 2 table of family contributions as printed
std::vector<TableCell> printed_quad_table();
// compares zone_contribution with the printed table; zone III cells are
// compared against twice the printed thickness
VerificationRecord verify_quad_table(i64 q);

}  // namespace onrefl
