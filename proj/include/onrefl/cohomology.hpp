#pragma once

#include "onrefl/arith.hpp"
#include "onrefl/record.hpp"

#include <string>
#include <vector>

namespace onrefl {

// Element of Q(zeta_N), stored by coefficients of 1, zeta, ..., zeta^(phi(N)-1).
class Cyclotomic {
public:
    Cyclotomic() = default;
    explicit Cyclotomic(int N, const Rational& c = 0);
    static Cyclotomic zeta_power(int N, i64 k);

    int order() const { return N_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_rational() const;
    Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator*(const Rational& r) const;
    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    std::string str() const;

    // reduce a length-N vector indexed by powers of zeta
    static Cyclotomic from_powers(int N, const std::vector<Rational>& powers);

private:
    int N_ = 1;
    std::vector<Rational> c_{Rational(0)};
};

// integer coefficients of the N-th cyclotomic polynomial, constant term first
const std::vector<Integer>& cyclotomic_polynomial(int N);

// p > 0 a prime, p = 0 for the real place
int hilbert_symbol(const Rational& a, const Rational& b, i64 p);

// Finite abelian group given as a product of cyclic factors.
struct FiniteGroup {
    std::vector<int> orders;
    std::size_t size() const;
    std::vector<int> element(std::size_t index) const;
    std::size_t index(const std::vector<int>& x) const;
    std::size_t add(std::size_t x, std::size_t y) const;
    std::size_t neg(std::size_t x) const;
};

// A group G with a perfect pairing into mu_N against a dual group G'
// and level filtrations on both sides.
struct H1Model {
    std::string name;
    i64 q = 1;
    int e = 0;
    int h0 = 1, h0dual = 1;
    int N = 1;
    FiniteGroup G, Gdual;
    std::vector<int> pairing;  // exponent of zeta_N, row-major |G| x |G'|
    std::vector<int> level;     // level of each element of G
    std::vector<int> level_dual;
    std::vector<Rational> rep;  // optional representatives (square-class models)

    int pair(std::size_t x, std::size_t y) const { return pairing[x * Gdual.size() + y]; }
    int min_level() const { return h0dual > 1 ? -1 : 0; }
    int max_level() const { return h0 > 1 ? e + 1 : e; }
    // members of L_i (level >= i); i in [-1, e + 1]
    std::vector<std::size_t> level_space(int i) const;
    std::vector<std::size_t> level_space_dual(int i) const;
    bool perfect() const;
    // the same model seen from the dual side
    H1Model dual() const;
};

// K^x / K^x2 over Q_p with the Hilbert pairing; self-dual
H1Model build_square_class_model(i64 p);
// H^1 for an order-3 module at a tame prime; flags say whether D, -3D are squares
struct TameCubicModels {
    H1Model M, Mdual;
};
TameCubicModels build_tame_cubic_model(i64 p, bool Dsquare, bool minus3Dsquare);
// abstract model B x V x A with |B| = h0dual, V = F_p^(f e) in e blocks, |A| = h0
H1Model build_generic_model(i64 p, int f, int e, int h0, int h0dual);

using GroupFunction = std::vector<Cyclotomic>;

GroupFunction rational_function(const H1Model& m, const std::vector<Rational>& values);
GroupFunction indicator(const H1Model& m, const std::vector<std::size_t>& subset);
// (1/h0) sum_a f(a) <a, b>, a function on the dual group
GroupFunction fourier_transform(const GroupFunction& f, const H1Model& m);
// f on G' transformed back to G, scaled by 1/h0dual
GroupFunction fourier_transform_dual(const GroupFunction& f, const H1Model& m);

// subgroup generated by the given elements
std::vector<std::size_t> generated_subgroup(const FiniteGroup& G, const std::vector<std::size_t>& gens);
std::vector<std::size_t> annihilator(const H1Model& m, const std::vector<std::size_t>& S);

struct LevelParams {
    i64 q = 2;
    int e = 0;
    int h0 = 1, h0dual = 1;
    int min_level() const { return h0dual > 1 ? -1 : 0; }
    int max_level() const { return h0 > 1 ? e + 1 : e; }
    LevelParams dual() const { return {q, e, h0dual, h0}; }
    bool operator==(const LevelParams&) const = default;
};

// Combination of level indicators L_{-1}, ..., L_{e+1}.
class LevelVector {
public:
    LevelVector() = default;
    explicit LevelVector(const LevelParams& P);
    static LevelVector basis(const LevelParams& P, int i, const Rational& c = 1);

    const LevelParams& params() const { return P_; }
    Rational coeff(int i) const;
    void add(int i, const Rational& c);
    // value on a class of level l
    Rational value_at_level(int l) const;

    LevelVector operator+(const LevelVector& o) const;
    LevelVector operator-(const LevelVector& o) const;
    LevelVector operator*(const Rational& r) const;
    // pointwise product
    LevelVector operator*(const LevelVector& o) const;
    bool operator==(const LevelVector& o) const;
    bool is_zero() const;
    std::string str() const;

private:
    LevelParams P_;
    std::vector<Rational> c_;  // index i + 1
    void check(int i) const;
};

LevelVector level_fourier(const LevelVector& v);

struct OffsetDisc {
    int h;
    int disc;
};
// b is the ramification of the Kummer algebra T' (0 unramified, 1 ramified)
OffsetDisc level_offset_disc(int e, int b, int level);

// transform identities on an explicit model: level spaces, random subgroups,
// double transform; one record per identity family
std::vector<VerificationRecord> verify_model_identities(const H1Model& m, int random_subgroups = 8);

}  // namespace onrefl
