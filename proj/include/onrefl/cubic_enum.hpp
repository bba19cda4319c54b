#pragma once

#include "onrefl/forms.hpp"
#include "onrefl/record.hpp"
#include "onrefl/reduce.hpp"

#include <map>
#include <string>
#include <vector>

namespace onrefl {

struct OrbitRepresentative {
    BinaryCubicForm form;
    int stabilizer_order;
};

struct Orbit64 {
    reduce::Cubic64 form;
    int stabilizer;
};

struct LocalSelector {
    enum class Kind {
        SplittingTypeIs,            // 1 if the splitting type at p is sigma
        RootCount,                  // roots in P^1(Z/p), each once; p + 1 for type 0
        RootCountMinusOne,          // RootCount - 1
        OneMinusRootCount,          // 1 - RootCount
        SimpleRootWeight,           // simple roots mod p
        SimpleRootWeightComposite,  // simple roots mod squarefree N
        MaximalAt,                  // 1 if the ring is maximal at p
        TracedAt3,                  // 1 if 3 | b and 3 | c
    };
    Kind kind;
    i64 p = 0;
    SplittingType sigma = SplittingType::S111;

    static LocalSelector splitting(i64 p, SplittingType s) { return {Kind::SplittingTypeIs, p, s}; }
    static LocalSelector roots(i64 p) { return {Kind::RootCount, p}; }
    static LocalSelector roots_minus_one(i64 p) { return {Kind::RootCountMinusOne, p}; }
    static LocalSelector one_minus_roots(i64 p) { return {Kind::OneMinusRootCount, p}; }
    static LocalSelector simple_roots(i64 p) { return {Kind::SimpleRootWeight, p}; }
    static LocalSelector simple_roots_composite(i64 N) { return {Kind::SimpleRootWeightComposite, N}; }
    static LocalSelector maximal(i64 p) { return {Kind::MaximalAt, p}; }
    static LocalSelector traced() { return {Kind::TracedAt3, 3}; }

    i64 weight(const BinaryCubicForm& f) const;
};

using SelectorList = std::vector<LocalSelector>;

// Orbit cache. The disk layer is used when a directory is configured either
// here or through the ONREFL_CACHE_DIR environment variable.
void set_cache_dir(const std::string& dir);
std::string cache_dir();
inline constexpr const char* kCacheVersion = "v1";
void clear_memory_cache();

// canonical representatives with stabilizer orders, sorted by form
const std::vector<Orbit64>& orbits(i64 D);
// same enumeration, bypassing every cache layer
std::vector<Orbit64> enumerate_orbits_uncached(i64 D);

std::vector<OrbitRepresentative> enumerate_cubic_orbits(const Integer& D);
OrbitRepresentative canonical_orbit_rep(const BinaryCubicForm& f);

Rational class_number(i64 D, const SelectorList& selectors = {});
Rational class_number(const Integer& D, const SelectorList& selectors = {});

bool is_maximal_at_p(const BinaryCubicForm& f, i64 p);

inline i64 c_infinity(i64 D) { return D > 0 ? 3 : 1; }

VerificationRecord verify_cubic_on(i64 D);
VerificationRecord verify_thm72(i64 D, i64 p);
// The stated identity misses rings maximal at 2 of type 1^21 (wild quadratic
// part, D/4 = 2, 3 mod 4); with_wild_term adds h(D, T^max_2 T_2(1^21)).
VerificationRecord verify_disc_reduction(i64 D, i64 p, bool with_wild_term = false);
Rational wild_reduction_term(i64 D, i64 p);
// p = 2 and D/4 = 2, 3 mod 4
bool wild_at(i64 D, i64 p);
// q squarefree with 3 not dividing q, q^2 | D, 0 <= t < q
// reflected_traced selects the traced count in the reflected terms of the
// second identity (as typeset) instead of the untraced one
VerificationRecord verify_disc_reduction_multi(i64 D, i64 q, i64 t, bool reflected_traced = false);

enum class Z1NVariant { A, B, C };
// right-hand side of the Z[1/N] identity for the chosen variant
Rational z1n_rhs(i64 D, i64 N, Z1NVariant variant);
Z1NVariant z1n_default_variant(i64 N);
bool fundamental_at(i64 D, i64 p);
VerificationRecord z1n_record(i64 D, i64 N);

// discriminant of a form with rational coefficients, through the integral multiple
Rational disc_rational_cubic(const Rational& a, const Rational& b, const Rational& c, const Rational& d);
std::vector<std::array<Rational, 4>> listed_z15_forms();

struct ShintaniCoefficientTable {
    int sign;
    int traced;
    std::map<i64, Rational> coeff;  // |disc| -> class number
};

ShintaniCoefficientTable shintani_coefficients(int sign, int traced, i64 X);
// coefficient identity between traced and untraced tables for |disc| <= X
std::vector<VerificationRecord> verify_shintani(i64 X);

}  // namespace onrefl
