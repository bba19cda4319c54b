#include <doctest.h>

#include "onrefl/forms.hpp"
#include "onrefl/reduce.hpp"
#include "oracles.hpp"

#include <random>

using namespace onrefl;

namespace {

BinaryCubicForm F(i64 a, i64 b, i64 c, i64 d) { return {a, b, c, d}; }

UnimodularMatrix random_unimodular(std::mt19937_64& rng, int steps) {
    const UnimodularMatrix gens[] = {{0, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}, {-1, 0, 0, 1}, {1, -1, 0, 1}};
    UnimodularMatrix g = UnimodularMatrix::identity();
    for (int i = 0; i < steps; ++i) g = gens[rng() % 5] * g;
    return g;
}

}  // namespace

TEST_CASE("quadratic invariants") {
    CHECK(disc_quadratic({15, 1, 0}) == 1);
    CHECK(disc_quadratic({1, 0, -15}) == 60);
    CHECK(disc_quadratic({1, 0, 0}) == 0);
    CHECK(superdiscriminant({15, 1, 0}) == 15);
    CHECK(superdiscriminant({-1, 1, -4}) == 15);
    CHECK(superdiscriminant({1, 0, 0}) == 0);
}

TEST_CASE("translation") {
    const BinaryQuadraticForm f{-1, -1, -4};
    CHECK(translate_quadratic(f, 0) == f);
    // -x^2 - x - 4 and -x^2 + x - 4 lie in one orbit
    CHECK(translate_quadratic(f, -1) == BinaryQuadraticForm{-1, 1, -4});
    const BinaryQuadraticForm g{15, 1, 0};
    CHECK(superdiscriminant(translate_quadratic(g, 7)) == superdiscriminant(g));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const BinaryQuadraticForm h{i64(rng() % 41) - 20, i64(rng() % 41) - 20, i64(rng() % 41) - 20};
        const Integer t = i64(rng() % 21) - 10;
        const auto ht = translate_quadratic(h, t);
        CHECK(superdiscriminant(ht) == superdiscriminant(h));
        CHECK((ht.b - h.b) % 2 == 0);
    }
}

TEST_CASE("cubic discriminant") {
    CHECK(disc_cubic(F(0, 1, 1, 0)) == 1);
    CHECK(disc_cubic(F(1, 0, 0, 0)) == 0);
    CHECK(disc_cubic(F(1, 0, 0, 1)) == -27);
    for (i64 a = -4; a <= 4; ++a)
        for (i64 b = -4; b <= 4; ++b)
            for (i64 c = -4; c <= 4; ++c)
                for (i64 d = -4; d <= 4; ++d) {
                    if (a == 0) continue;
                    CHECK(Rational(disc_cubic(F(a, b, c, d))) == oracle::disc_by_resultant(a, b, c, d));
                }
}

TEST_CASE("twisted action") {
    const BinaryCubicForm f = F(2, -3, 5, 7);
    CHECK(act_cubic(UnimodularMatrix::identity(), f) == f);
    CHECK(act_cubic({0, 1, 1, 0}, f) == F(-7, -5, 3, -2));
    CHECK(disc_cubic(act_cubic({1, 1, 0, 1}, F(0, 1, 1, 0))) == 1);
    CHECK_THROWS(act_cubic({2, 0, 0, 1}, f));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const BinaryCubicForm h = F(i64(rng() % 21) - 10, i64(rng() % 21) - 10, i64(rng() % 21) - 10, i64(rng() % 21) - 10);
        const UnimodularMatrix g = random_unimodular(rng, 6), k = random_unimodular(rng, 6);
        // evaluation oracle for the substitution rule
        CHECK(oracle::action_matches_evaluation(g, h, act_cubic(g, h)));
        CHECK(disc_cubic(act_cubic(g, h)) == disc_cubic(h));
        CHECK(act_cubic(g * k, h) == act_cubic(g, act_cubic(k, h)));
        // the Hessian is covariant under the twisted action
        CHECK(hessian(act_cubic(g, h)) == act_quadratic(g, hessian(h)));
    }
}

TEST_CASE("hessian") {
    CHECK(hessian(F(0, 1, 1, 0)) == BinaryQuadraticForm{1, 1, 1});
    CHECK(hessian(F(1, 0, 0, 0)) == BinaryQuadraticForm{0, 0, 0});
    const auto h = hessian(F(1, 0, 0, 1));
    CHECK(disc_quadratic(h) == -3 * disc_cubic(F(1, 0, 0, 1)));
}

TEST_CASE("cubic ring table") {
    const auto t = cubic_ring_of_form(F(1, 0, 0, 1));
    CHECK(t.xi_eta == RingElement{-1, 0, 0});
    CHECK(t.xi_xi == RingElement{0, 0, -1});
    CHECK(t.eta_eta == RingElement{0, 1, 0});
    const auto u = cubic_ring_of_form(F(0, 1, 1, 0));
    CHECK(u.xi_eta == RingElement{0, 0, 0});
    CHECK(u.xi_xi == RingElement{0, 1, 0});
    CHECK(u.eta_eta == RingElement{0, 0, -1});
    for (i64 a = -10; a <= 10; ++a)
        for (i64 b = -10; b <= 10; ++b)
            for (i64 c = -10; c <= 10; ++c)
                for (i64 d = -10; d <= 10; d += (a == 0 ? 1 : 3)) {
                    const auto r = cubic_ring_of_form(F(a, b, c, d));
                    if (!r.associative()) FAIL("non-associative table");
                    if (r.discriminant() != disc_cubic(F(a, b, c, d))) FAIL("ring discriminant mismatch");
                }
}

TEST_CASE("trace ideal at 3") {
    CHECK(trace_ideal_exponent_at_3(F(1, 0, 0, 1)) == 1);
    CHECK(trace_ideal_exponent_at_3(F(0, 1, 1, 0)) == 0);
    CHECK(trace_ideal_exponent_at_3(F(1, 3, 6, 2)) == 1);
}

TEST_CASE("splitting types") {
    CHECK(splitting_type(F(0, 1, 1, 0), 5) == SplittingType::S111);
    CHECK(splitting_type(F(1, 0, 0, 1), 3) == SplittingType::S1_3);
    CHECK(splitting_type(F(7, 14, 21, 35), 7) == SplittingType::S0);
    for (i64 p : {2, 3, 5, 7})
        for (i64 a = -4; a <= 4; ++a)
            for (i64 b = -4; b <= 4; ++b)
                for (i64 c = -4; c <= 4; ++c)
                    for (i64 d = -4; d <= 4; ++d) {
                        const auto f = F(a, b, c, d);
                        if (splitting_type(f, p) != oracle::splitting_type_by_roots(a, b, c, d, p))
                            FAIL("splitting type mismatch");
                    }
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const auto f = F(i64(rng() % 21) - 10, i64(rng() % 21) - 10, i64(rng() % 21) - 10, i64(rng() % 21) - 10);
        const auto g = random_unimodular(rng, 8);
        for (i64 p : {2, 3, 5, 7, 11}) CHECK(splitting_type(act_cubic(g, f), p) == splitting_type(f, p));
    }
}

TEST_CASE("root counts") {
    CHECK(simple_root_count_mod_N(F(0, 1, 1, 0), 15) == 9);
    CHECK(simple_root_count_mod_N(F(1, 0, 0, 0), 5) == 0);
    CHECK(simple_root_count_mod_N(F(2, 3, 5, 7), 1) == 1);
    CHECK_THROWS(simple_root_count_mod_N(F(0, 1, 1, 0), 12));
    CHECK(root_count_mod_p(F(5, 5, 10, 5), 5) == 6);
    CHECK(root_count_mod_p(F(1, 0, 0, 0), 5) == 1);
    // CRT: roots mod N correspond to pairs of roots mod the prime factors
    for (i64 a = -3; a <= 3; ++a)
        for (i64 b = -3; b <= 3; ++b)
            for (i64 c = -3; c <= 3; ++c)
                for (i64 d = -3; d <= 3; ++d) {
                    const auto f = F(a, b, c, d);
                    CHECK(root_count_mod_N(f, 10) == oracle::projective_root_count(a, b, c, d, 10));
                    CHECK(simple_root_count_mod_N(f, 6) == oracle::simple_projective_root_count(a, b, c, d, 6));
                }
}

TEST_CASE("stabilizers") {
    CHECK(stabilizer_order_cubic(F(0, 1, 1, 0)) == 6);
    CHECK_THROWS(stabilizer_order_cubic(F(1, 0, 0, 0)));
    // x^3 - x^2 - 2x + 1 generates a cyclic field; x(x^2 + y^2) has the conjugation of Z[i]
    CHECK(stabilizer_order_cubic(F(1, -1, -2, 1)) == 3);
    CHECK(stabilizer_order_cubic(F(1, 0, 1, 0)) == 2);
    CHECK(stabilizer_order_cubic(F(1, 0, 0, -2)) == 1);
    CHECK(stabilizer_order_cubic(F(1, 0, -1, -1)) == 1);
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int i = 0; checked < 50; ++i) {
        const auto f = F(i64(rng() % 9) - 4, i64(rng() % 9) - 4, i64(rng() % 9) - 4, i64(rng() % 9) - 4);
        if (disc_cubic(f) == 0) continue;
        ++checked;
        const int s = stabilizer_order_cubic(f);
        CHECK((s == 1 || s == 2 || s == 3 || s == 6));
        CHECK_MESSAGE(s == oracle::stabilizer_by_bfs(f, 40), f.a, " ", f.b, " ", f.c, " ", f.d);
        const auto g = random_unimodular(rng, 5);
        CHECK(stabilizer_order_cubic(act_cubic(g, f)) == s);
    }
}

TEST_CASE("canonical representative is orbit invariant") {
    std::mt19937_64 rng(23);
    int checked = 0;
    while (checked < 60) {
        const auto f = F(i64(rng() % 11) - 5, i64(rng() % 11) - 5, i64(rng() % 11) - 5, i64(rng() % 11) - 5);
        if (disc_cubic(f) == 0) continue;
        ++checked;
        const auto c0 = reduce::canonicalize(reduce::Cubic<Integer>{f.a, f.b, f.c, f.d});
        const auto again = reduce::canonicalize(c0.form);
        CHECK(again.form == c0.form);
        for (int k = 0; k < 20; ++k) {
            const auto h = act_cubic(random_unimodular(rng, 1 + k % 9), f);
            const auto c1 = reduce::canonicalize(reduce::Cubic<Integer>{h.a, h.b, h.c, h.d});
            CHECK(c1.form == c0.form);
        }
    }
}
