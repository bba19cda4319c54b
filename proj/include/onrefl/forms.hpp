#pragma once

#include "onrefl/arith.hpp"

#include <array>
#include <string>
#include <tuple>

namespace onrefl {

struct BinaryQuadraticForm {
    Integer a, b, c;
    bool operator==(const BinaryQuadraticForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const BinaryQuadraticForm& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
};

struct BinaryCubicForm {
    Integer a, b, c, d;
    bool operator==(const BinaryCubicForm& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator<(const BinaryCubicForm& o) const {
        return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
    }
};

// Row convention: acting on f, (x, y) is replaced by (x, y) * g.
struct UnimodularMatrix {
    Integer a11, a12, a21, a22;
    Integer det() const { return a11 * a22 - a12 * a21; }
    bool valid() const {
        const Integer d = det();
        return d == 1 || d == -1;
    }
    UnimodularMatrix operator*(const UnimodularMatrix& o) const;
    bool operator==(const UnimodularMatrix& o) const {
        return a11 == o.a11 && a12 == o.a12 && a21 == o.a21 && a22 == o.a22;
    }
    static UnimodularMatrix identity() { return {1, 0, 0, 1}; }
};

// Element of a cubic ring in the basis (1, xi, eta).
using RingElement = std::array<Integer, 3>;

struct CubicRingTable {
    RingElement xi_eta, xi_xi, eta_eta;

    RingElement mul(const RingElement& u, const RingElement& v) const;
    Integer trace(const RingElement& u) const;
    bool associative() const;
    // determinant of the trace form on (1, xi, eta)
    Integer discriminant() const;
};

enum class SplittingType { S111, S12, S3, S1_2_1, S1_3, S0 };

std::string to_string(SplittingType s);

Integer disc_quadratic(const BinaryQuadraticForm& f);
Integer superdiscriminant(const BinaryQuadraticForm& f);
Integer disc_cubic(const BinaryCubicForm& f);
BinaryCubicForm act_cubic(const UnimodularMatrix& g, const BinaryCubicForm& f);
BinaryQuadraticForm translate_quadratic(const BinaryQuadraticForm& f, const Integer& t);
BinaryQuadraticForm hessian(const BinaryCubicForm& f);
// quadratic substitution (x, y) -> (x, y) * g, no determinant twist
BinaryQuadraticForm act_quadratic(const UnimodularMatrix& g, const BinaryQuadraticForm& h);
CubicRingTable cubic_ring_of_form(const BinaryCubicForm& f);
int trace_ideal_exponent_at_3(const BinaryCubicForm& f);
Integer content(const BinaryCubicForm& f);

SplittingType splitting_type(const BinaryCubicForm& f, i64 p);
// roots in P^1(Z/p), each counted once; p + 1 when p divides the content
i64 root_count_mod_p(const BinaryCubicForm& f, i64 p);
i64 simple_root_count_mod_p(const BinaryCubicForm& f, i64 p);
// N squarefree; multiplicative over the prime factors of N
i64 simple_root_count_mod_N(const BinaryCubicForm& f, i64 N);
i64 root_count_mod_N(const BinaryCubicForm& f, i64 N);

int stabilizer_order_cubic(const BinaryCubicForm& f);

}  // namespace onrefl
