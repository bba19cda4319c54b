#pragma once

#include "onrefl/forms.hpp"
#include "onrefl/record.hpp"

#include <vector>

namespace onrefl {

struct SuperdiscCounts {
    i64 q = 0, q2 = 0, qplus = 0, q2plus = 0;
    auto operator<=>(const SuperdiscCounts&) const = default;
};

// one representative per translation orbit, b in the window -|a| < b <= |a|
std::vector<BinaryQuadraticForm> enumerate_superdisc(const Integer& n);

// translation orbit representative of f (b moved into the window)
BinaryQuadraticForm normalize_translation(const BinaryQuadraticForm& f);

// counts from the explicit list
SuperdiscCounts q_counts_enumerated(i64 n);
// counts by square-root counting modulo 4|a| for each leading coefficient a
SuperdiscCounts q_counts(i64 n);

// number of x mod m with x^2 = D mod m
i64 sqrt_count_mod(i64 m, i64 D);

VerificationRecord verify_quadratic_on(i64 n);
VerificationRecord verify_legendre_identity(i64 p1, i64 p3);

}  // namespace onrefl
