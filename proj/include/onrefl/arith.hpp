#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace onrefl {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using i64 = std::int64_t;
using i128 = __int128;

std::string to_string(const Integer& x);
// "p/q", or "p" when the denominator is 1
std::string to_string(const Rational& x);

i64 to_i64(const Integer& x);  // throws std::overflow_error when out of range

i64 gcd64(i64 a, i64 b);
i64 isqrt64(i64 n);               // floor sqrt, n >= 0
bool is_square64(i64 n, i64* root = nullptr);
bool is_prime64(i64 n);
i64 powmod64(i64 b, i64 e, i64 m);
i64 ipow64(i64 b, int e);
int valuation64(i64 n, i64 p);    // n != 0
bool is_squarefree64(i64 n);

// prime factorization of |n| as (p, exponent), n != 0
std::vector<std::pair<i64, int>> factor64(i64 n);
std::vector<i64> prime_divisors64(i64 n);
// positive divisors of |n|, increasing
std::vector<i64> divisors64(i64 n);
std::vector<i64> primes_below(i64 n);

// Legendre symbol by Euler's criterion, p odd prime
int legendre(i64 a, i64 p);

Rational rat(i64 num, i64 den = 1);

}  // namespace onrefl
