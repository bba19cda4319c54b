#pragma once

// Reduction of binary cubic forms under the twisted GL2(Z) action.
// Positive discriminant: Gauss reduction of the Hessian (exact).
// Negative discriminant: the complex root in the upper half plane is moved
// into the standard fundamental domain (long double, membership decided
// from the form's own coefficients so the candidate set is orbit-invariant).

#include "onrefl/arith.hpp"

#include <complex>
#include <compare>
#include <stdexcept>
#include <vector>

namespace onrefl::reduce {

struct Mat {
    i64 a11, a12, a21, a22;
    i64 det() const { return a11 * a22 - a12 * a21; }
    Mat operator*(const Mat& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    auto operator<=>(const Mat&) const = default;
};

template <class T>
struct Cubic {
    T a, b, c, d;
    auto operator<=>(const Cubic&) const = default;
};
using Cubic64 = Cubic<i64>;

template <class T> struct Wide;
template <> struct Wide<i64> { using type = i128; };
template <> struct Wide<Integer> { using type = Integer; };

template <class T>
T narrow(const typename Wide<T>::type& w) {
    if constexpr (std::is_same_v<T, i64>) {
        if (w > static_cast<i128>(std::numeric_limits<i64>::max()) ||
            w < static_cast<i128>(std::numeric_limits<i64>::min()))
            throw std::overflow_error("cubic form coefficient overflow");
        return static_cast<i64>(w);
    } else {
        return w;
    }
}

// all matrices of determinant +-1 with entries in [-2, 2]
const std::vector<Mat>& small_matrices();

template <class T>
Cubic<T> act(const Mat& g, const Cubic<T>& f) {
    using W = typename Wide<T>::type;
    const W al = g.a11, be = g.a12, ga = g.a21, de = g.a22;
    const W a = f.a, b = f.b, c = f.c, d = f.d;
    W A = a * al * al * al + b * al * al * be + c * al * be * be + d * be * be * be;
    W D = a * ga * ga * ga + b * ga * ga * de + c * ga * de * de + d * de * de * de;
    W B = 3 * a * al * al * ga + b * (al * al * de + 2 * al * be * ga) +
          c * (2 * al * be * de + be * be * ga) + 3 * d * be * be * de;
    W C = 3 * a * al * ga * ga + b * (2 * al * ga * de + be * ga * ga) +
          c * (al * de * de + 2 * be * ga * de) + 3 * d * be * de * de;
    if (g.det() == -1) {
        A = -A; B = -B; C = -C; D = -D;
    }
    return {narrow<T>(A), narrow<T>(B), narrow<T>(C), narrow<T>(D)};
}

template <class T>
typename Wide<T>::type disc(const Cubic<T>& f) {
    using W = typename Wide<T>::type;
    const W a = f.a, b = f.b, c = f.c, d = f.d;
    return 18 * a * b * c * d + b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d;
}

template <class T>
struct Hess {
    typename Wide<T>::type P, Q, R;
};

template <class T>
Hess<T> hessian(const Cubic<T>& f) {
    using W = typename Wide<T>::type;
    const W a = f.a, b = f.b, c = f.c, d = f.d;
    return {b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d};
}

template <class W>
W floordiv(const W& x, const W& y) {
    W q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) q -= 1;
    return q;
}

inline i64 w_to_i64(i128 x) { return narrow<i64>(x); }
inline i64 w_to_i64(const Integer& x) { return to_i64(x); }

template <class W>
W absw(const W& x) { return x < 0 ? W(-x) : x; }

inline long double to_ld(i64 x) { return static_cast<long double>(x); }
inline long double to_ld(const Integer& x) { return x.convert_to<long double>(); }

// root of f(x, 1) in the upper half plane; f must have negative discriminant
std::complex<long double> upper_root_ld(long double a, long double b, long double c, long double d, bool a_zero);

template <class T>
std::complex<long double> upper_root(const Cubic<T>& f) {
    return upper_root_ld(to_ld(f.a), to_ld(f.b), to_ld(f.c), to_ld(f.d), f.a == 0);
}

inline constexpr long double kDomainSlack = 1e-9L;

inline bool in_domain(std::complex<long double> z, long double eps = kDomainSlack) {
    return std::abs(z.real()) <= 0.5L + eps && std::norm(z) >= 1.0L - eps;
}

// Moves f to a form whose covariant point lies in the fundamental domain.
template <class T>
Cubic<T> reduce_form(Cubic<T> f) {
    using W = typename Wide<T>::type;
    const W D = disc(f);
    if (D == 0) throw std::domain_error("degenerate cubic form");
    if (D > 0) {
        for (int it = 0; it < 100000; ++it) {
            Hess<T> h = hessian(f);
            if (absw(h.Q) > h.P) {
                const W k = floordiv<W>(h.P - h.Q, 2 * h.P);
                f = act(Mat{1, 0, w_to_i64(k), 1}, f);
                continue;
            }
            if (h.P > h.R) {
                f = act(Mat{0, 1, 1, 0}, f);
                continue;
            }
            return f;
        }
        throw std::runtime_error("Hessian reduction did not terminate");
    }
    for (int it = 0; it < 100000; ++it) {
        const auto z = upper_root(f);
        if (std::abs(z.real()) > 0.5L + 1e-12L) {
            const i64 n = static_cast<i64>(std::llround(z.real()));
            f = act(Mat{1, 0, n, 1}, f);
            continue;
        }
        if (std::norm(z) < 1.0L - 1e-12L) {
            f = act(Mat{0, 1, -1, 0}, f);
            continue;
        }
        return f;
    }
    throw std::runtime_error("root reduction did not terminate");
}

struct Canonical {
    Cubic64 form;
    int stabilizer;
};

// f must already be reduced (output of reduce_form)
Canonical canonicalize_reduced(const Cubic64& f);
Canonical canonicalize(const Cubic64& f);
Canonical canonicalize(const Cubic<Integer>& f);

}  // namespace onrefl::reduce
