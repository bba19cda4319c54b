#include "onrefl/reduce.hpp"

#include <cmath>

namespace onrefl::reduce {

const std::vector<Mat>& small_matrices() {
    static const std::vector<Mat> mats = [] {
        std::vector<Mat> out;
        for (i64 a = -2; a <= 2; ++a)
            for (i64 b = -2; b <= 2; ++b)
                for (i64 c = -2; c <= 2; ++c)
                    for (i64 d = -2; d <= 2; ++d) {
                        Mat m{a, b, c, d};
                        const i64 det = m.det();
                        if (det == 1 || det == -1) out.push_back(m);
                    }
        return out;
    }();
    return mats;
}

namespace {

using cld = std::complex<long double>;

cld horner(long double a, long double b, long double c, long double d, cld x) {
    return ((a * x + b) * x + c) * x + d;
}

cld horner_deriv(long double a, long double b, long double c, cld x) {
    return (3.0L * a * x + 2.0L * b) * x + c;
}

long double real_root(long double a, long double b, long double c, long double d) {
    const long double p2 = b / a, p1 = c / a, p0 = d / a;
    const long double p = p1 - p2 * p2 / 3.0L;
    const long double q = 2.0L * p2 * p2 * p2 / 27.0L - p2 * p1 / 3.0L + p0;
    long double delta = q * q / 4.0L + p * p * p / 27.0L;
    if (delta < 0) delta = 0;
    const long double s = std::sqrt(delta);
    long double y = std::cbrt(-q / 2.0L + s) + std::cbrt(-q / 2.0L - s);
    long double x = y - p2 / 3.0L;
    for (int i = 0; i < 8; ++i) {
        const long double fx = ((a * x + b) * x + c) * x + d;
        const long double dfx = (3.0L * a * x + 2.0L * b) * x + c;
        if (dfx == 0) break;
        const long double nx = x - fx / dfx;
        if (nx == x) break;
        x = nx;
    }
    return x;
}

}  // namespace

std::complex<long double> upper_root_ld(long double a, long double b, long double c, long double d, bool a_zero) {
    cld z;
    if (a_zero) {
        const long double disc = 4.0L * b * d - c * c;
        z = cld(-c / (2.0L * b), std::sqrt(std::abs(disc)) / std::abs(2.0L * b));
        return z;
    }
    const long double th = real_root(a, b, c, d);
    const long double qa = a, qb = b + a * th, qc = c + b * th + a * th * th;
    const long double disc = 4.0L * qa * qc - qb * qb;
    z = cld(-qb / (2.0L * qa), std::sqrt(std::abs(disc)) / std::abs(2.0L * qa));
    for (int i = 0; i < 4; ++i) {
        const cld df = horner_deriv(a, b, c, z);
        if (std::abs(df) == 0) break;
        z -= horner(a, b, c, d, z) / df;
    }
    if (z.imag() < 0) z = std::conj(z);
    return z;
}

namespace {

bool hessian_reduced(const Cubic64& f) {
    const Hess<i64> h = hessian(f);
    return absw(h.Q) <= h.P && h.P <= h.R;
}

// image of the covariant point under g, matching act(g, .)
cld moved_point(const Mat& g, cld rho) {
    const long double a11 = g.a11, a12 = g.a12, a21 = g.a21, a22 = g.a22;
    cld z = (a22 * rho - a21) / (a11 - a12 * rho);
    if (z.imag() < 0) z = std::conj(z);
    return z;
}

}  // namespace

Canonical canonicalize_reduced(const Cubic64& f) {
    const bool positive = disc(f) > 0;
    Cubic64 best = f;
    int stab = 0;
    cld rho{};
    if (!positive) rho = upper_root(f);
    for (const Mat& g : small_matrices()) {
        if (!positive && !in_domain(moved_point(g, rho), 1e-6L)) continue;
        const Cubic64 h = act(g, f);
        if (h == f) ++stab;
        const bool member = positive ? hessian_reduced(h) : in_domain(upper_root(h));
        if (member && h < best) best = h;
    }
    return {best, stab};
}

Canonical canonicalize(const Cubic64& f) { return canonicalize_reduced(reduce_form(f)); }

Canonical canonicalize(const Cubic<Integer>& f) {
    const Cubic<Integer> r = reduce_form(f);
    return canonicalize_reduced(Cubic64{to_i64(r.a), to_i64(r.b), to_i64(r.c), to_i64(r.d)});
}

}  // namespace onrefl::reduce
