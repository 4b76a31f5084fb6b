#pragma once

// Scalar profiles on the Minkowski plane W_R = {x2 e2 + x3 e3}, (x, x) = x2^2 - x3^2:
// the singular Schwartz-type functions A, B (incomplete gamma), their
// piecewise companions A', B', the sum phi = (A + A', B + B'), and the kernel
// beta(s) of the boundary theta series. Double precision throughout.

#include "sollink/rational.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

namespace sollink {

struct WPoint {
    double x2 = 0;
    double x3 = 0;

    double q() const { return x2 * x2 - x3 * x3; }
};

struct EvalReport {
    double value = 0;
    bool singular = false;
    double est_error = 0;
    // one-sided limits across the singular line, when the value jumps there
    std::optional<double> limit_below;
    std::optional<double> limit_above;
};

namespace detail {

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt_pi = 1.7724538509055160273;

inline int sgn(double v) { return (v > 0) - (v < 0); }

/// e^x x^{-a} Gamma(a, x) by the modified Lentz continued fraction (x > a + 1).
inline double upper_gamma_scaled_cf(double a, double x)
{
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h;
}

} // namespace detail

/// Gamma(1/2, a) = sqrt(pi) erfc(sqrt(a)).
inline double gamma_half(double a)
{
    if (!(a >= 0)) throw InputError("gamma_half requires a >= 0");
    return detail::sqrt_pi * std::erfc(std::sqrt(a));
}

/// 16 pi e^s beta(s) = integral_0^inf e^{-s u} (1 + u)^{-3/2} du, stable for all s >= 0.
inline double beta_scaled(double s)
{
    if (!(s >= 0)) throw InputError("beta requires s >= 0");
    if (s < 2.0) return 2.0 - 2.0 * std::sqrt(detail::pi * s) * std::exp(s) * std::erfc(std::sqrt(s));
    return detail::upper_gamma_scaled_cf(-0.5, s);
}

/// beta(s) = (1/16 pi) integral_1^inf e^{-s t} t^{-3/2} dt.
inline EvalReport beta_fn(double s)
{
    if (!(s >= 0)) throw InputError("beta requires s >= 0");
    EvalReport r;
    if (s < 2.0)
        r.value = (2.0 * std::exp(-s) - 2.0 * std::sqrt(detail::pi * s) * std::erfc(std::sqrt(s))) / (16.0 * detail::pi);
    else
        r.value = std::exp(-s) * beta_scaled(s) / (16.0 * detail::pi);
    r.est_error = 1e-15;
    return r;
}

inline EvalReport B_profile(const WPoint& p)
{
    const double r2 = p.x2 * p.x2 + p.x3 * p.x3;
    EvalReport r;
    r.value = -std::exp(-detail::pi * r2) / (2.0 * std::numbers::sqrt2 * detail::pi)
        + std::fabs(p.x3) * gamma_half(2 * detail::pi * p.x3 * p.x3) * std::exp(-detail::pi * p.q()) / (2.0 * detail::sqrt_pi);
    r.est_error = 1e-15;
    return r;
}

inline EvalReport A_profile(const WPoint& p)
{
    EvalReport r;
    const double mag = p.x2 * gamma_half(2 * detail::pi * p.x3 * p.x3) * std::exp(-detail::pi * p.q()) / (2.0 * detail::sqrt_pi);
    r.est_error = 1e-15;
    if (p.x3 == 0) {
        r.singular = p.x2 != 0;
        r.value = 0;
        r.limit_below = -mag;
        r.limit_above = mag;
        return r;
    }
    r.value = detail::sgn(p.x3) * mag;
    return r;
}

inline EvalReport Bp_profile(const WPoint& p)
{
    EvalReport r;
    if (p.q() > 0) r.value = 0.5 * std::min(std::fabs(p.x2 - p.x3), std::fabs(p.x2 + p.x3)) * std::exp(-detail::pi * p.q());
    return r;
}

inline EvalReport Ap_profile(const WPoint& p)
{
    EvalReport r;
    const double b = Bp_profile(p).value;
    if (p.x3 == 0 || p.x2 == 0) {
        r.value = 0;
        if (b != 0) {
            r.singular = true;
            // across x3 = 0 (the x2 = 0 line lies outside the support)
            r.limit_below = detail::sgn(p.x2) * b;
            r.limit_above = -detail::sgn(p.x2) * b;
        }
        return r;
    }
    r.value = -detail::sgn(p.x2 * p.x3) * b;
    return r;
}

/// (A + A', B + B'). On x3 = 0 the jumps of A and A' cancel and the one-sided
/// limits of the sum are reported.
inline std::pair<EvalReport, EvalReport> phi_profile(const WPoint& p)
{
    const EvalReport a = A_profile(p), ap = Ap_profile(p), b = B_profile(p), bp = Bp_profile(p);
    EvalReport first;
    first.value = a.value + ap.value;
    first.singular = a.singular || ap.singular;
    first.est_error = a.est_error + ap.est_error;
    if (first.singular) {
        first.limit_below = a.limit_below.value_or(a.value) + ap.limit_below.value_or(ap.value);
        first.limit_above = a.limit_above.value_or(a.value) + ap.limit_above.value_or(ap.value);
    }
    EvalReport second;
    second.value = b.value + bp.value;
    second.est_error = b.est_error + bp.est_error;
    return {first, second};
}

/// m(s) p: hyperbolic rotation fixing (x, x).
inline WPoint orbit_action(double s, const WPoint& p)
{
    const double c = std::cosh(s), h = std::sinh(s);
    return {p.x2 * c + p.x3 * h, p.x2 * h + p.x3 * c};
}

/// X23 F(p) = d/ds F(m(-s) p) at s = 0, by central difference with step h.
inline double x23_derivative(const std::function<double(const WPoint&)>& f, const WPoint& p, double h = 1e-4)
{
    return (f(orbit_action(-h, p)) - f(orbit_action(h, p))) / (2 * h);
}

/// (-1/4pi)(d^2/dx2^2 - d^2/dx3^2) F + pi (x2^2 - x3^2) F, by second central differences.
inline double weil_weight_operator(const std::function<double(const WPoint&)>& f, const WPoint& p, double h = 1e-3)
{
    const double f0 = f(p);
    const double d22 = (f({p.x2 + h, p.x3}) - 2 * f0 + f({p.x2 - h, p.x3})) / (h * h);
    const double d33 = (f({p.x2, p.x3 + h}) - 2 * f0 + f({p.x2, p.x3 - h})) / (h * h);
    return -(d22 - d33) / (4 * detail::pi) + detail::pi * p.q() * f0;
}

} // namespace sollink
