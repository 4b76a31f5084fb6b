#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt d), their unit groups, and
// totally positive elements of prescribed norm modulo totally positive units.
//
// Elements are stored as a + b*omega with rational a, b, where omega is the
// standard integral basis element: (1 + sqrt d)/2 when d = 1 mod 4, else
// sqrt d. The real embedding takes sqrt d > 0; the Galois conjugate sends
// sqrt d to -sqrt d. Every order comparison is decided exactly.

#include "sollink/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

namespace sollink {

class QuadElem {
public:
    QuadElem() = default;
    QuadElem(std::int64_t d, Rational a, Rational b = 0) : d_(d), a_(std::move(a)), b_(std::move(b)) {}

    std::int64_t d() const { return d_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    /// Trace and norm of omega: omega^2 = omega_trace*omega - omega_norm.
    std::int64_t omega_trace() const { return d_ % 4 == 1 ? 1 : 0; }
    std::int64_t omega_norm() const { return d_ % 4 == 1 ? (1 - d_) / 4 : -d_; }

    bool is_integral() const { return is_integer(a_) && is_integer(b_); }
    bool is_rational() const { return b_ == 0; }

    QuadElem conj() const { return {d_, a_ + b_ * omega_trace(), -b_}; }
    Rational norm() const { return a_ * a_ + a_ * b_ * omega_trace() + b_ * b_ * omega_norm(); }
    Rational trace() const { return 2 * a_ + b_ * omega_trace(); }

    /// Sign of the real embedding (sqrt d > 0).
    int sign() const
    {
        // value = p + q*sqrt(d)
        Rational p = a_, q = b_;
        if (omega_trace() == 1) {
            p += b_ / 2;
            q = b_ / 2;
        }
        int sp = p.sign(), sq = q.sign();
        if (sq == 0) return sp;
        if (sp == 0) return sq;
        if (sp == sq) return sp;
        Rational lhs = p * p, rhs = q * q * d_;
        return lhs > rhs ? sp : sq; // equality impossible for squarefree d > 1
    }

    bool totally_positive() const { return sign() > 0 && conj().sign() > 0; }

    double to_double() const
    {
        double w = omega_trace() == 1 ? (1.0 + std::sqrt(double(d_))) / 2.0 : std::sqrt(double(d_));
        return sollink::to_double(a_) + sollink::to_double(b_) * w;
    }

    QuadElem inverse() const
    {
        Rational n = norm();
        if (n == 0) throw std::domain_error("inverse of zero field element");
        QuadElem c = conj();
        return {d_, c.a_ / n, c.b_ / n};
    }

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y)
    {
        check_same(x, y);
        return {x.d_, x.a_ + y.a_, x.b_ + y.b_};
    }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y)
    {
        check_same(x, y);
        return {x.d_, x.a_ - y.a_, x.b_ - y.b_};
    }
    friend QuadElem operator-(const QuadElem& x) { return {x.d_, -x.a_, -x.b_}; }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y)
    {
        check_same(x, y);
        Rational bb = x.b_ * y.b_;
        return {x.d_, x.a_ * y.a_ - bb * x.omega_norm(), x.a_ * y.b_ + x.b_ * y.a_ + bb * x.omega_trace()};
    }
    friend QuadElem operator*(const Rational& r, const QuadElem& x) { return {x.d_, r * x.a_, r * x.b_}; }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inverse(); }

    friend bool operator==(const QuadElem& x, const QuadElem& y)
    {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

    /// Strict order of real embeddings.
    friend bool operator<(const QuadElem& x, const QuadElem& y) { return (y - x).sign() > 0; }

    /// Lexicographic order on (a, b); used for deterministic listings.
    friend bool coord_less(const QuadElem& x, const QuadElem& y)
    {
        return std::tie(x.a_, x.b_) < std::tie(y.a_, y.b_);
    }

    std::string str() const
    {
        if (b_ == 0) return to_string(a_);
        std::string w = omega_trace() == 1 ? "w" : "sqrt(" + std::to_string(d_) + ")";
        std::string bs = b_ == 1 ? w : (b_ == -1 ? "-" + w : to_string(b_) + "*" + w);
        if (a_ == 0) return bs;
        return to_string(a_) + (b_ > 0 ? "+" : "") + bs;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << x.str(); }

private:
    static void check_same(const QuadElem& x, const QuadElem& y)
    {
        if (x.d_ != y.d_) throw std::invalid_argument("field elements from different fields");
    }

    std::int64_t d_ = 0;
    Rational a_;
    Rational b_;
};

struct FieldData {
    std::int64_t d = 0;
    std::int64_t disc = 0;
    std::string omega_desc;
    QuadElem eps0; // fundamental unit > 1
    int eps0_norm = 0;
    QuadElem eps; // generator of the totally positive units, > 1

    QuadElem one() const { return {d, 1}; }
    QuadElem omega() const { return {d, 0, 1}; }
    QuadElem element(Rational a, Rational b = 0) const { return {d, std::move(a), std::move(b)}; }
    /// sqrt(disc) = omega - omega', an element of the integer ring.
    QuadElem sqrt_disc() const { return omega() - omega().conj(); }
};

struct NormClass {
    QuadElem rep;
    Rational n;
};

namespace detail {

/// Smallest unit > 1 of Z[omega] from the continued fraction of omega.
///
/// omega = (P + sqrt D)/Q is expanded with the usual integer recurrences; the
/// first convergent p/q with |Norm(p - q*omega)| = 1 yields the unit
/// p - q*omega', whose conjugate is the small quantity p - q*omega.
inline QuadElem fundamental_unit_cf(std::int64_t d)
{
    const Integer D = d;
    const Integer s = isqrt(D);
    Integer P = d % 4 == 1 ? 1 : 0;
    Integer Q = d % 4 == 1 ? 2 : 1;
    const Integer t = d % 4 == 1 ? 1 : 0;
    const Integer nw = d % 4 == 1 ? Integer((1 - d) / 4) : Integer(-d);

    Integer p_prev = 1, p_prev2 = 0;
    Integer q_prev = 0, q_prev2 = 1;
    for (int iter = 0; iter < 1'000'000; ++iter) {
        if (Q <= 0) throw ConsistencyError("continued fraction of omega left the reduced range");
        Integer a = floor_div(P + s, Q);
        Integer p = a * p_prev + p_prev2;
        Integer q = a * q_prev + q_prev2;
        Integer norm = p * p - p * q * t + q * q * nw; // Norm(p - q*omega)
        if (norm == 1 || norm == -1) {
            // p - q*omega' = (p - q*t) + q*omega
            return QuadElem(d, Rational(p - q * t), Rational(q));
        }
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw ConsistencyError("continued fraction period not closed for d = " + std::to_string(d));
}

} // namespace detail

inline QuadElem fundamental_unit(const FieldData& field) { return detail::fundamental_unit_cf(field.d); }

inline FieldData make_field(std::int64_t d)
{
    if (d <= 1) throw InputError("d must be > 1, got " + std::to_string(d));
    if (!is_squarefree(d)) throw InputError("d must be squarefree, got " + std::to_string(d));
    FieldData f;
    f.d = d;
    f.disc = d % 4 == 1 ? d : 4 * d;
    f.omega_desc = d % 4 == 1 ? "(1+sqrt(" + std::to_string(d) + "))/2" : "sqrt(" + std::to_string(d) + ")";
    f.eps0 = fundamental_unit(f);
    f.eps0_norm = f.eps0.norm() == 1 ? 1 : -1;
    f.eps = f.eps0_norm == 1 ? f.eps0 : f.eps0 * f.eps0;
    return f;
}

/// Move a totally positive mu into the fundamental domain 1 <= mu/mu' < eps^2.
inline QuadElem reduce(const FieldData& field, QuadElem mu)
{
    if (!mu.totally_positive()) throw InputError("reduce: element " + mu.str() + " is not totally positive");
    const QuadElem eps_inv = field.eps.conj();
    const QuadElem eps_sq = field.eps * field.eps;
    // mu/mu' < 1  <=>  mu < mu'   (mu' > 0)
    while (mu < mu.conj()) mu = mu * field.eps;
    // mu/mu' >= eps^2  <=>  mu >= eps^2 mu'
    while (!(mu < eps_sq * mu.conj())) mu = mu * eps_inv;
    return mu;
}

inline bool is_reduced(const FieldData& field, const QuadElem& mu)
{
    return mu.totally_positive() && !(mu < mu.conj()) && mu < field.eps * field.eps * mu.conj();
}

/// U+-orbit representatives of totally positive integers of norm n, sorted by (a, b).
///
/// A reduced mu = a + b*omega has mu - mu' = b*sqrt(disc) in [0, sqrt(n)*(eps - eps')),
/// so 0 <= b < sqrt(n)*y where eps = x + y*omega; for each b the norm equation
/// a^2 + t*b*a + Nw*b^2 = n is solved for a exactly.
inline std::vector<NormClass> enumerate_norm_classes(const FieldData& field, const Rational& n)
{
    if (n <= 0) throw InputError("norm must be positive, got " + to_string(n));
    std::vector<NormClass> out;
    if (!is_integer(n)) return out;
    const Integer N = numer(n);
    const Integer y = numer(field.eps.b());
    const Integer t = field.one().omega_trace();
    const Integer yy_n = y * y * N;
    for (Integer b = 0; b * b < yy_n; ++b) {
        Integer disc_b = b * b * field.disc + 4 * N;
        Integer r;
        if (!is_square(disc_b, &r)) continue;
        for (int sgn : {-1, 1}) {
            Integer num = -t * b + sgn * r;
            if (num % 2 != 0) continue;
            QuadElem mu = field.element(Rational(num / 2), Rational(b));
            if (mu.norm() != n) throw ConsistencyError("norm equation solved incorrectly");
            if (!is_reduced(field, mu)) continue;
            if (std::none_of(out.begin(), out.end(), [&](const NormClass& c) { return c.rep == mu; }))
                out.push_back({mu, n});
        }
    }
    std::sort(out.begin(), out.end(), [](const NormClass& x, const NormClass& y2) { return coord_less(x.rep, y2.rep); });
    return out;
}

/// Every totally positive a + b*omega with |a|, |b| <= bound and norm n (unreduced).
/// Integer arithmetic only: for norm > 0 the element is totally positive iff its trace is.
inline std::vector<QuadElem> brute_force_norm_solutions(const FieldData& field, const Rational& n, std::int64_t bound)
{
    std::vector<QuadElem> out;
    if (!is_integer(n) || bound < 1) return out;
    const Integer target = numer(n);
    if (target <= 0) return out;
    const std::int64_t t = field.one().omega_trace();
    const std::int64_t nw = field.one().omega_norm();
    const __int128 goal = static_cast<__int128>(target.convert_to<long long>());
    for (std::int64_t a = -bound; a <= bound; ++a) {
        for (std::int64_t b = -bound; b <= bound; ++b) {
            const __int128 norm = __int128(a) * a + __int128(t) * a * b + __int128(nw) * b * b;
            if (norm == goal && 2 * a + t * b > 0) out.push_back(field.element(a, b));
        }
    }
    return out;
}

/// Coordinate bound that contains every reduced representative of norm n.
inline std::int64_t reduced_coordinate_bound(const FieldData& field, const Rational& n)
{
    // b < sqrt(n)*y; |a| <= (t*b + sqrt(b^2*disc + 4n))/2
    double nn = to_double(n);
    double y = to_double(field.eps.b());
    double bmax = std::ceil(std::sqrt(nn) * y);
    double amax = std::ceil((bmax + std::sqrt(bmax * bmax * double(field.disc) + 4 * nn)) / 2.0);
    return std::int64_t(std::max(bmax, amax)) + 1;
}

} // namespace sollink
