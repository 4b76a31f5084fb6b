#pragma once

// Sol 3-manifolds as torus bundles (s, w) ~ (s + 1, f(w)) over the circle, with
// f in SL(2, Z) hyperbolic. Circles are closed geodesics in torus fibers, named
// by their class in H1(T^2, Z) = Z^2.
//
// Two independent routes to the linking number of fiber circles:
//   link_fiber     closed form <g a, b> with g = (f^-1 - I)^-1
//   cap_intersect  intersection of an explicit rational cap chain with the
//                  pushed-off circle (the oracle)

#include "sollink/qfield.hpp"
#include "sollink/rational.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace sollink {

using IMat2 = std::array<IVec2, 2>; // row-major
using QMat2 = std::array<QVec2, 2>;

inline IVec2 mul(const IMat2& m, const IVec2& v) { return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]}; }
inline QVec2 mul(const QMat2& m, const QVec2& v) { return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]}; }

inline IMat2 mul(const IMat2& x, const IMat2& y)
{
    IMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

inline Integer det(const IMat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
inline Integer trace(const IMat2& m) { return m[0][0] + m[1][1]; }
inline IMat2 adjugate(const IMat2& m) { return {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}}; }

inline IMat2 imat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
{
    return {{{Integer(a), Integer(b)}, {Integer(c), Integer(d)}}};
}

inline std::string to_string(const IMat2& m)
{
    return "[[" + m[0][0].str() + "," + m[0][1].str() + "],[" + m[1][0].str() + "," + m[1][1].str() + "]]";
}

struct SolManifold {
    IMat2 f;
    QMat2 g;       // (f^-1 - I)^-1
    Integer n_det; // det(f^-1 - I)

    IMat2 f_inverse() const { return adjugate(f); }
};

struct FiberClass {
    IVec2 v{0, 0};

    FiberClass() = default;
    FiberClass(Integer x, Integer y) : v{std::move(x), std::move(y)} {}
    explicit FiberClass(IVec2 w) : v(std::move(w)) {}

    bool is_zero() const { return v[0] == 0 && v[1] == 0; }
    friend FiberClass operator+(const FiberClass& a, const FiberClass& b) { return {a.v[0] + b.v[0], a.v[1] + b.v[1]}; }
    friend bool operator==(const FiberClass& a, const FiberClass& b) { return a.v == b.v; }
};

inline SolManifold make_sol(const IMat2& f)
{
    if (det(f) != 1) throw InputError("gluing matrix " + to_string(f) + " is not in SL(2,Z)");
    if (abs(trace(f)) <= 2) throw InputError("gluing matrix " + to_string(f) + " is not hyperbolic (|trace| <= 2)");
    IMat2 a = adjugate(f); // f^-1 since det f = 1
    a[0][0] -= 1;
    a[1][1] -= 1;
    SolManifold m;
    m.f = f;
    m.n_det = det(a);
    IMat2 adj = adjugate(a);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.g[i][j] = ratio(adj[i][j], m.n_det);
    return m;
}

/// Gluing by multiplication with eps' on the integer basis (1, omega).
inline SolManifold glueing_from_unit(const FieldData& field)
{
    const QuadElem ec = field.eps.conj();
    const QuadElem c0 = ec * field.one();
    const QuadElem c1 = ec * field.omega();
    IMat2 f = {{{numer(c0.a()), numer(c1.a())}, {numer(c0.b()), numer(c1.b())}}};
    return make_sol(f);
}

/// Lk(a, b) with b pushed off to positive s: <g a, b>.
inline Rational link_fiber(const SolManifold& m, const FiberClass& a, const FiberClass& b)
{
    return det2(mul(m.g, to_q(a.v)), to_q(b.v));
}

// ---------------------------------------------------------------------------
// Cap chains

/// P + (1/N) T + (1/N) M(gamma0) + fiber_correction * [T^2 at s = 0].
///
/// P is the parallelogram 0 -> o -> o+a -> a translating the circle through o
/// to the circle through the origin; T is the triangle (0, gamma0, f^-1 gamma0);
/// M(gamma0) is the cylinder gamma0 x [0, 1]. The closed fiber term has no
/// boundary and fixes the area-form period to 0.
struct CapChain {
    FiberClass circle;
    QVec2 base_offset{0, 0};
    std::vector<QVec2> parallelogram;
    std::vector<QVec2> triangle;
    IVec2 monodromy_class{0, 0};
    Rational weight;
    Rational fiber_correction;

    bool empty() const { return parallelogram.empty() && triangle.empty(); }
};

namespace detail {

inline Rational signed_area(const std::vector<QVec2>& poly)
{
    Rational twice = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) twice += det2(poly[i], poly[(i + 1) % poly.size()]);
    return twice / 2;
}

inline Rational frac(const Rational& x)
{
    Integer fl = floor_div(numer(x), denom(x));
    return x - Rational(fl);
}

} // namespace detail

inline CapChain build_cap(const SolManifold& m, const FiberClass& a, const QVec2& offset = {0, 0})
{
    CapChain cap;
    cap.circle = a;
    cap.base_offset = offset;
    cap.weight = ratio(1, m.n_det);
    if (a.is_zero()) {
        cap.weight = 0;
        cap.fiber_correction = 0;
        return cap;
    }
    const QVec2 av = to_q(a.v);
    const QVec2 o = offset;
    cap.parallelogram = {QVec2{0, 0}, o, QVec2{o[0] + av[0], o[1] + av[1]}, av};
    // gamma0 solves f^-1(gamma0) - gamma0 = N a; N (f^-1 - I)^-1 = adj(f^-1 - I)
    IMat2 shifted = m.f_inverse();
    shifted[0][0] -= 1;
    shifted[1][1] -= 1;
    cap.monodromy_class = mul(adjugate(shifted), a.v);
    const IVec2 d = mul(m.f_inverse(), cap.monodromy_class);
    cap.triangle = {QVec2{0, 0}, to_q(cap.monodromy_class), to_q(d)};
    cap.fiber_correction = -(detail::signed_area(cap.parallelogram) + cap.weight * detail::signed_area(cap.triangle));
    return cap;
}

/// Period of the fiber area form over the cap. The cylinder is vertical and
/// carries no fiber area; the closed fiber term contributes its coefficient.
inline Rational cap_area_period(const CapChain& cap)
{
    if (cap.empty()) return cap.fiber_correction;
    return detail::signed_area(cap.parallelogram) + cap.weight * detail::signed_area(cap.triangle) + cap.fiber_correction;
}

/// Formal rational 1-chain on T^2: straight segments modulo Z^2 translation.
///
/// A segment with integral displacement k*p (p primitive, canonically
/// oriented) is a closed geodesic traversed k times; it is keyed by p and the
/// line invariant det(p, start) mod 1. Other segments are keyed by their
/// start point mod 1 and canonically oriented displacement.
class FiberChain {
public:
    void add_segment(const QVec2& start, const QVec2& end, const Rational& coeff)
    {
        QVec2 v{end[0] - start[0], end[1] - start[1]};
        if (v[0] == 0 && v[1] == 0) return;
        if (is_integer(v[0]) && is_integer(v[1])) {
            IVec2 iv{numer(v[0]), numer(v[1])};
            Integer k = gcd(iv[0], iv[1]);
            IVec2 p{iv[0] / k, iv[1] / k};
            Rational c = coeff * Rational(k);
            if (p[0] < 0 || (p[0] == 0 && p[1] < 0)) {
                p = {-p[0], -p[1]};
                c = -c;
            }
            Key key{true, to_q(p), {detail::frac(det2(to_q(p), start)), 0}};
            add(key, c);
            return;
        }
        QVec2 s = start;
        Rational c = coeff;
        if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) {
            s = end;
            v = {-v[0], -v[1]};
            c = -c;
        }
        add(Key{false, v, {detail::frac(s[0]), detail::frac(s[1])}}, c);
    }

    /// Closed geodesic of class v through `start`.
    void add_circle(const IVec2& v, const QVec2& start, const Rational& coeff)
    {
        add_segment(start, {start[0] + Rational(v[0]), start[1] + Rational(v[1])}, coeff);
    }

    void add_polygon_boundary(const std::vector<QVec2>& poly, const Rational& coeff)
    {
        for (std::size_t i = 0; i < poly.size(); ++i) add_segment(poly[i], poly[(i + 1) % poly.size()], coeff);
    }

    FiberChain& operator-=(const FiberChain& o)
    {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

private:
    struct Key {
        bool closed;
        QVec2 direction;
        QVec2 anchor;
        friend bool operator<(const Key& x, const Key& y)
        {
            return std::tie(x.closed, x.direction, x.anchor) < std::tie(y.closed, y.direction, y.anchor);
        }
    };

    void add(const Key& k, const Rational& c)
    {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(k, c);
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    std::map<Key, Rational> terms_;
};

/// Boundary of the cap as a 1-chain in the s = 0 fiber. The two ends of the
/// cylinder gamma0 x [0, 1] are identified through the gluing, so its boundary
/// there is f^-1(gamma0) - gamma0.
inline FiberChain cap_boundary(const CapChain& cap, const SolManifold& m)
{
    FiberChain chain;
    if (cap.empty()) return chain;
    chain.add_polygon_boundary(cap.parallelogram, 1);
    chain.add_polygon_boundary(cap.triangle, cap.weight);
    const IVec2 g0 = cap.monodromy_class;
    chain.add_circle(mul(m.f_inverse(), g0), {0, 0}, cap.weight);
    chain.add_circle(g0, {0, 0}, -cap.weight);
    return chain;
}

/// True when the boundary of the cap is exactly the circle of class `circle`
/// through the base offset.
inline bool cap_boundary_matches(const CapChain& cap, const SolManifold& m)
{
    FiberChain expected;
    if (!cap.circle.is_zero()) expected.add_circle(cap.circle.v, cap.base_offset, 1);
    FiberChain got = cap_boundary(cap, m);
    got -= expected;
    return got.is_zero();
}

/// Signed count of transverse crossings of the closed geodesics of classes u
/// and v on T^2 (v displaced off u). A class k*p runs k times around the
/// primitive geodesic p. Lifting v's geodesic to the family of lines
/// det(pv, w) = c + Z, the segment 0 -> pu meets that family once per integer
/// in the half-open interval (c, c + det(pv, pu)].
inline Integer crossing_number(const IVec2& u, const IVec2& v)
{
    if ((u[0] == 0 && u[1] == 0) || (v[0] == 0 && v[1] == 0)) return 0;
    const Integer gu = gcd(u[0], u[1]);
    const Integer gv = gcd(v[0], v[1]);
    const IVec2 pu{u[0] / gu, u[1] / gu};
    const IVec2 pv{v[0] / gv, v[1] / gv};
    const Integer span = det2(pv, pu);
    if (span == 0) return 0;
    // c = 1/2 (generic): hits are integers m with 1/2 < m <= 1/2 + span (or reversed)
    const Integer lo = span > 0 ? Integer(0) : span;
    const Integer hi = span > 0 ? span : Integer(0);
    const Integer hits = floor_div(2 * hi + 1, 2) - floor_div(2 * lo + 1, 2);
    // the frame (pu, pv) is positive iff det(pu, pv) > 0, i.e. span < 0
    const int orientation = span < 0 ? 1 : -1;
    return gu * gv * hits * orientation;
}

/// Intersection of the cap with the circle of class b in the fiber s_b.
/// Only the cylinder gamma0 x [0, 1] reaches fibers with 0 < s_b < 1, where it
/// appears as the curve gamma0 with weight 1/N.
inline Rational cap_intersect(const CapChain& cap, const SolManifold& m, const FiberClass& b, const Rational& s_b)
{
    (void)m;
    if (s_b <= 0 || s_b >= 1) throw InputError("fiber parameter s_b must lie strictly between 0 and 1, got " + to_string(s_b));
    if (cap.empty()) return 0;
    return cap.weight * Rational(crossing_number(cap.monodromy_class, b.v));
}

} // namespace sollink
