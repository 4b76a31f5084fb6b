#pragma once

// Boundary circles of the special cycles C_n on the Sol boundary of a Hilbert
// modular surface (one cusp, the ring of integers of Q(sqrt d)), and their
// exact linking numbers.
//
// Lattice model (K-model): the fiber torus is K_R / O_K with symplectic form
// <l, m> = (l m' - l' m)/sqrt(disc), and the gluing is multiplication by eps'.
// The boundary of C_n consists of the circles c_x for lattice vectors x in O_K
// with x x' = n, taken modulo the totally positive units. Each circle runs in
// the direction of x; there are min'|<l, x>| parallel copies of it.
//
// The quadratic-form description (W-model: Lambda_W = O_K / sqrt(disc) with
// (w, z) = Tr(w z'), J x orthogonal to x) is provided by `WLattice` and
// `j_perp`; a W-vector w corresponds to the fiber class sqrt(disc) * w, so
// the coordinates of J x in Lambda_W are exactly its fiber class in (1, omega).

#include "sollink/qfield.hpp"
#include "sollink/sol.hpp"

#include <future>
#include <map>
#include <utility>
#include <vector>

namespace sollink {

/// <l, m> = (l m' - l' m) / sqrt(disc).
inline Rational symplectic_pairing(const FieldData& field, const QuadElem& l, const QuadElem& m)
{
    QuadElem num = l * m.conj() - l.conj() * m;
    QuadElem q = num / field.sqrt_disc();
    if (!q.is_rational()) throw ConsistencyError("symplectic pairing is not rational");
    return q.a();
}

struct BoundaryComponent {
    NormClass cls;
    Integer multiplicity;
    QuadElem fiber_label; // rep / rep'; equal labels <=> same fiber
};

/// Gram matrix of the quadratic form on a Z-basis of the lattice Lambda_W.
struct WLattice {
    QMat2 gram;
};

inline WLattice diagonal_lattice(std::int64_t p, std::int64_t q)
{
    return {{{{Rational(p), Rational(0)}, {Rational(0), Rational(q)}}}};
}

/// Lambda_W = O_K / sqrt(disc) on the basis (1/sqrt(disc), omega/sqrt(disc)).
inline WLattice k_model_lattice(const FieldData& field)
{
    const QuadElem basis[2] = {field.one(), field.omega()};
    WLattice lat;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) lat.gram[i][j] = -(basis[i] * basis[j].conj()).trace() / field.disc;
    return lat;
}

/// Lambda_W coordinates of a vector x of L_W = O_K.
inline QVec2 k_model_coords(const FieldData& field, const QuadElem& x)
{
    QuadElem y = field.sqrt_disc() * x;
    return {y.a(), y.b()};
}

/// Primitive lattice vector J x with (J x, x) = 0 and (x, J x) positively oriented.
inline IVec2 j_perp(const WLattice& lat, const QVec2& x)
{
    if (x[0] == 0 && x[1] == 0) throw InputError("j_perp: x must be nonzero");
    QVec2 gx = mul(lat.gram, x);
    if (gx[0] == 0 && gx[1] == 0) throw InputError("j_perp: x lies in the radical of the form");
    // y = (gx1, -gx0) is orthogonal; clear denominators and make primitive
    Integer l = boost::multiprecision::lcm(denom(gx[0]), denom(gx[1]));
    IVec2 y{numer(gx[1] * l), numer(-gx[0] * l)};
    Integer g = gcd(y[0], y[1]);
    y = {y[0] / g, y[1] / g};
    if (det2(x, to_q(y)) < 0) y = {-y[0], -y[1]};
    return y;
}

inline IVec2 j_perp(const FieldData& field, const QuadElem& x)
{
    return j_perp(k_model_lattice(field), k_model_coords(field, x));
}

/// Fiber class of the boundary circle c_x. The circles of x and -x coincide
/// as oriented curves, so J is applied to the totally positive one of +-x.
inline IVec2 circle_class(const FieldData& field, const QuadElem& x)
{
    return j_perp(field, x.totally_positive() ? x : -x);
}

inline QuadElem class_element(const FieldData& field, const IVec2& v) { return field.element(Rational(v[0]), Rational(v[1])); }

/// min' over l in O_K of |<l, mu>|: gcd of the pairings with the basis (1, omega).
inline Integer boundary_multiplicity(const FieldData& field, const QuadElem& mu)
{
    Rational p0 = symplectic_pairing(field, field.one(), mu);
    Rational p1 = symplectic_pairing(field, field.omega(), mu);
    if (!is_integer(p0) || !is_integer(p1)) throw ConsistencyError("pairing of integral elements is not integral");
    Integer g = gcd(numer(p0), numer(p1));
    if (g == 0) throw ConsistencyError("boundary vector pairs trivially with the lattice");
    return g;
}

inline std::vector<BoundaryComponent> boundary_components(const FieldData& field, const Rational& n)
{
    std::vector<BoundaryComponent> out;
    for (auto& cls : enumerate_norm_classes(field, n)) {
        BoundaryComponent c;
        c.multiplicity = boundary_multiplicity(field, cls.rep);
        c.fiber_label = cls.rep / cls.rep.conj();
        c.cls = std::move(cls);
        out.push_back(std::move(c));
    }
    return out;
}

/// The gluing in fiber coordinates on the basis (omega, 1), which is
/// positively oriented for the symplectic form; there <., .> is det2.
inline SolManifold oriented_gluing(const FieldData& field)
{
    const IMat2& f = glueing_from_unit(field).f;
    return make_sol(IMat2{{{f[1][1], f[1][0]}, {f[0][1], f[0][0]}}});
}

inline FiberClass oriented_class(const IVec2& v) { return FiberClass(v[1], v[0]); }

namespace detail {

/// Sum over lattice vectors x = +-mu of norm n and over the components y of
/// C_m of min'(x) min'(y) <g J x, J y>. The first argument is the full
/// boundary of C_n (x and -x are inequivalent under the totally positive
/// units); the second counts each geometric component once.
inline Rational link_components(const SolManifold& oriented, const FieldData& field,
                                const std::vector<BoundaryComponent>& first,
                                const std::vector<BoundaryComponent>& second)
{
    Rational total = 0;
    for (const auto& x : first) {
        for (int s : {1, -1}) {
            const QuadElem xv = Rational(s) * x.cls.rep;
            const FiberClass jx = oriented_class(circle_class(field, xv));
            for (const auto& y : second) {
                const FiberClass jy = oriented_class(circle_class(field, y.cls.rep));
                total += Rational(x.multiplicity * y.multiplicity) * link_fiber(oriented, jx, jy);
            }
        }
    }
    return total;
}

} // namespace detail

inline Rational link_boundary(const FieldData& field, const Rational& n, const Rational& m)
{
    if (n <= 0 || m <= 0) throw InputError("link_boundary: n and m must be positive");
    return detail::link_components(oriented_gluing(field), field, boundary_components(field, n), boundary_components(field, m));
}

/// (2/sqrt(disc)) * sum over classes mu of norm n of (mu + mu' eps)/(eps - 1).
inline Rational link_boundary_closed(const FieldData& field, const Rational& n)
{
    if (n <= 0) throw InputError("link_boundary_closed: n must be positive");
    if (enumerate_norm_classes(field, 1).empty()) throw InputError("field has no boundary component of norm 1");
    const QuadElem eps_m1 = field.eps - field.one();
    QuadElem total = field.element(0);
    for (const auto& cls : enumerate_norm_classes(field, n)) {
        const QuadElem& mu = cls.rep;
        total = total + (mu + mu.conj() * field.eps) / eps_m1;
    }
    QuadElem value = Rational(2) * total / field.sqrt_disc();
    if (!value.is_rational())
        throw ConsistencyError("closed-form linking number for n = " + to_string(n) + " is irrational: " + value.str());
    return value.a();
}

struct LinkTable {
    FieldData field;
    int nmax = 0;
    Integer n_det;
    std::map<std::pair<int, int>, Rational> entries;

    const Rational& at(int n, int m) const { return entries.at({n, m}); }
};

/// All Lk(dC_n, dC_m) for 1 <= n, m <= nmax; rows are computed on up to
/// `threads` workers and merged in index order.
inline LinkTable link_table(const FieldData& field, int nmax, int threads = 1)
{
    if (nmax < 1) throw InputError("link_table: nmax must be >= 1");
    LinkTable table;
    table.field = field;
    table.nmax = nmax;
    const SolManifold oriented = oriented_gluing(field);
    table.n_det = oriented.n_det;

    std::vector<std::vector<BoundaryComponent>> comps(nmax + 1);
    for (int n = 1; n <= nmax; ++n) comps[n] = boundary_components(field, n);

    auto row = [&](int n) {
        std::vector<Rational> r(nmax + 1);
        for (int m = 1; m <= nmax; ++m) r[m] = detail::link_components(oriented, field, comps[n], comps[m]);
        return r;
    };

    std::vector<std::vector<Rational>> rows(nmax + 1);
    threads = std::max(1, std::min(threads, nmax));
    if (threads == 1) {
        for (int n = 1; n <= nmax; ++n) rows[n] = row(n);
    } else {
        for (int start = 1; start <= nmax; start += threads) {
            std::vector<std::future<std::vector<Rational>>> batch;
            for (int n = start; n < start + threads && n <= nmax; ++n) batch.push_back(std::async(std::launch::async, row, n));
            for (int i = 0; i < int(batch.size()); ++i) rows[start + i] = batch[i].get();
        }
    }
    for (int n = 1; n <= nmax; ++n) {
        for (int m = 1; m <= nmax; ++m) {
            if (!is_integer(rows[n][m] * Rational(table.n_det)))
                throw ConsistencyError("N_det * Lk(" + std::to_string(n) + "," + std::to_string(m) + ") is not integral");
            table.entries[{n, m}] = std::move(rows[n][m]);
        }
    }
    return table;
}

} // namespace sollink
