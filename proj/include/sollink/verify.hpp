#pragma once

// Independent oracles and the invariant suites run by `sollink self-test`,
// the unit tests and the acceptance runner. The oracles deliberately avoid the
// code paths they check: units by Pell search instead of continued fractions,
// special functions by quadrature instead of erfc, linking numbers by crossing
// counts on a capping chain instead of the matrix g.

#include "sollink/qseries.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sollink {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
    double seconds = 0;
};

namespace oracle {

/// Smallest unit > 1 by search over y >= 1 in x^2 - disc*y^2 = -4, +4; the
/// unit is (x + y sqrt(disc))/2 and grows with y.
inline QuadElem pell_unit(const FieldData& field, std::uint64_t y_limit = 50'000'000)
{
    const std::uint64_t D = std::uint64_t(field.disc);
    const std::int64_t t = field.one().omega_trace();
    auto root = [](std::uint64_t v, std::uint64_t* r) {
        auto s = std::uint64_t(std::sqrt(double(v)));
        while (s * s > v) --s;
        while ((s + 1) * (s + 1) <= v) ++s;
        *r = s;
        return s * s == v;
    };
    for (std::uint64_t y = 1; y <= y_limit; ++y) {
        const std::uint64_t base = D * y * y;
        std::uint64_t x = 0;
        if (root(base - 4, &x) || root(base + 4, &x)) {
            // sqrt(disc) = 2 omega - t
            return field.element(ratio(Integer(x) - Integer(y) * t, 2), Rational(Integer(y)));
        }
    }
    throw ConsistencyError("Pell search exhausted for d = " + std::to_string(field.d));
}

/// No totally positive unit strictly between 1 and eps: every unit > 1 is
/// (x + y sqrt(disc))/2 with y >= 1, totally positive iff of norm +1.
inline bool eps_is_minimal(const FieldData& field)
{
    const QuadElem y_eps_elem = field.eps; // eps = (x + y sqrt(disc))/2 has omega-coordinate y
    const std::uint64_t y_eps = numer(y_eps_elem.b()).convert_to<std::uint64_t>();
    const std::uint64_t D = std::uint64_t(field.disc);
    for (std::uint64_t y = 1; y < y_eps; ++y) {
        const std::uint64_t v = D * y * y + 4;
        auto s = std::uint64_t(std::sqrt(double(v)));
        while (s * s > v) --s;
        while ((s + 1) * (s + 1) <= v) ++s;
        if (s * s == v) return false;
    }
    return true;
}

/// Gamma(1/2, a) = 2 int_{sqrt a}^inf e^{-w^2} dw.
inline double gamma_half(double a)
{
    boost::math::quadrature::exp_sinh<double> integrator;
    return 2.0 * integrator.integrate([](double w) { return std::exp(-w * w); }, std::sqrt(a), std::numeric_limits<double>::infinity());
}

/// beta(s) = (1/16 pi) int_1^inf e^{-s t} t^{-3/2} dt = (1/8 pi) int_0^1 e^{-s/w^2} dw  (t = w^-2).
inline double beta(double s)
{
    auto f = [s](double w) { return w == 0 ? 0.0 : std::exp(-s / (w * w)); };
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-13);
    return v / (8.0 * std::numbers::pi);
}

/// Minimum of |<l, mu>| over nonzero values, by search over l = x + y omega
/// with |x|, |y| <= box. In (1, omega) coordinates <l, mu> = l_b mu_a - l_a mu_b,
/// so a box of max(|mu_a|, |mu_b|) contains a Bezout pair reaching the minimum.
inline Integer min_pairing_search(const QuadElem& mu, std::int64_t box = 0)
{
    if (!mu.is_integral()) throw InputError("min_pairing_search needs an integral element");
    const std::int64_t ma = numer(mu.a()).convert_to<std::int64_t>();
    const std::int64_t mb = numer(mu.b()).convert_to<std::int64_t>();
    if (box <= 0) box = std::max<std::int64_t>({std::abs(ma), std::abs(mb), 1});
    std::int64_t best = -1;
    for (std::int64_t x = -box; x <= box; ++x) {
        for (std::int64_t y = -box; y <= box; ++y) {
            std::int64_t v = std::abs(y * ma - x * mb);
            if (v != 0 && (best < 0 || v < best)) best = v;
        }
    }
    return best;
}

} // namespace oracle

namespace detail {

inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y)
{
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    std::int64_t x1 = 0, y1 = 0;
    std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

template <class F>
CheckResult timed(std::string name, F&& body)
{
    CheckResult r;
    r.name = std::move(name);
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline void fail(CheckResult& r, const std::string& why)
{
    if (r.passed) r.detail = why;
    r.passed = false;
}

} // namespace detail

/// Hyperbolic f in SL(2,Z) with |entries| <= bound.
inline IMat2 random_hyperbolic(std::mt19937_64& rng, int bound)
{
    std::uniform_int_distribution<std::int64_t> u(-bound, bound);
    for (;;) {
        std::int64_t a = u(rng), c = u(rng);
        std::int64_t x = 0, y = 0;
        if (detail::ext_gcd(a, c, x, y) != 1) continue;
        // a*x + c*y = 1, so (b, d) = (-y, x) + k (a, c)
        std::uniform_int_distribution<std::int64_t> uk(-2 * bound, 2 * bound);
        std::int64_t k = uk(rng);
        std::int64_t b = -y + k * a, d = x + k * c;
        if (std::abs(b) > bound || std::abs(d) > bound || std::abs(a + d) <= 2) continue;
        return imat(a, b, c, d);
    }
}

inline FiberClass random_class(std::mt19937_64& rng, int bound)
{
    std::uniform_int_distribution<std::int64_t> u(-bound, bound);
    return FiberClass(Integer(u(rng)), Integer(u(rng)));
}

inline Rational random_fraction(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::int64_t> den(2, 97);
    std::int64_t q = den(rng);
    std::uniform_int_distribution<std::int64_t> num(1, q - 1);
    return ratio(num(rng), q);
}

// ---------------------------------------------------------------------------
// sol

inline CheckResult check_sol_oracle(std::uint64_t seed, int count = 100)
{
    return detail::timed("sol: link_fiber equals cap_intersect", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < count; ++i) {
            SolManifold m = make_sol(random_hyperbolic(rng, 30));
            FiberClass a = random_class(rng, 10), b = random_class(rng, 10);
            QVec2 offset{random_fraction(rng), random_fraction(rng)};
            CapChain cap = build_cap(m, a, offset);
            Rational lk = link_fiber(m, a, b);
            Rational oc = cap_intersect(cap, m, b, random_fraction(rng));
            if (lk != oc) return detail::fail(r, "f=" + to_string(m.f) + ": " + to_string(lk) + " vs " + to_string(oc));
        }
        r.detail = std::to_string(count) + " random triples";
    });
}

inline CheckResult check_sol_algebra(std::uint64_t seed, int count = 200)
{
    return detail::timed("sol: bilinearity, conjugation, push-off identity, integrality", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < count; ++i) {
            SolManifold m = make_sol(random_hyperbolic(rng, 30));
            FiberClass a1 = random_class(rng, 10), a2 = random_class(rng, 10), b = random_class(rng, 10);
            if (link_fiber(m, a1 + a2, b) != link_fiber(m, a1, b) + link_fiber(m, a2, b)) return detail::fail(r, "not additive in a");
            if (link_fiber(m, b, a1 + a2) != link_fiber(m, b, a1) + link_fiber(m, b, a2)) return detail::fail(r, "not additive in b");

            IMat2 h = random_hyperbolic(rng, 5); // any element of SL(2,Z)
            SolManifold mc = make_sol(mul(mul(h, m.f), adjugate(h)));
            if (link_fiber(mc, FiberClass(mul(h, a1.v)), FiberClass(mul(h, b.v))) != link_fiber(m, a1, b))
                return detail::fail(r, "conjugation changes the linking number");

            const QVec2 ga = mul(m.g, to_q(a1.v)), gb = mul(m.g, to_q(b.v));
            Rational lhs = det2(ga, to_q(b.v)) + det2(to_q(a1.v), gb);
            Rational rhs = Rational(trace(m.f) - 2) * det2(ga, gb);
            if (lhs != rhs) return detail::fail(r, "push-off identity fails for f=" + to_string(m.f));

            if (!is_integer(Rational(m.n_det) * link_fiber(m, a1, b))) return detail::fail(r, "N_det * Lk not integral");
        }
        r.detail = std::to_string(count) + " random cases";
    });
}

inline CheckResult check_caps(std::uint64_t seed, int count = 50)
{
    return detail::timed("sol: cap period 0 and exact boundary", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < count; ++i) {
            SolManifold m = make_sol(random_hyperbolic(rng, 30));
            FiberClass a = random_class(rng, 10);
            CapChain cap = build_cap(m, a, {random_fraction(rng), random_fraction(rng)});
            if (cap_area_period(cap) != 0) return detail::fail(r, "nonzero period " + to_string(cap_area_period(cap)));
            if (!cap_boundary_matches(cap, m)) return detail::fail(r, "boundary mismatch for f=" + to_string(m.f));
            const QVec2 ga = mul(m.g, to_q(a.v));
            if (to_q(cap.monodromy_class) != QVec2{Rational(m.n_det) * ga[0], Rational(m.n_det) * ga[1]})
                return detail::fail(r, "monodromy class is not N_det * g * a");
        }
        r.detail = std::to_string(count) + " random caps";
    });
}

// ---------------------------------------------------------------------------
// qfield

inline CheckResult check_units(std::int64_t dmax = 100)
{
    return detail::timed("qfield: fundamental unit equals Pell search; eps minimal", [&](CheckResult& r) {
        int fields = 0;
        for (std::int64_t d = 2; d < dmax; ++d) {
            if (!is_squarefree(d)) continue;
            FieldData f = make_field(d);
            ++fields;
            QuadElem p = oracle::pell_unit(f);
            if (p != f.eps0) return detail::fail(r, "d=" + std::to_string(d) + ": " + f.eps0.str() + " vs Pell " + p.str());
            if (!oracle::eps_is_minimal(f)) return detail::fail(r, "d=" + std::to_string(d) + ": eps not minimal");
            if (!f.eps.totally_positive() || f.eps.norm() != 1) return detail::fail(r, "d=" + std::to_string(d) + ": eps not a totally positive unit");
        }
        r.detail = std::to_string(fields) + " fields";
    });
}

inline CheckResult check_norm_classes(const std::vector<std::int64_t>& ds, int nmax)
{
    return detail::timed("qfield: class enumeration equals reduced brute force", [&](CheckResult& r) {
        for (std::int64_t d : ds) {
            FieldData f = make_field(d);
            for (int n = 1; n <= nmax; ++n) {
                std::vector<QuadElem> fast;
                for (auto& c : enumerate_norm_classes(f, n)) fast.push_back(c.rep);
                std::vector<QuadElem> slow;
                for (auto& x : brute_force_norm_solutions(f, n, reduced_coordinate_bound(f, n))) {
                    QuadElem y = reduce(f, x);
                    if (std::none_of(slow.begin(), slow.end(), [&](const QuadElem& z) { return z == y; })) slow.push_back(y);
                }
                std::sort(slow.begin(), slow.end(), [](const QuadElem& x, const QuadElem& y) { return coord_less(x, y); });
                if (fast != slow)
                    return detail::fail(r, "d=" + std::to_string(d) + " n=" + std::to_string(n) + ": " + std::to_string(fast.size()) + " vs " + std::to_string(slow.size()) + " classes");
                for (auto& x : fast)
                    if (reduce(f, x) != x) return detail::fail(r, "reduction not idempotent at " + x.str());
            }
        }
        r.detail = std::to_string(ds.size()) + " fields, n <= " + std::to_string(nmax);
    });
}

inline CheckResult check_field_arithmetic(std::uint64_t seed, int count = 200)
{
    return detail::timed("qfield: exact field arithmetic", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> u(-50, 50);
        const std::int64_t ds[] = {2, 3, 5, 6, 13, 17, 21};
        for (int i = 0; i < count; ++i) {
            FieldData f = make_field(ds[i % 7]);
            QuadElem x = f.element(ratio(u(rng), 1 + std::abs(u(rng))), ratio(u(rng), 1 + std::abs(u(rng))));
            QuadElem y = f.element(ratio(u(rng), 1 + std::abs(u(rng))), ratio(u(rng), 1 + std::abs(u(rng))));
            if ((x * y).norm() != x.norm() * y.norm()) return detail::fail(r, "norm not multiplicative");
            if ((x + y) - y != x) return detail::fail(r, "(x+y)-y != x");
            if (y.norm() != 0 && (x * y) / y != x) return detail::fail(r, "(x*y)/y != x");
            if (x.conj().conj() != x) return detail::fail(r, "conjugation not an involution");
            if (!(x * x.conj()).is_rational() || !(x + x.conj()).is_rational()) return detail::fail(r, "norm or trace irrational");
        }
        r.detail = std::to_string(count) + " random pairs";
    });
}

// ---------------------------------------------------------------------------
// cycles

inline CheckResult check_cross_formula(const std::vector<std::int64_t>& ds, int nmax)
{
    return detail::timed("cycles: general formula equals closed form", [&](CheckResult& r) {
        for (std::int64_t d : ds) {
            FieldData f = make_field(d);
            for (int n = 1; n <= nmax; ++n) {
                Rational a = link_boundary(f, n, 1), b = link_boundary_closed(f, n);
                if (a != b) return detail::fail(r, "d=" + std::to_string(d) + " n=" + std::to_string(n) + ": " + to_string(a) + " vs " + to_string(b));
            }
        }
        r.detail = std::to_string(ds.size()) + " fields, n <= " + std::to_string(nmax);
    });
}

inline CheckResult check_multiplicities(const std::vector<std::int64_t>& ds, int nmax)
{
    return detail::timed("cycles: multiplicities by search; circle-by-circle sums", [&](CheckResult& r) {
        for (std::int64_t d : ds) {
            FieldData f = make_field(d);
            const SolManifold og = oriented_gluing(f);
            auto ones = boundary_components(f, 1);
            for (int n = 1; n <= nmax; ++n) {
                auto comps = boundary_components(f, n);
                Rational by_circle = 0;
                for (const auto& c : comps) {
                    Integer searched = oracle::min_pairing_search(c.cls.rep);
                    if (searched != c.multiplicity)
                        return detail::fail(r, "d=" + std::to_string(d) + " mu=" + c.cls.rep.str() + ": multiplicity " + c.multiplicity.str() + " vs search " + searched.str());
                    for (int s : {1, -1}) {
                        const FiberClass jx = oriented_class(circle_class(f, Rational(s) * c.cls.rep));
                        for (const auto& y : ones) {
                            const FiberClass jy = oriented_class(circle_class(f, y.cls.rep));
                            for (Integer i = 0; i < c.multiplicity; ++i)
                                for (Integer k = 0; k < y.multiplicity; ++k) by_circle += link_fiber(og, jx, jy);
                        }
                    }
                }
                if (by_circle != link_boundary(f, n, 1)) return detail::fail(r, "circle-by-circle sum differs at n=" + std::to_string(n));
            }
        }
        r.detail = std::to_string(ds.size()) + " fields, n <= " + std::to_string(nmax);
    });
}

inline CheckResult check_link_tables(const std::vector<std::int64_t>& ds, int nmax, int threads = 1)
{
    return detail::timed("cycles: link tables rational with N_det * entry integral", [&](CheckResult& r) {
        std::size_t cells = 0;
        for (std::int64_t d : ds) {
            FieldData f = make_field(d);
            LinkTable t = link_table(f, nmax, threads);
            for (const auto& [k, v] : t.entries) {
                ++cells;
                if (!is_integer(v * Rational(t.n_det))) return detail::fail(r, "d=" + std::to_string(d) + ": entry not in (1/N_det)Z");
                if ((boundary_components(f, k.first).empty() || boundary_components(f, k.second).empty()) && v != 0)
                    return detail::fail(r, "nonzero entry for an empty boundary");
            }
        }
        r.detail = std::to_string(cells) + " cells";
    });
}

// ---------------------------------------------------------------------------
// qseries

inline CheckResult check_ratio(const std::vector<std::int64_t>& ds, int nmax, int k_range, double tol = 1e-8)
{
    return detail::timed("qseries: min-series / Lk ratio is constant", [&](CheckResult& r) {
        std::ostringstream os;
        for (std::int64_t d : ds) {
            RatioReport rep = holomorphic_ratio_test(make_field(d), nmax, k_range);
            if (!rep.inconsistent.empty()) return detail::fail(r, "d=" + std::to_string(d) + ": zero Lk with nonzero min-series at n=" + std::to_string(rep.inconsistent.front()));
            if (rep.ratios.empty() || !(rep.relative_spread <= tol)) return detail::fail(r, "d=" + std::to_string(d) + ": spread " + detail::fmt(rep.relative_spread));
            os << "d=" << d << " ratio " << rep.mean << " spread " << detail::fmt(rep.relative_spread) << "; ";
        }
        r.detail = os.str();
    });
}

inline CheckResult check_w_stability(std::int64_t d = 5, std::complex<double> tau = {0, 1}, double tol = 1e-8)
{
    return detail::timed("qseries: W(tau) stable under doubled truncation", [&](CheckResult& r) {
        FieldData f = make_field(d);
        WEvalParams p;
        p.tau = tau;
        WEvalResult a = eval_W(f, p);
        WEvalParams q = p;
        q.k_range *= 2;
        q.box *= 2;
        q.n_cut = 2 * a.n_cut;
        WEvalResult b = eval_W(f, q);
        double dh = std::abs(a.holomorphic_sum - b.holomorphic_sum);
        double db = std::abs(a.beta_sum - b.beta_sum);
        if (!(dh < tol && db < tol)) return detail::fail(r, "changes " + detail::fmt(dh) + ", " + detail::fmt(db));
        if (dh > a.holomorphic_tail + b.holomorphic_tail || db > a.beta_tail + b.beta_tail)
            return detail::fail(r, "change exceeds reported tail estimate");
        r.detail = "changes " + detail::fmt(dh) + ", " + detail::fmt(db);
    });
}

// ---------------------------------------------------------------------------
// special functions

inline double rel_err(double got, double want) { return std::fabs(got - want) / std::max(std::fabs(want), 1e-300); }

inline CheckResult check_x23(std::uint64_t seed, int count = 50, double tol = 1e-5)
{
    return detail::timed("special_fn: -X23 B = A and -X23 B' = A'", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> mag(0.2, 1.2), gap(0.2, 1.0);
        std::bernoulli_distribution coin;
        double worst = 0;
        for (int i = 0; i < count; ++i) {
            WPoint p{(coin(rng) ? 1 : -1) * mag(rng), (coin(rng) ? 1 : -1) * mag(rng)};
            double e = rel_err(-x23_derivative([](const WPoint& x) { return B_profile(x).value; }, p), A_profile(p).value);
            worst = std::max(worst, e);
            // primed pair inside the cone, away from the axes and the light cone
            double x3 = mag(rng) * 0.8;
            WPoint pp{(coin(rng) ? 1 : -1) * (x3 + gap(rng)), (coin(rng) ? 1 : -1) * x3};
            double ep = rel_err(-x23_derivative([](const WPoint& x) { return Bp_profile(x).value; }, pp), Ap_profile(pp).value);
            worst = std::max(worst, ep);
        }
        if (!(worst <= tol)) return detail::fail(r, "max relative error " + detail::fmt(worst));
        r.detail = "max relative error " + detail::fmt(worst);
    });
}

inline CheckResult check_eigen(std::uint64_t seed, int count = 50, double tol = 1e-3)
{
    return detail::timed("special_fn: weight-2 eigenfunction equation for B and B'", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> mag(0.2, 1.2), gap(0.2, 1.0);
        std::bernoulli_distribution coin;
        double worst = 0;
        auto B = [](const WPoint& x) { return B_profile(x).value; };
        auto Bp = [](const WPoint& x) { return Bp_profile(x).value; };
        for (int i = 0; i < count; ++i) {
            WPoint p{(coin(rng) ? 1 : -1) * mag(rng), (coin(rng) ? 1 : -1) * mag(rng)};
            worst = std::max(worst, rel_err(weil_weight_operator(B, p), 2 * B(p)));
            double x3 = mag(rng) * 0.8;
            WPoint pp{(coin(rng) ? 1 : -1) * (x3 + gap(rng)), (coin(rng) ? 1 : -1) * x3};
            worst = std::max(worst, rel_err(weil_weight_operator(Bp, pp), 2 * Bp(pp)));
        }
        if (!(worst <= tol)) return detail::fail(r, "max relative error " + detail::fmt(worst));
        r.detail = "max relative error " + detail::fmt(worst);
    });
}

inline CheckResult check_jumps(std::uint64_t seed, int count = 50, double jump_tol = 1e-8, double continuity_tol = 1e-10)
{
    return detail::timed("special_fn: A/A' jumps cancel; B + B' continuous", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> mag(0.1, 2.0);
        std::bernoulli_distribution coin;
        const double delta = 1e-10;
        double worst_jump = 0, worst_limit = 0, worst_b = 0;
        for (int i = 0; i < count; ++i) {
            double x2 = (coin(rng) ? 1 : -1) * mag(rng);
            const WPoint up{x2, delta}, down{x2, -delta}, on{x2, 0};
            double jump_a = A_profile(up).value - A_profile(down).value;
            double jump_ap = Ap_profile(up).value - Ap_profile(down).value;
            worst_jump = std::max(worst_jump, std::fabs(jump_a + jump_ap));
            auto [phi_a, phi_b] = phi_profile(on);
            if (!phi_a.limit_below || !phi_a.limit_above) return detail::fail(r, "no one-sided limits reported on x3 = 0");
            EvalReport a0 = A_profile(on);
            worst_limit = std::max({worst_limit, std::fabs(*a0.limit_above - A_profile(up).value), std::fabs(*a0.limit_below - A_profile(down).value),
                                    std::fabs(*phi_a.limit_above - *phi_a.limit_below)});
            worst_b = std::max(worst_b, std::fabs(B_profile(up).value + Bp_profile(up).value - B_profile(down).value - Bp_profile(down).value));
        }
        if (!(worst_jump <= jump_tol && worst_limit <= jump_tol && worst_b <= continuity_tol))
            return detail::fail(r, "jump " + detail::fmt(worst_jump) + ", limits " + detail::fmt(worst_limit) + ", B+B' " + detail::fmt(worst_b));
        r.detail = "jump " + detail::fmt(worst_jump) + ", limits " + detail::fmt(worst_limit) + ", B+B' " + detail::fmt(worst_b);
    });
}

inline CheckResult check_quadrature(double tol = 1e-10)
{
    return detail::timed("special_fn: beta and Gamma(1/2, a) against quadrature", [&](CheckResult& r) {
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            double s = 0.01 * std::pow(3000.0, i / 19.0); // log-spaced in [0.01, 30]
            worst = std::max(worst, std::fabs(beta_fn(s).value - oracle::beta(s)));
            worst = std::max(worst, std::fabs(gamma_half(s) - oracle::gamma_half(s)));
        }
        if (!(worst <= tol)) return detail::fail(r, "max abs error " + detail::fmt(worst));
        r.detail = "max abs error " + detail::fmt(worst);
    });
}

/// Every suite at its stated tolerance; `threads` caps parallel table work.
inline std::vector<CheckResult> run_self_test(std::uint64_t seed, int threads = 1)
{
    std::vector<CheckResult> out;
    out.push_back(check_field_arithmetic(seed));
    out.push_back(check_units(100));
    out.push_back(check_norm_classes({2, 3, 5, 13, 17, 21}, 50));
    out.push_back(check_sol_oracle(seed, 100));
    out.push_back(check_sol_algebra(seed + 1));
    out.push_back(check_caps(seed + 2, 50));
    out.push_back(check_cross_formula({5, 13, 17}, 30));
    out.push_back(check_multiplicities({2, 5, 13}, 20));
    out.push_back(check_link_tables({5, 13, 17}, 30, threads));
    out.push_back(check_ratio({5, 13}, 20, 80));
    out.push_back(check_w_stability());
    out.push_back(check_x23(seed + 3));
    out.push_back(check_eigen(seed + 4));
    out.push_back(check_jumps(seed + 5));
    out.push_back(check_quadrature());
    return out;
}

} // namespace sollink
