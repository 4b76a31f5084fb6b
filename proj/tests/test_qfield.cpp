#include "sollink/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sollink;

namespace {

// Smallest unit > 1 with |a|, |b| <= box, compared in long double.
QuadElem box_search_unit(const FieldData& f, int box)
{
    QuadElem best;
    long double best_v = 0;
    for (int a = -box; a <= box; ++a) {
        for (int b = -box; b <= box; ++b) {
            QuadElem x = f.element(a, b);
            if (x.norm() != 1 && x.norm() != -1) continue;
            long double v = a + b * (long double)f.omega().to_double();
            if (v > 1.0001L && (best_v == 0 || v < best_v)) {
                best_v = v;
                best = x;
            }
        }
    }
    return best;
}

std::vector<QuadElem> reduced_brute_force(const FieldData& f, int n, std::int64_t bound)
{
    std::vector<QuadElem> out;
    for (auto& x : brute_force_norm_solutions(f, n, bound)) {
        QuadElem y = reduce(f, x);
        if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
    }
    std::sort(out.begin(), out.end(), [](const QuadElem& x, const QuadElem& y) { return coord_less(x, y); });
    return out;
}

std::vector<QuadElem> reps(const FieldData& f, int n)
{
    std::vector<QuadElem> out;
    for (auto& c : enumerate_norm_classes(f, n)) out.push_back(c.rep);
    return out;
}

} // namespace

TEST(QField, DiscriminantAndOmega)
{
    FieldData f5 = make_field(5);
    EXPECT_EQ(f5.disc, 5);
    EXPECT_EQ(f5.omega_desc, "(1+sqrt(5))/2");
    FieldData f2 = make_field(2);
    EXPECT_EQ(f2.disc, 8);
    EXPECT_EQ(f2.omega_desc, "sqrt(2)");
    EXPECT_EQ(make_field(6).disc, 24);
}

TEST(QField, RejectsBadD)
{
    EXPECT_THROW(make_field(12), InputError);
    EXPECT_THROW(make_field(1), InputError);
    EXPECT_THROW(make_field(0), InputError);
    EXPECT_THROW(make_field(-5), InputError);
    EXPECT_NO_THROW(make_field(6));
}

TEST(QField, UnitsMatchBoxSearch)
{
    for (std::int64_t d : {2, 3, 5, 13}) {
        FieldData f = make_field(d);
        QuadElem want = box_search_unit(f, 40);
        EXPECT_EQ(f.eps0, want) << "d=" << d;
        EXPECT_EQ(f.eps0, oracle::pell_unit(f)) << "d=" << d;
    }
}

TEST(QField, UnitExamples)
{
    // values from the Pell oracle, restated in (1, omega) coordinates
    FieldData f5 = make_field(5);
    QuadElem p5 = oracle::pell_unit(f5);
    EXPECT_EQ(f5.eps0, p5);
    EXPECT_EQ(f5.eps0_norm, -1);
    EXPECT_EQ(f5.eps, p5 * p5);
    EXPECT_NEAR(f5.eps.to_double(), (3 + std::sqrt(5.0)) / 2, 1e-12);

    FieldData f2 = make_field(2);
    EXPECT_NEAR(f2.eps0.to_double(), 1 + std::sqrt(2.0), 1e-12);
    EXPECT_EQ(f2.eps0_norm, -1);
    FieldData f3 = make_field(3);
    EXPECT_NEAR(f3.eps0.to_double(), 2 + std::sqrt(3.0), 1e-12);
    EXPECT_EQ(f3.eps0_norm, 1);
    EXPECT_EQ(f3.eps, f3.eps0);
    FieldData f13 = make_field(13);
    EXPECT_NEAR(f13.eps0.to_double(), (3 + std::sqrt(13.0)) / 2, 1e-12);
    EXPECT_EQ(f13.eps0_norm, -1);
}

TEST(QField, EpsInvariants)
{
    for (std::int64_t d = 2; d < 100; ++d) {
        if (!is_squarefree(d)) continue;
        FieldData f = make_field(d);
        EXPECT_EQ(f.eps * f.eps.conj(), f.one()) << d;
        EXPECT_TRUE(f.eps.totally_positive()) << d;
        EXPECT_TRUE(f.one() < f.eps0) << d;
        EXPECT_TRUE(oracle::eps_is_minimal(f)) << d;
    }
}

TEST(QField, LargeUnit)
{
    FieldData f = make_field(94);
    EXPECT_EQ(f.eps0, f.element(2143295, 221064));
}

TEST(QField, NormClassExamples)
{
    FieldData f = make_field(5);
    EXPECT_EQ(reps(f, 1), std::vector<QuadElem>{f.one()});
    EXPECT_TRUE(reps(f, 2).empty());
    EXPECT_TRUE(brute_force_norm_solutions(f, 2, 100).empty());
    EXPECT_EQ(reps(f, 4), std::vector<QuadElem>{f.element(2)});
    // (5 + sqrt 5)/2 = 2 + omega
    EXPECT_EQ(reps(f, 5), std::vector<QuadElem>{f.element(2, 1)});
    EXPECT_EQ(reps(f, 4), reduced_brute_force(f, 4, 100));
    EXPECT_EQ(reps(f, 5), reduced_brute_force(f, 5, 100));
    EXPECT_THROW(enumerate_norm_classes(f, 0), InputError);
    EXPECT_THROW(enumerate_norm_classes(f, -3), InputError);
    EXPECT_TRUE(enumerate_norm_classes(f, Rational(1, 2)).empty());
}

TEST(QField, BruteForceExamples)
{
    FieldData f = make_field(5);
    auto has = [](const std::vector<QuadElem>& v, const QuadElem& x) { return std::find(v.begin(), v.end(), x) != v.end(); };
    auto four = brute_force_norm_solutions(f, 4, 20);
    EXPECT_TRUE(has(four, f.element(2)));
    EXPECT_TRUE(has(four, f.element(2, 2))); // 3 + sqrt 5
    EXPECT_EQ(reduce(f, f.element(2, 2)), f.element(2));
    auto one = brute_force_norm_solutions(f, 1, 20);
    EXPECT_TRUE(has(one, f.one()));
    EXPECT_TRUE(has(one, f.eps));
    EXPECT_TRUE(has(one, f.eps * f.eps));
    EXPECT_TRUE(brute_force_norm_solutions(f, 7, 20).empty());
}

TEST(QField, EnumerationEqualsBruteForce)
{
    for (std::int64_t d : {2, 3, 5, 13, 17}) {
        FieldData f = make_field(d);
        for (int n = 1; n <= 50; ++n) EXPECT_EQ(reps(f, n), reduced_brute_force(f, n, reduced_coordinate_bound(f, n))) << "d=" << d << " n=" << n;
    }
}

TEST(QField, ReductionIdempotentAndInDomain)
{
    FieldData f = make_field(13);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> u(-30, 30);
    int tested = 0;
    while (tested < 100) {
        QuadElem x = f.element(u(rng), u(rng));
        if (!x.totally_positive()) continue;
        ++tested;
        QuadElem r = reduce(f, x);
        EXPECT_TRUE(is_reduced(f, r));
        EXPECT_EQ(reduce(f, r), r);
        EXPECT_EQ(r.norm(), x.norm());
        QuadElem q = r / x; // a totally positive unit
        EXPECT_EQ(q.norm(), 1);
        EXPECT_TRUE(q.is_integral());
    }
    EXPECT_THROW(reduce(f, f.element(-1)), InputError);
}

TEST(QField, Arithmetic)
{
    auto r = check_field_arithmetic(17, 500);
    EXPECT_TRUE(r.passed) << r.detail;
}

TEST(QField, ExactSign)
{
    FieldData f = make_field(2);
    // 99 - 70 sqrt 2 > 0 (tiny), 577 - 408 sqrt 2 > 0, 70 sqrt 2 - 99 < 0
    EXPECT_EQ(f.element(99, -70).sign(), 1);
    EXPECT_EQ(f.element(577, -408).sign(), 1);
    EXPECT_EQ(f.element(-99, 70).sign(), -1);
    EXPECT_EQ(f.element(0).sign(), 0);
}
