#include "support.hpp"

#include <gtest/gtest.h>

using namespace chamber;

namespace {

ModelChart fixture_chart() { return load_descriptor(test::fixture("flop_fixture.json")); }

// Full symmetric tensor of a chart cubic, with -n gamma^3 subtracted when
// `flopped` is set; evaluated directly on (a, b, c).
Int tensor_value(const CubicForm& f, const IntVec& a, const IntVec& b, const IntVec& c, const IntVec& gamma, Int n,
                 bool flopped) {
    Int total = 0;
    const std::size_t r = a.size();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) {
                Int cijk = f.coefficient(i, j, k);
                if (flopped) cijk -= n * gamma[i] * gamma[j] * gamma[k];
                total += cijk * a[i] * b[j] * c[k];
            }
    return total;
}

// p(u)/q(u) as integer coefficient lists, low degree first.
struct Pair {
    std::vector<Int> num, den;
};

std::vector<Rational> times(const std::vector<Int>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

bool same_function(const Pair& p, const RationalFunction& f) {
    return times(p.num, f.denominator().coefficients()) == times(p.den, f.numerator().coefficients());
}

}  // namespace

TEST(AModel, SingleCurveClosedForm) {
    const ModelChart s = load_descriptor(test::fixture("single_curve.json"));
    const DivisorClass a{1};
    const QExpression e = three_point_closed(s, a, a, a);
    EXPECT_EQ(e.constant_term(), 8);
    ASSERT_EQ(e.prims().size(), 1u);
    EXPECT_EQ(e.prims().at(CurveClass{1}), 5);
    const QSeries q = three_point_series(s, a, a, a, 10);
    EXPECT_EQ(q.coefficient({0}), 8);
    for (Int k = 1; k <= 10; ++k) EXPECT_EQ(q.coefficient({k}), 5);
    EXPECT_EQ(q.terms().size(), 11u);
}

TEST(AModel, RankChecks) {
    const ModelChart x = fixture_chart();
    EXPECT_THROW(three_point_closed(x, DivisorClass{1}, DivisorClass{1, 0}, DivisorClass{1, 0}), RankMismatch);
}

TEST(AModel, SeriesSymmetryAndTrilinearity) {
    std::mt19937_64 rng(29);
    const ModelChart x = fixture_chart();
    for (int t = 0; t < 50; ++t) {
        const auto a = test::random_divisor(rng, 2), b = test::random_divisor(rng, 2), c = test::random_divisor(rng, 2);
        const auto d = test::random_divisor(rng, 2);
        const QSeries abc = three_point_series(x, a, b, c, 6);
        EXPECT_EQ(abc.terms(), three_point_series(x, b, c, a, 6).terms());
        EXPECT_EQ(abc.terms(), three_point_series(x, c, a, b, 6).terms());
        EXPECT_EQ(abc.terms(), three_point_series(x, b, a, c, 6).terms());
        const QSeries lhs = three_point_series(x, a + d, b, c, 6);
        const QSeries rhs = series_add(abc, three_point_series(x, d, b, c, 6));
        EXPECT_EQ(lhs.terms(), rhs.terms());
        EXPECT_EQ(three_point_series(x, 2 * a, b, c, 6).terms(), series_scale(abc, 2).terms());
    }
}

TEST(AModel, ContinueAcrossWallExample) {
    const ModelChart x = fixture_chart();
    const Rational c(7);
    QExpression e(2);
    e.add_primitive({c, x.walls[0].gamma});
    const QExpression cont = continue_across_wall(e, x.walls[0]);
    EXPECT_EQ(eval_on_wall(e, x.walls[0].gamma, 3), -3 * c / 2);
    EXPECT_EQ(eval_on_wall(cont, x.walls[0].gamma, 3), -3 * c / 2);
    EXPECT_EQ(cont.constant_term(), -c);
    EXPECT_EQ(continue_across_wall(cont, x.walls[0]), e);
}

TEST(AModel, ContinueAcrossWallKeepsOtherTerms) {
    const ModelChart x = fixture_chart();
    QExpression e(2);
    e.add_constant(2);
    e.add_primitive({3, CurveClass{1, 0}});
    e.add_primitive({4, CurveClass{2, -2}});
    const QExpression cont = continue_across_wall(e, x.walls[0]);
    EXPECT_EQ(cont.prims().at(CurveClass{1, 0}), 3);
    EXPECT_EQ(cont.prims().at(CurveClass{-2, 2}), -4);
    EXPECT_EQ(cont.constant_term(), -2);
    const RatVec q{Rational(1, 5), Rational(3, 7)};
    EXPECT_EQ(eval(cont, q), eval(e, q));
}

TEST(AModel, ContinueRejectsNonFloppingWall) {
    const ModelChart d = load_descriptor(test::fixture("divisorial_fixture.json"));
    EXPECT_THROW(continue_across_wall(QExpression(2), d.walls[1]), DomainError);
    EXPECT_THROW(verify_flop_lemma(d, d.walls[1], DivisorClass{1, 0}, DivisorClass{1, 0}, DivisorClass{0, 1}),
                 DomainError);
}

TEST(AModel, LemmaSweepAgainstDirectExpansion) {
    const ModelChart base = fixture_chart();
    for (Int n = 1; n <= 5; ++n) {
        ModelChart x = base;
        x.walls[0].n_gamma = n;
        x.curves[0].n = n;
        const IntVec g = x.walls[0].gamma.coords();
        for (Int a = 1; a <= 3; ++a)
            for (Int b = 1; b <= 3; ++b)
                for (Int c = 1; c <= 3; ++c) {
                    const DivisorClass A{a, 0}, B{b, 0}, C{0, c};
                    const LemmaReport rep = verify_flop_lemma(x, x.walls[0], A, B, C);
                    ASSERT_TRUE(rep.symbolic_verdict);
                    ASSERT_EQ(rep.max_discrepancy, 0);
                    ASSERT_TRUE(rep.holds());

                    // Oracle: F + n p u/(1-u) = (F + (n p - F) u)/(1 - u) and
                    // F^ - n p u^-1/(1-u^-1) = (F^ + n p - F^ u)/(1 - u).
                    const Int p = dot(A.coords(), g) * dot(B.coords(), g) * dot(C.coords(), g);
                    const Int f = tensor_value(x.cubic, A.coords(), B.coords(), C.coords(), g, n, false);
                    const Int fh = tensor_value(x.cubic, A.coords(), B.coords(), C.coords(), g, n, true);
                    const Pair lhs{{f, n * p - f}, {1, -1}};
                    const Pair rhs{{fh + n * p, -fh}, {1, -1}};
                    ASSERT_TRUE(same_function(lhs, rep.lhs));
                    ASSERT_TRUE(same_function(rhs, rep.rhs));
                    ASSERT_EQ(lhs.num, rhs.num);
                    for (const auto& s : rep.samples) {
                        const Rational direct = (f + (n * p - f) * s.u) / (1 - s.u);
                        ASSERT_EQ(s.lhs, direct);
                        ASSERT_EQ(s.rhs, direct);
                    }
                }
    }
}

TEST(AModel, LemmaRejectsPoleSamples) {
    const ModelChart x = fixture_chart();
    EXPECT_THROW(verify_flop_lemma(x, x.walls[0], DivisorClass{1, 0}, DivisorClass{1, 0}, DivisorClass{0, 1},
                                   {Rational(1)}),
                 DomainError);
}

TEST(AModel, SeriesOnBothSidesOfTheFlop) {
    const ModelChart x = fixture_chart();
    const ModelChart y = flop(x, 0);
    const DivisorClass a{1, 0}, c{0, 1};
    const QSeries sx = three_point_series(x, a, a, c, 4);
    const QSeries sy = three_point_series(y, a, a, c, 4);
    EXPECT_EQ(sx.coefficient({0, 0}), 4);
    EXPECT_EQ(sy.coefficient({0, 0}), 5);
    for (Int k = 1; k <= 4; ++k) {
        EXPECT_EQ(sx.coefficient({k, 0}), -1);
        EXPECT_EQ(sy.coefficient({k, 0}), 1);
    }
}
