#pragma once

// A-model three-point functions of a threefold chart,
//   <A,B,C> = A.B.C + sum_eta n_eta (A.eta)(B.eta)(C.eta) q^eta/(1-q^eta),
// and the exact check that they continue across a flopping wall.

#include "chamber/atlas.hpp"
#include "chamber/q_algebra.hpp"

namespace chamber {

namespace detail {
inline void require_chart_rank(const ModelChart& chart, const DivisorClass& a, const DivisorClass& b,
                               const DivisorClass& c, std::string_view where) {
    require_rank(chart.rank, a.rank(), where);
    require_rank(chart.rank, b.rank(), where);
    require_rank(chart.rank, c.rank(), where);
}

inline Rational triple_degree(const DivisorClass& a, const DivisorClass& b, const DivisorClass& c,
                              const CurveClass& eta) {
    return Rational(pair(a, eta)) * pair(b, eta) * pair(c, eta);
}
}  // namespace detail

/// Closed form: the constant A.B.C plus one multiple-cover term per curve class.
inline QExpression three_point_closed(const ModelChart& chart, const DivisorClass& a, const DivisorClass& b,
                                      const DivisorClass& c) {
    detail::require_chart_rank(chart, a, b, c, "three_point_closed");
    QExpression expr(chart.rank);
    expr.add_constant(cubic_eval(chart.cubic, a, b, c));
    for (const auto& cc : chart.curves) expr.add_primitive({cc.n * detail::triple_degree(a, b, c, cc.eta), cc.eta});
    return expr;
}

/// The three-point function as a power series in the chart's framing
/// coordinates, truncated at total degree `order`.
inline QSeries three_point_series(const ModelChart& chart, const DivisorClass& a, const DivisorClass& b,
                                  const DivisorClass& c, Int order) {
    detail::require_chart_rank(chart, a, b, c, "three_point_series");
    const FramingBasis framing = chart.framing_or_standard();
    QSeries out = QSeries::constant(chart.rank, order, cubic_eval(chart.cubic, a, b, c));
    for (const auto& cc : chart.curves) {
        const Rational coeff = cc.n * detail::triple_degree(a, b, c, cc.eta);
        if (coeff == 0) continue;
        out = series_add(out, expand(PrimitiveTerm{coeff, cc.eta}, order, framing));
    }
    return out;
}

/// Rewrites each term c q^{k gamma}/(1 - q^{k gamma}) on the wall ray (either
/// side) as -c - c q^{-k gamma}/(1 - q^{-k gamma}). The value is unchanged
/// away from the poles; applying it twice gives back the input.
inline QExpression continue_across_wall(const QExpression& expr, const WallDescriptor& wall) {
    if (wall.kind != WallKind::flopping)
        throw DomainError("continue_across_wall: wall " + wall.gamma.str() + " is not flopping");
    require_rank(expr.rank(), wall.gamma.rank(), "continue_across_wall");
    QExpression out(expr.rank());
    for (const auto& [eta, c] : expr.poly()) out.add_monomial(eta, c);
    for (const auto& [eta, c] : expr.prims()) {
        if (!multiple_of(eta, wall.gamma)) {
            out.add_primitive({c, eta});
            continue;
        }
        out.add_constant(-c);
        out.add_primitive({-c, -eta});
    }
    return out;
}

struct LemmaSample {
    Rational u;
    Rational lhs;
    Rational rhs;
};

struct LemmaReport {
    WallDescriptor wall;
    RationalFunction lhs;
    RationalFunction rhs;
    bool symbolic_verdict = false;
    std::vector<LemmaSample> samples;
    Rational max_discrepancy = 0;

    bool holds() const { return symbolic_verdict && max_discrepancy == 0; }
};

inline std::vector<Rational> default_lemma_samples() {
    return {Rational(1, 3), Rational(-1, 3), Rational(1, 2), Rational(-1, 2),
            Rational(2),    Rational(3),     Rational(-7, 2), Rational(10)};
}

/// Compares, as functions of u = q^gamma,
///   A.B.C + n (A.gamma)(B.gamma)(C.gamma) u/(1-u)
/// with the same expression on the flopped side, where the cubic is the
/// flopped one and gamma-hat = -gamma, so the class term is in 1/u. Divisor
/// classes are carried across unchanged (proper transform).
inline LemmaReport verify_flop_lemma(const ModelChart& chart, const WallDescriptor& wall, const DivisorClass& a,
                                     const DivisorClass& b, const DivisorClass& c,
                                     const std::vector<Rational>& samples = default_lemma_samples()) {
    detail::require_chart_rank(chart, a, b, c, "verify_flop_lemma");
    if (wall.kind != WallKind::flopping)
        throw DomainError("verify_flop_lemma: wall " + wall.gamma.str() + " is not flopping");
    require_rank(chart.rank, wall.gamma.rank(), "verify_flop_lemma");

    const CurveClass gamma_hat = -wall.gamma;
    const CubicForm cubic_hat = flopped_cubic(chart.cubic, wall.gamma, wall.n_gamma);

    QExpression lhs(chart.rank);
    lhs.add_constant(cubic_eval(chart.cubic, a, b, c));
    lhs.add_primitive({wall.n_gamma * detail::triple_degree(a, b, c, wall.gamma), wall.gamma});

    QExpression rhs(chart.rank);
    rhs.add_constant(cubic_eval(cubic_hat, a, b, c));
    rhs.add_primitive({wall.n_gamma * detail::triple_degree(a, b, c, gamma_hat), gamma_hat});

    LemmaReport report;
    report.wall = wall;
    report.lhs = restrict_to_wall_variable(lhs, wall.gamma);
    report.rhs = restrict_to_wall_variable(rhs, wall.gamma);
    report.symbolic_verdict = report.lhs == report.rhs;
    for (const auto& u : samples) {
        if (u == 0 || u == 1) throw DomainError("verify_flop_lemma: sample u = " + format(u) + " is a pole");
        LemmaSample s{u, eval_on_wall(lhs, wall.gamma, u), eval_on_wall(rhs, wall.gamma, u)};
        report.max_discrepancy = std::max(report.max_discrepancy, Rational(abs(s.lhs - s.rhs)));
        report.samples.push_back(std::move(s));
    }
    return report;
}

}  // namespace chamber
