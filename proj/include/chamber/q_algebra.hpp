#pragma once

// Exact algebra in the monomials q^eta:
//  - QSeries: truncated multivariate power series in the framing variables,
//  - QExpression: Laurent polynomial part plus multiple-cover terms
//    c q^eta / (1 - q^eta), evaluated exactly at rational points,
//  - RationalFunction: univariate normal form in u = q^gamma.

#include "chamber/core.hpp"
#include "chamber/lattice.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace chamber {

/// Exponent vector in framing coordinates, ordered by total degree and then
/// lexicographically.
struct QMonomial {
    IntVec exponent;

    Int degree() const { return std::accumulate(exponent.begin(), exponent.end(), Int{0}); }

    friend bool operator==(const QMonomial&, const QMonomial&) = default;
    friend bool operator<(const QMonomial& a, const QMonomial& b) {
        const Int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exponent < b.exponent;
    }
};

/// Power series in q_1..q_r truncated at total degree `order`.
class QSeries {
public:
    QSeries(std::size_t rank, Int order) : rank_(rank), order_(order) {
        if (order < 0) throw DomainError("QSeries: negative truncation order");
    }

    static QSeries constant(std::size_t rank, Int order, const Rational& c) {
        QSeries s(rank, order);
        s.add_term(IntVec(rank, 0), c);
        return s;
    }

    std::size_t rank() const { return rank_; }
    Int order() const { return order_; }
    const std::map<QMonomial, Rational>& terms() const { return terms_; }

    Rational coefficient(const IntVec& exponent) const {
        auto it = terms_.find(QMonomial{exponent});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c q^exponent; terms above the truncation order are dropped.
    void add_term(const IntVec& exponent, const Rational& c) {
        require_rank(rank_, exponent.size(), "QSeries term");
        for (Int e : exponent)
            if (e < 0) throw DomainError("QSeries: negative exponent " + format_vector(exponent));
        QMonomial m{exponent};
        if (m.degree() > order_ || c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend bool operator==(const QSeries&, const QSeries&) = default;

    /// Deterministic text form: "c * q^[e1,...,er]" joined by " + ", sorted by
    /// degree then exponent; "0" for the zero series.
    std::string render() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << format(c) << " * q^" << format_vector(m.exponent);
        }
        return os.str();
    }

private:
    std::size_t rank_;
    Int order_;
    std::map<QMonomial, Rational> terms_;
};

inline QSeries series_add(const QSeries& a, const QSeries& b) {
    require_rank(a.rank(), b.rank(), "series_add");
    QSeries out(a.rank(), std::min(a.order(), b.order()));
    for (const auto& [m, c] : a.terms()) out.add_term(m.exponent, c);
    for (const auto& [m, c] : b.terms()) out.add_term(m.exponent, c);
    return out;
}

inline QSeries series_scale(const QSeries& a, const Rational& k) {
    QSeries out(a.rank(), a.order());
    for (const auto& [m, c] : a.terms()) out.add_term(m.exponent, k * c);
    return out;
}

inline QSeries series_mul(const QSeries& a, const QSeries& b) {
    require_rank(a.rank(), b.rank(), "series_mul");
    QSeries out(a.rank(), std::min(a.order(), b.order()));
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (ma.degree() + mb.degree() > out.order()) break;  // b's terms ascend in degree
            IntVec e(a.rank());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ma.exponent[i] + mb.exponent[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

/// c q^eta / (1 - q^eta).
struct PrimitiveTerm {
    Rational c;
    CurveClass eta;
};

/// sum_k>=1 c q^{k eta}, truncated at total degree N in the framing.
inline QSeries expand(const PrimitiveTerm& term, Int order, const FramingBasis& framing) {
    if (term.eta.is_zero()) throw DomainError("expand: primitive term with zero class");
    const IntVec e = framing.dual_coordinates(term.eta);
    for (Int x : e)
        if (x < 0)
            throw DomainError("expand: class " + term.eta.str() + " is not expandable in this framing");
    QSeries out(framing.rank(), order);
    const Int deg = std::accumulate(e.begin(), e.end(), Int{0});
    for (Int k = 1; checked_mul(k, deg) <= order; ++k) {
        IntVec ek(e);
        for (auto& x : ek) x *= k;
        out.add_term(ek, term.c);
    }
    return out;
}

inline QSeries expand(const PrimitiveTerm& term, Int order) {
    return expand(term, order, FramingBasis::standard(term.eta.rank()));
}

/// poly(q) + sum c q^eta/(1 - q^eta). Both parts are keyed by curve class in
/// lattice coordinates; entries with zero coefficient are never stored, so
/// structural equality is equality of expressions in this normal form.
class QExpression {
public:
    explicit QExpression(std::size_t rank) : rank_(rank) {}

    std::size_t rank() const { return rank_; }
    const std::map<CurveClass, Rational>& poly() const { return poly_; }
    const std::map<CurveClass, Rational>& prims() const { return prims_; }

    Rational constant_term() const {
        auto it = poly_.find(CurveClass::zero(rank_));
        return it == poly_.end() ? Rational(0) : it->second;
    }

    void add_monomial(const CurveClass& eta, const Rational& c) { accumulate(poly_, eta, c); }
    void add_constant(const Rational& c) { add_monomial(CurveClass::zero(rank_), c); }

    void add_primitive(const PrimitiveTerm& t) {
        if (t.eta.is_zero()) throw DomainError("QExpression: primitive term with zero class");
        accumulate(prims_, t.eta, t.c);
    }

    friend QExpression operator+(QExpression a, const QExpression& b) {
        require_rank(a.rank_, b.rank_, "QExpression sum");
        for (const auto& [eta, c] : b.poly_) a.add_monomial(eta, c);
        for (const auto& [eta, c] : b.prims_) a.add_primitive({c, eta});
        return a;
    }

    friend bool operator==(const QExpression&, const QExpression&) = default;

private:
    void accumulate(std::map<CurveClass, Rational>& m, const CurveClass& eta, const Rational& c) {
        require_rank(rank_, eta.rank(), "QExpression term");
        if (c == 0) return;
        auto [it, inserted] = m.try_emplace(eta, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) m.erase(it);
        }
    }

    std::size_t rank_;
    std::map<CurveClass, Rational> poly_;
    std::map<CurveClass, Rational> prims_;
};

namespace detail {
inline Rational power(const Rational& x, Int e) {
    if (e < 0) {
        if (x == 0) throw DomainError("eval: negative power of a zero coordinate");
        return 1 / power(x, -e);
    }
    Rational r = 1, b = x;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rational monomial_value(const IntVec& exponent, const RatVec& q) {
    Rational v = 1;
    for (std::size_t j = 0; j < q.size(); ++j) v *= power(q[j], exponent[j]);
    return v;
}
}  // namespace detail

/// Exact value at a rational point q given in framing coordinates. Valid on
/// both sides of |q^eta| = 1; only the poles q^eta = 1 are excluded.
inline Rational eval(const QExpression& expr, const RatVec& q, const FramingBasis& framing) {
    require_rank(expr.rank(), q.size(), "eval");
    Rational total = 0;
    for (const auto& [eta, c] : expr.poly()) total += c * detail::monomial_value(framing.dual_coordinates(eta), q);
    for (const auto& [eta, c] : expr.prims()) {
        const Rational x = detail::monomial_value(framing.dual_coordinates(eta), q);
        if (x == 1) throw DomainError("eval: q^" + eta.str() + " = 1 is on the wall locus");
        total += c * x / (1 - x);
    }
    return total;
}

inline Rational eval(const QExpression& expr, const RatVec& q) {
    return eval(expr, q, FramingBasis::standard(expr.rank()));
}

/// Series expansion of an expression whose classes are all framing-nonnegative.
inline QSeries expand(const QExpression& expr, Int order, const FramingBasis& framing) {
    QSeries out(expr.rank(), order);
    for (const auto& [eta, c] : expr.poly()) {
        const IntVec e = framing.dual_coordinates(eta);
        out.add_term(e, c);
    }
    for (const auto& [eta, c] : expr.prims()) out = series_add(out, expand(PrimitiveTerm{c, eta}, order, framing));
    return out;
}

/// Rewrites every primitive term whose class is not framing-nonnegative via
/// q^-g/(1-q^-g) = -1 - q^g/(1-q^g), so that the result expands as a series.
/// The value is unchanged at every point off the poles.
inline QExpression orient(const QExpression& expr, const FramingBasis& framing) {
    QExpression out(expr.rank());
    for (const auto& [eta, c] : expr.poly()) out.add_monomial(eta, c);
    for (const auto& [eta, c] : expr.prims()) {
        const IntVec e = framing.dual_coordinates(eta);
        const bool nonneg = std::all_of(e.begin(), e.end(), [](Int x) { return x >= 0; });
        if (nonneg) {
            out.add_primitive({c, eta});
            continue;
        }
        const bool nonpos = std::all_of(e.begin(), e.end(), [](Int x) { return x <= 0; });
        if (!nonpos) throw DomainError("orient: class " + eta.str() + " has mixed signs in this framing");
        out.add_constant(-c);
        out.add_primitive({-c, -eta});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Univariate polynomials and rational functions over Q.

/// Dense polynomial, coefficients from degree 0 upwards, no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    UPoly(const Rational& c) : c_{c} { trim(); }

    static UPoly monomial(const Rational& c, std::size_t degree) {
        std::vector<Rational> v(degree + 1, 0);
        v[degree] = c;
        return UPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& lead() const { return c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return UPoly(std::move(v));
    }
    friend UPoly operator-(const UPoly& a) {
        UPoly r(a);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(v));
    }

    /// Quotient and remainder; divisor must be nonzero.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        UPoly r = a;
        std::vector<Rational> q(std::max(0, a.degree() - b.degree() + 1), 0);
        while (!r.is_zero() && r.degree() >= b.degree()) {
            const std::size_t shift = r.degree() - b.degree();
            const Rational f = r.lead() / b.lead();
            q[shift] = f;
            r = r - monomial(f, shift) * b;
        }
        return {UPoly(std::move(q)), r};
    }

    friend bool operator==(const UPoly&, const UPoly&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// num/den in lowest terms with integer coefficients of combined content 1
/// and a positive leading denominator coefficient. Equal functions have
/// identical representations.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Rational(1)) {}
    RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) { canonicalize(); }
    RationalFunction(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        canonicalize();
    }

    const UPoly& numerator() const { return num_; }
    const UPoly& denominator() const { return den_; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    Rational operator()(const Rational& u) const {
        const Rational d = den_(u);
        if (d == 0) throw DomainError("rational function evaluated at a pole");
        return num_(u) / d;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

    std::string str() const {
        auto poly = [](const UPoly& p) {
            if (p.is_zero()) return std::string("0");
            std::ostringstream os;
            bool first = true;
            for (int i = p.degree(); i >= 0; --i) {
                const Rational& c = p.coefficients()[i];
                if (c == 0) continue;
                if (!first) os << (c < 0 ? " - " : " + ");
                else if (c < 0) os << "-";
                first = false;
                const Rational a = abs(c);
                if (i == 0 || a != 1) os << format(a);
                if (i > 0) os << (i == 0 || a != 1 ? "*" : "") << "u" << (i > 1 ? "^" + std::to_string(i) : "");
            }
            return os.str();
        };
        if (den_.degree() == 0) return poly(num_);
        return "(" + poly(num_) + ")/(" + poly(den_) + ")";
    }

private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = UPoly(Rational(1));
            return;
        }
        const UPoly g = gcd(num_, den_);
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
        BigInt l = 1;
        for (const auto& c : num_.coefficients()) l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(c)));
        for (const auto& c : den_.coefficients()) l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(c)));
        BigInt content = 0;
        for (const auto& c : num_.coefficients()) content = boost::multiprecision::gcd(content, BigInt(boost::multiprecision::numerator(Rational(c * l))));
        for (const auto& c : den_.coefficients()) content = boost::multiprecision::gcd(content, BigInt(boost::multiprecision::numerator(Rational(c * l))));
        Rational scale = Rational(l) / Rational(content);
        if (den_.lead() < 0) scale = -scale;
        num_ = num_ * UPoly(scale);
        den_ = den_ * UPoly(scale);
    }

    UPoly num_;
    UPoly den_;
};

/// The expression as a function of u = q^gamma alone. Every class occurring
/// in it must be an integer multiple k*gamma; q^{k gamma} becomes u^k.
inline RationalFunction restrict_to_wall_variable(const QExpression& expr, const CurveClass& gamma) {
    require_rank(expr.rank(), gamma.rank(), "restrict_to_wall_variable");
    if (gamma.is_zero()) throw DomainError("restrict_to_wall_variable: zero wall class");
    auto multiple = [&](const CurveClass& eta) {
        auto k = multiple_of(eta, gamma);
        if (!k)
            throw DomainError("restrict_to_wall_variable: class " + eta.str() + " is not a multiple of " +
                              gamma.str() + "; mixed classes, use eval");
        return *k;
    };
    auto u_power = [](Int k) {  // u^k as a rational function
        if (k >= 0) return RationalFunction(UPoly::monomial(1, k), UPoly(Rational(1)));
        return RationalFunction(UPoly(Rational(1)), UPoly::monomial(1, -k));
    };
    RationalFunction total;
    for (const auto& [eta, c] : expr.poly()) total = total + RationalFunction(c) * u_power(multiple(eta));
    for (const auto& [eta, c] : expr.prims()) {
        const Int k = multiple(eta);
        // c u^k / (1 - u^k); for k < 0 this is c / (u^|k| - 1).
        const RationalFunction term =
            k > 0 ? RationalFunction(UPoly::monomial(c, k), UPoly(Rational(1)) - UPoly::monomial(1, k))
                  : RationalFunction(UPoly(c), UPoly::monomial(1, -k) - UPoly(Rational(1)));
        total = total + term;
    }
    return total;
}

/// Exact value with every class k*gamma evaluated as u^k.
inline Rational eval_on_wall(const QExpression& expr, const CurveClass& gamma, const Rational& u) {
    Rational total = 0;
    for (const auto& [eta, c] : expr.poly()) {
        auto k = multiple_of(eta, gamma);
        if (!k) throw DomainError("eval_on_wall: class " + eta.str() + " is not a multiple of " + gamma.str());
        total += c * detail::power(u, *k);
    }
    for (const auto& [eta, c] : expr.prims()) {
        auto k = multiple_of(eta, gamma);
        if (!k) throw DomainError("eval_on_wall: class " + eta.str() + " is not a multiple of " + gamma.str());
        const Rational x = detail::power(u, *k);
        if (x == 1) throw DomainError("eval_on_wall: u = " + format(u) + " is a pole");
        total += c * x / (1 - x);
    }
    return total;
}

}  // namespace chamber
