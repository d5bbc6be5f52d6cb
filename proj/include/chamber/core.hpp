#pragma once

// Scalar types, error types and the small amount of exact-arithmetic glue
// shared by every other header.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chamber {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rational>;

/// Raised when input violates a mathematical precondition or invariant.
/// The CLI maps this to exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class RankMismatch : public DomainError {
public:
    RankMismatch(std::size_t expected, std::size_t got, std::string_view where)
        : DomainError(std::string(where) + ": rank mismatch (expected " +
                      std::to_string(expected) + ", got " + std::to_string(got) + ")") {}
};

inline void require_rank(std::size_t expected, std::size_t got, std::string_view where) {
    if (expected != got) throw RankMismatch(expected, got, where);
}

// Overflow-checked 64-bit arithmetic. Lattice data is desk-scale, so an
// overflow means the input is out of range rather than something to recover.
inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

inline Int to_int(const BigInt& v) {
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
        throw std::overflow_error("value does not fit in 64 bits: " + v.str());
    return static_cast<Int>(v);
}

inline Int to_int(const Rational& v) {
    if (denominator(v) != 1) throw DomainError("expected an integer, got " + v.str());
    return to_int(BigInt(numerator(v)));
}

inline BigInt floor_of(const Rational& v) {
    const BigInt n = numerator(v);
    const BigInt d = denominator(v);  // always positive
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

inline RatVec to_rational(const IntVec& v) {
    return RatVec(v.begin(), v.end());
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    require_rank(a.size(), b.size(), "dot");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVec& a, const RatVec& b) {
    require_rank(a.size(), b.size(), "dot");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int dot(const IntVec& a, const IntVec& b) {
    require_rank(a.size(), b.size(), "dot");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
    return s;
}

inline bool is_zero(const IntVec& v) {
    for (Int x : v)
        if (x != 0) return false;
    return true;
}

inline bool is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline Int gcd_of(const IntVec& v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, x);
    return g;
}

inline bool is_primitive(const IntVec& v) { return gcd_of(v) == 1; }

/// Positive rescaling of a nonzero rational vector to the primitive integer
/// vector on the same ray.
inline IntVec primitive(const RatVec& v) {
    BigInt l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, BigInt(denominator(x)));
    std::vector<BigInt> n;
    n.reserve(v.size());
    BigInt g = 0;
    for (const auto& x : v) {
        n.push_back(BigInt(numerator(x)) * (l / BigInt(denominator(x))));
        g = boost::multiprecision::gcd(g, n.back());
    }
    if (g == 0) throw DomainError("primitive: zero vector has no primitive direction");
    IntVec out;
    out.reserve(n.size());
    for (const auto& x : n) out.push_back(to_int(BigInt(x / g)));
    return out;
}

inline IntVec primitive(const IntVec& v) {
    Int g = gcd_of(v);
    if (g == 0) throw DomainError("primitive: zero vector has no primitive direction");
    IntVec out(v);
    for (Int& x : out) x /= g;
    return out;
}

// Text forms: integers print plainly, rationals as "p/q".
inline std::string format(const Rational& r) { return r.str(); }

inline Rational parse_rational(std::string_view s) {
    std::string t(s);
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(t));
        BigInt p(t.substr(0, slash));
        BigInt q(t.substr(slash + 1));
        if (q == 0) throw DomainError("zero denominator in '" + t + "'");
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw DomainError("not a rational number: '" + t + "'");
    }
}

template <class T>
std::string format_vector(const std::vector<T>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ']';
    return os.str();
}

}  // namespace chamber
