#pragma once

// Second-cohomology lattice L = H^2(X,Z), its dual H_2(X,Z), the triple
// intersection form, and complexified Kahler points with their exponential
// coordinates. Lattices are torsion-free throughout.

#include "chamber/core.hpp"
#include "chamber/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <numbers>
#include <optional>
#include <utility>

namespace chamber {

/// An integer vector that knows which lattice it lives in. Divisor and curve
/// classes share the representation but never mix without going through
/// pair().
template <class Tag>
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(IntVec coords) : coords_(std::move(coords)) {}
    LatticeVector(std::initializer_list<Int> coords) : coords_(coords) {}

    static LatticeVector zero(std::size_t rank) { return LatticeVector(IntVec(rank, 0)); }
    static LatticeVector unit(std::size_t rank, std::size_t i) {
        IntVec v(rank, 0);
        v.at(i) = 1;
        return LatticeVector(std::move(v));
    }

    std::size_t rank() const { return coords_.size(); }
    const IntVec& coords() const { return coords_; }
    Int operator[](std::size_t i) const { return coords_[i]; }
    bool is_zero() const { return chamber::is_zero(coords_); }
    bool is_primitive() const { return chamber::is_primitive(coords_); }

    LatticeVector operator-() const {
        IntVec v(coords_);
        for (auto& x : v) x = checked_mul(x, -1);
        return LatticeVector(std::move(v));
    }
    friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
        require_rank(a.rank(), b.rank(), "class addition");
        IntVec v(a.coords_);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = checked_add(v[i], b.coords_[i]);
        return LatticeVector(std::move(v));
    }
    friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) { return a + (-b); }
    friend LatticeVector operator*(Int k, const LatticeVector& a) {
        IntVec v(a.coords_);
        for (auto& x : v) x = checked_mul(x, k);
        return LatticeVector(std::move(v));
    }

    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
    friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;

    std::string str() const { return format_vector(coords_); }

private:
    IntVec coords_;
};

struct DivisorTag {};
struct CurveTag {};

using DivisorClass = LatticeVector<DivisorTag>;
using CurveClass = LatticeVector<CurveTag>;

/// The intersection pairing H^2 x H_2 -> Z.
inline Int pair(const DivisorClass& d, const CurveClass& eta) {
    require_rank(d.rank(), eta.rank(), "pair");
    return dot(d.coords(), eta.coords());
}

/// Rational-coefficient pairing, for divisor-space points of rational cones.
inline Rational pair(const RatVec& d, const CurveClass& eta) {
    require_rank(d.size(), eta.rank(), "pair");
    return dot(eta.coords(), d);
}

/// If eta = k * gamma for an integer k, returns k.
inline std::optional<Int> multiple_of(const CurveClass& eta, const CurveClass& gamma) {
    require_rank(gamma.rank(), eta.rank(), "multiple_of");
    std::size_t lead = 0;
    while (lead < gamma.rank() && gamma[lead] == 0) ++lead;
    if (lead == gamma.rank()) return std::nullopt;
    if (eta[lead] % gamma[lead] != 0) return std::nullopt;
    const Int k = eta[lead] / gamma[lead];
    if (eta != k * gamma) return std::nullopt;
    return k;
}

/// Symmetric trilinear integer form on L, stored by sorted index triples.
/// coefficient(i,j,k) is the value on the basis divisors e^i, e^j, e^k.
class CubicForm {
public:
    using Key = std::array<std::size_t, 3>;

    CubicForm() = default;
    explicit CubicForm(std::size_t rank) : rank_(rank) {}

    std::size_t rank() const { return rank_; }
    const std::map<Key, Int>& coefficients() const { return coeffs_; }

    static Key canonical(std::size_t i, std::size_t j, std::size_t k) {
        Key key{i, j, k};
        std::sort(key.begin(), key.end());
        return key;
    }

    Int coefficient(std::size_t i, std::size_t j, std::size_t k) const {
        auto it = coeffs_.find(canonical(i, j, k));
        return it == coeffs_.end() ? 0 : it->second;
    }

    /// Sets the value on (e^i, e^j, e^k) and all its permutations. Zero
    /// coefficients are not stored, so equal forms compare equal.
    void set(std::size_t i, std::size_t j, std::size_t k, Int c) {
        if (i >= rank_ || j >= rank_ || k >= rank_)
            throw DomainError("cubic coefficient index out of range for rank " + std::to_string(rank_));
        const Key key = canonical(i, j, k);
        if (c == 0)
            coeffs_.erase(key);
        else
            coeffs_[key] = c;
    }

    void add(std::size_t i, std::size_t j, std::size_t k, Int c) {
        set(i, j, k, checked_add(coefficient(i, j, k), c));
    }

    friend bool operator==(const CubicForm&, const CubicForm&) = default;

private:
    std::size_t rank_ = 0;
    std::map<Key, Int> coeffs_;
};

namespace detail {
// All distinct orderings of a sorted index triple.
inline std::vector<CubicForm::Key> orderings(const CubicForm::Key& key) {
    std::vector<CubicForm::Key> out;
    CubicForm::Key k = key;
    do {
        out.push_back(k);
    } while (std::next_permutation(k.begin(), k.end()));
    return out;
}
}  // namespace detail

/// A.B.C for the trilinear form F.
inline Int cubic_eval(const CubicForm& f, const DivisorClass& a, const DivisorClass& b,
                      const DivisorClass& c) {
    require_rank(f.rank(), a.rank(), "cubic_eval");
    require_rank(f.rank(), b.rank(), "cubic_eval");
    require_rank(f.rank(), c.rank(), "cubic_eval");
    Int total = 0;
    for (const auto& [key, coeff] : f.coefficients()) {
        Int sym = 0;
        for (const auto& [i, j, k] : detail::orderings(key))
            sym = checked_add(sym, checked_mul(checked_mul(a[i], b[j]), c[k]));
        total = checked_add(total, checked_mul(coeff, sym));
    }
    return total;
}

/// B + iJ with B, J given as rational coordinate vectors in L_Q.
struct ComplexifiedClass {
    RatVec b;
    RatVec j;
};

/// A lattice basis e^1..e^r of L. The open cone it spans fixes the q-coordinates.
class FramingBasis {
public:
    explicit FramingBasis(std::vector<DivisorClass> basis) : basis_(std::move(basis)) {
        const std::size_t r = basis_.size();
        if (r == 0) throw DomainError("framing: empty basis");
        RatMatrix m(r, RatVec(r));
        for (std::size_t col = 0; col < r; ++col) {
            require_rank(r, basis_[col].rank(), "framing");
            for (std::size_t row = 0; row < r; ++row) m[row][col] = basis_[col][row];
        }
        const Rational det = linalg::determinant(m);
        if (det != 1 && det != -1)
            throw DomainError("framing: basis determinant is " + det.str() + ", expected +-1");
        inverse_ = linalg::inverse(m);
    }

    static FramingBasis standard(std::size_t rank) {
        std::vector<DivisorClass> basis;
        for (std::size_t i = 0; i < rank; ++i) basis.push_back(DivisorClass::unit(rank, i));
        return FramingBasis(std::move(basis));
    }

    std::size_t rank() const { return basis_.size(); }
    const std::vector<DivisorClass>& basis() const { return basis_; }

    /// Coefficients a with v = sum a_j e^j.
    RatVec coefficients(const RatVec& v) const {
        require_rank(rank(), v.size(), "framing coefficients");
        RatVec a(rank(), 0);
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t k = 0; k < rank(); ++k) a[i] += inverse_[i][k] * v[k];
        return a;
    }

    /// Coordinates eta^j = e^j . eta of a curve class in the dual basis e_j.
    IntVec dual_coordinates(const CurveClass& eta) const {
        require_rank(rank(), eta.rank(), "dual coordinates");
        IntVec out;
        out.reserve(rank());
        for (const auto& e : basis_) out.push_back(pair(e, eta));
        return out;
    }

    friend bool operator==(const FramingBasis& a, const FramingBasis& b) { return a.basis_ == b.basis_; }

private:
    std::vector<DivisorClass> basis_;
    RatMatrix inverse_;
};

/// q_j = exp(2 pi i a_j) where B + iJ = sum a_j e^j.
inline std::vector<std::complex<double>> q_coordinates(const ComplexifiedClass& z, const FramingBasis& fr) {
    const RatVec re = fr.coefficients(z.b);
    const RatVec im = fr.coefficients(z.j);
    std::vector<std::complex<double>> q;
    q.reserve(fr.rank());
    for (std::size_t k = 0; k < fr.rank(); ++k) {
        if (im[k] <= 0)
            throw DomainError("q_coordinates: point is outside framing cone (Im a_" + std::to_string(k + 1) +
                              " = " + im[k].str() + ")");
        // Reduce the real part mod 1 exactly so integral shifts of B give
        // bit-identical output.
        const Rational frac = re[k] - floor_of(re[k]);
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(frac);
        const double modulus = std::exp(-2.0 * std::numbers::pi * static_cast<double>(im[k]));
        q.push_back(std::polar(modulus, phase));
    }
    return q;
}

}  // namespace chamber
