#pragma once

// Rational polyhedral cones with both descriptions kept in canonical form:
// primitive integer generators and primitive integer inward normals, each
// list sorted and deduplicated. Conversion between the two uses the
// double description method (Motzkin's incremental algorithm) in exact
// rational arithmetic.
//
// Cones that are not pointed carry their lineality space as +-pairs of
// generators; cones that are not full-dimensional carry their span's
// equations as +-pairs of normals. Two cones are equal iff their canonical
// descriptions are equal.

#include "chamber/core.hpp"
#include "chamber/lattice.hpp"
#include "chamber/linalg.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace chamber {

namespace detail {

struct Generators {
    RatMatrix lineality;
    RatMatrix rays;
};

inline std::vector<std::size_t> zero_set(const RatVec& v, const RatMatrix& ineqs, std::size_t processed) {
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < processed; ++i)
        if (dot(ineqs[i], v) == 0) z.push_back(i);
    return z;
}

// Generators of {x in Q^d : a.x >= 0 for every a in ineqs}.
inline Generators double_description(const RatMatrix& ineqs, std::size_t d) {
    Generators g;
    for (std::size_t i = 0; i < d; ++i) {
        RatVec e(d, 0);
        e[i] = 1;
        g.lineality.push_back(std::move(e));
    }

    for (std::size_t step = 0; step < ineqs.size(); ++step) {
        const RatVec& a = ineqs[step];
        require_rank(d, a.size(), "double description");
        if (is_zero(a)) continue;

        // A lineality direction not orthogonal to a turns into a new ray.
        auto cut = std::find_if(g.lineality.begin(), g.lineality.end(),
                                [&](const RatVec& l) { return dot(a, l) != 0; });
        if (cut != g.lineality.end()) {
            RatVec l0 = *cut;
            g.lineality.erase(cut);
            Rational al0 = dot(a, l0);
            if (al0 < 0) {
                for (auto& x : l0) x = -x;
                al0 = -al0;
            }
            auto project = [&](RatVec& v) {
                const Rational f = dot(a, v) / al0;
                if (f == 0) return;
                for (std::size_t k = 0; k < d; ++k) v[k] -= f * l0[k];
            };
            for (auto& l : g.lineality) project(l);
            for (auto& r : g.rays) project(r);
            g.rays.push_back(to_rational(primitive(l0)));
            continue;
        }

        std::vector<std::size_t> pos, neg;
        RatMatrix next;
        for (std::size_t i = 0; i < g.rays.size(); ++i) {
            const Rational s = dot(a, g.rays[i]);
            if (s > 0)
                pos.push_back(i);
            else if (s < 0)
                neg.push_back(i);
            if (s >= 0) next.push_back(g.rays[i]);
        }
        if (!neg.empty() && !pos.empty()) {
            const std::size_t pointed_dim = d - g.lineality.size();
            std::vector<std::vector<std::size_t>> zs(g.rays.size());
            for (std::size_t i : pos) zs[i] = zero_set(g.rays[i], ineqs, step);
            for (std::size_t i : neg) zs[i] = zero_set(g.rays[i], ineqs, step);
            for (std::size_t p : pos) {
                for (std::size_t n : neg) {
                    std::vector<std::size_t> common;
                    std::set_intersection(zs[p].begin(), zs[p].end(), zs[n].begin(), zs[n].end(),
                                          std::back_inserter(common));
                    if (pointed_dim >= 2 && common.size() < pointed_dim - 2) continue;
                    RatMatrix active;
                    for (std::size_t idx : common) active.push_back(ineqs[idx]);
                    if (linalg::rank(active, d) + 2 != pointed_dim) continue;
                    const Rational ap = dot(a, g.rays[p]);
                    const Rational an = dot(a, g.rays[n]);
                    RatVec v(d);
                    for (std::size_t k = 0; k < d; ++k) v[k] = ap * g.rays[n][k] - an * g.rays[p][k];
                    next.push_back(to_rational(primitive(v)));
                }
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        g.rays = std::move(next);
    }
    return g;
}

// Canonical primitive integer generator list of the cone described by g.
inline std::vector<IntVec> canonical_generators(const Generators& g, std::size_t d) {
    const linalg::Echelon lin = linalg::rref(g.lineality, d);
    std::set<IntVec> out;
    for (const auto& row : lin.rows) {
        IntVec l = primitive(row);
        out.insert(l);
        for (auto& x : l) x = -x;
        out.insert(l);
    }
    for (RatVec r : g.rays) {
        // Normal form modulo the lineality space.
        for (std::size_t i = 0; i < lin.rows.size(); ++i) {
            const Rational f = r[lin.pivots[i]];
            if (f == 0) continue;
            for (std::size_t k = 0; k < d; ++k) r[k] -= f * lin.rows[i][k];
        }
        if (!is_zero(r)) out.insert(primitive(r));
    }
    return {out.begin(), out.end()};
}

inline RatMatrix as_rational(const std::vector<IntVec>& vs) {
    RatMatrix m;
    m.reserve(vs.size());
    for (const auto& v : vs) m.push_back(to_rational(v));
    return m;
}

// Inequalities whose dual cone is the cone generated by gens.
inline std::vector<IntVec> dual_generators(const std::vector<IntVec>& gens, std::size_t d) {
    return canonical_generators(double_description(as_rational(gens), d), d);
}

}  // namespace detail

enum class Membership { open, closed };

class Cone {
public:
    Cone() = default;

    std::size_t rank() const { return rank_; }
    const std::vector<IntVec>& rays() const { return rays_; }
    const std::vector<IntVec>& halfspaces() const { return halfspaces_; }

    /// Dimension of the linear span.
    std::size_t dimension() const { return linalg::rank(rays_, rank_); }
    bool is_full_dimensional() const { return dimension() == rank_; }
    bool is_zero() const { return rays_.empty(); }

    /// Normals that vanish on the whole cone (equations of its span).
    bool is_implicit_equality(const IntVec& h) const {
        return std::all_of(rays_.begin(), rays_.end(), [&](const IntVec& r) { return dot(h, r) == 0; });
    }

    friend bool operator==(const Cone&, const Cone&) = default;

    friend Cone cone_from_rays(const std::vector<IntVec>& rays, std::size_t rank);
    friend Cone cone_from_halfspaces(const std::vector<IntVec>& normals, std::size_t rank);

private:
    std::size_t rank_ = 0;
    std::vector<IntVec> rays_;
    std::vector<IntVec> halfspaces_;
};

/// The set of nonnegative rational combinations of rays.
inline Cone cone_from_rays(const std::vector<IntVec>& rays, std::size_t rank) {
    for (std::size_t i = 0; i < rays.size(); ++i) {
        require_rank(rank, rays[i].size(), "cone_from_rays");
        if (is_zero(rays[i])) throw DomainError("cone_from_rays: ray " + std::to_string(i) + " is zero");
    }
    Cone k;
    k.rank_ = rank;
    k.halfspaces_ = detail::dual_generators(rays, rank);
    // Recomputing the rays from the normals drops redundant generators.
    k.rays_ = detail::dual_generators(k.halfspaces_, rank);
    return k;
}

/// {v : h.v >= 0 for all normals h}.
inline Cone cone_from_halfspaces(const std::vector<IntVec>& normals, std::size_t rank) {
    for (const auto& h : normals) require_rank(rank, h.size(), "cone_from_halfspaces");
    Cone k;
    k.rank_ = rank;
    k.rays_ = detail::dual_generators(normals, rank);
    k.halfspaces_ = detail::dual_generators(k.rays_, rank);
    return k;
}

inline Cone cone_from_divisors(const std::vector<DivisorClass>& rays, std::size_t rank) {
    std::vector<IntVec> v;
    v.reserve(rays.size());
    for (const auto& r : rays) v.push_back(r.coords());
    return cone_from_rays(v, rank);
}

/// Closed mode: every normal is >= 0 on v. Open mode: v lies in the relative
/// interior, i.e. additionally every normal that is not an equation of the
/// cone's span is > 0 on v.
inline bool contains(const Cone& k, const RatVec& v, Membership mode = Membership::closed) {
    require_rank(k.rank(), v.size(), "contains");
    for (const auto& h : k.halfspaces()) {
        const Rational s = dot(h, v);
        if (s < 0) return false;
        if (mode == Membership::open && s == 0 && !k.is_implicit_equality(h)) return false;
    }
    return true;
}

inline bool contains(const Cone& k, const IntVec& v, Membership mode = Membership::closed) {
    return contains(k, to_rational(v), mode);
}

inline Cone intersect(const Cone& a, const Cone& b) {
    require_rank(a.rank(), b.rank(), "intersect");
    std::vector<IntVec> normals = a.halfspaces();
    normals.insert(normals.end(), b.halfspaces().begin(), b.halfspaces().end());
    return cone_from_halfspaces(normals, a.rank());
}

/// Convex hull of the union.
inline Cone hull(const Cone& a, const Cone& b) {
    require_rank(a.rank(), b.rank(), "hull");
    std::vector<IntVec> rays = a.rays();
    rays.insert(rays.end(), b.rays().begin(), b.rays().end());
    return cone_from_rays(rays, a.rank());
}

/// Image of the cone under an integer matrix acting on column vectors.
inline Cone image(const Cone& k, const IntMatrix& m) {
    require_rank(k.rank(), m.size(), "cone image");
    std::vector<IntVec> rays;
    for (const auto& r : k.rays()) {
        IntVec v(k.rank(), 0);
        for (std::size_t i = 0; i < k.rank(); ++i) v[i] = dot(m[i], r);
        if (!is_zero(v)) rays.push_back(v);
    }
    return cone_from_rays(rays, k.rank());
}

namespace detail {
inline IntVec lex_positive(IntVec v) {
    auto first = std::find_if(v.begin(), v.end(), [](Int x) { return x != 0; });
    if (first != v.end() && *first < 0)
        for (auto& x : v) x = -x;
    return v;
}
}  // namespace detail

/// The hyperplane Gamma-perp in divisor space.
struct WallHyperplane {
    CurveClass normal;

    friend bool operator==(const WallHyperplane&, const WallHyperplane&) = default;

    /// True if this is the hyperplane gamma-perp (either sign of gamma).
    bool matches(const CurveClass& gamma) const;
};

inline bool WallHyperplane::matches(const CurveClass& gamma) const {
    if (gamma.rank() != normal.rank() || gamma.is_zero()) return false;
    return CurveClass(detail::lex_positive(primitive(gamma.coords()))) == normal;
}

/// The hyperplane of the shared codimension-one face of two full-dimensional
/// cones with disjoint interiors, or nothing if they meet in lower dimension.
/// The normal is reported with its first nonzero entry positive.
inline std::optional<WallHyperplane> common_wall(const Cone& a, const Cone& b) {
    require_rank(a.rank(), b.rank(), "common_wall");
    if (!a.is_full_dimensional() || !b.is_full_dimensional())
        throw DomainError("common_wall: both cones must be full-dimensional");
    const Cone meet = intersect(a, b);
    const std::size_t dim = meet.dimension();
    if (dim == a.rank()) throw DomainError("common_wall: not adjacent chambers (interiors overlap)");
    if (dim + 1 != a.rank()) return std::nullopt;
    for (const auto& h : meet.halfspaces()) {
        if (meet.is_implicit_equality(h))
            return WallHyperplane{CurveClass(detail::lex_positive(h))};
    }
    return std::nullopt;
}

}  // namespace chamber
