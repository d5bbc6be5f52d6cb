#pragma once

// Charts of birational models and the walls between them.
//
// A ModelChart carries one model's nef cone, cubic form and curve counts, all
// in a common coordinate system: proper transform identifies H^2 of the
// models, so divisor coordinates never change across a flop.

#include "chamber/cone.hpp"
#include "chamber/core.hpp"
#include "chamber/lattice.hpp"

#include <optional>
#include <string>
#include <utility>

namespace chamber {

enum class WallKind { flopping, divisorial, mori_fibration };

inline std::string to_string(WallKind k) {
    switch (k) {
        case WallKind::flopping: return "flopping";
        case WallKind::divisorial: return "divisorial";
        case WallKind::mori_fibration: return "mori_fibration";
    }
    return "unknown";
}

inline WallKind parse_wall_kind(const std::string& s) {
    if (s == "flopping") return WallKind::flopping;
    if (s == "divisorial") return WallKind::divisorial;
    if (s == "mori_fibration") return WallKind::mori_fibration;
    throw DomainError("unknown wall kind '" + s + "' (expected flopping, divisorial or mori_fibration)");
}

/// A codimension-one face gamma-perp of a nef cone. The kind is user input.
///
/// For flopping walls the flopped nef cone is built from the nef generators:
/// generators on the wall are kept, each generator g off the wall is sent to
///  - its entry in `transforms` if present, else
///  - g + (g.gamma) * aux when an auxiliary divisor with aux.gamma = -2 is set, else
///  - (rank 2 only) its Euclidean mirror image across the wall ray.
struct WallDescriptor {
    CurveClass gamma;
    WallKind kind = WallKind::flopping;
    Int n_gamma = 0;
    std::optional<DivisorClass> e_divisor;
    std::optional<DivisorClass> aux;
    std::vector<std::pair<DivisorClass, DivisorClass>> transforms;

    friend bool operator==(const WallDescriptor&, const WallDescriptor&) = default;
};

struct CurveCount {
    CurveClass eta;
    Int n = 0;

    friend bool operator==(const CurveCount&, const CurveCount&) = default;
};

struct ModelChart {
    std::string id;
    std::size_t rank = 0;
    CubicForm cubic;
    Cone nef;
    std::vector<WallDescriptor> walls;
    std::vector<CurveCount> curves;
    std::optional<FramingBasis> framing;

    FramingBasis framing_or_standard() const { return framing ? *framing : FramingBasis::standard(rank); }

    friend bool operator==(const ModelChart&, const ModelChart&) = default;
};

/// True if gamma-perp cuts out a facet of the cone with the cone on the
/// nonnegative side.
inline bool supports_facet(const Cone& k, const CurveClass& gamma) {
    std::vector<IntVec> on_wall;
    for (const auto& r : k.rays()) {
        const Int s = dot(r, gamma.coords());
        if (s < 0) return false;
        if (s == 0) on_wall.push_back(r);
    }
    return linalg::rank(on_wall, k.rank()) + 1 == k.rank();
}

namespace detail {
inline std::string wall_field(std::size_t i) { return "walls[" + std::to_string(i) + "]"; }
}  // namespace detail

/// Checks every chart invariant; throws DomainError naming the offending field.
inline void validate(const ModelChart& chart) {
    const std::size_t r = chart.rank;
    if (r == 0) throw DomainError("rank: must be positive");
    require_rank(r, chart.cubic.rank(), "cubic");
    require_rank(r, chart.nef.rank(), "nef_rays");
    if (!chart.nef.is_full_dimensional()) throw DomainError("nef_rays: nef cone must be full-dimensional");
    if (chart.framing) require_rank(r, chart.framing->rank(), "framing");

    for (std::size_t i = 0; i < chart.walls.size(); ++i) {
        const auto& w = chart.walls[i];
        const std::string f = detail::wall_field(i);
        require_rank(r, w.gamma.rank(), f + ".gamma");
        if (w.gamma.is_zero() || !w.gamma.is_primitive())
            throw DomainError(f + ".gamma: must be nonzero and primitive");
        if (!supports_facet(chart.nef, w.gamma))
            throw DomainError(f + ".gamma: " + w.gamma.str() + "-perp does not support a facet of the nef cone");
        if (w.kind == WallKind::flopping && w.n_gamma < 1)
            throw DomainError(f + ".n: flopping walls need n >= 1");
        if (w.kind != WallKind::flopping && w.n_gamma != 0)
            throw DomainError(f + ".n: only flopping walls carry a curve count");
        if (w.e_divisor) {
            if (w.kind != WallKind::divisorial) throw DomainError(f + ".e: only divisorial walls carry E");
            require_rank(r, w.e_divisor->rank(), f + ".e");
            const Int eg = pair(*w.e_divisor, w.gamma);
            if (eg != -2)
                throw DomainError(f + ".e: E.gamma = " + std::to_string(eg) +
                                  ", reflection walls require E.gamma = -2");
        }
        if (w.aux) {
            require_rank(r, w.aux->rank(), f + ".aux");
            if (pair(*w.aux, w.gamma) != -2) throw DomainError(f + ".aux: auxiliary divisor must have aux.gamma = -2");
        }
        for (const auto& [from, to] : w.transforms) {
            require_rank(r, from.rank(), f + ".transforms");
            require_rank(r, to.rank(), f + ".transforms");
            if (pair(from, w.gamma) <= 0) throw DomainError(f + ".transforms: source must lie off the wall");
            if (pair(to, w.gamma) >= 0) throw DomainError(f + ".transforms: image must lie across the wall");
        }
    }

    for (std::size_t i = 0; i < chart.curves.size(); ++i) {
        const auto& c = chart.curves[i];
        const std::string f = "curves[" + std::to_string(i) + "]";
        require_rank(r, c.eta.rank(), f + ".eta");
        if (c.eta.is_zero()) throw DomainError(f + ".eta: must be nonzero");
        for (const auto& g : chart.nef.rays())
            if (dot(g, c.eta.coords()) < 0)
                throw DomainError(f + ".eta: pairs negatively with nef generator " + format_vector(g));
        for (std::size_t j = i + 1; j < chart.curves.size(); ++j)
            if (chart.curves[j].eta == c.eta) throw DomainError(f + ".eta: duplicate curve class " + c.eta.str());
        for (const auto& w : chart.walls)
            if (w.kind == WallKind::flopping && w.gamma == c.eta && w.n_gamma != c.n)
                throw DomainError(f + ".n: count " + std::to_string(c.n) + " disagrees with wall count " +
                                  std::to_string(w.n_gamma) + " for class " + c.eta.str());
    }
}

/// Non-fatal findings: walls whose hyperplane no longer supports a facet,
/// curve classes that fail positivity, and wall data that was transported
/// without verification.
inline std::vector<std::string> chart_warnings(const ModelChart& chart) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < chart.walls.size(); ++i)
        if (!supports_facet(chart.nef, chart.walls[i].gamma))
            out.push_back(detail::wall_field(i) + ": hyperplane " + chart.walls[i].gamma.str() +
                          "-perp does not support a facet of the nef cone");
    for (std::size_t i = 0; i < chart.curves.size(); ++i)
        for (const auto& g : chart.nef.rays())
            if (dot(g, chart.curves[i].eta.coords()) < 0) {
                out.push_back("curves[" + std::to_string(i) + "]: class " + chart.curves[i].eta.str() +
                              " pairs negatively with nef generator " + format_vector(g));
                break;
            }
    for (const auto& w : chart.walls)
        if (w.kind == WallKind::flopping &&
            std::none_of(chart.curves.begin(), chart.curves.end(), [&](const CurveCount& c) { return c.eta == w.gamma; }))
            out.push_back("flopping wall class " + w.gamma.str() +
                          " is absent from the curve data; three-point functions omit it");
    return out;
}

inline std::size_t find_wall(const ModelChart& chart, const WallDescriptor& wall) {
    for (std::size_t i = 0; i < chart.walls.size(); ++i)
        if (chart.walls[i] == wall) return i;
    throw DomainError("wall " + wall.gamma.str() + " is not a wall of chart '" + chart.id + "'");
}

/// F-hat(A,B,C) = F(A,B,C) - n (A.gamma)(B.gamma)(C.gamma).
inline CubicForm flopped_cubic(const CubicForm& f, const CurveClass& gamma, Int n) {
    require_rank(f.rank(), gamma.rank(), "flopped_cubic");
    CubicForm out = f;
    const std::size_t r = f.rank();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j)
            for (std::size_t k = j; k < r; ++k)
                out.add(i, j, k, checked_mul(-n, checked_mul(gamma[i], checked_mul(gamma[j], gamma[k]))));
    return out;
}

namespace detail {

// Image of a divisor lying strictly on the positive side of the wall, or
// nothing when the wall data does not determine it.
inline std::optional<RatVec> transport_across(const DivisorClass& g, const WallDescriptor& w) {
    for (const auto& [from, to] : w.transforms)
        if (from == g) return to_rational(to.coords());
    const Int s = pair(g, w.gamma);
    if (w.aux) return to_rational((g + s * *w.aux).coords());
    if (g.rank() == 2) {
        // Wall ray rho spans gamma-perp; mirror g across the line through rho.
        const RatVec rho{Rational(-w.gamma[1]), Rational(w.gamma[0])};
        const RatVec gv = to_rational(g.coords());
        const Rational t = 2 * dot(gv, rho) / dot(rho, rho);
        return RatVec{t * rho[0] - gv[0], t * rho[1] - gv[1]};
    }
    return std::nullopt;
}

inline WallDescriptor transported_flop_wall(const WallDescriptor& w) {
    WallDescriptor out = w;
    out.gamma = -w.gamma;
    if (w.aux) out.aux = -*w.aux;
    out.transforms.clear();
    for (const auto& [from, to] : w.transforms) out.transforms.emplace_back(to, from);
    return out;
}

inline std::string flopped_id(const std::string& id) {
    if (!id.empty() && id.back() == '^') return id.substr(0, id.size() - 1);
    return id + "^";
}

}  // namespace detail

/// The chart of the flopped model across a flopping wall. The result keeps
/// divisor coordinates, replaces curve counts on multiples of gamma by counts
/// on the negated classes, shifts the cubic by -n gamma^3, mirrors the nef
/// cone across the wall, and carries the other walls over unchanged (see
/// chart_warnings for whether they still bound the new cone). The chart id
/// toggles a trailing '^', so flopping back restores the original exactly.
inline ModelChart flop(const ModelChart& chart, std::size_t wall_index) {
    if (wall_index >= chart.walls.size())
        throw DomainError("flop: chart '" + chart.id + "' has no wall " + std::to_string(wall_index));
    const WallDescriptor& wall = chart.walls[wall_index];
    if (wall.kind != WallKind::flopping)
        throw DomainError("flop: wall " + wall.gamma.str() + " is " + to_string(wall.kind) + ", not flopping");

    ModelChart out;
    out.id = detail::flopped_id(chart.id);
    out.rank = chart.rank;
    out.cubic = flopped_cubic(chart.cubic, wall.gamma, wall.n_gamma);

    std::vector<IntVec> rays;
    for (const auto& g : chart.nef.rays()) {
        const DivisorClass d(g);
        if (pair(d, wall.gamma) == 0) {
            rays.push_back(g);
            continue;
        }
        auto image = detail::transport_across(d, wall);
        if (!image)
            throw DomainError("flop: nef generator " + d.str() +
                              " has no proper transform; supply wall transforms or an auxiliary divisor");
        rays.push_back(primitive(*image));
    }
    out.nef = cone_from_rays(rays, chart.rank);

    out.walls = chart.walls;
    out.walls[wall_index] = detail::transported_flop_wall(wall);

    out.curves = chart.curves;
    for (auto& c : out.curves)
        if (multiple_of(c.eta, wall.gamma)) c.eta = -c.eta;

    if (chart.framing) {
        // The framing follows the same transport when that yields a lattice
        // basis again; otherwise the flopped chart falls back to the
        // standard framing.
        std::vector<DivisorClass> basis;
        bool ok = true;
        for (const auto& e : chart.framing->basis()) {
            if (pair(e, wall.gamma) <= 0) {
                basis.push_back(e);
                continue;
            }
            auto image = detail::transport_across(e, wall);
            if (!image || std::any_of(image->begin(), image->end(), [](const Rational& x) { return denominator(x) != 1; })) {
                ok = false;
                break;
            }
            IntVec v;
            for (const auto& x : *image) v.push_back(to_int(x));
            basis.emplace_back(std::move(v));
        }
        if (ok) {
            try {
                out.framing = FramingBasis(std::move(basis));
            } catch (const DomainError&) {
                out.framing.reset();
            }
        }
    }
    return out;
}

inline ModelChart flop(const ModelChart& chart, const WallDescriptor& wall) {
    return flop(chart, find_wall(chart, wall));
}

/// H -> H + (H.gamma) E, an involution when E.gamma = -2.
inline DivisorClass reflect_divisorial(const DivisorClass& h, const WallDescriptor& wall) {
    if (wall.kind != WallKind::divisorial)
        throw DomainError("reflect: wall " + wall.gamma.str() + " is " + to_string(wall.kind) + ", not divisorial");
    if (!wall.e_divisor) throw DomainError("reflect: divisorial wall " + wall.gamma.str() + " has no divisor E");
    const Int eg = pair(*wall.e_divisor, wall.gamma);
    if (eg != -2)
        throw DomainError("reflect: not a reflection wall (E.gamma = " + std::to_string(eg) + ", need -2)");
    return h + pair(h, wall.gamma) * *wall.e_divisor;
}

// ---------------------------------------------------------------------------

struct Adjacency {
    std::string from;
    std::string to;
    std::size_t wall = 0;  // index into the `from` chart's walls

    friend bool operator==(const Adjacency&, const Adjacency&) = default;
};

struct Atlas {
    std::vector<ModelChart> charts;
    std::vector<Adjacency> adjacency;

    const ModelChart& chart(const std::string& id) const {
        for (const auto& c : charts)
            if (c.id == id) return c;
        throw DomainError("atlas: no chart named '" + id + "'");
    }
};

struct InternalWall {
    std::string a;
    std::string b;
    CurveClass normal;
    std::string kind;  // declared wall kind, or "undeclared"
};

struct ChamberReport {
    std::vector<std::string> chambers;
    bool interiors_disjoint = true;
    std::vector<InternalWall> walls;
};

namespace detail {
inline void require_disjoint(const ModelChart& a, const ModelChart& b) {
    if (intersect(a.nef, b.nef).dimension() == a.rank)
        throw DomainError("atlas: chambers '" + a.id + "' and '" + b.id + "' have overlapping interiors");
}

inline std::string declared_kind(const Atlas& atlas, const ModelChart& a, const ModelChart& b, const WallHyperplane& h) {
    for (const auto& adj : atlas.adjacency) {
        if (!((adj.from == a.id && adj.to == b.id) || (adj.from == b.id && adj.to == a.id))) continue;
        const auto& src = atlas.chart(adj.from);
        if (adj.wall < src.walls.size() && h.matches(src.walls[adj.wall].gamma))
            return to_string(src.walls[adj.wall].kind);
    }
    for (const auto* c : {&a, &b})
        for (const auto& w : c->walls)
            if (h.matches(w.gamma)) return to_string(w.kind);
    return "undeclared";
}
}  // namespace detail

/// Checks atlas invariants: distinct ids, equal ranks, pairwise disjoint
/// chamber interiors, and every declared adjacency realized by a common wall
/// equal to the declared wall hyperplane.
inline void validate(const Atlas& atlas) {
    if (atlas.charts.empty()) throw DomainError("atlas: no charts");
    const std::size_t r = atlas.charts.front().rank;
    for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
        require_rank(r, atlas.charts[i].rank, "atlas chart '" + atlas.charts[i].id + "'");
        for (std::size_t j = i + 1; j < atlas.charts.size(); ++j) {
            if (atlas.charts[i].id == atlas.charts[j].id)
                throw DomainError("atlas: duplicate chart id '" + atlas.charts[i].id + "'");
            detail::require_disjoint(atlas.charts[i], atlas.charts[j]);
        }
    }
    for (const auto& adj : atlas.adjacency) {
        const auto& a = atlas.chart(adj.from);
        const auto& b = atlas.chart(adj.to);
        if (adj.wall >= a.walls.size())
            throw DomainError("atlas: chart '" + a.id + "' has no wall " + std::to_string(adj.wall));
        auto h = common_wall(a.nef, b.nef);
        if (!h || !h->matches(a.walls[adj.wall].gamma))
            throw DomainError("atlas: charts '" + a.id + "' and '" + b.id + "' do not meet along wall " +
                              a.walls[adj.wall].gamma.str());
    }
}

/// Convex hull of all chart nef cones.
inline Cone movable_cone(const Atlas& atlas) {
    if (atlas.charts.empty()) throw DomainError("movable_cone: empty atlas");
    validate(atlas);
    std::vector<IntVec> rays;
    for (const auto& c : atlas.charts) rays.insert(rays.end(), c.nef.rays().begin(), c.nef.rays().end());
    return cone_from_rays(rays, atlas.charts.front().rank);
}

inline ChamberReport chamber_structure(const Atlas& atlas) {
    validate(atlas);
    ChamberReport report;
    for (const auto& c : atlas.charts) report.chambers.push_back(c.id);
    for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
        for (std::size_t j = i + 1; j < atlas.charts.size(); ++j) {
            const auto& a = atlas.charts[i];
            const auto& b = atlas.charts[j];
            if (auto h = common_wall(a.nef, b.nef))
                report.walls.push_back({a.id, b.id, h->normal, detail::declared_kind(atlas, a, b, *h)});
        }
    }
    return report;
}

}  // namespace chamber
