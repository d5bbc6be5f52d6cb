#pragma once

// JSON descriptors for charts and atlases, and JSON forms of every report.
//
// Chart schema (cubic indices are 1-based; keys other than these are rejected):
//   { "id": "X", "rank": 2,
//     "cubic":    [ {"i":1, "j":1, "k":1, "c":8}, ... ],
//     "nef_rays": [ [1,0], [1,1] ],
//     "walls":    [ {"gamma":[1,-1], "kind":"flopping", "n":1,
//                    "e":[..], "aux":[..], "transforms":[{"from":[..], "to":[..]}]} ],
//     "curves":   [ {"eta":[1,-1], "n":1} ],
//     "framing":  [ [1,0], [1,1] ] }
//
// Exact rationals are written as "p/q" strings (integers as "p").

#include "chamber/a_model.hpp"
#include "chamber/atlas.hpp"
#include "chamber/cone_cover.hpp"
#include "chamber/git_model.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace chamber {

using Json = nlohmann::json;

namespace io {

inline void require_keys(const Json& obj, std::string_view field, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw DomainError(std::string(field) + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (key == "torsion")
            throw DomainError(std::string(field) + ".torsion: torsion classes are not supported");
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw DomainError(std::string(field) + "." + key + ": unknown field");
    }
}

inline const Json& member(const Json& obj, const std::string& key, const std::string& field) {
    auto it = obj.find(key);
    if (it == obj.end()) throw DomainError(field + "." + key + ": missing required field");
    return *it;
}

inline Int as_int(const Json& v, const std::string& field) {
    if (!v.is_number_integer()) throw DomainError(field + ": expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        throw DomainError(field + ": integer out of range");
    return v.get<Int>();
}

inline IntVec as_intvec(const Json& v, const std::string& field, std::optional<std::size_t> rank = std::nullopt) {
    if (!v.is_array()) throw DomainError(field + ": expected an integer array");
    IntVec out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], field + "[" + std::to_string(i) + "]"));
    if (rank && out.size() != *rank)
        throw DomainError(field + ": has " + std::to_string(out.size()) + " entries, rank is " + std::to_string(*rank));
    return out;
}

inline std::vector<IntVec> as_intvecs(const Json& v, const std::string& field, std::optional<std::size_t> rank) {
    if (!v.is_array()) throw DomainError(field + ": expected an array of integer vectors");
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_intvec(v[i], field + "[" + std::to_string(i) + "]", rank));
    return out;
}

inline std::string as_string(const Json& v, const std::string& field) {
    if (!v.is_string()) throw DomainError(field + ": expected a string");
    return v.get<std::string>();
}

inline Rational as_rational(const Json& v, const std::string& field) {
    if (v.is_number_integer()) return Rational(as_int(v, field));
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const DomainError& e) {
            throw DomainError(field + ": " + e.what());
        }
    }
    throw DomainError(field + ": expected an integer or a \"p/q\" string");
}

inline Json rational(const Rational& r) { return format(r); }

inline Json rational_vector(const RatVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rational(x));
    return out;
}

inline Json int_vector(const IntVec& v) { return Json(v); }

inline Json parse_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DomainError(source + ": " + e.what());
    }
}

inline Json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError(path.string() + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path.string());
}

inline WallDescriptor wall_from_json(const Json& w, std::size_t rank, const std::string& field) {
    require_keys(w, field, {"gamma", "kind", "n", "e", "aux", "transforms"});
    WallDescriptor wall;
    wall.gamma = CurveClass(as_intvec(member(w, "gamma", field), field + ".gamma", rank));
    try {
        wall.kind = parse_wall_kind(as_string(member(w, "kind", field), field + ".kind"));
    } catch (const DomainError& e) {
        throw DomainError(field + ".kind: " + e.what());
    }
    if (w.contains("n")) wall.n_gamma = as_int(w["n"], field + ".n");
    if (w.contains("e")) wall.e_divisor = DivisorClass(as_intvec(w["e"], field + ".e", rank));
    if (w.contains("aux")) wall.aux = DivisorClass(as_intvec(w["aux"], field + ".aux", rank));
    if (w.contains("transforms")) {
        const Json& ts = w["transforms"];
        if (!ts.is_array()) throw DomainError(field + ".transforms: expected an array");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const std::string f = field + ".transforms[" + std::to_string(i) + "]";
            require_keys(ts[i], f, {"from", "to"});
            wall.transforms.emplace_back(DivisorClass(as_intvec(member(ts[i], "from", f), f + ".from", rank)),
                                         DivisorClass(as_intvec(member(ts[i], "to", f), f + ".to", rank)));
        }
    }
    return wall;
}

inline Json wall_to_json(const WallDescriptor& w) {
    Json out{{"gamma", int_vector(w.gamma.coords())}, {"kind", to_string(w.kind)}, {"n", w.n_gamma}};
    if (w.e_divisor) out["e"] = int_vector(w.e_divisor->coords());
    if (w.aux) out["aux"] = int_vector(w.aux->coords());
    if (!w.transforms.empty()) {
        Json ts = Json::array();
        for (const auto& [from, to] : w.transforms)
            ts.push_back({{"from", int_vector(from.coords())}, {"to", int_vector(to.coords())}});
        out["transforms"] = std::move(ts);
    }
    return out;
}

inline Json cone_to_json(const Cone& k) {
    return {{"rays", k.rays()}, {"halfspaces", k.halfspaces()}, {"dimension", k.dimension()}};
}

}  // namespace io

/// Parses and fully validates a chart. Errors name the offending field.
inline ModelChart chart_from_json(const Json& j, const std::string& source = "chart") {
    io::require_keys(j, source, {"id", "rank", "cubic", "nef_rays", "walls", "curves", "framing"});
    ModelChart chart;
    chart.id = io::as_string(io::member(j, "id", source), source + ".id");
    const Int rank = io::as_int(io::member(j, "rank", source), source + ".rank");
    if (rank < 1) throw DomainError(source + ".rank: must be positive");
    chart.rank = static_cast<std::size_t>(rank);

    chart.cubic = CubicForm(chart.rank);
    const Json& cubic = io::member(j, "cubic", source);
    if (!cubic.is_array()) throw DomainError(source + ".cubic: expected an array");
    std::set<CubicForm::Key> seen;
    for (std::size_t t = 0; t < cubic.size(); ++t) {
        const std::string f = source + ".cubic[" + std::to_string(t) + "]";
        io::require_keys(cubic[t], f, {"i", "j", "k", "c"});
        std::array<Int, 3> idx{};
        const char* names[] = {"i", "j", "k"};
        for (int a = 0; a < 3; ++a) {
            idx[a] = io::as_int(io::member(cubic[t], names[a], f), f + "." + names[a]);
            if (idx[a] < 1 || idx[a] > rank)
                throw DomainError(f + "." + names[a] + ": index " + std::to_string(idx[a]) + " outside 1.." +
                                  std::to_string(rank));
        }
        if (!(idx[0] <= idx[1] && idx[1] <= idx[2]))
            throw DomainError(f + ": indices must satisfy i <= j <= k");
        const auto key = CubicForm::canonical(idx[0] - 1, idx[1] - 1, idx[2] - 1);
        if (!seen.insert(key).second) throw DomainError(f + ": duplicate coefficient for this index triple");
        chart.cubic.set(key[0], key[1], key[2], io::as_int(io::member(cubic[t], "c", f), f + ".c"));
    }

    chart.nef = cone_from_rays(io::as_intvecs(io::member(j, "nef_rays", source), source + ".nef_rays", chart.rank),
                               chart.rank);

    if (j.contains("walls")) {
        const Json& ws = j["walls"];
        if (!ws.is_array()) throw DomainError(source + ".walls: expected an array");
        for (std::size_t i = 0; i < ws.size(); ++i)
            chart.walls.push_back(io::wall_from_json(ws[i], chart.rank, source + ".walls[" + std::to_string(i) + "]"));
    }
    if (j.contains("curves")) {
        const Json& cs = j["curves"];
        if (!cs.is_array()) throw DomainError(source + ".curves: expected an array");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::string f = source + ".curves[" + std::to_string(i) + "]";
            io::require_keys(cs[i], f, {"eta", "n"});
            chart.curves.push_back({CurveClass(io::as_intvec(io::member(cs[i], "eta", f), f + ".eta", chart.rank)),
                                    io::as_int(io::member(cs[i], "n", f), f + ".n")});
        }
    }
    if (j.contains("framing")) {
        std::vector<DivisorClass> basis;
        for (auto& v : io::as_intvecs(j["framing"], source + ".framing", chart.rank)) basis.emplace_back(std::move(v));
        try {
            chart.framing = FramingBasis(std::move(basis));
        } catch (const DomainError& e) {
            throw DomainError(source + ".framing: " + e.what());
        }
    }

    try {
        validate(chart);
    } catch (const DomainError& e) {
        throw DomainError(source + ": " + e.what());
    }
    return chart;
}

inline ModelChart load_descriptor(const std::filesystem::path& path) {
    return chart_from_json(io::read_file(path), path.string());
}

inline Json chart_to_json(const ModelChart& chart) {
    Json cubic = Json::array();
    for (const auto& [key, c] : chart.cubic.coefficients())
        cubic.push_back({{"i", key[0] + 1}, {"j", key[1] + 1}, {"k", key[2] + 1}, {"c", c}});
    Json walls = Json::array();
    for (const auto& w : chart.walls) walls.push_back(io::wall_to_json(w));
    Json curves = Json::array();
    for (const auto& cc : chart.curves) curves.push_back({{"eta", cc.eta.coords()}, {"n", cc.n}});
    Json out{{"id", chart.id},       {"rank", chart.rank},   {"cubic", std::move(cubic)},
             {"nef_rays", chart.nef.rays()}, {"walls", std::move(walls)}, {"curves", std::move(curves)}};
    if (chart.framing) {
        Json fr = Json::array();
        for (const auto& e : chart.framing->basis()) fr.push_back(e.coords());
        out["framing"] = std::move(fr);
    }
    return out;
}

/// Loads every *.json in `dir` except adjacency.json as a chart (in filename
/// order), plus the optional adjacency list [{"from","to","wall"}].
inline Atlas load_atlas(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw DomainError(dir.string() + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json" && entry.path().filename() != "adjacency.json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    Atlas atlas;
    for (const auto& f : files) atlas.charts.push_back(load_descriptor(f));
    const fs::path adj = dir / "adjacency.json";
    if (fs::exists(adj)) {
        const Json j = io::read_file(adj);
        if (!j.is_array()) throw DomainError(adj.string() + ": expected an array");
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string f = adj.string() + "[" + std::to_string(i) + "]";
            io::require_keys(j[i], f, {"from", "to", "wall"});
            const Int w = io::as_int(io::member(j[i], "wall", f), f + ".wall");
            if (w < 0) throw DomainError(f + ".wall: must be nonnegative");
            atlas.adjacency.push_back({io::as_string(io::member(j[i], "from", f), f + ".from"),
                                       io::as_string(io::member(j[i], "to", f), f + ".to"),
                                       static_cast<std::size_t>(w)});
        }
    }
    return atlas;
}

// Reports ---------------------------------------------------------------

inline Json to_json(const QSeries& s) {
    Json terms = Json::array();
    for (const auto& [m, c] : s.terms()) terms.push_back({{"exponent", m.exponent}, {"c", io::rational(c)}});
    return {{"order", s.order()}, {"terms", std::move(terms)}, {"text", s.render()}};
}

inline Json to_json(const QExpression& e) {
    Json poly = Json::array();
    for (const auto& [eta, c] : e.poly()) poly.push_back({{"eta", eta.coords()}, {"c", io::rational(c)}});
    Json prims = Json::array();
    for (const auto& [eta, c] : e.prims()) prims.push_back({{"eta", eta.coords()}, {"c", io::rational(c)}});
    return {{"monomials", std::move(poly)}, {"multiple_cover", std::move(prims)}};
}

inline Json to_json(const LemmaReport& r) {
    Json samples = Json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"u", io::rational(s.u)}, {"lhs", io::rational(s.lhs)}, {"rhs", io::rational(s.rhs)}});
    return {{"wall", io::wall_to_json(r.wall)},
            {"lhs", r.lhs.str()},
            {"rhs", r.rhs.str()},
            {"symbolic_verdict", r.symbolic_verdict},
            {"samples", std::move(samples)},
            {"max_discrepancy", io::rational(r.max_discrepancy)},
            {"holds", r.holds()}};
}

inline Json to_json(const ChamberReport& r, const Cone& movable) {
    Json walls = Json::array();
    for (const auto& w : r.walls) walls.push_back({{"a", w.a}, {"b", w.b}, {"normal", w.normal.coords()}, {"kind", w.kind}});
    return {{"chambers", r.chambers},
            {"interiors_disjoint", r.interiors_disjoint},
            {"walls", std::move(walls)},
            {"movable_cone", io::cone_to_json(movable)}};
}

inline Json to_json(const CoverReport& r, const std::vector<Overlap>& overlaps, std::size_t ball_size) {
    Json uncovered = Json::array();
    for (const auto& v : r.uncovered) uncovered.push_back(io::rational_vector(v));
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) witnesses.push_back({{"ray", io::rational_vector(w.ray)}, {"word", w.word}});
    Json ov = Json::array();
    for (const auto& o : overlaps) ov.push_back({o.first, o.second});
    return {{"depth", r.depth},          {"ball_size", ball_size},       {"tested", r.tested},
            {"covered", r.covered},      {"uncovered", std::move(uncovered)}, {"witnesses", std::move(witnesses)},
            {"warnings", r.warnings},    {"overlaps", std::move(ov)}};
}

}  // namespace chamber
