#pragma once

// Command dispatch for the `chamber` tool. Every command writes one JSON
// report (sorted keys) to stdout or to --out. Exit codes: 0 success,
// 1 domain error, 2 usage error.

#include "chamber/descriptor.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <random>

namespace chamber::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

inline IntVec parse_intvec(const std::string& s, const std::string& flag) {
    IntVec out;
    for (const auto& part : split(s, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) throw UsageError(flag + ": '" + s + "' is not a comma-separated integer list");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError(flag + ": empty vector");
    return out;
}

inline RatVec parse_ratvec(const std::string& s, const std::string& flag) {
    RatVec out;
    for (const auto& part : split(s, ',')) {
        try {
            out.push_back(parse_rational(part));
        } catch (const DomainError&) {
            throw UsageError(flag + ": '" + s + "' is not a comma-separated rational list");
        }
    }
    if (out.empty()) throw UsageError(flag + ": empty vector");
    return out;
}

inline DivisorClass divisor_arg(const std::string& s, const std::string& flag, std::size_t rank) {
    IntVec v = parse_intvec(s, flag);
    require_rank(rank, v.size(), flag);
    return DivisorClass(std::move(v));
}

inline const WallDescriptor& wall_arg(const ModelChart& chart, std::size_t index) {
    if (index >= chart.walls.size())
        throw DomainError("chart '" + chart.id + "' has " + std::to_string(chart.walls.size()) + " walls; no wall " +
                          std::to_string(index));
    return chart.walls[index];
}

inline void emit(const Json& report, const std::string& out_path, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw DomainError(out_path + ": cannot write");
    f << text;
}

inline git::PointC4 random_point(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    auto c = [&] { return git::Complex(g(rng), g(rng)); };
    git::PointC4 p{c(), c(), c(), c()};
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0: p.w = p.x = 0.0; break;
        case 1: p.y = p.z = 0.0; break;
        case 2: p = {0.0, 0.0, 0.0, 0.0}; break;
        default: break;
    }
    return p;
}

// Cover config: {"pi": rays, "target": rays, "generators": [matrices],
// "depth": n, "rays": [..] and/or "ray_grid": m, "audit_depth": d}.
inline Json run_cover(const Json& cfg, const std::string& source) {
    io::require_keys(cfg, source, {"pi", "target", "generators", "depth", "rays", "ray_grid", "audit_depth"});
    const auto target_rays = io::as_intvecs(io::member(cfg, "target", source), source + ".target", std::nullopt);
    if (target_rays.empty()) throw DomainError(source + ".target: no rays");
    const std::size_t rank = target_rays.front().size();
    const Cone target = cone_from_rays(io::as_intvecs(cfg["target"], source + ".target", rank), rank);
    const CandidateDomain pi(cone_from_rays(io::as_intvecs(io::member(cfg, "pi", source), source + ".pi", rank), rank),
                             target);
    std::vector<LatticeAutomorphism> gens;
    const Json& gj = io::member(cfg, "generators", source);
    if (!gj.is_array()) throw DomainError(source + ".generators: expected an array of matrices");
    for (std::size_t i = 0; i < gj.size(); ++i) {
        const std::string f = source + ".generators[" + std::to_string(i) + "]";
        try {
            gens.emplace_back(io::as_intvecs(gj[i], f, rank));
        } catch (const RankMismatch&) {
            throw;
        } catch (const DomainError& e) {
            throw DomainError(f + ": " + e.what());
        }
    }
    const Int depth = io::as_int(io::member(cfg, "depth", source), source + ".depth");

    std::vector<RatVec> rays;
    if (cfg.contains("rays"))
        for (const auto& v : io::as_intvecs(cfg["rays"], source + ".rays", rank)) rays.push_back(to_rational(v));
    if (cfg.contains("ray_grid")) {
        const Int m = io::as_int(cfg["ray_grid"], source + ".ray_grid");
        if (m < 1) throw DomainError(source + ".ray_grid: must be positive");
        IntVec v(rank, 1);
        while (true) {
            if (contains(target, v, Membership::open)) rays.push_back(to_rational(v));
            std::size_t k = 0;
            while (k < rank && v[k] == m) v[k++] = 1;
            if (k == rank) break;
            ++v[k];
        }
    }

    const auto ball = orbit_ball(gens, static_cast<int>(depth));
    const CoverReport report = covers(pi, ball, target, rays);
    std::vector<Overlap> overlaps;
    if (cfg.contains("audit_depth")) {
        const Int d = io::as_int(cfg["audit_depth"], source + ".audit_depth");
        overlaps = overlap_audit(pi, orbit_ball(gens, static_cast<int>(d)));
    }
    Json out = to_json(report, overlaps, ball.size());
    if (cfg.contains("audit_depth")) out["audit_depth"] = cfg["audit_depth"];
    return out;
}

}  // namespace detail

/// Runs one command line (args exclude the program name).
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chamber structure, flops and A-model checks for threefold charts", "chamber"};
    app.require_subcommand(1);
    app.fallthrough(false);

    std::string out_path, chart_path, atlas_dir, a_arg, b_arg, c_arg, h_arg, samples_arg, config_path, csv_path;
    std::string b_coords, j_coords;
    std::vector<std::string> chart_paths;
    std::size_t wall = 0;
    Int order = 10;
    double level = 0;
    long quad_samples = 10000;
    int points = 500;
    std::uint64_t seed = kDefaultSeed;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out_path, "write the JSON report here instead of stdout"); };
    auto add_abc = [&](CLI::App* sub) {
        sub->add_option("--A", a_arg, "divisor class, e.g. 1,0")->required();
        sub->add_option("--B", b_arg, "divisor class")->required();
        sub->add_option("--C", c_arg, "divisor class")->required();
    };

    auto* chambers = app.add_subcommand("chambers", "chamber structure and movable cone of an atlas");
    auto* atlas_opt = chambers->add_option("--atlas", atlas_dir, "directory of chart files plus adjacency.json");
    chambers->add_option("--chart", chart_paths, "chart file (repeatable)")->excludes(atlas_opt);
    add_out(chambers);

    auto* flop_cmd = app.add_subcommand("flop", "flop a chart across one of its flopping walls");
    flop_cmd->add_option("--chart", chart_path, "chart file")->required();
    flop_cmd->add_option("--wall", wall, "0-based wall index")->required();
    add_out(flop_cmd);

    auto* tp = app.add_subcommand("threepoint", "three-point function: closed form and q-series");
    tp->add_option("--chart", chart_path, "chart file")->required();
    add_abc(tp);
    tp->add_option("--order", order, "series truncation degree")->capture_default_str();
    add_out(tp);

    auto* vl = app.add_subcommand("verify-lemma", "exact check that the three-point function continues across a flop");
    vl->add_option("--chart", chart_path, "chart file")->required();
    vl->add_option("--wall", wall, "0-based wall index")->required();
    add_abc(vl);
    vl->add_option("--samples", samples_arg, "comma-separated rational sample points u");
    add_out(vl);

    auto* rf = app.add_subcommand("reflect", "reflect a divisor class in a divisorial wall");
    rf->add_option("--chart", chart_path, "chart file")->required();
    rf->add_option("--wall", wall, "0-based wall index")->required();
    rf->add_option("--H", h_arg, "divisor class")->required();
    add_out(rf);

    auto* gt = app.add_subcommand("git-toy", "local C^4 model at moment level r");
    gt->add_option("--r", level, "moment map level")->required();
    gt->add_option("--samples", quad_samples, "quadrature samples for the exceptional area")->capture_default_str();
    gt->add_option("--points", points, "random points for the orbit check")->capture_default_str();
    gt->add_option("--seed", seed, "random seed")->capture_default_str();
    gt->add_option("--csv", csv_path, "write r,area,area_over_abs_r for r = k/4, k = -8..8, k != 0");
    add_out(gt);

    auto* cv = app.add_subcommand("cover", "spot-check that group translates of a cone cover sample rays");
    cv->add_option("--config", config_path, "cover configuration JSON")->required();
    add_out(cv);

    auto* qc = app.add_subcommand("q-coords", "q-coordinates of B + iJ in a chart's framing");
    qc->add_option("--chart", chart_path, "chart file (framing defaults to the standard basis)")->required();
    qc->add_option("--b", b_coords, "real part B, e.g. 1/2,0")->required();
    qc->add_option("--j", j_coords, "imaginary part J, e.g. 1,2")->required();
    add_out(qc);

    if (!args.empty() && !args.front().starts_with('-')) {
        bool known = false;
        for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == args.front();
        if (!known) {
            err << "error: unknown command '" << args.front() << "'\n" << app.help();
            return 2;
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    }

    try {
        Json report;
        if (chambers->parsed()) {
            Atlas atlas;
            if (!atlas_dir.empty()) {
                atlas = load_atlas(atlas_dir);
            } else {
                if (chart_paths.empty()) throw UsageError("chambers: give --atlas or at least one --chart");
                for (const auto& p : chart_paths) atlas.charts.push_back(load_descriptor(p));
            }
            report = to_json(chamber_structure(atlas), movable_cone(atlas));
        } else if (flop_cmd->parsed()) {
            const ModelChart chart = load_descriptor(chart_path);
            detail::wall_arg(chart, wall);
            const ModelChart flopped = flop(chart, wall);
            for (const auto& w : chart_warnings(flopped)) err << "warning: " << w << "\n";
            report = chart_to_json(flopped);
        } else if (tp->parsed()) {
            const ModelChart chart = load_descriptor(chart_path);
            const auto a = detail::divisor_arg(a_arg, "--A", chart.rank);
            const auto b = detail::divisor_arg(b_arg, "--B", chart.rank);
            const auto c = detail::divisor_arg(c_arg, "--C", chart.rank);
            const FramingBasis fr = chart.framing_or_standard();
            Json framing = Json::array();
            for (const auto& e : fr.basis()) framing.push_back(e.coords());
            report = {{"A", a.coords()},
                      {"B", b.coords()},
                      {"C", c.coords()},
                      {"framing", std::move(framing)},
                      {"closed", to_json(three_point_closed(chart, a, b, c))},
                      {"series", to_json(three_point_series(chart, a, b, c, order))}};
        } else if (vl->parsed()) {
            const ModelChart chart = load_descriptor(chart_path);
            const auto& w = detail::wall_arg(chart, wall);
            const auto a = detail::divisor_arg(a_arg, "--A", chart.rank);
            const auto b = detail::divisor_arg(b_arg, "--B", chart.rank);
            const auto c = detail::divisor_arg(c_arg, "--C", chart.rank);
            const auto samples = samples_arg.empty() ? default_lemma_samples() : detail::parse_ratvec(samples_arg, "--samples");
            report = to_json(verify_flop_lemma(chart, w, a, b, c, samples));
        } else if (rf->parsed()) {
            const ModelChart chart = load_descriptor(chart_path);
            const auto& w = detail::wall_arg(chart, wall);
            const auto h = detail::divisor_arg(h_arg, "--H", chart.rank);
            report = {{"H", h.coords()}, {"image", reflect_divisorial(h, w).coords()}, {"wall", io::wall_to_json(w)}};
        } else if (gt->parsed()) {
            if (points < 0) throw UsageError("--points: must be nonnegative");
            const auto q = git::classify_quotient(level);
            std::mt19937_64 rng(seed);
            int misclassified = 0;
            double relation_max = 0;
            for (int i = 0; i < points; ++i) {
                const auto p = detail::random_point(rng);
                const bool meets = git::orbit_closure_meets_level(p, level);
                if (meets == git::in_locus(p, q.unstable_locus)) ++misclassified;
                relation_max = std::max(relation_max, std::abs(git::invariants(p).relation()));
            }
            report = {{"r", level},
                      {"seed", seed},
                      {"unstable_locus", git::to_string(q.unstable_locus)},
                      {"quotient_label", git::to_string(q.label)},
                      {"area_slope", git::kExceptionalAreaSlope},
                      {"area", level == 0 ? Json(nullptr) : Json(git::exceptional_area(level, quad_samples))},
                      {"orbit_check", {{"points", points}, {"misclassified", misclassified}, {"relation_max", relation_max}}}};
            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                if (!f) throw DomainError(csv_path + ": cannot write");
                f << "r,area,area_over_abs_r\n" << std::setprecision(12);
                for (int k = -8; k <= 8; ++k) {
                    if (k == 0) continue;
                    const double r = k / 4.0;
                    const double area = git::exceptional_area(r, quad_samples);
                    f << r << "," << area << "," << area / std::abs(r) << "\n";
                }
                report["csv"] = csv_path;
            }
        } else if (cv->parsed()) {
            report = detail::run_cover(io::read_file(config_path), config_path);
        } else if (qc->parsed()) {
            const ModelChart chart = load_descriptor(chart_path);
            ComplexifiedClass z{detail::parse_ratvec(b_coords, "--b"), detail::parse_ratvec(j_coords, "--j")};
            require_rank(chart.rank, z.b.size(), "--b");
            require_rank(chart.rank, z.j.size(), "--j");
            const FramingBasis fr = chart.framing_or_standard();
            Json q = Json::array();
            for (const auto& v : q_coordinates(z, fr)) q.push_back({{"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
            report = {{"b", io::rational_vector(z.b)},
                      {"j", io::rational_vector(z.j)},
                      {"a_real", io::rational_vector(fr.coefficients(z.b))},
                      {"a_imag", io::rational_vector(fr.coefficients(z.j))},
                      {"q", std::move(q)}};
        }
        detail::emit(report, out_path, out);
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return dispatch(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace chamber::cli
