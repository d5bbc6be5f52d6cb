#pragma once

// Spot-checking cone conjectures: do the translates gamma(Pi) of a rational
// polyhedral cone Pi, for gamma in a finite word ball of a lattice group,
// cover a sample of rays of a target cone? The answer certifies only the
// sample and the ball.

#include "chamber/cone.hpp"
#include "chamber/linalg.hpp"

#include <map>
#include <optional>
#include <string>

namespace chamber {

/// Unimodular integer matrix acting on divisor coordinates (column vectors).
class LatticeAutomorphism {
public:
    explicit LatticeAutomorphism(IntMatrix m) : m_(std::move(m)) {
        const std::size_t r = m_.size();
        if (r == 0) throw DomainError("automorphism: empty matrix");
        RatMatrix q;
        for (const auto& row : m_) {
            require_rank(r, row.size(), "automorphism row");
            q.push_back(to_rational(row));
        }
        const Rational det = linalg::determinant(q);
        if (det != 1 && det != -1)
            throw DomainError("automorphism: determinant " + det.str() + " is not +-1");
    }

    static LatticeAutomorphism identity(std::size_t r) {
        IntMatrix m(r, IntVec(r, 0));
        for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
        return LatticeAutomorphism(std::move(m));
    }

    std::size_t rank() const { return m_.size(); }
    const IntMatrix& matrix() const { return m_; }

    IntVec apply(const IntVec& v) const {
        require_rank(rank(), v.size(), "automorphism apply");
        IntVec out(rank());
        for (std::size_t i = 0; i < rank(); ++i) out[i] = dot(m_[i], v);
        return out;
    }

    RatVec apply(const RatVec& v) const {
        require_rank(rank(), v.size(), "automorphism apply");
        RatVec out(rank());
        for (std::size_t i = 0; i < rank(); ++i) out[i] = dot(m_[i], v);
        return out;
    }

    LatticeAutomorphism inverse() const {
        RatMatrix q;
        for (const auto& row : m_) q.push_back(to_rational(row));
        const RatMatrix inv = linalg::inverse(q);
        IntMatrix out;
        for (const auto& row : inv) {
            IntVec v;
            for (const auto& x : row) v.push_back(to_int(x));
            out.push_back(std::move(v));
        }
        return LatticeAutomorphism(std::move(out));
    }

    friend LatticeAutomorphism operator*(const LatticeAutomorphism& a, const LatticeAutomorphism& b) {
        require_rank(a.rank(), b.rank(), "automorphism product");
        const std::size_t r = a.rank();
        IntMatrix m(r, IntVec(r, 0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t k = 0; k < r; ++k) m[i][j] = checked_add(m[i][j], checked_mul(a.m_[i][k], b.m_[k][j]));
        return LatticeAutomorphism(std::move(m));
    }

    friend bool operator==(const LatticeAutomorphism&, const LatticeAutomorphism&) = default;
    friend auto operator<=>(const LatticeAutomorphism&, const LatticeAutomorphism&) = default;

private:
    IntMatrix m_;
};

/// A ball element with the word that produced it, e.g. "g0*g1^-1" (the
/// leftmost letter is applied last); the identity is "id".
struct GroupElement {
    LatticeAutomorphism element;
    std::string word;
    std::size_t length = 0;
};

/// All distinct products of at most `depth` generators and inverses, sorted
/// by word length and then by matrix entries. Each matrix keeps its shortest
/// word (first in that order).
inline std::vector<GroupElement> orbit_ball(const std::vector<LatticeAutomorphism>& generators, int depth) {
    if (depth < 0) throw DomainError("orbit_ball: negative depth");
    if (generators.empty()) throw DomainError("orbit_ball: no generators (identity needs a rank)");
    const std::size_t r = generators.front().rank();

    std::vector<std::pair<LatticeAutomorphism, std::string>> letters;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        require_rank(r, generators[i].rank(), "orbit_ball generator");
        letters.emplace_back(generators[i], "g" + std::to_string(i));
        letters.emplace_back(generators[i].inverse(), "g" + std::to_string(i) + "^-1");
    }

    std::map<LatticeAutomorphism, GroupElement> seen;
    std::vector<GroupElement> ball{{LatticeAutomorphism::identity(r), "id", 0}};
    seen.emplace(ball.front().element, ball.front());
    std::vector<GroupElement> frontier = ball;
    for (int len = 1; len <= depth && !frontier.empty(); ++len) {
        std::map<LatticeAutomorphism, GroupElement> layer;
        for (const auto& g : frontier) {
            for (const auto& [m, name] : letters) {
                LatticeAutomorphism prod = m * g.element;
                if (seen.count(prod)) continue;
                std::string word = g.length == 0 ? name : name + "*" + g.word;
                auto it = layer.find(prod);
                if (it == layer.end() || word < it->second.word)
                    layer.insert_or_assign(prod, GroupElement{prod, std::move(word), static_cast<std::size_t>(len)});
            }
        }
        frontier.clear();
        for (auto& [m, g] : layer) {
            seen.emplace(m, g);
            frontier.push_back(g);
            ball.push_back(g);
        }
    }
    return ball;
}

/// A candidate Pi, checked to lie in the target cone.
class CandidateDomain {
public:
    CandidateDomain(Cone pi, const Cone& target) : pi_(std::move(pi)) {
        require_rank(target.rank(), pi_.rank(), "candidate domain");
        for (const auto& r : pi_.rays())
            if (!contains(target, r, Membership::closed))
                throw DomainError("candidate domain: generator " + format_vector(r) + " lies outside the target cone");
    }
    const Cone& cone() const { return pi_; }

private:
    Cone pi_;
};

struct CoverWitness {
    RatVec ray;
    std::string word;
};

struct CoverReport {
    std::size_t depth = 0;
    std::size_t tested = 0;
    std::size_t covered = 0;
    std::vector<RatVec> uncovered;
    std::vector<CoverWitness> witnesses;
    std::vector<std::string> warnings;
};

/// Assigns each ray the first ball element gamma (in ball order) with
/// ray in gamma(Pi), or lists it as uncovered. Witnesses are re-verified by
/// building gamma(Pi) and testing membership directly.
inline CoverReport covers(const CandidateDomain& pi, const std::vector<GroupElement>& ball, const Cone& target,
                          const std::vector<RatVec>& rays) {
    CoverReport report;
    for (const auto& g : ball) report.depth = std::max(report.depth, g.length);

    // gamma^{-1} once per element: ray in gamma(Pi) iff gamma^{-1} ray in Pi.
    std::vector<LatticeAutomorphism> inverses;
    inverses.reserve(ball.size());
    for (const auto& g : ball) inverses.push_back(g.element.inverse());
    std::vector<std::optional<Cone>> translates(ball.size());

    for (std::size_t i = 0; i < rays.size(); ++i) {
        const RatVec& ray = rays[i];
        if (!contains(target, ray, Membership::open))
            throw DomainError("covers: ray " + format_vector(ray) + " is outside the target interior");
        ++report.tested;
        bool found = false;
        for (std::size_t k = 0; k < ball.size(); ++k) {
            if (!contains(pi.cone(), inverses[k].apply(ray), Membership::closed)) continue;
            if (!translates[k]) translates[k] = image(pi.cone(), ball[k].element.matrix());
            if (!contains(*translates[k], ray, Membership::closed))
                throw std::logic_error("covers: witness failed re-verification");
            report.witnesses.push_back({ray, ball[k].word});
            ++report.covered;
            found = true;
            break;
        }
        if (!found) {
            report.uncovered.push_back(ray);
            report.warnings.push_back("ray " + format_vector(ray) + " not covered within depth " +
                                      std::to_string(report.depth));
        }
    }
    return report;
}

struct Overlap {
    std::string first;
    std::string second;
};

/// Pairs of distinct ball elements whose translates of Pi have overlapping
/// (relative) interiors, detected as an intersection of full dimension.
inline std::vector<Overlap> overlap_audit(const CandidateDomain& pi, const std::vector<GroupElement>& ball) {
    std::vector<Cone> translates;
    translates.reserve(ball.size());
    for (const auto& g : ball) translates.push_back(image(pi.cone(), g.element.matrix()));
    const std::size_t dim = pi.cone().dimension();
    std::vector<Overlap> out;
    for (std::size_t i = 0; i < ball.size(); ++i)
        for (std::size_t j = i + 1; j < ball.size(); ++j)
            if (intersect(translates[i], translates[j]).dimension() == dim) out.push_back({ball[i].word, ball[j].word});
    return out;
}

}  // namespace chamber
