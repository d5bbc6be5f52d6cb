#pragma once

// The local model of a flop: C* acting on C^4 with weights (1,1,-1,-1),
//   (w,x,y,z) -> (s w, s x, y/s, z/s),
// with moment map mu = (|w|^2 + |x|^2 - |y|^2 - |z|^2)/2 for the standard
// symplectic form. Floating point is confined to this header.

#include "chamber/core.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

namespace chamber::git {

using Complex = std::complex<double>;

struct PointC4 {
    Complex w, x, y, z;

    bool is_finite() const {
        for (const auto& c : {w, x, y, z})
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }
};

struct Invariants {
    Complex a, b, c, d;  // wy, wz, xy, xz

    /// AD - BC; zero on the image of C^4.
    Complex relation() const { return a * d - b * c; }
};

enum class UnstableLocus { empty, y_z_zero, w_x_zero };
enum class QuotientLabel { singular_cone, blowup_AB, blowup_AC };

inline std::string to_string(UnstableLocus l) {
    switch (l) {
        case UnstableLocus::empty: return "empty";
        case UnstableLocus::y_z_zero: return "y_z_zero";
        case UnstableLocus::w_x_zero: return "w_x_zero";
    }
    return "unknown";
}

inline std::string to_string(QuotientLabel l) {
    switch (l) {
        case QuotientLabel::singular_cone: return "singular_cone";
        case QuotientLabel::blowup_AB: return "blowup_AB";
        case QuotientLabel::blowup_AC: return "blowup_AC";
    }
    return "unknown";
}

struct QuotientDescriptor {
    QuotientLabel label;
    UnstableLocus unstable_locus;
};

inline PointC4 act(Complex s, const PointC4& p) {
    if (s == Complex(0.0)) throw DomainError("act: s must be nonzero");
    return {s * p.w, s * p.x, p.y / s, p.z / s};
}

inline double moment_map(const PointC4& p) {
    return 0.5 * (std::norm(p.w) + std::norm(p.x) - std::norm(p.y) - std::norm(p.z));
}

inline Invariants invariants(const PointC4& p) { return {p.w * p.y, p.w * p.z, p.x * p.y, p.x * p.z}; }

/// Sigma_r: the union of orbits whose closures miss mu^{-1}(r).
inline UnstableLocus unstable_locus(double r) {
    if (!std::isfinite(r)) throw DomainError("unstable_locus: level must be finite");
    if (r < 0) return UnstableLocus::y_z_zero;
    if (r > 0) return UnstableLocus::w_x_zero;
    return UnstableLocus::empty;
}

/// r = 0: Spec C[A,B,C,D]/(AD-BC); r < 0: its blowup along A=B=0;
/// r > 0: its blowup along A=C=0.
inline QuotientDescriptor classify_quotient(double r) {
    const UnstableLocus locus = unstable_locus(r);
    if (r < 0) return {QuotientLabel::blowup_AB, locus};
    if (r > 0) return {QuotientLabel::blowup_AC, locus};
    return {QuotientLabel::singular_cone, locus};
}

inline bool in_locus(const PointC4& p, UnstableLocus l) {
    switch (l) {
        case UnstableLocus::empty: return false;
        case UnstableLocus::y_z_zero: return p.y == Complex(0.0) && p.z == Complex(0.0);
        case UnstableLocus::w_x_zero: return p.w == Complex(0.0) && p.x == Complex(0.0);
    }
    return false;
}

/// Grid for probing t -> mu(act(e^t, p)) on [-t_max, t_max]. Nodes are spaced
/// uniformly in log(1 + |t|), so they are densest near t = 0.
struct OrbitProbe {
    double t_max = 20.0;
    int samples = 2001;
    double tolerance = 1e-9;
};

/// Whether the closure of the C* orbit of p meets mu^{-1}(r).
///
/// Along s = e^t the moment map is mu(t) = (P e^{2t} - N e^{-2t})/2 with
/// P = |w|^2+|x|^2 and N = |y|^2+|z|^2, nondecreasing in t. Its limits at
/// t -> +-inf are read off from P and N; when P = 0 or N = 0 the orbit closure
/// also contains the origin, where mu = 0. Inside the open range the level is
/// bracketed on the probe grid (extended if needed) and bisected.
inline bool orbit_closure_meets_level(const PointC4& p, double r, const OrbitProbe& probe = {}) {
    if (!(probe.t_max > 0) || probe.samples < 3 || !(probe.tolerance > 0))
        throw DomainError("orbit_closure_meets_level: degenerate probe spec");
    if (!p.is_finite() || !std::isfinite(r)) throw DomainError("orbit_closure_meets_level: non-finite input");

    const double pos = std::norm(p.w) + std::norm(p.x);
    const double neg = std::norm(p.y) + std::norm(p.z);
    if ((pos == 0 || neg == 0) && r == 0) return true;  // origin lies in the closure

    constexpr double inf = std::numeric_limits<double>::infinity();
    const double lo = neg > 0 ? -inf : 0.0;
    const double hi = pos > 0 ? inf : 0.0;
    if (!(lo < r && r < hi)) return false;

    auto mu = [&](double t) { return 0.5 * (pos * std::exp(2 * t) - neg * std::exp(-2 * t)); };
    const double tol = probe.tolerance * std::max(1.0, std::abs(r));

    for (double t_max = probe.t_max; t_max < 400.0; t_max *= 2) {
        const int half = probe.samples / 2;
        const double span = std::log1p(t_max);
        auto node = [&](int i) {  // i in [-half, half]
            const double s = span * std::abs(i) / half;
            return std::copysign(std::expm1(s), static_cast<double>(i));
        };
        double t0 = node(-half);
        double m0 = mu(t0);
        for (int i = -half + 1; i <= half; ++i) {
            const double t1 = node(i);
            const double m1 = mu(t1);
            if (m0 <= r && r <= m1) {
                double a = t0, b = t1;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (a + b);
                    const double mm = mu(mid);
                    if (std::abs(mm - r) < tol) return true;
                    (mm < r ? a : b) = mid;
                }
                return std::abs(mu(0.5 * (a + b)) - r) < tol;
            }
            t0 = t1;
            m0 = m1;
        }
    }
    return false;
}

/// Slope of the exceptional-curve area against the level: area = kappa |r|
/// for the standard symplectic form above. Pinned from an independent
/// quadrature of the reduction of C^2 by the diagonal circle action.
inline constexpr double kExceptionalAreaSlope = 2.0 * std::numbers::pi;

namespace detail {

// Integral over (theta, phi) in [0,pi] x [0,2pi) of omega(d_theta s, d_phi s)
// for a section s of the level set over the exceptional curve. Tangents are
// central differences; the midpoint rule runs on an m x m grid, m^2 >= n.
inline double integrate_section(const std::function<PointC4(double, double)>& section, long n) {
    const long m = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n))));
    const double dth = std::numbers::pi / m;
    const double dph = 2 * std::numbers::pi / m;
    constexpr double h = 1e-6;
    auto omega = [](const PointC4& u, const PointC4& v) {
        // (i/2) sum dz ^ dzbar evaluated on (u, v) = sum Im(conj(u_k) v_k).
        return (std::conj(u.w) * v.w + std::conj(u.x) * v.x + std::conj(u.y) * v.y + std::conj(u.z) * v.z).imag();
    };
    auto diff = [&](const PointC4& a, const PointC4& b) {
        return PointC4{(a.w - b.w) / (2 * h), (a.x - b.x) / (2 * h), (a.y - b.y) / (2 * h), (a.z - b.z) / (2 * h)};
    };
    double total = 0;
    for (long i = 0; i < m; ++i) {
        const double th = (i + 0.5) * dth;
        for (long j = 0; j < m; ++j) {
            const double ph = (j + 0.5) * dph;
            const PointC4 d_th = diff(section(th + h, ph), section(th - h, ph));
            const PointC4 d_ph = diff(section(th, ph + h), section(th, ph - h));
            total += omega(d_th, d_ph);
        }
    }
    return std::abs(total) * dth * dph;
}

}  // namespace detail

/// Symplectic area of the exceptional P^1 in mu^{-1}(r)/S^1, by quadrature of
/// the reduced form over the level-set sphere {y=z=0, |w|^2+|x|^2 = 2r}
/// (r > 0) or {w=x=0, |y|^2+|z|^2 = -2r} (r < 0), gauge-fixed by taking the
/// first coordinate real and nonnegative.
inline double exceptional_area(double r, long n = 10000) {
    if (!std::isfinite(r)) throw DomainError("exceptional_area: level must be finite");
    if (r == 0) throw DomainError("exceptional_area: at r = 0 the exceptional curve collapses to a point");
    if (n < 1000) throw DomainError("exceptional_area: need at least 1000 samples");
    const double radius = std::sqrt(2 * std::abs(r));
    const bool positive = r > 0;
    auto section = [radius, positive](double th, double ph) {
        const Complex first(radius * std::cos(th / 2), 0.0);
        const Complex second = std::polar(radius * std::sin(th / 2), ph);
        return positive ? PointC4{first, second, 0.0, 0.0} : PointC4{0.0, 0.0, first, second};
    };
    return detail::integrate_section(section, n);
}

}  // namespace chamber::git
