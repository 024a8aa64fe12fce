#include "nrange/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nrange/errors.hpp"

namespace nrange {

namespace {

double cross(cplx a, cplx b, cplx c) noexcept {
    const cplx u = b - a;
    const cplx v = c - b;
    return u.real() * v.imag() - u.imag() * v.real();
}

double projection(cplx z, double theta) noexcept {
    return z.real() * std::cos(theta) + z.imag() * std::sin(theta);
}

bool lex_less(cplx a, cplx b) noexcept {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

// Drops near-duplicate and near-collinear vertices of a closed CCW polygon.
void tidy_cycle(std::vector<cplx>& v, double tol) {
    bool changed = true;
    while (changed && v.size() > 1) {
        changed = false;
        for (std::size_t i = 0; i < v.size() && v.size() > 1; ++i) {
            const std::size_t j = (i + 1) % v.size();
            if (std::abs(v[j] - v[i]) <= tol) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
                break;
            }
        }
        if (changed || v.size() < 3) continue;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const cplx a = v[(i + v.size() - 1) % v.size()];
            const cplx b = v[i];
            const cplx c = v[(i + 1) % v.size()];
            if (cross(a, b, c) <= tol * std::abs(c - a)) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
}

}  // namespace

double ConvexRegion::support(double theta) const noexcept {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices_) best = std::max(best, v.real() * c + v.imag() * s);
    return best;
}

std::vector<double> support_on_grid(const ConvexRegion& r, int n_angles) {
    const auto grid = angle_grid(n_angles);
    const auto& v = r.vertices();
    std::vector<double> out(grid.size());
    if (v.empty()) {
        std::fill(out.begin(), out.end(), -std::numeric_limits<double>::infinity());
        return out;
    }
    const auto proj = [&](std::size_t i, double c, double sn) { return v[i].real() * c + v[i].imag() * sn; };
    // Vertices are counterclockwise, so the maximizer only moves forward as
    // theta increases; a hill climb from the previous one suffices.
    std::size_t cur = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (proj(i, 1.0, 0.0) > proj(cur, 1.0, 0.0)) cur = i;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double c = std::cos(grid[k]);
        const double sn = std::sin(grid[k]);
        double best = proj(cur, c, sn);
        for (std::size_t step = 0; step < v.size(); ++step) {
            const std::size_t next = (cur + 1) % v.size();
            const double p = proj(next, c, sn);
            if (p <= best) break;
            cur = next;
            best = p;
        }
        out[k] = best;
    }
    return out;
}

double ConvexRegion::max_modulus() const noexcept {
    double m = 0.0;
    for (const auto& v : vertices_) m = std::max(m, std::abs(v));
    return m;
}

ConvexRegion ConvexRegion::transformed(cplx s) const {
    ConvexRegion out;
    out.vertices_.reserve(vertices_.size());
    for (const auto& v : vertices_) out.vertices_.push_back(s * v);
    const double scale = std::abs(s);
    const double shift = std::arg(s);
    for (const auto& smp : samples_) out.samples_.push_back({smp.angle + shift, scale * smp.value});
    return out;
}

ConvexRegion ConvexRegion::with_samples(std::vector<SupportSample> samples) && {
    samples_ = std::move(samples);
    return std::move(*this);
}

bool Chord::degenerate(double tau) const noexcept {
    return std::abs(b - a) <= tau * (1.0 + std::max(std::abs(a), std::abs(b)));
}

std::vector<double> angle_grid(int n_angles) {
    if (n_angles < 1) throw Error(ErrorKind::InvalidSpec, "angle grid needs at least one angle");
    std::vector<double> g(static_cast<std::size_t>(n_angles));
    for (int k = 0; k < n_angles; ++k) g[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / n_angles;
    return g;
}

ConvexRegion hull(std::span<const cplx> points, double tau_geo) {
    if (points.empty()) throw Error(ErrorKind::EmptySet, "hull of an empty point set");
    double scale = 0.0;
    for (const auto& p : points) scale = std::max(scale, std::abs(p));
    const double tol = tau_geo * (1.0 + scale);

    std::vector<cplx> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), lex_less);

    // Andrew's monotone chain, popping anything that is not a clear left turn.
    std::vector<cplx> chain;
    chain.reserve(2 * pts.size());
    for (const auto& p : pts) {
        while (chain.size() >= 2 && cross(chain[chain.size() - 2], chain.back(), p) <=
                                        tol * std::abs(p - chain[chain.size() - 2]))
            chain.pop_back();
        chain.push_back(p);
    }
    const std::size_t lower = chain.size() + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (chain.size() >= lower && cross(chain[chain.size() - 2], chain.back(), *it) <=
                                            tol * std::abs(*it - chain[chain.size() - 2]))
            chain.pop_back();
        chain.push_back(*it);
    }
    chain.pop_back();
    if (chain.empty()) chain.push_back(pts.front());
    tidy_cycle(chain, tol);

    ConvexRegion r;
    r.vertices_ = std::move(chain);
    return r;
}

double support(const ConvexRegion& r, double theta) noexcept { return r.support(theta); }

double hausdorff(const ConvexRegion& r1, const ConvexRegion& r2, int n_angles) {
    const auto h1 = support_on_grid(r1, n_angles);
    const auto h2 = support_on_grid(r2, n_angles);
    double gap = 0.0;
    for (std::size_t k = 0; k < h1.size(); ++k) gap = std::max(gap, std::abs(h1[k] - h2[k]));
    return gap;
}

double distance_to_segment(cplx z, const Chord& s) noexcept {
    const cplx d = s.b - s.a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - s.a);
    const double t = std::clamp(((z - s.a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(z - (s.a + t * d));
}

bool contains(const ConvexRegion& r, cplx z, double tau) {
    const auto& v = r.vertices();
    if (v.size() == 1) return std::abs(z - v[0]) <= tau;
    if (v.size() == 2) return distance_to_segment(z, {v[0], v[1]}) <= tau;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const cplx a = v[i];
        const cplx b = v[(i + 1) % v.size()];
        const cplx e = b - a;
        const cplx w = z - a;
        const double signed_dist = (e.real() * w.imag() - e.imag() * w.real()) / std::abs(e);
        if (signed_dist < -tau) return false;
    }
    return true;
}

std::vector<double> edge_normals(const ConvexRegion& r) {
    const auto& v = r.vertices();
    std::vector<double> normals;
    if (v.size() < 2) return normals;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const cplx e = v[(i + 1) % v.size()] - v[i];
        normals.push_back(std::arg(e) - std::numbers::pi / 2);
    }
    return normals;
}

double min_support_gap(const ConvexRegion& inner, const ConvexRegion& outer, int n_angles) {
    const auto hi = support_on_grid(inner, n_angles);
    const auto ho = support_on_grid(outer, n_angles);
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < hi.size(); ++k) gap = std::min(gap, ho[k] - hi[k]);
    return gap;
}

bool touches_boundary(const ConvexRegion& inner, const ConvexRegion& outer, double tau_set, int n_angles) {
    const auto hi = support_on_grid(inner, n_angles);
    const auto ho = support_on_grid(outer, n_angles);
    bool touches = false;
    for (std::size_t k = 0; k < hi.size(); ++k) {
        const double gap = ho[k] - hi[k];
        if (gap < -tau_set) throw Error(ErrorKind::NotContained, "inner region leaves the outer region");
        if (gap <= tau_set) touches = true;
    }
    return touches;
}

bool segment_on_boundary(const ConvexRegion& r, const Chord& c, double tau_set, int n_angles) {
    if (!contains(r, c.a, tau_set) || !contains(r, c.b, tau_set))
        throw Error(ErrorKind::NotContained, "chord endpoint outside the region");
    const auto attains = [&](double t) {
        const double h = r.support(t) - tau_set;
        return projection(c.a, t) >= h && projection(c.b, t) >= h;
    };
    if (!c.degenerate()) {
        const double normal = std::arg(c.b - c.a) - std::numbers::pi / 2;
        return attains(normal) || attains(normal + std::numbers::pi);
    }
    const auto grid = angle_grid(n_angles);
    const auto h = support_on_grid(r, n_angles);
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (projection(c.a, grid[k]) >= h[k] - tau_set) return true;
    // At an edge normal the edge's own endpoints attain the support.
    const auto normals = edge_normals(r);
    for (std::size_t i = 0; i < normals.size(); ++i)
        if (projection(c.a, normals[i]) >= projection(r.vertices()[i], normals[i]) - tau_set) return true;
    return false;
}

double point_set_hausdorff(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    const auto directed = [](std::span<const cplx> from, std::span<const cplx> to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double segment_set_hausdorff(std::span<const Chord> a, std::span<const Chord> b, int samples) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    const int m = std::max(samples, 2);
    const auto directed = [m](std::span<const Chord> from, std::span<const Chord> to) {
        double worst = 0.0;
        for (const auto& s : from) {
            for (int k = 0; k < m; ++k) {
                const double t = static_cast<double>(k) / (m - 1);
                const cplx z = s.a + t * (s.b - s.a);
                double best = std::numeric_limits<double>::infinity();
                for (const auto& q : to) best = std::min(best, distance_to_segment(z, q));
                worst = std::max(worst, best);
            }
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace nrange
