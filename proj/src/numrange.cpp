#include "nrange/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nrange/errors.hpp"

namespace nrange {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;
constexpr double kAngularResolution = 1e-10;
constexpr int kMaxRefineDepth = 40;

double top_support(const CMatrix& a, double theta) {
    return herm_eigenvalues(rotated_hermitian_part(a, theta)).back();
}

cplx quadratic_form(const CMatrix& a, std::span<const cplx> x) {
    cplx s{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx row{};
        for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j) * x[j];
        s += std::conj(x[i]) * row;
    }
    return s;
}

// Golden-section maximization of the support function around a grid angle.
double refine_radius(const CMatrix& a, double center, double half_width, double best) {
    double lo = center - half_width;
    double hi = center + half_width;
    double x1 = hi - kGoldenRatio * (hi - lo);
    double x2 = lo + kGoldenRatio * (hi - lo);
    double f1 = top_support(a, x1);
    double f2 = top_support(a, x2);
    while (hi - lo > kAngularResolution) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGoldenRatio * (hi - lo);
            f2 = top_support(a, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGoldenRatio * (hi - lo);
            f1 = top_support(a, x1);
        }
    }
    return std::max({best, f1, f2});
}

SpectralData spectral_data(const CMatrix& a, double norm, double tau_set) {
    SpectralData s;
    s.eigenvalues = eigenvalues(a);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](cplx x, cplx y) {
        const double ax = std::abs(x);
        const double ay = std::abs(y);
        return ax != ay ? ax > ay : std::arg(x) < std::arg(y);
    });
    s.norm = norm;
    for (const auto& z : s.eigenvalues) s.spectral_radius = std::max(s.spectral_radius, std::abs(z));
    for (const auto& z : s.eigenvalues)
        if (std::abs(z) >= norm - tau_set) s.peripheral.push_back(z);
    return s;
}

ConvexRegion w0_region(const CMatrix& a, double norm, const Tolerances& tol) {
    const Subspace v = top_singular_subspace(a, tol.cluster_for(norm));
    return numerical_range(compress(a, v), tol);
}

RangeReport zero_report(const CMatrix& a, const Tolerances& tol) {
    RangeReport r;
    r.tolerances = tol;
    const cplx origin{};
    r.w = hull(std::span(&origin, 1));
    r.w0 = r.w;
    r.w_samples = sample_boundary(a, tol.n_angles);
    r.spectral = spectral_data(a, 0.0, tol.tau_set);
    r.classification = {true, true};
    r.normaloid = true;
    r.chords = {Chord{origin, origin}};
    r.hull_peripheral = r.w;
    r.ch_equality_gap = 0.0;
    return r;
}

}  // namespace

void Tolerances::validate() const {
    if (tau_cluster && !(*tau_cluster > 0.0)) throw Error(ErrorKind::InvalidSpec, "tau_cluster must be positive");
    if (!(tau_set > 0.0)) throw Error(ErrorKind::InvalidSpec, "tau_set must be positive");
    if (!(tau_eig > 0.0)) throw Error(ErrorKind::InvalidSpec, "tau_eig must be positive");
    if (n_angles < 8) throw Error(ErrorKind::InvalidSpec, "n_angles must be at least 8");
}

double Tolerances::cluster_for(double norm) const noexcept {
    return tau_cluster ? *tau_cluster : default_cluster_tolerance(norm);
}

BoundaryPoint boundary_point(const CMatrix& a, double theta) {
    const HermEigen e = herm_eigen(rotated_hermitian_part(a, theta));
    const std::size_t top = e.values.size() - 1;
    const std::vector<cplx> x = e.vectors.column(top);
    return {e.values[top], quadratic_form(a, x)};
}

BoundarySamples sample_boundary_serial(const CMatrix& a, int n_angles) {
    require_valid(a);
    BoundarySamples s;
    s.angles = angle_grid(n_angles);
    s.support.resize(s.angles.size());
    s.points.resize(s.angles.size());
    for (std::size_t k = 0; k < s.angles.size(); ++k) {
        const BoundaryPoint bp = boundary_point(a, s.angles[k]);
        s.support[k] = bp.support;
        s.points[k] = bp.point;
    }
    return s;
}

BoundarySamples sample_boundary(const CMatrix& a, int n_angles) {
    require_valid(a);
    BoundarySamples s;
    s.angles = angle_grid(n_angles);
    s.support.resize(s.angles.size());
    s.points.resize(s.angles.size());
    const auto count = static_cast<std::ptrdiff_t>(s.angles.size());
    // Exceptions may not leave an OpenMP region; the first one is rethrown after.
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        try {
            const BoundaryPoint bp = boundary_point(a, s.angles[static_cast<std::size_t>(k)]);
            s.support[static_cast<std::size_t>(k)] = bp.support;
            s.points[static_cast<std::size_t>(k)] = bp.point;
        } catch (...) {
#pragma omp critical(nrange_sample_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return s;
}

void refine_corners(const CMatrix& a, double norm, double tau_set, BoundarySamples& s) {
    const std::size_t m = s.angles.size();
    const double tol = kGeoTolerance * (1.0 + norm);
    const auto on_circle = [&](cplx z) { return std::abs(z) >= norm - tau_set; };
    struct Span {
        double t0, t1;
        cplx p0, p1;
        int depth;
    };
    std::vector<Span> stack;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t next = (k + 1) % m;
        const double t1 = next == 0 ? s.angles[0] + 2.0 * std::numbers::pi : s.angles[next];
        const cplx p0 = s.points[k];
        const cplx p1 = s.points[next];
        if (on_circle(p0) && on_circle(p1) && std::abs(p1 - p0) > tol) stack.push_back({s.angles[k], t1, p0, p1, 0});
    }
    while (!stack.empty()) {
        const Span sp = stack.back();
        stack.pop_back();
        if (sp.depth >= kMaxRefineDepth) continue;
        // Probe where the chord p0 p1 is a support line: if W does not reach
        // past the chord there, nothing between the samples is missing.
        double probe = std::arg(sp.p1 - sp.p0) - std::numbers::pi / 2;
        while (probe < sp.t0) probe += 2.0 * std::numbers::pi;
        while (probe >= sp.t0 + 2.0 * std::numbers::pi) probe -= 2.0 * std::numbers::pi;
        if (!(probe < sp.t1)) probe = 0.5 * (sp.t0 + sp.t1);
        const BoundaryPoint bp = boundary_point(a, probe);
        const double chord_level = sp.p0.real() * std::cos(probe) + sp.p0.imag() * std::sin(probe);
        if (bp.support <= chord_level + tol) continue;
        const cplx pm = bp.point;
        const bool new_point = std::abs(pm - sp.p0) > tol && std::abs(pm - sp.p1) > tol;
        if (new_point) s.extra_points.push_back(pm);
        if (!on_circle(pm)) continue;
        if (std::abs(pm - sp.p0) > tol) stack.push_back({sp.t0, probe, sp.p0, pm, sp.depth + 1});
        if (std::abs(pm - sp.p1) > tol) stack.push_back({probe, sp.t1, pm, sp.p1, sp.depth + 1});
    }
}

ConvexRegion region_from_samples(const BoundarySamples& s) {
    std::vector<SupportSample> samples(s.angles.size());
    for (std::size_t k = 0; k < s.angles.size(); ++k) samples[k] = {s.angles[k], s.support[k]};
    std::vector<cplx> cloud = s.points;
    cloud.insert(cloud.end(), s.extra_points.begin(), s.extra_points.end());
    return hull(cloud).with_samples(std::move(samples));
}

ConvexRegion numerical_range(const CMatrix& a, const Tolerances& tol) {
    tol.validate();
    BoundarySamples s = sample_boundary(a, tol.n_angles);
    refine_corners(a, operator_norm(a), tol.tau_set, s);
    return region_from_samples(s);
}

double numerical_radius(const CMatrix& a, const BoundarySamples& s) {
    const auto best = std::max_element(s.support.begin(), s.support.end());
    const auto k = static_cast<std::size_t>(best - s.support.begin());
    const double step = 2.0 * std::numbers::pi / static_cast<double>(s.angles.size());
    return refine_radius(a, s.angles[k], step, *best);
}

double numerical_radius(const CMatrix& a, const Tolerances& tol) {
    require_valid(a);
    tol.validate();
    const auto grid = angle_grid(tol.n_angles);
    std::vector<double> values(grid.size());
    const auto count = static_cast<std::ptrdiff_t>(grid.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        try {
            values[static_cast<std::size_t>(k)] = top_support(a, grid[static_cast<std::size_t>(k)]);
        } catch (...) {
#pragma omp critical(nrange_radius_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    const auto best = std::max_element(values.begin(), values.end());
    const auto k = static_cast<std::size_t>(best - values.begin());
    return refine_radius(a, grid[k], 2.0 * std::numbers::pi / tol.n_angles, *best);
}

ConvexRegion maximal_numerical_range(const CMatrix& a, const Tolerances& tol, bool allow_zero) {
    require_valid(a);
    tol.validate();
    if (a.is_zero()) {
        if (!allow_zero) throw Error(ErrorKind::ZeroMatrix, "W0 of the zero matrix");
        const cplx origin{};
        return hull(std::span(&origin, 1));
    }
    return w0_region(a, operator_norm(a), tol);
}

SpectralData peripheral_spectrum(const CMatrix& a, const Tolerances& tol) {
    require_valid(a);
    tol.validate();
    return spectral_data(a, operator_norm(a), tol.tau_set);
}

Classification classify(double norm, double spectral_radius, double numerical_radius, double tau_set) noexcept {
    return {spectral_radius >= norm - tau_set, numerical_radius >= norm - tau_set};
}

bool is_normaloid(const CMatrix& a, const Tolerances& tol) {
    const SpectralData s = peripheral_spectrum(a, tol);
    const Classification c = classify(s.norm, s.spectral_radius, numerical_radius(a, tol), tol.tau_set);
    if (c.ambiguous())
        throw Error(ErrorKind::AmbiguousClassification, "spectral radius and numerical radius criteria disagree");
    return c.by_spectrum;
}

std::vector<cplx> merged_peripheral(const SpectralData& s) {
    std::vector<std::vector<cplx>> clusters;
    for (const auto& z : s.peripheral) {
        bool placed = false;
        for (auto& c : clusters) {
            if (std::abs(c.front() - z) <= kGeoTolerance * (1.0 + std::abs(z))) {
                c.push_back(z);
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({z});
    }
    std::vector<cplx> merged;
    for (const auto& c : clusters) {
        cplx sum{};
        for (const auto& z : c) sum += z;
        merged.push_back(sum / static_cast<double>(c.size()));
    }
    return merged;
}

std::vector<Chord> chords_on_boundary(const CMatrix& a, const ConvexRegion& w, const SpectralData& s,
                                      const Tolerances& tol) {
    const std::vector<cplx> pts = merged_peripheral(s);
    std::vector<Chord> chords;
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Chord c{pts[i], pts[j]};
            if (c.degenerate()) continue;
            // Sample W exactly in the two directions normal to the chord so the
            // flat piece, if any, is represented in the polygon.
            std::vector<cplx> cloud = w.vertices();
            cloud.insert(cloud.end(), pts.begin(), pts.end());
            const double normal = std::arg(c.b - c.a) - std::numbers::pi / 2;
            cloud.push_back(boundary_point(a, normal).point);
            cloud.push_back(boundary_point(a, normal + std::numbers::pi).point);
            if (segment_on_boundary(hull(cloud), c, tol.tau_set, tol.n_angles)) {
                chords.push_back(c);
                used[i] = used[j] = true;
            }
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!used[i]) chords.push_back({pts[i], pts[i]});
    return chords;
}

std::vector<Chord> chords_on_boundary(const CMatrix& a, const Tolerances& tol) {
    require_valid(a);
    tol.validate();
    return chords_on_boundary(a, numerical_range(a, tol), peripheral_spectrum(a, tol), tol);
}

RangeReport build_report(const CMatrix& a, const Tolerances& tol, bool allow_zero) {
    require_valid(a);
    tol.validate();
    if (a.is_zero()) {
        if (!allow_zero) throw Error(ErrorKind::ZeroMatrix, "report of the zero matrix");
        return zero_report(a, tol);
    }
    RangeReport r;
    r.tolerances = tol;
    r.norm = operator_norm(a);
    r.w_samples = sample_boundary(a, tol.n_angles);
    refine_corners(a, r.norm, tol.tau_set, r.w_samples);
    r.w = region_from_samples(r.w_samples);
    r.numerical_radius = numerical_radius(a, r.w_samples);
    r.spectral = spectral_data(a, r.norm, tol.tau_set);
    // A full top cluster makes the compression unitarily similar to A.
    const Subspace top = top_singular_subspace(a, tol.cluster_for(r.norm));
    r.w0 = top.basis.cols() == a.rows() ? r.w : numerical_range(compress(a, top), tol);
    r.classification = classify(r.norm, r.spectral.spectral_radius, r.numerical_radius, tol.tau_set);
    r.normaloid = r.classification.by_spectrum;
    r.chords = chords_on_boundary(a, r.w, r.spectral, tol);
    const std::vector<cplx> pts = merged_peripheral(r.spectral);
    if (!pts.empty()) {
        r.hull_peripheral = hull(pts);
        r.ch_equality_gap = hausdorff(r.w0, *r.hull_peripheral, tol.n_angles);
    }
    return r;
}

RangeReport full_report(const CMatrix& a, const Tolerances& tol, bool allow_zero) {
    RangeReport r = build_report(a, tol, allow_zero);
    if (r.classification.ambiguous())
        throw Error(ErrorKind::AmbiguousClassification, "spectral radius and numerical radius criteria disagree");
    return r;
}

ConvexRegion ellipse_2x2(const CMatrix& a, int n_angles) {
    require_valid(a);
    if (a.rows() != 2) throw Error(ErrorKind::DimensionMismatch, "ellipse_2x2 needs a 2x2 matrix");
    if (n_angles < 8 || n_angles % 2 != 0) throw Error(ErrorKind::InvalidSpec, "ellipse grid must be even, >= 8");
    const cplx half_trace = 0.5 * (a(0, 0) + a(1, 1));
    const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const cplx root = std::sqrt(half_trace * half_trace - det);
    const cplx l1 = half_trace - root;
    const cplx l2 = half_trace + root;
    const double fro2 = std::norm(a(0, 0)) + std::norm(a(0, 1)) + std::norm(a(1, 0)) + std::norm(a(1, 1));
    const double minor2 = std::max(0.0, (fro2 - std::norm(l1) - std::norm(l2)) / 4.0);
    const double minor = std::sqrt(minor2);
    const double focal = std::abs(l2 - l1) / 2.0;
    const double major = std::sqrt(minor2 + focal * focal);
    const double tilt = focal > 0.0 ? std::arg(l2 - l1) : 0.0;

    const auto h = [&](double t) {
        const double c = std::cos(t - tilt);
        const double s = std::sin(t - tilt);
        return half_trace.real() * std::cos(t) + half_trace.imag() * std::sin(t) +
               std::sqrt(major * major * c * c + minor2 * s * s);
    };
    const auto grid = angle_grid(n_angles);
    std::vector<SupportSample> samples;
    samples.reserve(grid.size());
    for (double t : grid) samples.push_back({t, h(t)});

    const double scale = 1.0 + std::abs(half_trace) + major;
    if (minor <= kGeoTolerance * scale) {
        const cplx ends[] = {l1, l2};
        return hull(ends).with_samples(std::move(samples));
    }
    std::vector<cplx> corners;
    corners.reserve(grid.size() / 2);
    for (std::size_t k = 0; k + 1 < grid.size(); k += 2) {
        const double t1 = grid[k];
        const double t2 = grid[k + 1];
        const double h1 = samples[k].value;
        const double h2 = samples[k + 1].value;
        const double d = std::sin(t2 - t1);
        corners.emplace_back((h1 * std::sin(t2) - h2 * std::sin(t1)) / d,
                             (h2 * std::cos(t1) - h1 * std::cos(t2)) / d);
    }
    return hull(corners).with_samples(std::move(samples));
}

}  // namespace nrange
