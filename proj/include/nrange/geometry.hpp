#pragma once

#include <span>
#include <vector>

#include "nrange/matrix.hpp"

namespace nrange {

inline constexpr double kGeoTolerance = 1e-9;
inline constexpr double kSetTolerance = 1e-6;
inline constexpr int kDefaultAngles = 1440;

struct SupportSample {
    double angle;
    double value;

    friend bool operator==(const SupportSample&, const SupportSample&) = default;
};

/// Compact convex subset of the plane stored as its extreme points in
/// counterclockwise order. One vertex is a singleton, two are a segment.
/// Regions produced by boundary sampling also carry the sampled support values.
class ConvexRegion {
public:
    const std::vector<cplx>& vertices() const noexcept { return vertices_; }
    const std::vector<SupportSample>& support_samples() const noexcept { return samples_; }

    bool is_singleton() const noexcept { return vertices_.size() == 1; }
    bool is_segment() const noexcept { return vertices_.size() == 2; }

    /// max over the region of Re(e^{-i theta} z).
    double support(double theta) const noexcept;
    double max_modulus() const noexcept;

    /// The region z -> s z (rotation plus positive scaling).
    ConvexRegion transformed(cplx s) const;

    ConvexRegion with_samples(std::vector<SupportSample> samples) &&;

    friend ConvexRegion hull(std::span<const cplx> points, double tau_geo);
    friend bool operator==(const ConvexRegion&, const ConvexRegion&) = default;

private:
    std::vector<cplx> vertices_;
    std::vector<SupportSample> samples_;
};

/// Segment [a, b]; a == b is a degenerate (single-point) chord.
struct Chord {
    cplx a;
    cplx b;

    bool degenerate(double tau = kGeoTolerance) const noexcept;
    friend bool operator==(const Chord&, const Chord&) = default;
};

/// theta_k = 2 pi k / n for k = 0..n-1.
std::vector<double> angle_grid(int n_angles);

/// Smallest convex region containing the points. Points closer than
/// tau_geo (1 + max|z|) merge; vertices within that distance of the line
/// through their neighbours are dropped. Throws EmptySet on empty input.
ConvexRegion hull(std::span<const cplx> points, double tau_geo = kGeoTolerance);

double support(const ConvexRegion& r, double theta) noexcept;
/// support(r, theta_k) on the n_angles grid in one pass over the vertices.
std::vector<double> support_on_grid(const ConvexRegion& r, int n_angles = kDefaultAngles);

/// Max support-function gap over the shared angle grid.
double hausdorff(const ConvexRegion& r1, const ConvexRegion& r2, int n_angles = kDefaultAngles);

/// z lies in r up to distance tau.
bool contains(const ConvexRegion& r, cplx z, double tau);

/// Outward normal directions of the region's edges (both sides for a segment).
std::vector<double> edge_normals(const ConvexRegion& r);

/// True iff inner reaches the boundary of outer: some grid direction in which
/// the support gap is at most tau_set. Throws NotContained if inner sticks out
/// of outer by more than tau_set in any grid direction.
bool touches_boundary(const ConvexRegion& inner, const ConvexRegion& outer, double tau_set,
                      int n_angles = kDefaultAngles);

/// Smallest support gap min_theta (h_outer - h_inner) over the grid.
double min_support_gap(const ConvexRegion& inner, const ConvexRegion& outer, int n_angles = kDefaultAngles);

/// True iff the chord lies on the boundary of r, i.e. both endpoints attain the
/// support in a common direction. For a != b only the two normals of b - a are
/// tried; a degenerate chord is tried against the grid and the edge normals of r.
bool segment_on_boundary(const ConvexRegion& r, const Chord& c, double tau_set,
                         int n_angles = kDefaultAngles);

/// Hausdorff distance of finite point sets. Both empty gives 0, exactly one
/// empty gives +inf.
double point_set_hausdorff(std::span<const cplx> a, std::span<const cplx> b);

double distance_to_segment(cplx z, const Chord& s) noexcept;

/// Hausdorff distance between unions of segments: each segment of one side is
/// sampled at `samples` points and measured exactly against the other side.
/// Same empty-set conventions as point_set_hausdorff.
double segment_set_hausdorff(std::span<const Chord> a, std::span<const Chord> b, int samples = 257);

}  // namespace nrange
