#pragma once

#include <optional>
#include <vector>

#include "nrange/geometry.hpp"
#include "nrange/linalg.hpp"
#include "nrange/matrix.hpp"

namespace nrange {

/// Tolerances governing every approximate set comparison.
struct Tolerances {
    /// Clustering threshold on the spectrum of A^*A; unset means
    /// default_cluster_tolerance(||A||).
    std::optional<double> tau_cluster;
    double tau_set = kSetTolerance;
    int n_angles = kDefaultAngles;
    double tau_eig = 1e-12;

    /// Throws InvalidSpec unless every value is positive and n_angles >= 8.
    void validate() const;
    double cluster_for(double norm) const noexcept;
};

/// Rotated-Hermitian-part samples of W(A) on the uniform grid: for each angle,
/// the largest eigenvalue (the support value) and the boundary point <Ax, x>
/// of its eigenvector.
struct BoundarySamples {
    std::vector<double> angles;
    std::vector<double> support;
    std::vector<cplx> points;
    /// Off-grid boundary points found by corner refinement; hull input only.
    std::vector<cplx> extra_points;
};

struct SpectralData {
    std::vector<cplx> eigenvalues;
    double norm = 0.0;
    double spectral_radius = 0.0;
    /// Eigenvalues with |lambda| >= norm - tau_set.
    std::vector<cplx> peripheral;
};

/// The two finite-dimensional normaloid criteria, evaluated independently.
struct Classification {
    bool by_spectrum = false;
    bool by_radius = false;

    bool ambiguous() const noexcept { return by_spectrum != by_radius; }
};

struct RangeReport {
    double norm = 0.0;
    double numerical_radius = 0.0;
    ConvexRegion w;
    ConvexRegion w0;
    BoundarySamples w_samples;
    SpectralData spectral;
    Classification classification;
    bool normaloid = false;
    std::vector<Chord> chords;
    /// conv(sigma(A) on the circle |z| = ||A||); empty when no eigenvalue reaches it.
    std::optional<ConvexRegion> hull_peripheral;
    std::optional<double> ch_equality_gap;
    Tolerances tolerances;

    /// max |z| over W0.
    double maximal_radius() const noexcept { return w0.max_modulus(); }
};

/// Top eigenvalue and boundary point of W(A) in direction theta.
struct BoundaryPoint {
    double support;
    cplx point;
};
BoundaryPoint boundary_point(const CMatrix& a, double theta);

/// Per-angle boundary sampling, parallel over angles with OpenMP. Output is
/// assembled in angle order and is identical to the serial reference.
BoundarySamples sample_boundary(const CMatrix& a, int n_angles);
BoundarySamples sample_boundary_serial(const CMatrix& a, int n_angles);

/// Bisects between consecutive grid samples that both lie on |z| = ||A||
/// (within tau_set) and differ, so that corners of W on that circle narrower
/// than one grid step are still sampled. Appends to s.extra_points.
void refine_corners(const CMatrix& a, double norm, double tau_set, BoundarySamples& s);

ConvexRegion numerical_range(const CMatrix& a, const Tolerances& tol = {});
ConvexRegion region_from_samples(const BoundarySamples& s);

/// Grid maximum of lambda_max(Re(e^{-i theta} A)) refined by golden-section search.
double numerical_radius(const CMatrix& a, const Tolerances& tol = {});
double numerical_radius(const CMatrix& a, const BoundarySamples& s);

/// W(V^* A V) for V spanning the top eigenspace of A^*A. Throws ZeroMatrix
/// for A = 0 unless allow_zero, in which case {0} is returned.
ConvexRegion maximal_numerical_range(const CMatrix& a, const Tolerances& tol = {}, bool allow_zero = false);

SpectralData peripheral_spectrum(const CMatrix& a, const Tolerances& tol = {});

Classification classify(double norm, double spectral_radius, double numerical_radius, double tau_set) noexcept;

/// Throws AmbiguousClassification when the spectral and radius criteria disagree.
bool is_normaloid(const CMatrix& a, const Tolerances& tol = {});

/// Peripheral eigenvalues with coincident points (within tau_geo) merged.
std::vector<cplx> merged_peripheral(const SpectralData& s);

/// Chords between peripheral eigenvalues lying on the boundary of W(A), plus a
/// degenerate chord for every peripheral point not already an endpoint.
std::vector<Chord> chords_on_boundary(const CMatrix& a, const Tolerances& tol = {});
std::vector<Chord> chords_on_boundary(const CMatrix& a, const ConvexRegion& w, const SpectralData& s,
                                      const Tolerances& tol);

/// Every field populated. Throws ZeroMatrix for A = 0 unless allow_zero, and
/// AmbiguousClassification when the two normaloid criteria disagree.
RangeReport full_report(const CMatrix& a, const Tolerances& tol = {}, bool allow_zero = false);

/// Same as full_report but never throws on an ambiguous classification; the
/// caller inspects report.classification.
RangeReport build_report(const CMatrix& a, const Tolerances& tol = {}, bool allow_zero = false);

/// Closed-form numerical range of a 2x2 matrix: the ellipse with foci at the
/// eigenvalues and minor semi-axis sqrt(tr(A^*A) - |l1|^2 - |l2|^2) / 2. The
/// polygon has n_angles/2 vertices at intersections of tangent lines taken at
/// consecutive grid angles, so its support is exact on that grid.
ConvexRegion ellipse_2x2(const CMatrix& a, int n_angles = kDefaultAngles);

}  // namespace nrange
