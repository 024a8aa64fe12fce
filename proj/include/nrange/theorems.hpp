#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nrange/numrange.hpp"

namespace nrange {

enum class Family { ginibre, normal, unitary, nilpotent, normaloid_direct_sum, block_upper_normal };

std::string_view to_string(Family f) noexcept;
/// Throws InvalidSpec for unknown names.
Family family_from_string(std::string_view name);
const std::vector<Family>& all_families();

struct GenSpec {
    std::uint64_t seed = 0;
    int dim = 2;
    Family family = Family::ginibre;
    /// block_upper_normal only: size of the leading block (default ceil(dim / 2)).
    std::optional<int> block_head;

    friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

/// N = [[A, B], [0, C]] with N normal.
struct BlockExtension {
    CMatrix a;
    CMatrix b;
    CMatrix c;
    CMatrix n;

    /// Assembles N from the blocks; shapes are checked, normality is not.
    static BlockExtension assemble(CMatrix a, CMatrix b, CMatrix c);
};

/// ||A^*A - AA^*||_F <= 1e-12 ||A||_F^2.
bool is_normal(const CMatrix& a);

CMatrix example_matrix();

CMatrix generate(const GenSpec& spec);
/// Throws InvalidSpec unless spec.family is block_upper_normal.
BlockExtension generate_block(const GenSpec& spec);

enum class Bound { at_most, at_least };

struct Witness {
    CMatrix matrix;
    double gap = 0.0;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    /// The checker could not decide (ambiguous normaloid classification).
    bool inconclusive = false;
    double gap = 0.0;
    double tolerance = 0.0;
    /// passed <=> gap <= tolerance (at_most) or gap >= tolerance (at_least).
    Bound bound = Bound::at_most;
    std::optional<Witness> witness;
    std::optional<GenSpec> source;
    /// Named sub-measurements, e.g. the two conditions of the block check.
    std::vector<std::pair<std::string, double>> parts;
    std::string note;

    double part(std::string_view key) const;
};

CheckResult check_lemma1(const CMatrix& a, const Tolerances& tol = {});
CheckResult check_lemma1(const RangeReport& r, double tolerance);

CheckResult check_theorem1(const CMatrix& a, const Tolerances& tol = {});
CheckResult check_theorem1(const CMatrix& a, const RangeReport& r);

/// The directly scanned set W0 ∩ ∂W: W0 vertices and whole W0 edges that
/// attain the support of W, found without reference to the spectrum.
std::vector<Chord> scan_w0_on_boundary(const CMatrix& a, const RangeReport& r);

CheckResult check_corollary_chords(const CMatrix& a, const Tolerances& tol = {});
CheckResult check_corollary_chords(const CMatrix& a, const RangeReport& r, double tolerance);

/// Throws NotNormal for non-normal input.
CheckResult check_theorem2(const CMatrix& a, const Tolerances& tol = {});
CheckResult check_theorem2(const CMatrix& a, const RangeReport& r, double tolerance);

/// Passes iff hausdorff(W0(F), conv(peripheral F)) >= 0.5; the fixture
/// defaults to the 3x3 counterexample. An empty peripheral hull counts as +inf.
CheckResult check_ch_may_fail(const CMatrix& fixture = example_matrix(), const Tolerances& tol = {});

/// Throws NotNormal when ext.n is not normal.
CheckResult check_block_extension(const BlockExtension& ext, const Tolerances& tol = {});

/// ||b| - |c|| for a 2x2 matrix whose (1,1) entry lies on the boundary of its
/// range; nullopt when it does not (the instance is excluded).
std::optional<double> boundary_condition_gap(const CMatrix& a, const Tolerances& tol = {});
CheckResult check_2x2_boundary_condition(const Tolerances& tol, int trials, std::uint64_t seed = 11);

/// Per-draw re-assertion of W0 ⊂ W (on the grid) and w(A) <= ||A||.
CheckResult check_containment(const RangeReport& r, double tolerance);

enum class Checker { lemma1, theorem1, corollary_chords, theorem2, ch_may_fail, block_extension, boundary_2x2 };

std::string_view to_string(Checker c) noexcept;
Checker checker_from_string(std::string_view name);

struct SuiteEntry {
    /// nullopt: fixture entry (ch_may_fail, boundary_2x2) with no generated draws.
    std::optional<Family> family;
    int dim_lo = 2;
    int dim_hi = 8;
    /// block_upper_normal: range of the trailing block; dim_lo..dim_hi is then the head.
    int tail_lo = 1;
    int tail_hi = 3;
    int trials = 1;
    std::uint64_t seed = 42;
    std::vector<Checker> checkers;
    /// Replaces each checker's own tolerance (used to force the failure path).
    std::optional<double> tolerance;
};

/// Seed of the trial-th draw of a family; independent of the entry's position.
std::uint64_t draw_seed(std::uint64_t base, Family f, int trial) noexcept;

/// Throws InvalidSpec for an empty config, non-positive trials, bad ranges, or
/// a checker that does not apply to the entry's family.
void validate(const std::vector<SuiteEntry>& config);

/// Draws every entry, runs its checkers plus the containment re-assertion, and
/// returns results ordered by (entry, trial, checker). Failures are data.
std::vector<CheckResult> run_suite(const std::vector<SuiteEntry>& config, const Tolerances& tol = {});

/// The configuration `nrange verify` runs without a config file.
std::vector<SuiteEntry> default_suite(std::uint64_t seed, int trials, int dim_lo, int dim_hi);

struct SuiteSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t inconclusive = 0;
};
SuiteSummary summarize(const std::vector<CheckResult>& results);

}  // namespace nrange
