#include "nrange/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nrange/errors.hpp"
#include "nrange/rng.hpp"

namespace nrange {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool meets(double gap, double tolerance, Bound bound) noexcept {
    return bound == Bound::at_most ? gap <= tolerance : gap >= tolerance;
}

CheckResult make_result(std::string name, double gap, double tolerance, Bound bound = Bound::at_most) {
    CheckResult r;
    r.name = std::move(name);
    r.gap = gap;
    r.tolerance = tolerance;
    r.bound = bound;
    r.passed = meets(gap, tolerance, bound);
    return r;
}

double projection(cplx z, double theta) noexcept {
    return z.real() * std::cos(theta) + z.imag() * std::sin(theta);
}

double exact_support(const CMatrix& a, double theta) {
    return herm_eigenvalues(rotated_hermitian_part(a, theta)).back();
}

CMatrix ginibre(Rng& rng, std::size_t n) {
    CMatrix m(n);
    for (auto& z : m.data()) z = rng.complex_normal();
    return m;
}

// Haar unitary: QR of a Ginibre draw with the phases of diag(R) moved into Q.
CMatrix haar_unitary(Rng& rng, std::size_t n) {
    QrFactors f = qr_decompose(ginibre(rng, n));
    for (std::size_t j = 0; j < n; ++j) {
        const cplx d = f.r(j, j);
        const cplx phase = d == cplx{} ? cplx{1.0} : d / std::abs(d);
        for (std::size_t i = 0; i < n; ++i) f.q(i, j) *= phase;
    }
    return f.q;
}

CMatrix conjugated_diagonal(const CMatrix& u, const std::vector<cplx>& diag) {
    return u * CMatrix::diagonal(diag) * u.adjoint();
}

std::vector<cplx> on_circle(const ConvexRegion& r, double norm, double tau) {
    std::vector<cplx> out;
    for (const auto& v : r.vertices())
        if (std::abs(v) >= norm - tau) out.push_back(v);
    return out;
}

// Directed distance sup_{p in from} dist(p, to); +inf when `to` is empty but `from` is not.
double directed_distance(const std::vector<cplx>& from, const std::vector<cplx>& to) {
    if (from.empty()) return 0.0;
    if (to.empty()) return kInf;
    double worst = 0.0;
    for (const auto& p : from) {
        double best = kInf;
        for (const auto& q : to) best = std::min(best, std::abs(p - q));
        worst = std::max(worst, best);
    }
    return worst;
}

struct EllipseShape {
    cplx f1;
    cplx f2;
    double minor;
    double major;
};

EllipseShape ellipse_shape(const CMatrix& a) {
    const cplx half_trace = 0.5 * (a(0, 0) + a(1, 1));
    const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const cplx root = std::sqrt(half_trace * half_trace - det);
    const cplx l1 = half_trace - root;
    const cplx l2 = half_trace + root;
    double fro2 = 0.0;
    for (const auto& z : a.data()) fro2 += std::norm(z);
    const double minor2 = std::max(0.0, (fro2 - std::norm(l1) - std::norm(l2)) / 4.0);
    const double focal = std::abs(l2 - l1) / 2.0;
    return {l1, l2, std::sqrt(minor2), std::sqrt(minor2 + focal * focal)};
}

void require_normal(const CMatrix& a) {
    if (!is_normal(a)) throw Error(ErrorKind::NotNormal, "||A^*A - AA^*|| exceeds 1e-12 ||A||_F^2");
}

}  // namespace

std::string_view to_string(Family f) noexcept {
    switch (f) {
        case Family::ginibre: return "ginibre";
        case Family::normal: return "normal";
        case Family::unitary: return "unitary";
        case Family::nilpotent: return "nilpotent";
        case Family::normaloid_direct_sum: return "normaloid_direct_sum";
        case Family::block_upper_normal: return "block_upper_normal";
    }
    return "unknown";
}

Family family_from_string(std::string_view name) {
    for (Family f : all_families())
        if (to_string(f) == name) return f;
    throw Error(ErrorKind::InvalidSpec, "unknown family '" + std::string(name) + "'");
}

const std::vector<Family>& all_families() {
    static const std::vector<Family> families = {Family::ginibre,   Family::normal,
                                                 Family::unitary,   Family::nilpotent,
                                                 Family::normaloid_direct_sum, Family::block_upper_normal};
    return families;
}

BlockExtension BlockExtension::assemble(CMatrix a, CMatrix b, CMatrix c) {
    if (!a.is_square() || !c.is_square() || b.rows() != a.rows() || b.cols() != c.rows() || a.empty() ||
        c.empty())
        throw Error(ErrorKind::DimensionMismatch, "blocks do not form [[A, B], [0, C]]");
    const std::size_t h = a.rows();
    const std::size_t g = c.rows();
    CMatrix n(h + g);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j) n(i, j) = a(i, j);
        for (std::size_t j = 0; j < g; ++j) n(i, h + j) = b(i, j);
    }
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) n(h + i, h + j) = c(i, j);
    return {std::move(a), std::move(b), std::move(c), std::move(n)};
}

bool is_normal(const CMatrix& a) {
    const double f = a.frobenius_norm();
    return commutator_defect(a) <= kHermitianTolerance * f * f;
}

CMatrix example_matrix() { return CMatrix::from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 1}}); }

CMatrix generate(const GenSpec& spec) {
    if (spec.dim < 1 || spec.dim > 256) throw Error(ErrorKind::InvalidSpec, "dim must be in 1..256");
    const auto n = static_cast<std::size_t>(spec.dim);
    Rng rng(spec.seed);
    switch (spec.family) {
        case Family::ginibre:
            return ginibre(rng, n);
        case Family::unitary:
            return haar_unitary(rng, n);
        case Family::normal: {
            const CMatrix u = haar_unitary(rng, n);
            std::vector<cplx> lambda(n);
            for (auto& z : lambda) z = rng.in_disk();
            return conjugated_diagonal(u, lambda);
        }
        case Family::nilpotent: {
            if (n < 2) throw Error(ErrorKind::InvalidSpec, "a nonzero nilpotent draw needs dim >= 2");
            CMatrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) m(i, j) = rng.complex_normal();
            return m;
        }
        case Family::normaloid_direct_sum: {
            CMatrix m(n);
            m(0, 0) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
            if (n > 1) {
                CMatrix k = ginibre(rng, n - 1);
                const double scale = rng.uniform(0.25, 1.0) / operator_norm(k);
                for (std::size_t i = 0; i + 1 < n; ++i)
                    for (std::size_t j = 0; j + 1 < n; ++j) m(i + 1, j + 1) = scale * k(i, j);
            }
            return m;
        }
        case Family::block_upper_normal:
            return generate_block(spec).n;
    }
    throw Error(ErrorKind::InvalidSpec, "unknown family");
}

BlockExtension generate_block(const GenSpec& spec) {
    if (spec.family != Family::block_upper_normal)
        throw Error(ErrorKind::InvalidSpec, "generate_block needs the block_upper_normal family");
    const int head = spec.block_head.value_or((spec.dim + 1) / 2);
    const int tail = spec.dim - head;
    if (head < 1 || tail < 1 || spec.dim > 256)
        throw Error(ErrorKind::InvalidSpec, "block split needs both blocks non-empty");
    const auto h = static_cast<std::size_t>(head);
    const auto g = static_cast<std::size_t>(tail);
    Rng rng(spec.seed);
    std::vector<cplx> la(h);
    for (auto& z : la) z = rng.in_disk();
    double rho = 0.0;
    for (const auto& z : la) rho = std::max(rho, std::abs(z));
    // The trailing spectrum stays inside |z| <= rho so that ||A|| = ||N||; half
    // the draws put one trailing eigenvalue on that circle.
    std::vector<cplx> lc(g);
    for (auto& z : lc) z = rng.in_disk(rho);
    if (rng.uniform() < 0.5) lc[0] = std::polar(rho, 2.0 * std::numbers::pi * rng.uniform());
    const CMatrix ua = haar_unitary(rng, h);
    const CMatrix uc = haar_unitary(rng, g);
    return BlockExtension::assemble(conjugated_diagonal(ua, la), CMatrix(h, g), conjugated_diagonal(uc, lc));
}

double CheckResult::part(std::string_view key) const {
    for (const auto& [k, v] : parts)
        if (k == key) return v;
    return std::numeric_limits<double>::quiet_NaN();
}

CheckResult check_lemma1(const RangeReport& r, double tolerance) {
    const double tau = r.tolerances.tau_set;
    const auto w0_pts = on_circle(r.w0, r.norm, tau);
    const auto w_pts = on_circle(r.w, r.norm, tau);
    const auto& sigma = r.spectral.peripheral;
    const double g1 = point_set_hausdorff(w0_pts, w_pts);
    const double g2 = point_set_hausdorff(w_pts, sigma);
    const double g3 = point_set_hausdorff(w0_pts, sigma);
    CheckResult res = make_result("lemma1", std::max({g1, g2, g3}), tolerance);
    res.parts = {{"w0_vs_w", g1}, {"w_vs_spectrum", g2}, {"w0_vs_spectrum", g3},
                 {"points_on_circle", static_cast<double>(sigma.size())}};
    return res;
}

CheckResult check_lemma1(const CMatrix& a, const Tolerances& tol) {
    return check_lemma1(build_report(a, tol), tol.tau_set);
}

CheckResult check_theorem1(const CMatrix& a, const RangeReport& r) {
    (void)a;
    if (r.classification.ambiguous()) {
        CheckResult res = make_result("theorem1", 0.0, 0.0);
        res.inconclusive = true;
        res.note = "AmbiguousClassification";
        return res;
    }
    const double margin = min_support_gap(r.w0, r.w, r.tolerances.n_angles);
    bool touches = false;
    try {
        touches = touches_boundary(r.w0, r.w, r.tolerances.tau_set, r.tolerances.n_angles);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotContained) throw;
        CheckResult res = make_result("theorem1", kInf, 0.0);
        res.note = "W0 not contained in W";
        return res;
    }
    const bool agree = touches == r.normaloid;
    CheckResult res = make_result("theorem1", agree ? 0.0 : r.tolerances.tau_set + std::abs(margin), 0.0);
    res.parts = {{"normaloid", r.normaloid ? 1.0 : 0.0}, {"touches", touches ? 1.0 : 0.0}, {"margin", margin}};
    return res;
}

CheckResult check_theorem1(const CMatrix& a, const Tolerances& tol) { return check_theorem1(a, build_report(a, tol)); }

std::vector<Chord> scan_w0_on_boundary(const CMatrix& a, const RangeReport& r) {
    const double tau = r.tolerances.tau_set;
    const auto& grid = r.w_samples.angles;
    const auto& hw = r.w_samples.support;
    const auto& verts = r.w0.vertices();
    const auto& wverts = r.w.vertices();

    std::vector<bool> touching(verts.size(), false);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const cplx v = verts[i];
        for (std::size_t k = 0; k < grid.size() && !touching[i]; ++k)
            touching[i] = projection(v, grid[k]) >= hw[k] - tau;
        if (touching[i] || wverts.size() < 2) continue;
        // A corner of W narrower than a grid step: try the normals of the two
        // polygon edges meeting at the nearest vertex of W.
        std::size_t near = 0;
        for (std::size_t j = 1; j < wverts.size(); ++j)
            if (std::abs(wverts[j] - v) < std::abs(wverts[near] - v)) near = j;
        if (std::abs(wverts[near] - v) > tau) continue;
        const auto normals = edge_normals(r.w);
        const std::size_t prev = (near + normals.size() - 1) % normals.size();
        for (double t : {normals[prev], normals[near]})
            if (projection(v, t) >= exact_support(a, t) - tau) touching[i] = true;
    }

    std::vector<Chord> found;
    std::vector<bool> covered(verts.size(), false);
    if (verts.size() >= 2) {
        const auto normals = edge_normals(r.w0);
        const std::size_t edges = verts.size() == 2 ? 1 : verts.size();
        for (std::size_t i = 0; i < edges; ++i) {
            const std::size_t j = (i + 1) % verts.size();
            if (!touching[i] || !touching[j]) continue;
            bool on_boundary = false;
            const std::vector<double> dirs = verts.size() == 2
                                                 ? std::vector<double>{normals[0], normals[1]}
                                                 : std::vector<double>{normals[i]};
            for (double t : dirs) {
                const double h = exact_support(a, t);
                if (std::min(projection(verts[i], t), projection(verts[j], t)) >= h - tau) on_boundary = true;
            }
            if (on_boundary) {
                found.push_back({verts[i], verts[j]});
                covered[i] = covered[j] = true;
            }
        }
    }
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (touching[i] && !covered[i]) found.push_back({verts[i], verts[i]});
    return found;
}

CheckResult check_corollary_chords(const CMatrix& a, const RangeReport& r, double tolerance) {
    const std::vector<Chord> scanned = scan_w0_on_boundary(a, r);
    const double gap = segment_set_hausdorff(r.chords, scanned);
    CheckResult res = make_result("corollary_chords", gap, tolerance);
    res.parts = {{"chords", static_cast<double>(r.chords.size())},
                 {"scanned", static_cast<double>(scanned.size())}};
    return res;
}

CheckResult check_corollary_chords(const CMatrix& a, const Tolerances& tol) {
    return check_corollary_chords(a, build_report(a, tol), tol.tau_set);
}

CheckResult check_theorem2(const CMatrix& a, const RangeReport& r, double tolerance) {
    require_normal(a);
    const double gap = r.ch_equality_gap.value_or(kInf);
    return make_result("theorem2", gap, tolerance);
}

CheckResult check_theorem2(const CMatrix& a, const Tolerances& tol) {
    require_valid(a);
    require_normal(a);
    return check_theorem2(a, build_report(a, tol), tol.tau_set);
}

CheckResult check_ch_may_fail(const CMatrix& fixture, const Tolerances& tol) {
    const RangeReport r = build_report(fixture, tol);
    CheckResult res = make_result("ch_may_fail", r.ch_equality_gap.value_or(kInf), 0.5, Bound::at_least);
    if (!res.passed) res.witness = Witness{fixture, res.gap};
    return res;
}

CheckResult check_block_extension(const BlockExtension& ext, const Tolerances& tol) {
    tol.validate();
    const BlockExtension rebuilt = BlockExtension::assemble(ext.a, ext.b, ext.c);
    if (rebuilt.n != ext.n) throw Error(ErrorKind::DimensionMismatch, "N does not match its blocks");
    require_normal(ext.n);
    const ConvexRegion w0a = maximal_numerical_range(ext.a, tol);
    const ConvexRegion w0n = maximal_numerical_range(ext.n, tol);
    const auto ha = support_on_grid(w0a, tol.n_angles);
    const auto hn = support_on_grid(w0n, tol.n_angles);
    double inclusion = 0.0;
    for (std::size_t k = 0; k < ha.size(); ++k) inclusion = std::max(inclusion, ha[k] - hn[k]);

    const SpectralData sa = peripheral_spectrum(ext.a, tol);
    const SpectralData sn = peripheral_spectrum(ext.n, tol);
    double peripheral = 0.0;
    const bool gated = sa.norm >= sn.norm - tol.tau_set;
    if (gated) peripheral = directed_distance(merged_peripheral(sa), merged_peripheral(sn));

    CheckResult res = make_result("block_extension", std::max(inclusion, peripheral), tol.tau_set);
    res.parts = {{"inclusion", inclusion}, {"peripheral", peripheral}, {"norm_gate", gated ? 1.0 : 0.0}};
    return res;
}

std::optional<double> boundary_condition_gap(const CMatrix& a, const Tolerances& tol) {
    require_valid(a);
    if (a.rows() != 2) throw Error(ErrorKind::DimensionMismatch, "2x2 matrix expected");
    const EllipseShape e = ellipse_shape(a);
    const cplx z = a(0, 0);
    const double scale = 1.0 + e.major + std::abs(e.f1);
    bool on_boundary = false;
    // The minor axis comes from a difference of squares, so it carries an
    // absolute error near sqrt(eps) * scale.
    if (e.minor <= 1e-7 * scale) {
        on_boundary = std::abs(z - e.f1) <= tol.tau_set || std::abs(z - e.f2) <= tol.tau_set;
    } else {
        on_boundary = std::abs(std::abs(z - e.f1) + std::abs(z - e.f2) - 2.0 * e.major) <= tol.tau_set;
    }
    if (!on_boundary) return std::nullopt;
    return std::abs(std::abs(a(0, 1)) - std::abs(a(1, 0)));
}

CheckResult check_2x2_boundary_condition(const Tolerances& tol, int trials, std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorKind::InvalidSpec, "trials must be positive");
    Rng rng(seed);
    double worst = 0.0;
    int excluded = 0;
    std::optional<Witness> witness;
    for (int t = 0; t < trials; ++t) {
        const CMatrix m = ginibre(rng, 2);
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        // Rotate so that e1 is a top eigenvector of Re(e^{-i theta} A):
        // then a_11 = <Mx, x> is a support point of W.
        const HermEigen eig = herm_eigen(rotated_hermitian_part(m, theta));
        const cplx x0 = eig.vectors(0, 1);
        const cplx x1 = eig.vectors(1, 1);
        const CMatrix u = CMatrix::from_rows({{x0, -std::conj(x1)}, {x1, std::conj(x0)}});
        const CMatrix a = u.adjoint() * m * u;
        const auto gap = boundary_condition_gap(a, tol);
        if (!gap) {
            ++excluded;
            continue;
        }
        if (*gap > worst) {
            worst = *gap;
            if (worst > tol.tau_set) witness = Witness{a, worst};
        }
    }
    CheckResult res = make_result("boundary_2x2", worst, tol.tau_set);
    res.parts = {{"trials", static_cast<double>(trials)}, {"excluded", static_cast<double>(excluded)}};
    res.witness = witness;
    return res;
}

CheckResult check_containment(const RangeReport& r, double tolerance) {
    const auto h0 = support_on_grid(r.w0, r.tolerances.n_angles);
    double inclusion = -kInf;
    for (std::size_t k = 0; k < h0.size(); ++k) inclusion = std::max(inclusion, h0[k] - r.w_samples.support[k]);
    const double excess = r.numerical_radius - r.norm;
    CheckResult res = make_result("containment", std::max({inclusion, excess, 0.0}), tolerance);
    res.parts = {{"w0_outside_w", inclusion}, {"radius_minus_norm", excess}};
    return res;
}

std::string_view to_string(Checker c) noexcept {
    switch (c) {
        case Checker::lemma1: return "lemma1";
        case Checker::theorem1: return "theorem1";
        case Checker::corollary_chords: return "corollary_chords";
        case Checker::theorem2: return "theorem2";
        case Checker::ch_may_fail: return "ch_may_fail";
        case Checker::block_extension: return "block_extension";
        case Checker::boundary_2x2: return "boundary_2x2";
    }
    return "unknown";
}

Checker checker_from_string(std::string_view name) {
    for (Checker c : {Checker::lemma1, Checker::theorem1, Checker::corollary_chords, Checker::theorem2,
                      Checker::ch_may_fail, Checker::block_extension, Checker::boundary_2x2})
        if (to_string(c) == name) return c;
    throw Error(ErrorKind::InvalidSpec, "unknown checker '" + std::string(name) + "'");
}

std::uint64_t draw_seed(std::uint64_t base, Family f, int trial) noexcept {
    const auto family_tag = static_cast<std::uint64_t>(f) + 1;
    return mix_seed(mix_seed(base) ^ mix_seed((family_tag << 32) | static_cast<std::uint32_t>(trial)));
}

void validate(const std::vector<SuiteEntry>& config) {
    if (config.empty()) throw Error(ErrorKind::InvalidSpec, "suite configuration is empty");
    for (const auto& e : config) {
        if (e.trials < 1) throw Error(ErrorKind::InvalidSpec, "trials must be positive");
        if (e.checkers.empty()) throw Error(ErrorKind::InvalidSpec, "entry lists no checkers");
        for (Checker c : e.checkers) {
            const bool fixture_checker = c == Checker::ch_may_fail || c == Checker::boundary_2x2;
            if (fixture_checker != !e.family.has_value())
                throw Error(ErrorKind::InvalidSpec,
                            std::string(to_string(c)) + (fixture_checker ? " only runs in a fixture entry"
                                                                         : " needs a generated family"));
            if (c == Checker::block_extension && e.family != Family::block_upper_normal)
                throw Error(ErrorKind::InvalidSpec, "block_extension needs the block_upper_normal family");
            if (c == Checker::theorem2 && e.family != Family::normal && e.family != Family::unitary &&
                e.family != Family::block_upper_normal)
                throw Error(ErrorKind::InvalidSpec, "theorem2 needs a normal family");
        }
        if (!e.family) continue;
        const int min_dim = *e.family == Family::nilpotent ? 2 : 1;
        if (e.dim_lo < min_dim || e.dim_hi < e.dim_lo || e.dim_hi > 256)
            throw Error(ErrorKind::InvalidSpec, "invalid dimension range");
        if (*e.family == Family::block_upper_normal && (e.tail_lo < 1 || e.tail_hi < e.tail_lo))
            throw Error(ErrorKind::InvalidSpec, "invalid trailing block range");
    }
}

std::vector<CheckResult> run_suite(const std::vector<SuiteEntry>& config, const Tolerances& tol) {
    validate(config);
    tol.validate();
    struct Task {
        std::size_t entry;
        int trial;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < config.size(); ++i) {
        const int draws = config[i].family ? config[i].trials : 1;
        for (int t = 0; t < draws; ++t) tasks.push_back({i, t});
    }

    std::vector<std::vector<CheckResult>> out(tasks.size());
    const auto count = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
        const Task task = tasks[static_cast<std::size_t>(idx)];
        const SuiteEntry& e = config[task.entry];
        auto& results = out[static_cast<std::size_t>(idx)];
        std::optional<GenSpec> spec;
        CMatrix m;
        try {
            if (!e.family) {
                for (Checker c : e.checkers) {
                    results.push_back(c == Checker::ch_may_fail ? check_ch_may_fail(example_matrix(), tol)
                                                                : check_2x2_boundary_condition(tol, e.trials, e.seed));
                }
            } else {
                const Family fam = *e.family;
                spec = GenSpec{draw_seed(e.seed, fam, task.trial), 0, fam, std::nullopt};
                std::optional<BlockExtension> ext;
                if (fam == Family::block_upper_normal) {
                    const int hs = e.dim_hi - e.dim_lo + 1;
                    const int ts = e.tail_hi - e.tail_lo + 1;
                    const int head = e.dim_lo + task.trial % hs;
                    const int tail = e.tail_lo + (task.trial / hs) % ts;
                    spec->dim = head + tail;
                    spec->block_head = head;
                    ext = generate_block(*spec);
                    m = ext->n;
                } else {
                    spec->dim = e.dim_lo + task.trial % (e.dim_hi - e.dim_lo + 1);
                    m = generate(*spec);
                }
                const RangeReport r = build_report(m, tol);
                for (Checker c : e.checkers) {
                    switch (c) {
                        case Checker::lemma1: results.push_back(check_lemma1(r, tol.tau_set)); break;
                        case Checker::theorem1: results.push_back(check_theorem1(m, r)); break;
                        case Checker::corollary_chords:
                            results.push_back(check_corollary_chords(m, r, tol.tau_set));
                            break;
                        case Checker::theorem2: results.push_back(check_theorem2(m, r, tol.tau_set)); break;
                        case Checker::block_extension: results.push_back(check_block_extension(*ext, tol)); break;
                        default: break;
                    }
                }
                results.push_back(check_containment(r, tol.tau_set));
            }
        } catch (const std::exception& ex) {
            CheckResult err = make_result("error", kInf, 0.0);
            err.note = ex.what();
            results.push_back(std::move(err));
        }
        for (auto& res : results) {
            if (e.tolerance && res.name != "containment" && res.name != "error") {
                res.tolerance = *e.tolerance;
                res.passed = res.inconclusive || meets(res.gap, res.tolerance, res.bound);
            }
            res.source = spec;
            if (!res.passed && !res.witness && spec) res.witness = Witness{m, res.gap};
        }
    }

    std::vector<CheckResult> flat;
    for (auto& v : out)
        for (auto& r : v) flat.push_back(std::move(r));
    return flat;
}

std::vector<SuiteEntry> default_suite(std::uint64_t seed, int trials, int dim_lo, int dim_hi) {
    const std::vector<Checker> base = {Checker::lemma1, Checker::theorem1, Checker::corollary_chords};
    std::vector<Checker> with_normal = base;
    with_normal.push_back(Checker::theorem2);
    std::vector<SuiteEntry> cfg;
    for (Family f : {Family::ginibre, Family::nilpotent, Family::normaloid_direct_sum}) {
        SuiteEntry e;
        e.family = f;
        e.dim_lo = f == Family::nilpotent ? std::max(dim_lo, 2) : dim_lo;
        e.dim_hi = dim_hi;
        e.trials = trials;
        e.seed = seed;
        e.checkers = base;
        cfg.push_back(e);
    }
    for (Family f : {Family::normal, Family::unitary}) {
        SuiteEntry e;
        e.family = f;
        e.dim_lo = dim_lo;
        e.dim_hi = dim_hi;
        e.trials = trials;
        e.seed = seed;
        e.checkers = with_normal;
        cfg.push_back(e);
    }
    SuiteEntry block;
    block.family = Family::block_upper_normal;
    block.dim_lo = 2;
    block.dim_hi = 4;
    block.tail_lo = 1;
    block.tail_hi = 3;
    block.trials = trials;
    block.seed = seed;
    block.checkers = {Checker::block_extension, Checker::lemma1, Checker::theorem1, Checker::theorem2};
    cfg.push_back(block);
    SuiteEntry fixtures;
    fixtures.trials = 200;
    fixtures.seed = 11;
    fixtures.checkers = {Checker::ch_may_fail, Checker::boundary_2x2};
    cfg.push_back(fixtures);
    return cfg;
}

SuiteSummary summarize(const std::vector<CheckResult>& results) {
    SuiteSummary s;
    s.total = results.size();
    for (const auto& r : results) {
        if (r.inconclusive) ++s.inconclusive;
        else if (r.passed) ++s.passed;
        else ++s.failed;
    }
    return s;
}

}  // namespace nrange
