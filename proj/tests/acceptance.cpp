// Acceptance battery: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [--nrange PATH]   (PATH: the nrange executable for the determinism check)

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nrange/cli.hpp"
#include "nrange/io.hpp"
#include "nrange/theorems.hpp"

using namespace nrange;

namespace {

constexpr double kTau = 1e-6;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Results of the shared 500-draw run, keyed by family and checker name.
using Bucket = std::map<std::pair<Family, std::string>, std::vector<const CheckResult*>>;

Bucket bucket(const std::vector<CheckResult>& results) {
    Bucket b;
    for (const auto& r : results)
        if (r.source) b[{r.source->family, r.name}].push_back(&r);
    return b;
}

std::vector<SuiteEntry> acceptance_suite() {
    const auto entry = [](Family f, int lo, int hi, std::vector<Checker> checkers) {
        SuiteEntry e;
        e.family = f;
        e.dim_lo = lo;
        e.dim_hi = hi;
        e.trials = 500;
        e.seed = 42;
        e.checkers = std::move(checkers);
        return e;
    };
    using C = Checker;
    return {
        entry(Family::ginibre, 2, 8, {C::lemma1, C::theorem1, C::corollary_chords}),
        entry(Family::nilpotent, 2, 8, {C::lemma1, C::theorem1}),
        entry(Family::normaloid_direct_sum, 2, 8, {C::lemma1, C::theorem1}),
        entry(Family::normal, 2, 8, {C::lemma1, C::theorem1, C::corollary_chords, C::theorem2}),
        entry(Family::unitary, 2, 8, {C::lemma1, C::theorem1}),
        // Head block 2..4, trailing block 1..3.
        entry(Family::block_upper_normal, 2, 4, {C::lemma1, C::block_extension}),
    };
}

CMatrix example() { return example_matrix(); }

Outcome criterion1() {
    const RangeReport r = build_report(example());
    const cplx seg[] = {0.0, 1.0};
    const double w0_gap = hausdorff(r.w0, hull(seg));
    const auto scanned = scan_w0_on_boundary(example(), r);
    const bool norm_ok = std::abs(r.norm - 1.0) <= 1e-10;
    const bool w_ok = std::abs(r.numerical_radius - 1.0) <= 1e-8;
    const bool periph_ok = r.spectral.peripheral.size() == 1 && std::abs(r.spectral.peripheral[0] - 1.0) <= kTau;
    const bool touch_ok = scanned.size() == 1 && scanned[0].degenerate(kTau) && std::abs(scanned[0].a - 1.0) <= kTau &&
                          r.chords.size() == 1 && r.chords[0].degenerate(kTau) && std::abs(r.chords[0].a - 1.0) <= kTau;
    const bool hull_ok = r.hull_peripheral && r.hull_peripheral->is_singleton() &&
                         std::abs(r.hull_peripheral->vertices()[0] - 1.0) <= kTau;
    const bool gap_ok = r.ch_equality_gap && std::abs(*r.ch_equality_gap - 1.0) <= kTau;
    const bool pass = norm_ok && w_ok && w0_gap <= kTau && periph_ok && r.normaloid && touch_ok && hull_ok && gap_ok;
    return {pass, "norm " + fmt("%.12g", r.norm) + ", w " + fmt("%.12g", r.numerical_radius) + ", W0 vs [0,1] " +
                      fmt("%.2e", w0_gap) + ", ch gap " + fmt("%.9g", r.ch_equality_gap.value_or(NAN))};
}

Outcome criterion2() {
    const ConvexRegion w = numerical_range(example());
    double worst = 0.0;
    for (const auto& s : w.support_samples())
        worst = std::max({worst, std::abs(s.value - std::max(0.5, std::cos(s.angle))),
                          std::abs(w.support(s.angle) - std::max(0.5, std::cos(s.angle)))});
    const bool pass = w.support_samples().size() == 1440 && worst <= kTau;
    return {pass, "max |h - max(1/2, cos)| over 1440 angles " + fmt("%.2e", worst)};
}

Outcome criterion3(const Bucket& b) {
    std::size_t n = 0;
    std::size_t failed = 0;
    double worst = 0.0;
    for (Family f : all_families()) {
        const auto it = b.find({f, "lemma1"});
        if (it == b.end() || it->second.size() != 500) return {false, "missing lemma1 draws for " + std::string(to_string(f))};
        for (const auto* r : it->second) {
            ++n;
            failed += !r->passed;
            worst = std::max(worst, r->gap);
        }
    }
    return {failed == 0, std::to_string(n) + " draws (500 per family), " + std::to_string(failed) + " failed, worst gap " +
                             fmt("%.2e", worst)};
}

Outcome criterion4(const Bucket& b) {
    std::size_t disagreements = 0;
    std::size_t wrong_class = 0;
    std::size_t ambiguous = 0;
    std::size_t n = 0;
    for (Family f : {Family::nilpotent, Family::normaloid_direct_sum, Family::ginibre}) {
        for (const auto* r : b.at({f, "theorem1"})) {
            ++n;
            if (r->inconclusive) {
                ++ambiguous;
                continue;
            }
            disagreements += !r->passed;
            if (f == Family::nilpotent && (r->part("normaloid") != 0 || r->part("touches") != 0)) ++wrong_class;
            if (f == Family::normaloid_direct_sum && (r->part("normaloid") != 1 || r->part("touches") != 1)) ++wrong_class;
        }
    }
    const double rate = static_cast<double>(ambiguous) / static_cast<double>(n);
    const bool pass = n == 1500 && disagreements == 0 && wrong_class == 0 && rate < 0.01;
    return {pass, std::to_string(n) + " draws, " + std::to_string(disagreements) + " disagreements, " +
                      std::to_string(wrong_class) + " unexpected classes, ambiguous rate " + fmt("%.4f", rate)};
}

Outcome criterion5(const Bucket& b) {
    double worst = 0.0;
    std::size_t failed = 0;
    const auto& rs = b.at({Family::normal, "theorem2"});
    for (const auto* r : rs) {
        worst = std::max(worst, r->gap);
        failed += !(r->passed && r->gap <= kTau);
    }
    return {rs.size() == 500 && failed == 0,
            std::to_string(rs.size()) + " normal draws, worst hausdorff(W0, conv peripheral) " + fmt("%.2e", worst)};
}

Outcome criterion6(const Bucket& b) {
    double worst = 0.0;
    std::size_t failed = 0;
    std::size_t n = 0;
    for (Family f : {Family::ginibre, Family::normal}) {
        for (const auto* r : b.at({f, "corollary_chords"})) {
            ++n;
            worst = std::max(worst, r->gap);
            failed += !(r->passed && r->gap <= kTau);
        }
    }
    return {n >= 400 && failed == 0, std::to_string(n) + " ginibre + normal draws, worst chord-vs-scan gap " + fmt("%.2e", worst)};
}

Outcome criterion7() {
    std::mt19937_64 g(7);
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        CMatrix a(2);
        for (auto& z : a.data()) z = {nd(g), nd(g)};
        worst = std::max(worst, hausdorff(numerical_range(a), ellipse_2x2(a)));
    }
    const CMatrix j = CMatrix::from_rows({{0, 1}, {0, 0}});
    const RangeReport rj = build_report(j);
    const auto disk = ellipse_2x2(j);
    double disk_gap = 0.0;
    for (double th : angle_grid(1440)) disk_gap = std::max(disk_gap, std::abs(rj.w.support(th) - 0.5));
    const double w_err = std::abs(rj.numerical_radius - 0.5);
    const bool pass = worst <= 1e-5 && disk_gap <= 1e-8 && w_err <= 1e-8 && hausdorff(rj.w, disk) <= 1e-5;
    return {pass, "200 draws worst hausdorff " + fmt("%.2e", worst) + ", Jordan block |h - 1/2| " + fmt("%.2e", disk_gap) +
                      ", |w - 1/2| " + fmt("%.2e", w_err)};
}

Outcome criterion8(const std::vector<CheckResult>& results) {
    std::size_t n = 0;
    std::size_t failed = 0;
    double worst_inclusion = -INFINITY;
    double worst_radius = -INFINITY;
    for (const auto& r : results) {
        if (r.name != "containment") continue;
        ++n;
        failed += !(r.passed && r.gap <= kTau);
        worst_inclusion = std::max(worst_inclusion, r.part("w0_outside_w"));
        worst_radius = std::max(worst_radius, r.part("radius_minus_norm"));
    }
    return {n == 3000 && failed == 0, std::to_string(n) + " draws, max support(W0) - support(W) " +
                                          fmt("%.2e", worst_inclusion) + ", max w - norm " + fmt("%.2e", worst_radius)};
}

Outcome criterion9(const Bucket& b) {
    const auto& rs = b.at({Family::block_upper_normal, "block_extension"});
    std::size_t failed = 0;
    double worst = 0.0;
    bool shapes = true;
    for (const auto* r : rs) {
        const double inclusion = r->part("inclusion");
        worst = std::max(worst, inclusion);
        failed += !(inclusion <= kTau);
        const int head = r->source->block_head.value_or(0);
        const int tail = r->source->dim - head;
        shapes = shapes && head >= 2 && head <= 4 && tail >= 1 && tail <= 3;
    }
    return {rs.size() >= 200 && failed == 0 && shapes,
            std::to_string(rs.size()) + " block draws, worst W0(A) outside W0(N) " + fmt("%.2e", worst)};
}

std::string capture(const std::string& command, int& status) {
    std::string out;
    FILE* p = popen(command.c_str(), "r");
    if (p == nullptr) {
        status = -1;
        return out;
    }
    std::array<char, 1 << 16> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
    status = pclose(p);
    return out;
}

Outcome criterion10(const std::string& exe) {
    std::string first;
    std::string second;
    int s1 = 0;
    int s2 = 0;
    if (!exe.empty()) {
        const std::string cmd = "\"" + exe + "\" verify --seed 42 2>/dev/null";
        first = capture(cmd, s1);
        second = capture(cmd, s2);
    } else {
        const char* argv[] = {"nrange", "verify", "--seed", "42"};
        std::ostringstream o1, o2, e1, e2;
        s1 = cli::run(4, argv, o1, e1);
        s2 = cli::run(4, argv, o2, e2);
        first = o1.str();
        second = o2.str();
    }
    const bool pass = s1 == 0 && s2 == 0 && !first.empty() && first == second;
    return {pass, std::string(exe.empty() ? "in-process" : "two processes") + ", " + std::to_string(first.size()) +
                      " bytes, exit " + std::to_string(s1) + "/" + std::to_string(s2) +
                      (first == second ? ", identical" : ", DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
    std::string exe;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--nrange") exe = argv[i + 1];

    int failures = 0;
    const auto report = [&](int id, const char* what, const std::function<Outcome()>& fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, what, o.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "example matrix regression", criterion1);
    report(2, "support function of W(E) is max(1/2, cos theta)", criterion2);

    std::vector<CheckResult> results;
    try {
        results = run_suite(acceptance_suite());
    } catch (const std::exception& e) {
        std::printf("shared suite run failed: %s\n", e.what());
    }
    for (const auto& r : results)
        if (r.name == "error") std::printf("draw error: %s\n", r.note.c_str());
    const Bucket b = bucket(results);

    report(3, "peripheral points agree across W0, W and the spectrum", [&] { return criterion3(b); });
    report(4, "normaloid iff W0 touches the boundary of W", [&] { return criterion4(b); });
    report(5, "W0 is the hull of the peripheral spectrum for normal matrices", [&] { return criterion5(b); });
    report(6, "boundary chords match the direct boundary scan", [&] { return criterion6(b); });
    report(7, "2x2 elliptical range oracle", criterion7);
    report(8, "W0 inside W and w <= norm on every draw", [&] { return criterion8(results); });
    report(9, "W0(A) inside W0(N) for block normal extensions", [&] { return criterion9(b); });
    report(10, "verify --seed 42 is byte-identical across runs", [&] { return criterion10(exe); });

    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
