#include "nrange/cli.hpp"

#include <charconv>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "nrange/errors.hpp"
#include "nrange/io.hpp"
#include "nrange/svg.hpp"
#include "nrange/theorems.hpp"

namespace nrange::cli {

namespace {

struct Options {
    std::string input;
    std::string format;
    int angles = kDefaultAngles;
    double tol_set = kSetTolerance;
    std::optional<double> tol_cluster;
    std::string csv;
    std::string svg;
    std::uint64_t seed = 42;
    int trials = 100;
    std::string dims = "2..8";
    bool allow_zero = false;
    bool verbose = false;
};

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_options(CLI::App& app, Options& o) {
    app.add_option("--input", o.input, "Matrix file (compute, plot) or suite configuration (verify)");
    app.add_option("--format", o.format, "Matrix file format: mtx or json (default: by extension)");
    app.add_option("--angles", o.angles, "Number of grid angles");
    app.add_option("--tol-set", o.tol_set, "Set-membership tolerance");
    app.add_option("--tol-cluster", o.tol_cluster, "Top singular value cluster tolerance");
    app.add_option("--csv", o.csv, "Write boundary samples as CSV");
    app.add_option("--svg", o.svg, "Write an SVG figure");
    app.add_option("--seed", o.seed, "Base seed of the generated draws");
    app.add_option("--trials", o.trials, "Draws per family");
    app.add_option("--dims", o.dims, "Dimension range A..B");
    app.add_flag("--allow-zero", o.allow_zero, "Accept the zero matrix");
    app.add_flag("--verbose", o.verbose, "Print the version and a summary to stderr");
}

std::pair<int, int> parse_dims(const std::string& s) {
    const auto sep = s.find("..");
    const std::string lo = sep == std::string::npos ? s : s.substr(0, sep);
    const std::string hi = sep == std::string::npos ? s : s.substr(sep + 2);
    const auto to_int = [&](const std::string& t) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) throw Usage("--dims expects A..B, got '" + s + "'");
        return v;
    };
    return {to_int(lo), to_int(hi)};
}

Tolerances tolerances(const Options& o) {
    Tolerances t;
    t.n_angles = o.angles;
    t.tau_set = o.tol_set;
    t.tau_cluster = o.tol_cluster;
    t.validate();
    return t;
}

CMatrix load_matrix(const Options& o) {
    if (o.input.empty()) throw Usage("--input is required");
    const io::MatrixFormat f = o.format.empty() ? io::format_for_path(o.input) : io::format_from_string(o.format);
    return io::read_matrix(o.input, f);
}

int compute(const Options& o, std::ostream& out) {
    const Tolerances tol = tolerances(o);
    const CMatrix a = load_matrix(o);
    const RangeReport r = full_report(a, tol, o.allow_zero);
    out << io::dump(io::report_to_json(r)) << "\n";
    if (!o.csv.empty()) io::write_file(o.csv, io::boundary_csv(r));
    if (!o.svg.empty()) io::write_file(o.svg, render_svg(r));
    return kOk;
}

int plot(const Options& o, std::ostream& out) {
    const Tolerances tol = tolerances(o);
    const CMatrix a = load_matrix(o);
    const std::string svg = render_svg(build_report(a, tol, o.allow_zero));
    if (o.svg.empty()) out << svg;
    else io::write_file(o.svg, svg);
    if (!o.csv.empty()) io::write_file(o.csv, io::boundary_csv(build_report(a, tol, o.allow_zero)));
    return kOk;
}

int verify(const Options& o, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
    const Tolerances tol = tolerances(o);
    if (o.trials < 1) throw Usage("--trials must be positive");
    const auto [lo, hi] = parse_dims(o.dims);
    std::vector<SuiteEntry> config;
    if (o.input.empty()) {
        config = default_suite(o.seed, o.trials, lo, hi);
    } else {
        config = io::suite_from_json(io::Json::parse(io::read_file(o.input), nullptr, true, true));
        // Explicit flags override the generated entries of the file.
        for (auto& e : config) {
            if (!e.family) continue;
            if (cmd.count("--seed")) e.seed = o.seed;
            if (cmd.count("--trials")) e.trials = o.trials;
            if (cmd.count("--dims") && e.family != Family::block_upper_normal) {
                e.dim_lo = lo;
                e.dim_hi = hi;
            }
        }
    }
    validate(config);
    const std::vector<CheckResult> results = run_suite(config, tol);
    out << io::dump(io::results_to_json(results)) << "\n";
    const SuiteSummary s = summarize(results);
    for (const auto& r : results) {
        if (r.passed) continue;
        err << "FAILED " << r.name << " gap=" << r.gap << " tolerance=" << r.tolerance;
        if (r.source) err << " family=" << to_string(r.source->family) << " seed=" << r.source->seed << " dim=" << r.source->dim;
        if (!r.note.empty()) err << " (" << r.note << ")";
        err << "\n";
    }
    if (o.verbose || s.failed > 0)
        err << s.total << " checks: " << s.passed << " passed, " << s.failed << " failed, " << s.inconclusive
            << " inconclusive\n";
    return s.failed == 0 ? kOk : kCheckFailure;
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidSpec:
        case ErrorKind::ZeroMatrix:
        case ErrorKind::InvalidMatrix:
            return kUsage;
        default:
            return kCheckFailure;
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical range, maximal numerical range and peripheral spectrum of complex matrices", "nrange"};
    app.require_subcommand(1);
    Options o;
    CLI::App* compute_cmd = app.add_subcommand("compute", "Report W(A), W0(A) and the peripheral spectrum as JSON");
    CLI::App* plot_cmd = app.add_subcommand("plot", "Render W(A), W0(A) and the boundary chords as SVG");
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the seeded check suite and print results as JSON");
    for (CLI::App* c : {compute_cmd, plot_cmd, verify_cmd}) add_options(*c, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (o.verbose) err << "nrange " << kVersion << "\n";

    try {
        if (compute_cmd->parsed()) return compute(o, out);
        if (plot_cmd->parsed()) return plot(o, out);
        return verify(o, *verify_cmd, out, err);
    } catch (const Usage& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "ParseError: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << e.what();
        if (e.kind() == ErrorKind::ZeroMatrix) err << " (pass --allow-zero to accept it)";
        err << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailure;
    }
}

}  // namespace nrange::cli
