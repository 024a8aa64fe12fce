#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nrange/numrange.hpp"
#include "nrange/theorems.hpp"

namespace nrange::io {

using Json = nlohmann::ordered_json;

enum class MatrixFormat { matrix_market, json };

/// "mtx" or "json"; throws InvalidSpec otherwise.
MatrixFormat format_from_string(std::string_view name);
/// .json means JSON, anything else Matrix Market.
MatrixFormat format_for_path(const std::filesystem::path& path);

/// Matrix Market "array|coordinate complex|real|integer general", or JSON
/// {"n": n, "entries": [[re, im], ...]} in row-major order. Errors are
/// ParseError with the 1-based line where reading stopped.
CMatrix parse_matrix(std::string_view text, MatrixFormat format);
CMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format);
std::string write_matrix(const CMatrix& a, MatrixFormat format);

/// Serializes with 17 significant digits and two-space indentation.
/// Non-finite numbers become the strings "inf", "-inf", "nan".
std::string dump(const Json& j);

Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j);
Json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const Json& j);

/// The serialized view of a RangeReport; exactly the fields written by
/// `nrange compute`.
struct ReportRecord {
    double norm = 0.0;
    double numerical_radius = 0.0;
    double spectral_radius = 0.0;
    std::vector<cplx> eigenvalues;
    std::vector<cplx> peripheral;
    bool normaloid = false;
    std::vector<cplx> w_vertices;
    std::vector<SupportSample> w_support;
    std::vector<cplx> w0_vertices;
    std::vector<Chord> chords;
    std::optional<std::vector<cplx>> hull_peripheral_vertices;
    std::optional<double> ch_equality_gap;
    double tau_set = 0.0;
    double tau_cluster = 0.0;
    double tau_eig = 0.0;
    int n_angles = 0;

    friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

ReportRecord to_record(const RangeReport& r);
Json report_to_json(const ReportRecord& r);
Json report_to_json(const RangeReport& r);
/// Throws ParseError (line 0) on a missing or mistyped field.
ReportRecord report_from_json(const Json& j);

Json result_to_json(const CheckResult& r);
Json results_to_json(const std::vector<CheckResult>& results);

/// [{"family": name | "fixture", "dim_range": [lo, hi], "tail_range": [lo, hi]?,
///   "trials": n, "seed": s, "checkers": [...], "tolerance": x?}, ...]
std::vector<SuiteEntry> suite_from_json(const Json& j);
Json suite_to_json(const std::vector<SuiteEntry>& config);

/// Header plus one row per grid angle: theta, h_W, h_W0, Re p, Im p.
std::string boundary_csv(const RangeReport& r);

/// Reads a whole file; throws ParseError (line 0) when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace nrange::io
