#include "nrange/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nrange/errors.hpp"

namespace nrange::io {

namespace {

std::string format_double(double x) {
    if (std::isnan(x)) return "\"nan\"";
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string plain_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void dump_into(const Json& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += inner + Json(key).dump() + ": ";
                dump_into(value, indent + 1, out);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line: complex pairs, ranges.
            const bool flat = std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); });
            if (flat) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    dump_into(j[i], indent + 1, out);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                dump_into(j[i], indent + 1, out);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

double number_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    throw ParseError(0, "expected a number, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(0, std::string("missing field '") + key + "'");
    return j.at(key);
}

Json points_to_json(const std::vector<cplx>& pts) {
    Json a = Json::array();
    for (const auto& z : pts) a.push_back(complex_to_json(z));
    return a;
}

std::vector<cplx> points_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError(0, "expected an array of [re, im] pairs");
    std::vector<cplx> out;
    for (const auto& z : j) out.push_back(complex_from_json(z));
    return out;
}

// Splits on blanks; the line number travels with each token for error messages.
std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_double(std::string_view tok, std::size_t line) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "not a number: '" + std::string(tok) + "'");
    if (!std::isfinite(x)) throw ParseError(line, "non-finite entry");
    return x;
}

long parse_index(std::string_view tok, std::size_t line) {
    long x = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "not an integer: '" + std::string(tok) + "'");
    return x;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

CMatrix parse_matrix_market(std::string_view text) {
    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start <= text.size();) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    if (lines.empty()) throw ParseError(1, "empty file");
    const std::size_t last_line = lines.size();

    const auto header = tokens(lines[0]);
    if (header.size() != 5 || lower(header[0]) != "%%matrixmarket" || lower(header[1]) != "matrix")
        throw ParseError(1, "expected '%%MatrixMarket matrix <array|coordinate> <field> general'");
    const std::string layout = lower(header[2]);
    const std::string field_kind = lower(header[3]);
    if (layout != "array" && layout != "coordinate") throw ParseError(1, "unknown layout '" + layout + "'");
    if (field_kind != "complex" && field_kind != "real" && field_kind != "integer")
        throw ParseError(1, "unsupported field '" + field_kind + "'");
    if (lower(header[4]) != "general") throw ParseError(1, "only 'general' symmetry is supported");
    const bool is_complex = field_kind == "complex";

    std::size_t i = 1;
    const auto next_data = [&]() -> std::optional<std::vector<std::string_view>> {
        while (i < lines.size()) {
            const auto t = tokens(lines[i++]);
            if (t.empty() || t[0].front() == '%') continue;
            return t;
        }
        return std::nullopt;
    };

    const auto size = next_data();
    if (!size) throw ParseError(last_line, "missing size line");
    const std::size_t size_line = i;
    const std::size_t expect = layout == "array" ? 2 : 3;
    if (size->size() != expect) throw ParseError(size_line, "malformed size line");
    const long rows = parse_index((*size)[0], size_line);
    const long cols = parse_index((*size)[1], size_line);
    if (rows < 1 || cols < 1) throw ParseError(size_line, "dimensions must be positive");
    if (rows != cols) throw ParseError(size_line, "matrix must be square");
    const auto n = static_cast<std::size_t>(rows);
    CMatrix a(n);
    const std::size_t values = is_complex ? 2 : 1;

    if (layout == "array") {
        // Column-major, one entry per line.
        for (std::size_t k = 0; k < n * n; ++k) {
            const auto t = next_data();
            if (!t) throw ParseError(last_line, "expected " + std::to_string(n * n) + " entries, found " + std::to_string(k));
            if (t->size() != values) throw ParseError(i, "expected " + std::to_string(values) + " values per entry");
            const double re = parse_double((*t)[0], i);
            const double im = is_complex ? parse_double((*t)[1], i) : 0.0;
            a(k % n, k / n) = cplx(re, im);
        }
    } else {
        const long nnz = parse_index((*size)[2], size_line);
        if (nnz < 0 || static_cast<std::size_t>(nnz) > n * n) throw ParseError(size_line, "invalid entry count");
        for (long k = 0; k < nnz; ++k) {
            const auto t = next_data();
            if (!t) throw ParseError(last_line, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
            if (t->size() != 2 + values) throw ParseError(i, "malformed coordinate entry");
            const long r = parse_index((*t)[0], i);
            const long c = parse_index((*t)[1], i);
            if (r < 1 || c < 1 || r > rows || c > cols) throw ParseError(i, "index out of range");
            const double re = parse_double((*t)[2], i);
            const double im = is_complex ? parse_double((*t)[3], i) : 0.0;
            a(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)) += cplx(re, im);
        }
    }
    if (next_data()) throw ParseError(i, "unexpected data after the last entry");
    return a;
}

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    // A trailing newline does not open another line.
    if (byte == text.size() && byte > 0 && text.back() == '\n') --byte;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

MatrixFormat format_from_string(std::string_view name) {
    if (name == "mtx") return MatrixFormat::matrix_market;
    if (name == "json") return MatrixFormat::json;
    throw Error(ErrorKind::InvalidSpec, "unknown format '" + std::string(name) + "' (expected mtx or json)");
}

MatrixFormat format_for_path(const std::filesystem::path& path) {
    return lower(path.extension().string()) == ".json" ? MatrixFormat::json : MatrixFormat::matrix_market;
}

CMatrix parse_matrix(std::string_view text, MatrixFormat format) {
    if (format == MatrixFormat::matrix_market) return parse_matrix_market(text);
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(line_of_byte(text, e.byte > 0 ? e.byte - 1 : 0), "invalid JSON");
    }
    try {
        return matrix_from_json(j);
    } catch (const ParseError& e) {
        // Structural problems are reported against the end of the document.
        throw ParseError(line_of_byte(text, text.size()), e.what());
    }
}

CMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
    return parse_matrix(read_file(path), format);
}

std::string write_matrix(const CMatrix& a, MatrixFormat format) {
    if (format == MatrixFormat::json) return dump(matrix_to_json(a)) + "\n";
    std::string out = "%%MatrixMarket matrix array complex general\n";
    out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            out += plain_double(a(i, j).real()) + " " + plain_double(a(i, j).imag()) + "\n";
    return out;
}

std::string dump(const Json& j) {
    std::string out;
    dump_into(j, 0, out);
    return out;
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError(0, "expected [re, im], got " + j.dump());
    return {number_from_json(j[0]), number_from_json(j[1])};
}

Json matrix_to_json(const CMatrix& a) {
    Json j;
    j["n"] = a.rows();
    Json entries = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) entries.push_back(complex_to_json(a(i, k)));
    j["entries"] = std::move(entries);
    return j;
}

CMatrix matrix_from_json(const Json& j) {
    const Json& nj = field(j, "n");
    if (!nj.is_number_integer() || nj.get<long long>() < 1) throw ParseError(0, "'n' must be a positive integer");
    const auto n = nj.get<std::size_t>();
    const Json& entries = field(j, "entries");
    if (!entries.is_array() || entries.size() != n * n)
        throw ParseError(0, "'entries' must hold n*n = " + std::to_string(n * n) + " pairs");
    CMatrix a(n);
    for (std::size_t k = 0; k < n * n; ++k) {
        const cplx z = complex_from_json(entries[k]);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ParseError(0, "non-finite entry " + std::to_string(k));
        a(k / n, k % n) = z;
    }
    return a;
}

ReportRecord to_record(const RangeReport& r) {
    ReportRecord rec;
    rec.norm = r.norm;
    rec.numerical_radius = r.numerical_radius;
    rec.spectral_radius = r.spectral.spectral_radius;
    rec.eigenvalues = r.spectral.eigenvalues;
    rec.peripheral = r.spectral.peripheral;
    rec.normaloid = r.normaloid;
    rec.w_vertices = r.w.vertices();
    for (std::size_t k = 0; k < r.w_samples.angles.size(); ++k)
        rec.w_support.push_back({r.w_samples.angles[k], r.w_samples.support[k]});
    rec.w0_vertices = r.w0.vertices();
    rec.chords = r.chords;
    if (r.hull_peripheral) rec.hull_peripheral_vertices = r.hull_peripheral->vertices();
    rec.ch_equality_gap = r.ch_equality_gap;
    rec.tau_set = r.tolerances.tau_set;
    rec.tau_cluster = r.tolerances.cluster_for(r.norm);
    rec.tau_eig = r.tolerances.tau_eig;
    rec.n_angles = r.tolerances.n_angles;
    return rec;
}

Json report_to_json(const ReportRecord& r) {
    Json j;
    j["norm"] = r.norm;
    j["numerical_radius"] = r.numerical_radius;
    j["spectral_radius"] = r.spectral_radius;
    j["eigenvalues"] = points_to_json(r.eigenvalues);
    j["peripheral"] = points_to_json(r.peripheral);
    j["normaloid"] = r.normaloid;
    j["W_vertices"] = points_to_json(r.w_vertices);
    Json support = Json::array();
    for (const auto& s : r.w_support) support.push_back(Json::array({s.angle, s.value}));
    j["W_support"] = std::move(support);
    j["W0_vertices"] = points_to_json(r.w0_vertices);
    Json chords = Json::array();
    for (const auto& c : r.chords) chords.push_back(Json::array({complex_to_json(c.a), complex_to_json(c.b)}));
    j["chords"] = std::move(chords);
    j["hull_peripheral_vertices"] = r.hull_peripheral_vertices ? points_to_json(*r.hull_peripheral_vertices) : Json();
    j["ch_equality_gap"] = r.ch_equality_gap ? Json(*r.ch_equality_gap) : Json();
    Json tol;
    tol["tau_set"] = r.tau_set;
    tol["tau_cluster"] = r.tau_cluster;
    tol["tau_eig"] = r.tau_eig;
    tol["n_angles"] = r.n_angles;
    j["tolerances"] = std::move(tol);
    return j;
}

Json report_to_json(const RangeReport& r) { return report_to_json(to_record(r)); }

ReportRecord report_from_json(const Json& j) {
    ReportRecord r;
    try {
        r.norm = number_from_json(field(j, "norm"));
        r.numerical_radius = number_from_json(field(j, "numerical_radius"));
        r.spectral_radius = number_from_json(field(j, "spectral_radius"));
        r.eigenvalues = points_from_json(field(j, "eigenvalues"));
        r.peripheral = points_from_json(field(j, "peripheral"));
        r.normaloid = field(j, "normaloid").get<bool>();
        r.w_vertices = points_from_json(field(j, "W_vertices"));
        for (const auto& s : field(j, "W_support")) {
            const cplx pair = complex_from_json(s);
            r.w_support.push_back({pair.real(), pair.imag()});
        }
        r.w0_vertices = points_from_json(field(j, "W0_vertices"));
        for (const auto& c : field(j, "chords")) {
            if (!c.is_array() || c.size() != 2) throw ParseError(0, "a chord is [[re, im], [re, im]]");
            r.chords.push_back({complex_from_json(c[0]), complex_from_json(c[1])});
        }
        const Json& hp = field(j, "hull_peripheral_vertices");
        if (!hp.is_null()) r.hull_peripheral_vertices = points_from_json(hp);
        const Json& gap = field(j, "ch_equality_gap");
        if (!gap.is_null()) r.ch_equality_gap = number_from_json(gap);
        const Json& tol = field(j, "tolerances");
        r.tau_set = number_from_json(field(tol, "tau_set"));
        r.tau_cluster = number_from_json(field(tol, "tau_cluster"));
        r.tau_eig = number_from_json(field(tol, "tau_eig"));
        r.n_angles = field(tol, "n_angles").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, e.what());
    }
    return r;
}

Json result_to_json(const CheckResult& r) {
    Json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["inconclusive"] = r.inconclusive;
    j["gap"] = r.gap;
    j["tolerance"] = r.tolerance;
    j["bound"] = r.bound == Bound::at_most ? "at_most" : "at_least";
    Json parts = Json::object();
    for (const auto& [k, v] : r.parts) parts[k] = v;
    j["parts"] = std::move(parts);
    j["note"] = r.note;
    if (r.source) {
        Json s;
        s["family"] = std::string(to_string(r.source->family));
        s["seed"] = r.source->seed;
        s["dim"] = r.source->dim;
        if (r.source->block_head) s["block_head"] = *r.source->block_head;
        j["source"] = std::move(s);
    } else {
        j["source"] = nullptr;
    }
    if (r.witness) {
        Json w;
        w["gap"] = r.witness->gap;
        w["matrix"] = matrix_to_json(r.witness->matrix);
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json results_to_json(const std::vector<CheckResult>& results) {
    Json a = Json::array();
    for (const auto& r : results) a.push_back(result_to_json(r));
    return a;
}

std::vector<SuiteEntry> suite_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError(0, "suite configuration must be a JSON array");
    const auto int_pair = [](const Json& p, const char* what) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw ParseError(0, std::string(what) + " must be [lo, hi]");
        return std::pair{p[0].get<int>(), p[1].get<int>()};
    };
    std::vector<SuiteEntry> out;
    try {
        for (const auto& item : j) {
            SuiteEntry e;
            const std::string family = field(item, "family").get<std::string>();
            if (family != "fixture") e.family = family_from_string(family);
            if (item.contains("dim_range")) std::tie(e.dim_lo, e.dim_hi) = int_pair(item["dim_range"], "dim_range");
            if (item.contains("tail_range"))
                std::tie(e.tail_lo, e.tail_hi) = int_pair(item["tail_range"], "tail_range");
            const Json& trials = field(item, "trials");
            if (!trials.is_number_integer()) throw ParseError(0, "trials must be an integer");
            e.trials = trials.get<int>();
            const Json& seed = field(item, "seed");
            if (!seed.is_number_unsigned()) throw ParseError(0, "seed must be a non-negative integer");
            e.seed = seed.get<std::uint64_t>();
            for (const auto& c : field(item, "checkers")) e.checkers.push_back(checker_from_string(c.get<std::string>()));
            if (item.contains("tolerance")) e.tolerance = number_from_json(item["tolerance"]);
            out.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, e.what());
    }
    return out;
}

Json suite_to_json(const std::vector<SuiteEntry>& config) {
    Json a = Json::array();
    for (const auto& e : config) {
        Json j;
        j["family"] = e.family ? std::string(to_string(*e.family)) : "fixture";
        j["dim_range"] = Json::array({e.dim_lo, e.dim_hi});
        if (e.family == Family::block_upper_normal) j["tail_range"] = Json::array({e.tail_lo, e.tail_hi});
        j["trials"] = e.trials;
        j["seed"] = e.seed;
        Json checkers = Json::array();
        for (Checker c : e.checkers) checkers.push_back(std::string(to_string(c)));
        j["checkers"] = std::move(checkers);
        if (e.tolerance) j["tolerance"] = *e.tolerance;
        a.push_back(std::move(j));
    }
    return a;
}

std::string boundary_csv(const RangeReport& r) {
    const auto h0 = support_on_grid(r.w0, r.tolerances.n_angles);
    std::string out = "theta,h_W,h_W0,re_p,im_p\n";
    for (std::size_t k = 0; k < r.w_samples.angles.size(); ++k) {
        out += plain_double(r.w_samples.angles[k]) + "," + plain_double(r.w_samples.support[k]) + "," +
               plain_double(h0[k]) + "," + plain_double(r.w_samples.points[k].real()) + "," +
               plain_double(r.w_samples.points[k].imag()) + "\n";
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw Error(ErrorKind::InvalidSpec, "cannot write '" + path.string() + "'");
}

}  // namespace nrange::io
