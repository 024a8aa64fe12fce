#include "nrange/svg.hpp"

#include <cstdio>

namespace nrange {

namespace {

constexpr double kCanvas = 800.0;

struct Frame {
    double scale;

    double x(cplx z) const { return kCanvas / 2 + scale * z.real(); }
    double y(cplx z) const { return kCanvas / 2 - scale * z.imag(); }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    // Avoid "-0.000".
    return std::string(buf) == "-0.000" ? "0.000" : buf;
}

std::string point_list(const Frame& f, const std::vector<cplx>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += num(f.x(pts[i])) + "," + num(f.y(pts[i]));
    }
    return out;
}

// Polygon, segment or dot depending on how many vertices the region has.
std::string region(const Frame& f, const ConvexRegion& r, const std::string& style) {
    const auto& v = r.vertices();
    if (v.size() == 1)
        return "<circle cx=\"" + num(f.x(v[0])) + "\" cy=\"" + num(f.y(v[0])) + "\" r=\"3\" " + style + "/>\n";
    if (v.size() == 2)
        return "<line x1=\"" + num(f.x(v[0])) + "\" y1=\"" + num(f.y(v[0])) + "\" x2=\"" + num(f.x(v[1])) +
               "\" y2=\"" + num(f.y(v[1])) + "\" " + style + "/>\n";
    return "<polygon points=\"" + point_list(f, v) + "\" " + style + "/>\n";
}

}  // namespace

std::string render_svg(const RangeReport& r) {
    const double extent = 1.1 * (r.norm > 0.0 ? r.norm : 1.0);
    const Frame f{kCanvas / (2.0 * extent)};
    const std::string c = num(kCanvas / 2);
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    out += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    out += "<g id=\"axes\" stroke=\"#999999\" stroke-width=\"1\">\n";
    out += "<line x1=\"0.000\" y1=\"" + c + "\" x2=\"800.000\" y2=\"" + c + "\"/>\n";
    out += "<line x1=\"" + c + "\" y1=\"0.000\" x2=\"" + c + "\" y2=\"800.000\"/>\n";
    out += "</g>\n";
    out += "<circle id=\"norm-circle\" cx=\"" + c + "\" cy=\"" + c + "\" r=\"" + num(f.scale * r.norm) +
           "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
    out += "<g id=\"W\">\n" + region(f, r.w, "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\"") + "</g>\n";
    out += "<g id=\"W0\">\n" +
           region(f, r.w0, "fill=\"#e07b39\" fill-opacity=\"0.45\" stroke=\"#e07b39\" stroke-width=\"2\"") + "</g>\n";
    out += "<g id=\"chords\" stroke=\"#b3001b\" stroke-width=\"4\" stroke-linecap=\"round\">\n";
    for (const auto& ch : r.chords)
        out += "<line x1=\"" + num(f.x(ch.a)) + "\" y1=\"" + num(f.y(ch.a)) + "\" x2=\"" + num(f.x(ch.b)) +
               "\" y2=\"" + num(f.y(ch.b)) + "\"/>\n";
    out += "</g>\n";
    out += "<g id=\"peripheral\" fill=\"black\">\n";
    for (const auto& z : r.spectral.peripheral)
        out += "<circle cx=\"" + num(f.x(z)) + "\" cy=\"" + num(f.y(z)) + "\" r=\"5\"/>\n";
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace nrange
