#pragma once

// Orbit iteration and plotting for `moebius orbit`.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "moebius/moebius_map.hpp"

namespace moebius::cli {

inline std::vector<ExtendedComplex> orbit(const MoebiusMap& f, const ExtendedComplex& z0, std::size_t n) {
    std::vector<ExtendedComplex> pts{z0};
    pts.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(apply(f, pts.back()));
    return pts;
}

inline std::string orbit_csv(const std::vector<ExtendedComplex>& pts) {
    std::ostringstream os;
    os << "index,re,im,point\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        os << i << ',';
        if (pts[i].is_infinity()) {
            os << "inf,inf,inf\n";
        } else {
            const cplx z = pts[i].value();
            os << detail::format_double(z.real()) << ',' << detail::format_double(z.imag()) << ','
               << format_point(pts[i]) << '\n';
        }
    }
    return os.str();
}

namespace detail {

struct Frame {
    double x0, x1, y0, y1;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

inline Frame fit_frame(const std::vector<ExtendedComplex>& pts) {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool any = false;
    for (const auto& p : pts) {
        if (p.is_infinity()) continue;
        const cplx z = p.value();
        if (!any) {
            x0 = x1 = z.real();
            y0 = y1 = z.imag();
            any = true;
        }
        x0 = std::min(x0, z.real()), x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag()), y1 = std::max(y1, z.imag());
    }
    // A single point or a flat orbit still needs a visible extent.
    const double span = std::max({x1 - x0, y1 - y0, 1e-9 * std::max({1.0, std::abs(x0), std::abs(x1)})});
    if (x1 - x0 < 1e-3 * span) x0 -= span / 2, x1 += span / 2;
    if (y1 - y0 < 1e-3 * span) y0 -= span / 2, y1 += span / 2;
    if (!any) x0 = y0 = -1, x1 = y1 = 1;
    const double px = 0.1 * (x1 - x0), py = 0.1 * (y1 - y0);
    return {x0 - px, x1 + px, y0 - py, y1 + py};
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace detail

/// SVG plot of the orbit. The viewport fits the finite points with 10%
/// padding; a visit to infinity is drawn on the frame boundary, in the
/// direction of the preceding finite point from the frame centre.
inline std::string orbit_svg(const std::vector<ExtendedComplex>& pts, const std::string& title) {
    constexpr double W = 640, H = 640;
    const detail::Frame fr = detail::fit_frame(pts);
    const double cx = (fr.x0 + fr.x1) / 2, cy = (fr.y0 + fr.y1) / 2;
    auto sx = [&](double x) { return (x - fr.x0) / fr.width() * W; };
    auto sy = [&](double y) { return H - (y - fr.y0) / fr.height() * H; };

    // Screen position of every point; infinity lands on the boundary.
    std::vector<std::pair<double, double>> screen;
    std::vector<bool> at_inf;
    std::pair<double, double> last_dir{1.0, 1.0};
    for (const auto& p : pts) {
        if (p.is_finite()) {
            const cplx z = p.value();
            if (z.real() != cx || z.imag() != cy) last_dir = {(z.real() - cx) / fr.width(), (z.imag() - cy) / fr.height()};
            screen.emplace_back(sx(z.real()), sy(z.imag()));
            at_inf.push_back(false);
            continue;
        }
        const double t = 0.5 / std::max(std::abs(last_dir.first), std::abs(last_dir.second));
        // Pulled in slightly so the marker stays inside the frame.
        const double inset = 0.98;
        screen.emplace_back(W / 2 + inset * last_dir.first * t * W, H / 2 - inset * last_dir.second * t * H);
        at_inf.push_back(true);
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << ' ' << H << "\">\n";
    os << "<title>" << title << "</title>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
       << "\" fill=\"white\" stroke=\"#444\" stroke-width=\"2\"/>\n";
    if (fr.x0 < 0 && fr.x1 > 0)
        os << "<line x1=\"" << detail::num(sx(0)) << "\" y1=\"0\" x2=\"" << detail::num(sx(0)) << "\" y2=\"" << H
           << "\" stroke=\"#ccc\"/>\n";
    if (fr.y0 < 0 && fr.y1 > 0)
        os << "<line x1=\"0\" y1=\"" << detail::num(sy(0)) << "\" x2=\"" << W << "\" y2=\"" << detail::num(sy(0))
           << "\" stroke=\"#ccc\"/>\n";

    os << "<polyline fill=\"none\" stroke=\"#3366cc\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < screen.size(); ++i)
        os << (i ? " " : "") << detail::num(screen[i].first) << ',' << detail::num(screen[i].second);
    os << "\"/>\n";

    for (std::size_t i = 0; i < screen.size(); ++i) {
        const auto [x, y] = screen[i];
        if (at_inf[i]) {
            os << "<rect x=\"" << detail::num(x - 6) << "\" y=\"" << detail::num(y - 6)
               << "\" width=\"12\" height=\"12\" fill=\"#cc3333\"/>\n";
            os << "<text x=\"" << detail::num(std::clamp(x, 20.0, W - 60)) << "\" y=\""
               << detail::num(std::clamp(y, 20.0, H - 10)) << "\" font-size=\"14\" fill=\"#cc3333\">z" << i
               << " = &#8734;</text>\n";
        } else {
            os << "<circle cx=\"" << detail::num(x) << "\" cy=\"" << detail::num(y) << "\" r=\""
               << (i == 0 ? 5 : 3) << "\" fill=\"" << (i == 0 ? "#228833" : "#3366cc") << "\"/>\n";
        }
    }
    os << "<text x=\"8\" y=\"" << H - 8 << "\" font-size=\"11\" fill=\"#444\">re [" << detail::num(fr.x0) << ", "
       << detail::num(fr.x1) << "]  im [" << detail::num(fr.y0) << ", " << detail::num(fr.y1) << "]</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace moebius::cli
