#pragma once

// Static SVG figure of one orbit: position space with the orbit, the
// bounding circle and both foci on the left; velocity space with the
// hodograph, its predicted circle and the recentred circle on the right.
// Fixed viewBox, fixed decimal formatting, no interactivity.

#include <cstdio>
#include <ostream>
#include <string>

#include "kepler/conserved.hpp"
#include "kepler/dynamics.hpp"
#include "kepler/euclid.hpp"
#include "kepler/hodograph.hpp"
#include "kepler/vec.hpp"

namespace kepler {

namespace detail {

struct SvgPanel {
    double origin_x; // SVG coordinates of the world origin
    double origin_y;
    double scale;

    std::string map(double x, double y) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", origin_x + scale * x, origin_y - scale * y);
        return buf;
    }

    void circle(std::ostream& out, double cx, double cy, double radius, const char* stroke,
                const char* dash = nullptr) const {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "  <circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" stroke=\"%s\""
                      " stroke-width=\"1.5\"%s%s/>\n",
                      origin_x + scale * cx, origin_y - scale * cy, scale * radius, stroke,
                      dash ? " stroke-dasharray=\"" : "", dash ? "6 4\"" : "");
        out << buf;
    }

    void dot(std::ostream& out, double cx, double cy, const char* fill) const {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "  <circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"%s\"/>\n",
                      origin_x + scale * cx, origin_y - scale * cy, fill);
        out << buf;
    }
};

inline void text(std::ostream& out, double x, double y, const char* label) {
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "  <text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"13\""
                  " fill=\"#333\">%s</text>\n",
                  x, y, label);
    out << buf;
}

} // namespace detail

inline void write_orbit_figure(std::ostream& out, const Trajectory& traj) {
    const KeplerSystem& sys = traj.system;
    const OrbitState& s0 = traj.front().state;
    const PlaneFrame frame = plane_frame(angular_momentum(s0, sys.m));
    const EllipseGeometry geo = ellipse_geometry(sys, s0);
    const Vec3 hodo_center = hodograph_center(sys, s0);
    const double hodo_radius = hodograph_radius(sys, s0);

    const double bound = 2.0 * geo.a; // radius of the bounding circle -k/H
    const detail::SvgPanel left{235.0, 235.0, 195.0 / (1.05 * bound)};
    const double v_extent = norm(hodo_center) + hodo_radius;
    const detail::SvgPanel right{690.0, 235.0, 195.0 / (1.05 * v_extent)};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 920 470\">\n"
        << "  <rect width=\"920\" height=\"470\" fill=\"white\"/>\n";

    // Position space: bounding circle, orbit, foci.
    left.circle(out, 0, 0, bound, "#999999", "dash");
    out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const auto& sample : traj.samples) {
        out << left.map(dot(sample.state.r, frame.u), dot(sample.state.r, frame.w)) << ' ';
    }
    out << "\"/>\n";
    left.dot(out, 0, 0, "#000000");
    left.dot(out, dot(geo.focus2, frame.u), dot(geo.focus2, frame.w), "#d62728");
    detail::text(out, 40, 30, "position space: orbit, bounding circle, foci");

    // Velocity space: hodograph samples, predicted circle, recentred circle.
    right.circle(out, 0, 0, hodo_radius, "#999999", "dash");
    right.circle(out, dot(hodo_center, frame.u), dot(hodo_center, frame.w), hodo_radius,
                 "#2ca02c");
    out << "  <polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1\" points=\"";
    for (const auto& sample : traj.samples) {
        out << right.map(dot(sample.state.v, frame.u), dot(sample.state.v, frame.w)) << ' ';
    }
    out << "\"/>\n";
    right.dot(out, 0, 0, "#000000");
    right.dot(out, dot(hodo_center, frame.u), dot(hodo_center, frame.w), "#2ca02c");
    detail::text(out, 500, 30, "velocity space: hodograph, its circle, recentred circle");

    out << "</svg>\n";
}

} // namespace kepler
