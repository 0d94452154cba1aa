#ifndef NERVETOPO_SVG_HPP
#define NERVETOPO_SVG_HPP

#include <algorithm>
#include <sstream>
#include <string>

#include <nervetopo/io.hpp>
#include <nervetopo/mesh.hpp>
#include <nervetopo/shape.hpp>

namespace nervetopo {

/**
 * SVG 1.1 overlay: mesh edges in gray, the cluster support filled, and the
 * edgelet loops stroked on top. Coordinates use the fixed 6-decimal format.
 */
inline std::string render_svg(const TriMesh& mesh, const SimplexSet* support,
                              const Edgelet* contour) {
    double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
    if (mesh.vertex_count() > 0) {
        min_x = max_x = mesh.vertex(0).x;
        min_y = max_y = mesh.vertex(0).y;
        for (const Point2& p : mesh.vertices()) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    const double margin = 0.02 * std::max(max_x - min_x, max_y - min_y) + 1.0;
    const double w = (max_x - min_x) + 2 * margin;
    const double h = (max_y - min_y) + 2 * margin;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
       << format_fixed(min_x - margin) << " " << format_fixed(min_y - margin) << " "
       << format_fixed(w) << " " << format_fixed(h) << "\">\n";

    if (support != nullptr) {
        os << "  <g fill=\"#a8d0e6\" stroke=\"none\">\n";
        for (TriId t : *support) {
            const Triangle& tri = mesh.triangle(t);
            os << "    <polygon points=\"";
            bool first = true;
            for (VertexId v : {tri.a, tri.b, tri.c}) {
                const Point2& p = mesh.vertex(v);
                if (!first) os << " ";
                os << format_fixed(p.x) << "," << format_fixed(p.y);
                first = false;
            }
            os << "\"/>\n";
        }
        os << "  </g>\n";
    }

    os << "  <g stroke=\"#999999\" stroke-width=\"" << format_fixed(0.15 * margin)
       << "\" stroke-linecap=\"round\">\n";
    for (const Edge& e : mesh.edges()) {
        const Point2& p = mesh.vertex(e.lo);
        const Point2& q = mesh.vertex(e.hi);
        os << "    <line x1=\"" << format_fixed(p.x) << "\" y1=\"" << format_fixed(p.y)
           << "\" x2=\"" << format_fixed(q.x) << "\" y2=\"" << format_fixed(q.y) << "\"/>\n";
    }
    os << "  </g>\n";

    if (contour != nullptr) {
        os << "  <g fill=\"none\" stroke=\"#d62728\" stroke-width=\""
           << format_fixed(0.4 * margin) << "\" stroke-linejoin=\"round\">\n";
        for (const auto& loop : contour->loops) {
            os << "    <polygon points=\"";
            for (std::size_t i = 0; i < loop.size(); ++i) {
                const Point2& p = mesh.vertex(loop[i]);
                if (i) os << " ";
                os << format_fixed(p.x) << "," << format_fixed(p.y);
            }
            os << "\"/>\n";
        }
        os << "  </g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace nervetopo

#endif  // NERVETOPO_SVG_HPP
