#ifndef NERVETOPO_IO_HPP
#define NERVETOPO_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <nervetopo/image.hpp>
#include <nervetopo/mesh.hpp>
#include <nervetopo/nerve.hpp>
#include <nervetopo/proximity.hpp>
#include <nervetopo/shape.hpp>
#include <nervetopo/spokes.hpp>

namespace nervetopo {

/** Fixed 6-decimal float formatting; the one float format in all outputs. */
inline std::string format_fixed(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
}

// --------------------------------------------------------------------------
// Mesh JSON schema: {"vertices": [[x, y]...], "triangles": [[a, b, c]...]}
// Unknown keys are ignored on read and never written.
// --------------------------------------------------------------------------

inline std::string write_mesh_json(const TriMesh& mesh) {
    std::ostringstream os;
    os << "{\"vertices\":[";
    for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
        if (i) os << ",";
        const Point2& p = mesh.vertex(static_cast<VertexId>(i));
        os << "[" << format_fixed(p.x) << "," << format_fixed(p.y) << "]";
    }
    os << "],\"triangles\":[";
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        if (t) os << ",";
        const Triangle& tri = mesh.triangle(static_cast<TriId>(t));
        os << "[" << tri.a << "," << tri.b << "," << tri.c << "]";
    }
    os << "]}\n";
    return os.str();
}

inline TriMesh parse_mesh_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("mesh json: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("mesh json: root must be an object");
    if (!doc.contains("vertices")) throw std::runtime_error("mesh json: missing field \"vertices\"");
    if (!doc.contains("triangles"))
        throw std::runtime_error("mesh json: missing field \"triangles\"");
    const auto& jv = doc["vertices"];
    const auto& jt = doc["triangles"];
    if (!jv.is_array()) throw std::runtime_error("mesh json: \"vertices\" must be an array");
    if (!jt.is_array()) throw std::runtime_error("mesh json: \"triangles\" must be an array");

    std::vector<Point2> vertices;
    vertices.reserve(jv.size());
    for (std::size_t i = 0; i < jv.size(); ++i) {
        const auto& item = jv[i];
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw std::runtime_error("mesh json: \"vertices[" + std::to_string(i) +
                                     "]\" must be [x, y]");
        vertices.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    std::vector<std::array<VertexId, 3>> triangles;
    triangles.reserve(jt.size());
    for (std::size_t i = 0; i < jt.size(); ++i) {
        const auto& item = jt[i];
        if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() ||
            !item[1].is_number_integer() || !item[2].is_number_integer())
            throw std::runtime_error("mesh json: \"triangles[" + std::to_string(i) +
                                     "]\" must be [a, b, c]");
        for (int k = 0; k < 3; ++k)
            if (item[k].get<long long>() < 0)
                throw std::runtime_error("mesh json: \"triangles[" + std::to_string(i) +
                                         "]\" must hold non-negative indices");
        triangles.push_back({item[0].get<VertexId>(), item[1].get<VertexId>(),
                             item[2].get<VertexId>()});
    }
    return TriMesh(std::move(vertices), triangles);
}

inline TriMesh read_mesh_json(const std::string& path) {
    return parse_mesh_json(read_text_file(path));
}

// --------------------------------------------------------------------------
// Point CSV: one "x,y" per line, optional header.
// --------------------------------------------------------------------------

inline std::vector<Point2> parse_points_csv(const std::string& text) {
    std::vector<Point2> points;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string sx, sy;
        if (!std::getline(ls, sx, ',') || !std::getline(ls, sy)) {
            if (lineno == 1) continue;  // tolerate a header
            throw std::runtime_error("points csv: line " + std::to_string(lineno) +
                                     " is not \"x,y\"");
        }
        try {
            points.emplace_back(std::stod(sx), std::stod(sy));
        } catch (const std::exception&) {
            if (lineno == 1) continue;  // header row
            throw std::runtime_error("points csv: line " + std::to_string(lineno) +
                                     " is not numeric");
        }
    }
    return points;
}

inline std::vector<Point2> read_points_csv(const std::string& path) {
    return parse_points_csv(read_text_file(path));
}

inline std::string write_keypoints_csv(const std::vector<Keypoint>& keypoints) {
    std::ostringstream os;
    os << "x,y,magnitude,orientation\n";
    for (const Keypoint& kp : keypoints)
        os << format_fixed(kp.position.x) << "," << format_fixed(kp.position.y) << ","
           << format_fixed(kp.magnitude) << "," << format_fixed(kp.orientation) << "\n";
    return os.str();
}

// --------------------------------------------------------------------------
// Report emitters.
// --------------------------------------------------------------------------

inline std::string json_escape(const std::string& s) {
    std::ostringstream os;
    for (char c : s) {
        switch (c) {
            case '\"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            default: os << c;
        }
    }
    return os.str();
}

inline std::string write_nerve_report_json(const std::vector<NerveComplex>& nerves) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < nerves.size(); ++i) {
        if (i) os << ",";
        os << "{\"nucleus\":" << nerves[i].nucleus << ",\"triangles\":[";
        bool first = true;
        for (TriId t : nerves[i].spokes1) {
            if (!first) os << ",";
            os << t;
            first = false;
        }
        os << "],\"spoke_count\":" << nerves[i].spoke_count() << "}";
    }
    os << "]\n";
    return os.str();
}

inline std::string write_spoke_report_json(const NerveComplex& nerve, int k, SpokeMode mode,
                                           const std::vector<SpokeChain>& chains) {
    std::ostringstream os;
    os << "{\"nucleus\":" << nerve.nucleus << ",\"k\":" << k << ",\"mode\":\""
       << (mode == SpokeMode::edge ? "edge" : "vertex") << "\",\"chains\":[";
    for (std::size_t i = 0; i < chains.size(); ++i) {
        if (i) os << ",";
        os << "[";
        for (std::size_t j = 0; j < chains[i].triangles.size(); ++j) {
            if (j) os << ",";
            os << chains[i].triangles[j];
        }
        os << "]";
    }
    os << "]}\n";
    return os.str();
}

inline std::string write_conformance_json(const ConformanceReport& report) {
    std::ostringstream os;
    os << "{\"relation\":\"" << json_escape(report.relation) << "\",\"trials\":" << report.trials
       << ",\"violations\":[";
    for (std::size_t i = 0; i < report.violations.size(); ++i) {
        if (i) os << ",";
        os << "{\"axiom\":\"" << json_escape(report.violations[i].axiom) << "\",\"witness\":{\"sets\":\""
           << json_escape(report.violations[i].witness) << "\"}}";
    }
    os << "]}\n";
    return os.str();
}

inline std::string write_features_json(const std::vector<NerveFeatures>& features) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < features.size(); ++i) {
        const NerveFeatures& f = features[i];
        if (i) os << ",";
        os << "{\"nucleus\":" << f.nucleus << ",\"centroid\":[" << format_fixed(f.centroid.x)
           << "," << format_fixed(f.centroid.y) << "],\"total_area\":" << format_fixed(f.total_area)
           << ",\"triangle_count\":" << f.triangle_count
           << ",\"max_triangle_area\":" << format_fixed(f.max_triangle_area) << "}";
    }
    os << "]\n";
    return os.str();
}

inline std::string write_edgelet_json(const Edgelet& contour) {
    std::ostringstream os;
    os << "{\"loops\":[";
    for (std::size_t i = 0; i < contour.loops.size(); ++i) {
        if (i) os << ",";
        os << "[";
        for (std::size_t j = 0; j < contour.loops[i].size(); ++j) {
            if (j) os << ",";
            os << contour.loops[i][j];
        }
        os << "]";
    }
    os << "]}\n";
    return os.str();
}

}  // namespace nervetopo

#endif  // NERVETOPO_IO_HPP
