#ifndef NERVETOPO_MESH_HPP
#define NERVETOPO_MESH_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nervetopo/geometry.hpp>

namespace nervetopo {

using VertexId = std::uint32_t;
using TriId = std::uint32_t;

/** Closed (filled) triangle, stored as vertex indices in counterclockwise order. */
struct Triangle {
    VertexId a = 0, b = 0, c = 0;

    bool has_vertex(VertexId v) const { return a == v || b == v || c == v; }

    friend bool operator==(const Triangle& s, const Triangle& t) {
        return s.a == t.a && s.b == t.b && s.c == t.c;
    }
};

/** Undirected edge, endpoints stored lo < hi. */
struct Edge {
    VertexId lo = 0, hi = 0;

    Edge() = default;
    Edge(VertexId u, VertexId v) : lo(std::min(u, v)), hi(std::max(u, v)) {}

    friend bool operator==(const Edge& d, const Edge& e) { return d.lo == e.lo && d.hi == e.hi; }
    friend bool operator<(const Edge& d, const Edge& e) {
        return d.lo < e.lo || (d.lo == e.lo && d.hi < e.hi);
    }
};

namespace detail {
inline std::uint64_t edge_key(VertexId u, VertexId v) {
    const std::uint64_t lo = std::min(u, v), hi = std::max(u, v);
    return (lo << 32) | hi;
}
}  // namespace detail

/** Set of triangle ids within one mesh; kept sorted and duplicate-free. */
class SimplexSet {
public:
    SimplexSet() = default;
    SimplexSet(std::initializer_list<TriId> ids) : ids_(ids) { normalize(); }
    explicit SimplexSet(std::vector<TriId> ids) : ids_(std::move(ids)) { normalize(); }

    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    bool contains(TriId t) const { return std::binary_search(ids_.begin(), ids_.end(), t); }
    const std::vector<TriId>& ids() const { return ids_; }

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    void insert(TriId t) {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), t);
        if (it == ids_.end() || *it != t) ids_.insert(it, t);
    }

    friend bool operator==(const SimplexSet& s, const SimplexSet& t) { return s.ids_ == t.ids_; }

private:
    void normalize() {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    std::vector<TriId> ids_;
};

inline SimplexSet simplex_union(const SimplexSet& s, const SimplexSet& t) {
    std::vector<TriId> out;
    out.reserve(s.size() + t.size());
    std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(out));
    return SimplexSet(std::move(out));
}

inline SimplexSet simplex_intersection(const SimplexSet& s, const SimplexSet& t) {
    std::vector<TriId> out;
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(out));
    return SimplexSet(std::move(out));
}

/** One finding of the mesh validator. */
struct MeshFault {
    std::string what;
};

/** Validation report; empty = valid. */
struct MeshValidationReport {
    std::vector<MeshFault> faults;

    bool ok() const { return faults.empty(); }
};

/**
 * Immutable planar triangulation: vertex coordinates, counterclockwise
 * triangle index triples, and the undirected edge -> incident triangle map.
 *
 * Construction normalizes triangle orientation and rejects inputs that
 * cannot form a valid planar mesh: duplicate vertices (within tolerance),
 * out-of-range or repeated indices, degenerate (collinear) triangles, and
 * edges shared by more than two triangles.
 */
class TriMesh {
public:
    static constexpr double kDefaultDedupTolerance = 1e-9;

    TriMesh(std::vector<Point2> vertices, const std::vector<std::array<VertexId, 3>>& triangles,
            double dedup_tolerance = kDefaultDedupTolerance)
        : vertices_(std::move(vertices)) {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j)
                if (distance(vertices_[i], vertices_[j]) < dedup_tolerance)
                    throw std::invalid_argument("duplicate vertex: " + std::to_string(i) + " and " +
                                                std::to_string(j));

        triangles_.reserve(triangles.size());
        for (std::size_t i = 0; i < triangles.size(); ++i) {
            auto [a, b, c] = triangles[i];
            if (a >= vertices_.size() || b >= vertices_.size() || c >= vertices_.size())
                throw std::invalid_argument("triangle " + std::to_string(i) +
                                            " references an unknown vertex");
            if (a == b || b == c || a == c)
                throw std::invalid_argument("triangle " + std::to_string(i) +
                                            " has repeated vertices");
            const int o = orient2d(vertices_[a], vertices_[b], vertices_[c]);
            if (o == 0)
                throw std::invalid_argument("triangle " + std::to_string(i) +
                                            " is degenerate (collinear vertices)");
            if (o < 0) std::swap(b, c);
            triangles_.push_back(Triangle{a, b, c});
        }

        stars_.resize(vertices_.size());
        for (TriId t = 0; t < triangles_.size(); ++t) {
            const Triangle& tri = triangles_[t];
            for (VertexId v : {tri.a, tri.b, tri.c}) stars_[v].push_back(t);
            for (auto [u, w] : tri_edges(tri)) {
                auto& inc = edges_[detail::edge_key(u, w)];
                if (inc.count == 2)
                    throw std::invalid_argument("edge (" + std::to_string(std::min(u, w)) + "," +
                                                std::to_string(std::max(u, w)) +
                                                ") is shared by more than two triangles");
                inc.tri[inc.count++] = t;
            }
        }
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t triangle_count() const { return triangles_.size(); }

    const Point2& vertex(VertexId v) const {
        if (v >= vertices_.size()) throw std::invalid_argument("unknown vertex");
        return vertices_[v];
    }

    const Triangle& triangle(TriId t) const {
        if (t >= triangles_.size()) throw std::invalid_argument("unknown triangle");
        return triangles_[t];
    }

    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }

    /** Triangle ids incident to v (its vertex star), ascending. */
    const std::vector<TriId>& star(VertexId v) const {
        if (v >= vertices_.size()) throw std::invalid_argument("unknown vertex");
        return stars_[v];
    }

    /** Triangles incident to the undirected edge (u, v); 0, 1 or 2 ids. */
    std::vector<TriId> edge_triangles(VertexId u, VertexId v) const {
        auto it = edges_.find(detail::edge_key(u, v));
        if (it == edges_.end()) return {};
        std::vector<TriId> out(it->second.tri.begin(), it->second.tri.begin() + it->second.count);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t edge_count() const { return edges_.size(); }

    /** All undirected edges, sorted. */
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edges_.size());
        for (const auto& [key, inc] : edges_)
            out.emplace_back(static_cast<VertexId>(key >> 32),
                             static_cast<VertexId>(key & 0xffffffffu));
        std::sort(out.begin(), out.end());
        return out;
    }

    /** The set of all triangle ids. */
    SimplexSet all_triangles() const {
        std::vector<TriId> ids(triangles_.size());
        for (TriId t = 0; t < triangles_.size(); ++t) ids[t] = t;
        return SimplexSet(std::move(ids));
    }

    static std::array<std::pair<VertexId, VertexId>, 3> tri_edges(const Triangle& t) {
        return {{{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}};
    }

private:
    struct EdgeIncidence {
        std::array<TriId, 2> tri{0, 0};
        int count = 0;
    };

    std::vector<Point2> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<std::vector<TriId>> stars_;
    std::unordered_map<std::uint64_t, EdgeIncidence> edges_;
};

namespace detail {
inline void require_valid(const TriMesh& mesh, const SimplexSet& s) {
    if (s.empty()) throw std::invalid_argument("empty simplex set");
    if (!s.empty() && *std::prev(s.end()) >= mesh.triangle_count())
        throw std::invalid_argument("unknown triangle");
}
}  // namespace detail

/** Area of triangle t; half the absolute cross product of two edge vectors. */
inline double triangle_area(const TriMesh& mesh, TriId t) {
    const Triangle& tri = mesh.triangle(t);
    const Point2 &a = mesh.vertex(tri.a), &b = mesh.vertex(tri.b), &c = mesh.vertex(tri.c);
    return 0.5 * std::fabs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

/** Arithmetic mean of the three vertex coordinates. */
inline Point2 triangle_centroid(const TriMesh& mesh, TriId t) {
    const Triangle& tri = mesh.triangle(t);
    const Point2 &a = mesh.vertex(tri.a), &b = mesh.vertex(tri.b), &c = mesh.vertex(tri.c);
    return Point2((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0);
}

/** All vertex ids supporting the closed triangles of s, ascending. */
inline std::vector<VertexId> closure_vertices(const TriMesh& mesh, const SimplexSet& s) {
    detail::require_valid(mesh, s);
    std::vector<VertexId> out;
    out.reserve(3 * s.size());
    for (TriId t : s) {
        const Triangle& tri = mesh.triangle(t);
        out.push_back(tri.a);
        out.push_back(tri.b);
        out.push_back(tri.c);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/** V - E + F over the closed triangles of s. */
inline long euler_characteristic(const TriMesh& mesh, const SimplexSet& s) {
    detail::require_valid(mesh, s);
    const std::vector<VertexId> verts = closure_vertices(mesh, s);
    std::vector<Edge> edges;
    edges.reserve(3 * s.size());
    for (TriId t : s)
        for (auto [u, w] : TriMesh::tri_edges(mesh.triangle(t))) edges.emplace_back(u, w);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return static_cast<long>(verts.size()) - static_cast<long>(edges.size()) +
           static_cast<long>(s.size());
}

/** Edges incident to exactly one triangle of s, sorted. */
inline std::vector<Edge> boundary_edges(const TriMesh& mesh, const SimplexSet& s) {
    detail::require_valid(mesh, s);
    std::vector<Edge> edges;
    edges.reserve(3 * s.size());
    for (TriId t : s)
        for (auto [u, w] : TriMesh::tri_edges(mesh.triangle(t))) edges.emplace_back(u, w);
    std::sort(edges.begin(), edges.end());
    std::vector<Edge> out;
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i;
        while (j < edges.size() && edges[j] == edges[i]) ++j;
        if (j - i == 1) out.push_back(edges[i]);
        i = j;
    }
    return out;
}

/**
 * Whether the regions carried by s1 and s2 have overlapping interiors.
 * Interiors are interpreted combinatorially, so this reduces to a shared
 * triangle id; an edge shared between distinct triangles has empty interior
 * intersection.
 */
inline bool interiors_overlap(const TriMesh& mesh, const SimplexSet& s1, const SimplexSet& s2) {
    detail::require_valid(mesh, s1);
    detail::require_valid(mesh, s2);
    auto i = s1.begin();
    auto j = s2.begin();
    while (i != s1.end() && j != s2.end()) {
        if (*i == *j) return true;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

/**
 * Checks TriMesh invariants on raw data that may not survive construction:
 * orientation faults, degenerate triangles, edge over-incidence, duplicate
 * vertices, and (for meshes of at most 200 triangles) pairwise interior
 * overlaps. Returns findings; an empty report means the data is valid.
 */
inline MeshValidationReport validate_mesh(const std::vector<Point2>& vertices,
                                          const std::vector<std::array<VertexId, 3>>& triangles,
                                          double dedup_tolerance = TriMesh::kDefaultDedupTolerance) {
    MeshValidationReport report;
    auto fault = [&report](std::string msg) { report.faults.push_back({std::move(msg)}); };

    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (distance(vertices[i], vertices[j]) < dedup_tolerance)
                fault("duplicate vertices " + std::to_string(i) + " and " + std::to_string(j));

    std::vector<bool> usable(triangles.size(), true);
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        const auto& [a, b, c] = triangles[i];
        if (a >= vertices.size() || b >= vertices.size() || c >= vertices.size()) {
            fault("triangle " + std::to_string(i) + " references an unknown vertex");
            usable[i] = false;
            continue;
        }
        if (a == b || b == c || a == c) {
            fault("triangle " + std::to_string(i) + " has repeated vertices");
            usable[i] = false;
            continue;
        }
        const int o = orient2d(vertices[a], vertices[b], vertices[c]);
        if (o == 0) {
            fault("triangle " + std::to_string(i) + " is degenerate (collinear vertices)");
            usable[i] = false;
        } else if (o < 0) {
            fault("triangle " + std::to_string(i) + " is clockwise");
        }
    }

    std::unordered_map<std::uint64_t, int> edge_incidence;
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        if (!usable[i]) continue;
        const auto& [a, b, c] = triangles[i];
        for (auto [u, w] : std::initializer_list<std::pair<VertexId, VertexId>>{
                 {a, b}, {b, c}, {c, a}})
            ++edge_incidence[detail::edge_key(u, w)];
    }
    std::vector<std::uint64_t> bad_edges;
    for (const auto& [key, count] : edge_incidence)
        if (count > 2) bad_edges.push_back(key);
    std::sort(bad_edges.begin(), bad_edges.end());
    for (std::uint64_t key : bad_edges)
        fault("edge (" + std::to_string(key >> 32) + "," + std::to_string(key & 0xffffffffu) +
              ") is shared by more than two triangles");

    if (triangles.size() <= 200) {
        auto tri_ccw = [&](std::size_t i) {
            auto [a, b, c] = triangles[i];
            if (orient2d(vertices[a], vertices[b], vertices[c]) < 0) std::swap(b, c);
            return std::array<Point2, 3>{vertices[a], vertices[b], vertices[c]};
        };
        // Area of the intersection of two CCW convex polygons (Sutherland-Hodgman).
        auto clip_area = [](const std::array<Point2, 3>& p, const std::array<Point2, 3>& q) {
            std::vector<Point2> poly(p.begin(), p.end());
            for (int e = 0; e < 3; ++e) {
                const Point2 &h1 = q[e], &h2 = q[(e + 1) % 3];
                auto side = [&](const Point2& r) {
                    return (h2.x - h1.x) * (r.y - h1.y) - (h2.y - h1.y) * (r.x - h1.x);
                };
                std::vector<Point2> next;
                for (std::size_t k = 0; k < poly.size(); ++k) {
                    const Point2 &cur = poly[k], &prv = poly[(k + poly.size() - 1) % poly.size()];
                    const double sc = side(cur), sp = side(prv);
                    if (sc >= 0) {
                        if (sp < 0) {
                            const double t = sp / (sp - sc);
                            next.push_back(Point2(prv.x + t * (cur.x - prv.x),
                                                  prv.y + t * (cur.y - prv.y)));
                        }
                        next.push_back(cur);
                    } else if (sp >= 0) {
                        const double t = sp / (sp - sc);
                        next.push_back(
                            Point2(prv.x + t * (cur.x - prv.x), prv.y + t * (cur.y - prv.y)));
                    }
                }
                poly = std::move(next);
                if (poly.empty()) break;
            }
            double area2 = 0.0;
            for (std::size_t k = 0; k < poly.size(); ++k) {
                const Point2 &u = poly[k], &w = poly[(k + 1) % poly.size()];
                area2 += u.x * w.y - u.y * w.x;
            }
            return 0.5 * std::fabs(area2);
        };
        for (std::size_t i = 0; i < triangles.size(); ++i) {
            if (!usable[i]) continue;
            const auto pi = tri_ccw(i);
            double area_i = clip_area(pi, pi);
            for (std::size_t j = i + 1; j < triangles.size(); ++j) {
                if (!usable[j]) continue;
                const auto pj = tri_ccw(j);
                const double shared = clip_area(pi, pj);
                if (shared > 1e-12 * std::max(area_i, clip_area(pj, pj)))
                    fault("triangles " + std::to_string(i) + " and " + std::to_string(j) +
                          " have overlapping interiors");
            }
        }
    }
    return report;
}

inline MeshValidationReport validate_mesh(const TriMesh& mesh) {
    std::vector<std::array<VertexId, 3>> tris;
    tris.reserve(mesh.triangle_count());
    for (const Triangle& t : mesh.triangles()) tris.push_back({t.a, t.b, t.c});
    return validate_mesh(mesh.vertices(), tris);
}

}  // namespace nervetopo

#endif  // NERVETOPO_MESH_HPP
