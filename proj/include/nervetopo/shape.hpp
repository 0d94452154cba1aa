#ifndef NERVETOPO_SHAPE_HPP
#define NERVETOPO_SHAPE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include <nervetopo/mesh.hpp>
#include <nervetopo/nerve.hpp>
#include <nervetopo/proximity.hpp>

namespace nervetopo {

/** Maximal nucleus cluster: the maximal nerve plus every nerve strongly near it. */
struct MncCluster {
    NerveComplex core;
    std::vector<NerveComplex> members;  // includes the core, ascending nucleus
    SimplexSet support;                 // union of member stars
};

/** Closed boundary cycles of a cluster support: outer loop first
 * (counterclockwise), holes clockwise. */
struct Edgelet {
    std::vector<std::vector<VertexId>> loops;
};

/** Geometric summary of one nerve. */
struct NerveFeatures {
    VertexId nucleus = 0;
    Point2 centroid;
    double total_area = 0.0;
    int triangle_count = 0;
    double max_triangle_area = 0.0;
};

inline MncCluster mnc_cluster(const TriMesh& mesh) {
    MncCluster cluster;
    cluster.core = maximal_nerve(mesh);
    for (VertexId v = 0; v < mesh.vertex_count(); ++v) {
        if (mesh.star(v).empty()) continue;
        NerveComplex nv = nerve_at(mesh, v);
        if (strongly_near(mesh, nv.spokes1, cluster.core.spokes1)) {
            cluster.support = simplex_union(cluster.support, nv.spokes1);
            cluster.members.push_back(std::move(nv));
        }
    }
    return cluster;
}

namespace detail {

struct DirectedEdge {
    VertexId from = 0, to = 0;

    friend bool operator<(const DirectedEdge& a, const DirectedEdge& b) {
        return a.from < b.from || (a.from == b.from && a.to < b.to);
    }
    friend bool operator==(const DirectedEdge& a, const DirectedEdge& b) {
        return a.from == b.from && a.to == b.to;
    }
};

inline double loop_signed_area(const TriMesh& mesh, const std::vector<VertexId>& loop) {
    double area2 = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Point2& p = mesh.vertex(loop[i]);
        const Point2& q = mesh.vertex(loop[(i + 1) % loop.size()]);
        area2 += p.x * q.y - p.y * q.x;
    }
    return 0.5 * area2;
}

inline bool vertex_lex_less(const TriMesh& mesh, VertexId a, VertexId b) {
    const Point2 &pa = mesh.vertex(a), &pb = mesh.vertex(b);
    if (pa != pb) return lex_less(pa, pb);
    return a < b;
}

// Rotate the cycle so the lexicographically smallest vertex leads; among
// equal leaders, the smallest id sequence wins.
inline void canonicalize_loop(const TriMesh& mesh, std::vector<VertexId>& loop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < loop.size(); ++i) {
        if (vertex_lex_less(mesh, loop[i], loop[best])) best = i;
    }
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < loop.size(); ++i)
        if (loop[i] == loop[best]) candidates.push_back(i);
    auto rotated = [&](std::size_t start) {
        std::vector<VertexId> r(loop.size());
        for (std::size_t i = 0; i < loop.size(); ++i) r[i] = loop[(start + i) % loop.size()];
        return r;
    };
    std::vector<VertexId> best_seq = rotated(candidates[0]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        std::vector<VertexId> seq = rotated(candidates[i]);
        if (seq < best_seq) best_seq = seq;
    }
    loop = std::move(best_seq);
}

}  // namespace detail

/**
 * Traces the boundary of a triangle-set region into closed vertex loops.
 * Each undirected boundary edge is walked once, directed with the region on
 * its left. At a boundary vertex the walk continues across the complement
 * gap: the next edge is the first boundary direction counterclockwise from
 * the reversed incoming direction. That pairing keeps loops from crossing
 * and keeps the loop count consistent with the Euler characteristic
 * (loops = 1 + holes on connected supports, pinch vertices included).
 */
inline Edgelet trace_boundary_loops(const TriMesh& mesh, const SimplexSet& support) {
    if (support.empty()) throw std::invalid_argument("empty simplex set");
    const std::vector<Edge> bedges = boundary_edges(mesh, support);

    // Direct every boundary edge region-left: the unique support triangle is
    // CCW, so the matching cyclic edge order within it is region-left.
    std::vector<detail::DirectedEdge> directed;
    directed.reserve(bedges.size());
    for (const Edge& e : bedges) {
        TriId owner = 0;
        bool found = false;
        for (TriId t : mesh.edge_triangles(e.lo, e.hi))
            if (support.contains(t)) {
                owner = t;
                found = true;
            }
        if (!found) throw std::logic_error("boundary edge without a support triangle");
        const Triangle& tri = mesh.triangle(owner);
        for (auto [u, w] : TriMesh::tri_edges(tri))
            if (Edge(u, w) == e) directed.push_back({u, w});
    }
    std::sort(directed.begin(), directed.end());

    std::map<VertexId, std::vector<detail::DirectedEdge>> outgoing;
    for (const auto& d : directed) outgoing[d.from].push_back(d);

    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto successor = [&](const detail::DirectedEdge& in) {
        const Point2& at = mesh.vertex(in.to);
        const Point2& back = mesh.vertex(in.from);
        const double theta_back = std::atan2(back.y - at.y, back.x - at.x);
        auto it = outgoing.find(in.to);
        if (it == outgoing.end()) throw std::runtime_error("non-manifold boundary");
        const detail::DirectedEdge* best = nullptr;
        double best_delta = 0.0;
        for (const auto& cand : it->second) {
            const Point2& next = mesh.vertex(cand.to);
            const double theta = std::atan2(next.y - at.y, next.x - at.x);
            double delta = std::fmod(theta - theta_back, two_pi);
            if (delta < 0) delta += two_pi;
            if (delta == 0.0) delta = two_pi;  // the reversed edge itself comes last
            if (best != nullptr && delta == best_delta)
                throw std::runtime_error("non-manifold boundary");
            if (best == nullptr || delta < best_delta) {
                best = &cand;
                best_delta = delta;
            }
        }
        if (best == nullptr) throw std::runtime_error("non-manifold boundary");
        return *best;
    };

    std::set<detail::DirectedEdge> unused(directed.begin(), directed.end());
    std::vector<std::vector<VertexId>> loops;
    while (!unused.empty()) {
        const detail::DirectedEdge start = *unused.begin();
        std::vector<VertexId> loop;
        detail::DirectedEdge cur = start;
        do {
            if (!unused.erase(cur)) throw std::runtime_error("non-manifold boundary");
            loop.push_back(cur.from);
            cur = successor(cur);
        } while (!(cur == start));
        if (loop.size() < 3) throw std::runtime_error("non-manifold boundary");
        loops.push_back(std::move(loop));
    }

    // Outer loop: largest enclosed area, forced counterclockwise; holes
    // follow, forced clockwise, ordered by their canonical start vertex.
    std::size_t outer = 0;
    double outer_area = -1.0;
    for (std::size_t i = 0; i < loops.size(); ++i) {
        const double a = std::fabs(detail::loop_signed_area(mesh, loops[i]));
        if (a > outer_area) {
            outer_area = a;
            outer = i;
        }
    }
    Edgelet result;
    for (std::size_t i = 0; i < loops.size(); ++i) {
        std::vector<VertexId>& loop = loops[i];
        const bool is_outer = (i == outer);
        const double signed_area = detail::loop_signed_area(mesh, loop);
        if ((is_outer && signed_area < 0) || (!is_outer && signed_area > 0))
            std::reverse(loop.begin(), loop.end());
        detail::canonicalize_loop(mesh, loop);
    }
    result.loops.push_back(loops[outer]);
    std::vector<std::vector<VertexId>> holes;
    for (std::size_t i = 0; i < loops.size(); ++i)
        if (i != outer) holes.push_back(loops[i]);
    std::sort(holes.begin(), holes.end(),
              [&](const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
                  if (a[0] != b[0]) return detail::vertex_lex_less(mesh, a[0], b[0]);
                  return a < b;
              });
    for (auto& h : holes) result.loops.push_back(std::move(h));
    return result;
}

/** Outer contour of a maximal nucleus cluster. */
inline Edgelet edgelet(const TriMesh& mesh, const MncCluster& cluster) {
    return trace_boundary_loops(mesh, cluster.support);
}

inline NerveFeatures nerve_features(const TriMesh& mesh, const NerveComplex& nerve) {
    if (nerve.spokes1.empty()) throw std::invalid_argument("empty nerve");
    NerveFeatures f;
    f.nucleus = nerve.nucleus;
    double cx = 0.0, cy = 0.0;
    for (TriId t : nerve.spokes1) {
        const double area = triangle_area(mesh, t);
        const Point2 c = triangle_centroid(mesh, t);
        cx += area * c.x;
        cy += area * c.y;
        f.total_area += area;
        f.max_triangle_area = std::max(f.max_triangle_area, area);
        ++f.triangle_count;
    }
    f.centroid = Point2(cx / f.total_area, cy / f.total_area);
    return f;
}

namespace detail {

// Exact 1-Wasserstein distance between two empirical distributions.
inline double wasserstein1(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<double> grid;
    grid.reserve(a.size() + b.size());
    grid.insert(grid.end(), a.begin(), a.end());
    grid.insert(grid.end(), b.begin(), b.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double t = grid[i];
        const double fa =
            static_cast<double>(std::upper_bound(a.begin(), a.end(), t) - a.begin()) / a.size();
        const double fb =
            static_cast<double>(std::upper_bound(b.begin(), b.end(), t) - b.begin()) / b.size();
        total += std::fabs(fa - fb) * (grid[i + 1] - grid[i]);
    }
    return total;
}

}  // namespace detail

/**
 * Pose-invariant dissimilarity between two nerve-feature collections: the
 * 1-Wasserstein distance between their triangle-count distributions plus
 * the one between their area distributions, each area scaled by its own
 * collection's total. Zero exactly when both summaries agree; symmetric.
 */
inline double shape_compare(const std::vector<NerveFeatures>& f1,
                            const std::vector<NerveFeatures>& f2) {
    if (f1.empty() || f2.empty()) throw std::invalid_argument("empty feature list");
    auto counts = [](const std::vector<NerveFeatures>& fs) {
        std::vector<double> out;
        out.reserve(fs.size());
        for (const NerveFeatures& f : fs) out.push_back(static_cast<double>(f.triangle_count));
        return out;
    };
    auto scaled_areas = [](const std::vector<NerveFeatures>& fs) {
        double total = 0.0;
        for (const NerveFeatures& f : fs) total += f.total_area;
        std::vector<double> out;
        out.reserve(fs.size());
        for (const NerveFeatures& f : fs) out.push_back(total > 0 ? f.total_area / total : 0.0);
        return out;
    };
    return detail::wasserstein1(counts(f1), counts(f2)) +
           detail::wasserstein1(scaled_areas(f1), scaled_areas(f2));
}

/**
 * Covers the mesh with disjoint-support clusters by peeling: repeatedly
 * build the cluster of the largest not-yet-covered star, restricted to
 * uncovered triangles, and remove its support.
 */
inline std::vector<MncCluster> all_mnc_clusters(const TriMesh& mesh) {
    std::vector<bool> covered(mesh.triangle_count(), false);
    std::size_t remaining = mesh.triangle_count();
    std::vector<MncCluster> out;

    auto uncovered_star = [&](VertexId v) {
        SimplexSet s;
        for (TriId t : mesh.star(v))
            if (!covered[t]) s.insert(t);
        return s;
    };

    while (remaining > 0) {
        VertexId best = 0;
        std::size_t best_size = 0;
        for (VertexId v = 0; v < mesh.vertex_count(); ++v) {
            const std::size_t s = uncovered_star(v).size();
            if (s > best_size) {
                best = v;
                best_size = s;
            }
        }
        if (best_size == 0) break;

        MncCluster cluster;
        cluster.core = NerveComplex{best, uncovered_star(best)};
        for (VertexId v = 0; v < mesh.vertex_count(); ++v) {
            SimplexSet sv = uncovered_star(v);
            if (sv.empty()) continue;
            if (!simplex_intersection(sv, cluster.core.spokes1).empty()) {
                cluster.support = simplex_union(cluster.support, sv);
                cluster.members.push_back(NerveComplex{v, std::move(sv)});
            }
        }
        for (TriId t : cluster.support) {
            covered[t] = true;
            --remaining;
        }
        out.push_back(std::move(cluster));
    }
    return out;
}

}  // namespace nervetopo

#endif  // NERVETOPO_SHAPE_HPP
