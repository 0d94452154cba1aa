#ifndef NERVETOPO_SPOKES_HPP
#define NERVETOPO_SPOKES_HPP

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

#include <nervetopo/mesh.hpp>
#include <nervetopo/nerve.hpp>

namespace nervetopo {

/** Attachment rule for spoke growth: across a shared edge or shared vertex. */
enum class SpokeMode { edge, vertex };

/**
 * A k-spoke as an ordered chain: the first triangle lies in the source
 * nerve, later ones do not, consecutive triangles are mode-adjacent, and no
 * triangle repeats.
 */
struct SpokeChain {
    int level = 1;
    std::vector<TriId> triangles;
    SpokeMode mode = SpokeMode::edge;

    friend bool operator==(const SpokeChain& a, const SpokeChain& b) {
        return a.level == b.level && a.mode == b.mode && a.triangles == b.triangles;
    }
};

namespace detail {

inline void require_nerve_of(const TriMesh& mesh, const NerveComplex& nerve) {
    if (nerve.spokes1.empty()) throw std::invalid_argument("empty nerve");
    for (TriId t : nerve.spokes1)
        if (!mesh.triangle(t).has_vertex(nerve.nucleus))
            throw std::invalid_argument("nerve does not belong to this mesh");
}

/** Triangles sharing an edge (edge mode) or at least a vertex with t. */
inline std::vector<TriId> mode_neighbors(const TriMesh& mesh, TriId t, SpokeMode mode) {
    const Triangle& tri = mesh.triangle(t);
    std::vector<TriId> out;
    if (mode == SpokeMode::edge) {
        for (auto [u, w] : TriMesh::tri_edges(tri))
            for (TriId n : mesh.edge_triangles(u, w))
                if (n != t) out.push_back(n);
    } else {
        for (VertexId v : {tri.a, tri.b, tri.c})
            for (TriId n : mesh.star(v))
                if (n != t) out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/** One level-1 chain per nerve triangle, ascending by triangle id. */
inline std::vector<SpokeChain> one_spokes(const NerveComplex& nerve) {
    if (nerve.spokes1.empty()) throw std::invalid_argument("empty nerve");
    std::vector<SpokeChain> out;
    out.reserve(nerve.spokes1.size());
    for (TriId t : nerve.spokes1) out.push_back(SpokeChain{1, {t}, SpokeMode::edge});
    return out;
}

/**
 * All k-spoke chains of the nerve, enumerated depth-first without
 * duplicates. Chains identical as triangle sequences appear once; k = 1
 * collapses to one_spokes.
 */
inline std::vector<SpokeChain> k_spokes(const TriMesh& mesh, const NerveComplex& nerve, int k,
                                        SpokeMode mode) {
    if (k < 1) throw std::invalid_argument("spoke level must be at least 1");
    detail::require_nerve_of(mesh, nerve);

    std::vector<SpokeChain> out;
    std::vector<TriId> chain;
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(chain.size()) == k) {
            out.push_back(SpokeChain{k, chain, mode});
            return;
        }
        for (TriId n : detail::mode_neighbors(mesh, chain.back(), mode)) {
            if (nerve.spokes1.contains(n)) continue;
            if (std::find(chain.begin(), chain.end(), n) != chain.end()) continue;
            chain.push_back(n);
            self(self);
            chain.pop_back();
        }
    };
    for (TriId t : nerve.spokes1) {
        chain.assign(1, t);
        if (k == 1)
            out.push_back(SpokeChain{1, chain, mode});
        else
            extend(extend);
    }
    return out;
}

/**
 * Union of all triangles appearing in chains of levels 1..k. Computed by a
 * breadth-first sweep over non-nerve triangles (the minimal chain position
 * of a triangle is one plus its hop distance from the nerve), so large k is
 * cheap even where chain enumeration would not be.
 */
inline SimplexSet spoke_union(const TriMesh& mesh, const NerveComplex& nerve, int k,
                              SpokeMode mode) {
    if (k < 1) throw std::invalid_argument("spoke level must be at least 1");
    detail::require_nerve_of(mesh, nerve);

    constexpr int kUnset = std::numeric_limits<int>::max();
    std::vector<int> level(mesh.triangle_count(), kUnset);
    std::deque<TriId> queue;
    for (TriId t : nerve.spokes1) level[t] = 1;
    for (TriId t : nerve.spokes1)
        for (TriId n : detail::mode_neighbors(mesh, t, mode))
            if (level[n] == kUnset) {
                level[n] = 2;
                queue.push_back(n);
            }
    while (!queue.empty()) {
        const TriId t = queue.front();
        queue.pop_front();
        if (level[t] >= k) continue;
        for (TriId n : detail::mode_neighbors(mesh, t, mode))
            if (level[n] == kUnset) {
                level[n] = level[t] + 1;
                queue.push_back(n);
            }
    }

    std::vector<TriId> ids;
    for (TriId t = 0; t < mesh.triangle_count(); ++t)
        if (level[t] <= k) ids.push_back(t);
    return SimplexSet(std::move(ids));
}

/**
 * Common 2-spokes of two nerves: pairs {t, t'} where t lies in both stars
 * and t' is an edge-attached triangle of either star. Nonempty exactly when
 * the nerves are strongly near (they share a triangle), matching the
 * 2-spoke characterization of strong nearness.
 */
inline std::vector<SimplexSet> common_2_spokes(const TriMesh& mesh, const NerveComplex& a,
                                               const NerveComplex& b) {
    detail::require_nerve_of(mesh, a);
    detail::require_nerve_of(mesh, b);

    const SimplexSet shared = simplex_intersection(a.spokes1, b.spokes1);
    const SimplexSet either = simplex_union(a.spokes1, b.spokes1);
    std::vector<Edge> seen;
    std::vector<SimplexSet> out;
    for (TriId t : shared)
        for (TriId n : detail::mode_neighbors(mesh, t, SpokeMode::edge)) {
            if (!either.contains(n)) continue;
            const Edge pair_key(t, n);
            if (std::find(seen.begin(), seen.end(), pair_key) != seen.end()) continue;
            seen.push_back(pair_key);
            out.push_back(SimplexSet{t, n});
        }
    std::sort(out.begin(), out.end(), [](const SimplexSet& x, const SimplexSet& y) {
        return x.ids() < y.ids();
    });
    return out;
}

}  // namespace nervetopo

#endif  // NERVETOPO_SPOKES_HPP
