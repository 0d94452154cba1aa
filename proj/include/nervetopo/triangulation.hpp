#ifndef NERVETOPO_TRIANGULATION_HPP
#define NERVETOPO_TRIANGULATION_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include <nervetopo/geometry.hpp>
#include <nervetopo/image.hpp>
#include <nervetopo/mesh.hpp>

namespace nervetopo {

/** Meshing policy knobs. */
struct TriangulationConfig {
    /** Points closer than this merge into one vertex (first occurrence wins). */
    double dedup_tolerance = TriMesh::kDefaultDedupTolerance;
    /** Always triangulate the full convex hull of the input. */
    bool include_hull = true;
};

namespace detail {

// Bowyer-Watson over the convex hull with ghost triangles. One ghost per
// hull edge closes the link of every vertex, so hull-exterior insertions
// stitch through the same cavity machinery as interior ones. The incircle
// predicate carries a symbolic perturbation keyed on lexicographic rank,
// which makes cocircular ties canonical and order-independent.
class DelaunayBuilder {
public:
    static constexpr std::uint32_t kGhost = 0xffffffffu;

    explicit DelaunayBuilder(const std::vector<Point2>& sorted_points) : pts_(sorted_points) {}

    // Triangle triples over indices into the sorted point array.
    std::vector<std::array<std::uint32_t, 3>> build() {
        const std::size_t n = pts_.size();
        if (n < 3) throw std::invalid_argument("insufficient points");

        std::size_t first_bend = 2;
        while (first_bend < n && orient2d(pts_[0], pts_[1], pts_[first_bend]) == 0) ++first_bend;
        if (first_bend == n) throw std::invalid_argument("degenerate input");

        seed_triangle(0, 1, static_cast<std::uint32_t>(first_bend));
        for (std::size_t i = 2; i < n; ++i) {
            if (i == first_bend) continue;
            insert(static_cast<std::uint32_t>(i));
        }

        std::vector<std::array<std::uint32_t, 3>> out;
        for (const GTri& t : tris_)
            if (t.alive && !is_ghost(t)) out.push_back(t.v);
        return out;
    }

private:
    struct GTri {
        std::array<std::uint32_t, 3> v{};
        bool alive = true;
    };

    static bool is_ghost(const GTri& t) {
        return t.v[0] == kGhost || t.v[1] == kGhost || t.v[2] == kGhost;
    }

    void seed_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        if (orient2d(pts_[a], pts_[b], pts_[c]) < 0) std::swap(b, c);
        tris_.push_back(GTri{{a, b, c}});
        // Ghost (w, u, kGhost) mirrors each directed hull edge (u, w).
        tris_.push_back(GTri{{b, a, kGhost}});
        tris_.push_back(GTri{{c, b, kGhost}});
        tris_.push_back(GTri{{a, c, kGhost}});
    }

    // Hull edge (a, b) of a ghost triangle, oriented interior-left.
    static std::pair<std::uint32_t, std::uint32_t> ghost_hull_edge(const GTri& t) {
        for (int i = 0; i < 3; ++i)
            if (t.v[i] == kGhost) return {t.v[(i + 2) % 3], t.v[(i + 1) % 3]};
        throw std::logic_error("not a ghost triangle");
    }

    bool strictly_within_segment(const Point2& a, const Point2& b, const Point2& p) const {
        if (a.x != b.x) return (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x);
        return (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y);
    }

    bool in_conflict(const GTri& t, std::uint32_t p) const {
        if (is_ghost(t)) {
            const auto [a, b] = ghost_hull_edge(t);
            const int o = orient2d(pts_[a], pts_[b], pts_[p]);
            if (o < 0) return true;
            return o == 0 && strictly_within_segment(pts_[a], pts_[b], pts_[p]);
        }
        return incircle_perturbed(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], pts_[p], t.v[0],
                                  t.v[1], t.v[2], p) > 0;
    }

    void insert(std::uint32_t p) {
        std::vector<std::size_t> cavity;
        for (std::size_t i = 0; i < tris_.size(); ++i)
            if (tris_[i].alive && in_conflict(tris_[i], p)) cavity.push_back(i);
        if (cavity.empty()) throw std::logic_error("insertion cavity is empty");

        // Directed cavity edges whose reversal is outside the cavity bound it.
        std::set<std::pair<std::uint32_t, std::uint32_t>> directed;
        for (std::size_t i : cavity) {
            const auto& v = tris_[i].v;
            for (int e = 0; e < 3; ++e) directed.insert({v[e], v[(e + 1) % 3]});
        }
        for (std::size_t i : cavity) tris_[i].alive = false;
        dead_ += cavity.size();
        for (const auto& [u, w] : directed) {
            if (directed.count({w, u})) continue;
            tris_.push_back(GTri{{u, w, p}});
        }
        if (dead_ > tris_.size() / 2 && tris_.size() > 64) {
            std::erase_if(tris_, [](const GTri& t) { return !t.alive; });
            dead_ = 0;
        }
    }

    const std::vector<Point2>& pts_;
    std::vector<GTri> tris_;
    std::size_t dead_ = 0;
};

}  // namespace detail

/**
 * Delaunay triangulation of the convex hull of the input points: every
 * triangle's open circumdisk contains no input point. Cocircular ties break
 * deterministically toward the lexicographically smallest vertex of the tied
 * polygon, so the triangle set is independent of input order.
 *
 * Vertices in the resulting mesh keep the input order (first occurrence of
 * each deduplicated point).
 */
inline TriMesh delaunay(const std::vector<Point2>& points,
                        const TriangulationConfig& cfg = TriangulationConfig{}) {
    if (!(cfg.dedup_tolerance > 0.0))
        throw std::invalid_argument("dedup_tolerance must be positive");

    // Merge near-duplicates, first occurrence wins.
    std::vector<Point2> kept;
    for (const Point2& p : points) {
        bool duplicate = false;
        for (const Point2& q : kept)
            if (distance(p, q) < cfg.dedup_tolerance) {
                duplicate = true;
                break;
            }
        if (!duplicate) kept.push_back(p);
    }
    if (kept.size() < 3) throw std::invalid_argument("insufficient points");

    // Lexicographic order fixes both insertion order and perturbation ranks.
    std::vector<std::uint32_t> by_rank(kept.size());
    std::iota(by_rank.begin(), by_rank.end(), 0u);
    std::sort(by_rank.begin(), by_rank.end(),
              [&](std::uint32_t a, std::uint32_t b) { return lex_less(kept[a], kept[b]); });
    std::vector<Point2> sorted;
    sorted.reserve(kept.size());
    for (std::uint32_t id : by_rank) sorted.push_back(kept[id]);

    detail::DelaunayBuilder builder(sorted);
    const auto sorted_tris = builder.build();

    std::vector<std::array<VertexId, 3>> tris;
    tris.reserve(sorted_tris.size());
    for (const auto& t : sorted_tris) {
        std::array<VertexId, 3> m = {by_rank[t[0]], by_rank[t[1]], by_rank[t[2]]};
        // Canonical rotation: smallest id first, cyclic (CCW) order preserved.
        const int lo = static_cast<int>(std::min_element(m.begin(), m.end()) - m.begin());
        std::array<VertexId, 3> r = {m[lo], m[(lo + 1) % 3], m[(lo + 2) % 3]};
        tris.push_back(r);
    }
    std::sort(tris.begin(), tris.end());
    return TriMesh(std::move(kept), tris, cfg.dedup_tolerance);
}

/**
 * Image meshing: selects up to k keypoints, injects the four image corners
 * so the mesh spans the full image rectangle, and triangulates. All mesh
 * coordinates are pixel coordinates.
 */
inline TriMesh triangulate_image(const GrayImage& image, std::size_t k,
                                 const TriangulationConfig& cfg = TriangulationConfig{}) {
    if (k < 3) throw std::invalid_argument("insufficient points");
    std::vector<Point2> points;
    for (const Keypoint& kp : select_keypoints(image, k)) points.push_back(kp.position);
    const double w = image.width - 1, h = image.height - 1;
    points.push_back(Point2(0, 0));
    points.push_back(Point2(w, 0));
    points.push_back(Point2(w, h));
    points.push_back(Point2(0, h));
    return delaunay(points, cfg);
}

}  // namespace nervetopo

#endif  // NERVETOPO_TRIANGULATION_HPP
