#ifndef NERVETOPO_TESTS_HELPERS_HPP
#define NERVETOPO_TESTS_HELPERS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <nervetopo/image.hpp>
#include <nervetopo/mesh.hpp>
#include <nervetopo/triangulation.hpp>

namespace fixtures {

using nervetopo::GrayImage;
using nervetopo::Point2;
using nervetopo::SimplexSet;
using nervetopo::TriId;
using nervetopo::TriMesh;
using nervetopo::VertexId;

/** Regular n-fan around the origin: vertex 0 is the hub, 1..n the rim. */
inline TriMesh fan_mesh(int n, double radius = 1.0) {
    std::vector<Point2> vertices;
    vertices.emplace_back(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / n;
        vertices.emplace_back(radius * std::cos(theta), radius * std::sin(theta));
    }
    std::vector<std::array<VertexId, 3>> triangles;
    for (int i = 0; i < n; ++i)
        triangles.push_back({0, static_cast<VertexId>(1 + i),
                             static_cast<VertexId>(1 + (i + 1) % n)});
    return TriMesh(std::move(vertices), triangles);
}

/** Unit square split by the lex-min diagonal: triangles (0,1,2) and (0,2,3). */
inline TriMesh square_mesh() {
    return TriMesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
}

/** Two fans far apart in one mesh; hub of the second fan sits at (dx, 0). */
inline TriMesh two_fans_mesh(int n1, int n2, double dx = 100.0) {
    std::vector<Point2> vertices;
    std::vector<std::array<VertexId, 3>> triangles;
    auto add_fan = [&](int n, double cx) {
        const VertexId hub = static_cast<VertexId>(vertices.size());
        vertices.emplace_back(cx, 0.0);
        for (int i = 0; i < n; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / n;
            vertices.emplace_back(cx + std::cos(theta), std::sin(theta));
        }
        for (int i = 0; i < n; ++i)
            triangles.push_back({hub, static_cast<VertexId>(hub + 1 + i),
                                 static_cast<VertexId>(hub + 1 + (i + 1) % n)});
    };
    add_fan(n1, 0.0);
    add_fan(n2, dx);
    return TriMesh(std::move(vertices), triangles);
}

/**
 * Hub + hexagonal inner ring + hexagonal outer ring. The 12 band triangles
 * (ids 6..17) form an annulus once the 6 hub triangles are dropped.
 */
inline TriMesh ring_mesh() {
    std::vector<Point2> vertices;
    vertices.emplace_back(0.0, 0.0);
    for (int ring = 0; ring < 2; ++ring)
        for (int i = 0; i < 6; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / 6;
            const double r = ring == 0 ? 1.0 : 2.0;
            vertices.emplace_back(r * std::cos(theta), r * std::sin(theta));
        }
    std::vector<std::array<VertexId, 3>> triangles;
    auto inner = [](int i) { return static_cast<VertexId>(1 + (i % 6)); };
    auto outer = [](int i) { return static_cast<VertexId>(7 + (i % 6)); };
    for (int i = 0; i < 6; ++i) triangles.push_back({0, inner(i), inner(i + 1)});
    for (int i = 0; i < 6; ++i) {
        triangles.push_back({inner(i), outer(i), outer(i + 1)});
        triangles.push_back({inner(i), outer(i + 1), inner(i + 1)});
    }
    return TriMesh(std::move(vertices), triangles);
}

/** The 12 annulus triangles of ring_mesh(). */
inline SimplexSet ring_band() {
    std::vector<TriId> ids;
    for (TriId t = 6; t < 18; ++t) ids.push_back(t);
    return SimplexSet(std::move(ids));
}

/** Two triangles pinched at the shared origin vertex. */
inline TriMesh bowtie_mesh() {
    return TriMesh({{0, 0}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}},
                   {{0, 2, 1}, {0, 3, 4}});
}

inline std::vector<Point2> random_points(std::uint64_t seed, std::size_t n, double span = 100.0) {
    std::mt19937_64 rng(seed);
    auto coord = [&] { return (rng() >> 11) * (1.0 / 9007199254740992.0) * span; };
    std::vector<Point2> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = coord();
        const double y = coord();
        pts.emplace_back(x, y);
    }
    return pts;
}

inline TriMesh random_mesh(std::uint64_t seed, std::size_t n_points) {
    return nervetopo::delaunay(random_points(seed, n_points));
}

/** Nonempty random triangle subset, id-deterministic for a fixed rng state. */
inline SimplexSet random_subset(std::mt19937_64& rng, TriId triangle_count,
                                std::size_t max_size = 8) {
    const std::size_t size =
        1 + static_cast<std::size_t>(rng() % std::min<std::size_t>(max_size, triangle_count));
    SimplexSet s;
    while (s.size() < size) s.insert(static_cast<TriId>(rng() % triangle_count));
    return s;
}

// ---------------------------------------------------------------------------
// Image fixtures.
// ---------------------------------------------------------------------------

inline GrayImage constant_image(int w, int h, double v) {
    return GrayImage(w, h, std::vector<double>(static_cast<std::size_t>(w) * h, v));
}

/** Left half 0, right half 1. */
inline GrayImage vstep_image(int w, int h) {
    std::vector<double> vals(static_cast<std::size_t>(w) * h, 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = w / 2; x < w; ++x) vals[static_cast<std::size_t>(y) * w + x] = 1.0;
    return GrayImage(w, h, std::move(vals));
}

/** Top half 0, bottom half 1. */
inline GrayImage hstep_image(int w, int h) {
    std::vector<double> vals(static_cast<std::size_t>(w) * h, 0.0);
    for (int y = h / 2; y < h; ++y)
        for (int x = 0; x < w; ++x) vals[static_cast<std::size_t>(y) * w + x] = 1.0;
    return GrayImage(w, h, std::move(vals));
}

inline GrayImage noise_image(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> vals(static_cast<std::size_t>(w) * h);
    for (double& v : vals) v = (rng() >> 11) * (1.0 / 9007199254740992.0);
    return GrayImage(w, h, std::move(vals));
}

/** White disk on black with a smooth radial edge of the given width. */
inline GrayImage disk_image(int size, double cx, double cy, double radius, double edge_width) {
    std::vector<double> vals(static_cast<std::size_t>(size) * size, 0.0);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double d = std::hypot(x - cx, y - cy);
            const double v = (radius + 0.5 * edge_width - d) / edge_width;
            vals[static_cast<std::size_t>(y) * size + x] = std::clamp(v, 0.0, 1.0);
        }
    return GrayImage(size, size, std::move(vals));
}

}  // namespace fixtures

// ---------------------------------------------------------------------------
// Independent brute-force Delaunay oracle. Exact rational arithmetic through
// a different determinant route than the library predicates.
// ---------------------------------------------------------------------------

namespace oracle {

using bigrat = boost::multiprecision::cpp_rational;
using nervetopo::Point2;
using nervetopo::TriMesh;
using nervetopo::VertexId;

inline int orient_sign(const Point2& a, const Point2& b, const Point2& c) {
    const bigrat det = (bigrat(a.x) - bigrat(c.x)) * (bigrat(b.y) - bigrat(c.y)) -
                       (bigrat(a.y) - bigrat(c.y)) * (bigrat(b.x) - bigrat(c.x));
    return det > 0 ? 1 : det < 0 ? -1 : 0;
}

/** Sign of the raw 4x4 lifted determinant, Laplace expansion along row d. */
inline int incircle_sign(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const std::array<Point2, 4> p = {a, b, c, d};
    std::array<std::array<bigrat, 4>, 4> m;
    for (int i = 0; i < 4; ++i) {
        m[i][0] = bigrat(p[i].x);
        m[i][1] = bigrat(p[i].y);
        m[i][2] = bigrat(p[i].x) * bigrat(p[i].x) + bigrat(p[i].y) * bigrat(p[i].y);
        m[i][3] = 1;
    }
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    bigrat det = 0;
    for (int col = 0; col < 4; ++col) {
        std::array<int, 3> cols{};
        int k = 0;
        for (int cc = 0; cc < 4; ++cc)
            if (cc != col) cols[k++] = cc;
        const bigrat minor = det3(0, 1, 2, cols[0], cols[1], cols[2]);
        const bigrat term = m[3][col] * minor;
        det += ((3 + col) % 2 == 0) ? term : -term;
    }
    return det > 0 ? 1 : det < 0 ? -1 : 0;
}

/** All CCW triples whose open circumdisk is empty (exact), canonical form. */
inline std::vector<std::array<VertexId, 3>> empty_circumdisk_triangles(
    const std::vector<Point2>& pts) {
    std::vector<std::array<VertexId, 3>> out;
    const std::size_t n = pts.size();
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j)
            for (VertexId k = j + 1; k < n; ++k) {
                int o = orient_sign(pts[i], pts[j], pts[k]);
                if (o == 0) continue;
                std::array<VertexId, 3> t = o > 0 ? std::array<VertexId, 3>{i, j, k}
                                                  : std::array<VertexId, 3>{i, k, j};
                bool empty_disk = true;
                for (VertexId d = 0; d < n; ++d) {
                    if (d == i || d == j || d == k) continue;
                    if (incircle_sign(pts[t[0]], pts[t[1]], pts[t[2]], pts[d]) > 0) {
                        empty_disk = false;
                        break;
                    }
                }
                if (empty_disk) out.push_back(t);
            }
    return out;
}

/** Whether any four points are exactly cocircular (with an orientable triple). */
inline bool has_cocircular_tie(const std::vector<Point2>& pts) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (orient_sign(pts[i], pts[j], pts[k]) == 0) continue;
                for (std::size_t d = k + 1; d < n; ++d)
                    if (incircle_sign(pts[i], pts[j], pts[k], pts[d]) == 0) return true;
            }
    return false;
}

/** Twice the convex hull area, exact. */
inline bigrat hull_area_doubled(const std::vector<Point2>& pts) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return nervetopo::lex_less(pts[a], pts[b]) ||
               (pts[a] == pts[b] && a < b);
    });
    auto build = [&](int turn) {
        std::vector<std::size_t> chain;
        for (std::size_t id : idx) {
            while (chain.size() >= 2 &&
                   orient_sign(pts[chain[chain.size() - 2]], pts[chain.back()], pts[id]) != turn)
                chain.pop_back();
            chain.push_back(id);
        }
        return chain;
    };
    std::vector<std::size_t> lower = build(1), upper = build(-1);
    lower.pop_back();  // drop the max point; the upper chain contributes it
    std::reverse(upper.begin(), upper.end());
    upper.pop_back();  // drop the min point; the lower chain already has it
    lower.insert(lower.end(), upper.begin(), upper.end());

    bigrat area2 = 0;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        const Point2& p = pts[lower[i]];
        const Point2& q = pts[lower[(i + 1) % lower.size()]];
        area2 += bigrat(p.x) * bigrat(q.y) - bigrat(p.y) * bigrat(q.x);
    }
    return area2 < 0 ? -area2 : area2;
}

struct CheckResult {
    bool ok = true;
    std::string message;
};

/**
 * Verifies a Delaunay output against this oracle. In general position the
 * output must equal the empty-circumdisk triangle set exactly; under
 * cocircular ties every output triangle must still have an empty open
 * circumdisk and the triangles must tile the hull exactly (exact area sum).
 */
inline CheckResult check_against_bruteforce(const std::vector<Point2>& pts, const TriMesh& mesh) {
    std::vector<std::array<VertexId, 3>> got;
    for (const nervetopo::Triangle& t : mesh.triangles()) got.push_back({t.a, t.b, t.c});
    std::sort(got.begin(), got.end());

    std::vector<std::array<VertexId, 3>> want = empty_circumdisk_triangles(pts);
    std::sort(want.begin(), want.end());

    if (!has_cocircular_tie(pts)) {
        if (got != want)
            return {false, "triangle set differs from the brute-force Delaunay set"};
        return {};
    }
    for (const auto& t : got)
        if (!std::binary_search(want.begin(), want.end(), t))
            return {false, "output triangle has a nonempty open circumdisk"};
    bigrat covered = 0;
    for (const auto& t : got) {
        const Point2 &a = pts[t[0]], &b = pts[t[1]], &c = pts[t[2]];
        bigrat area2 = (bigrat(b.x) - bigrat(a.x)) * (bigrat(c.y) - bigrat(a.y)) -
                       (bigrat(b.y) - bigrat(a.y)) * (bigrat(c.x) - bigrat(a.x));
        covered += area2 < 0 ? -area2 : area2;
    }
    if (covered != hull_area_doubled(pts))
        return {false, "triangles do not tile the convex hull exactly"};
    return {};
}

}  // namespace oracle

#endif  // NERVETOPO_TESTS_HELPERS_HPP
