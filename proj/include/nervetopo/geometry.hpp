#ifndef NERVETOPO_GEOMETRY_HPP
#define NERVETOPO_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace nervetopo {

/** A point in the Euclidean plane (pixel or abstract units). */
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double px, double py) : x(px), y(py) {
        if (!std::isfinite(px) || !std::isfinite(py))
            throw std::invalid_argument("Point2 coordinates must be finite");
    }

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
};

inline double distance(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/** Lexicographic (x, then y) comparison; the canonical point order. */
inline bool lex_less(const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

namespace detail {

using bigrat = boost::multiprecision::cpp_rational;

// Static filter constants from Shewchuk's robust predicates.
inline constexpr double kEps = 1.0 / 9007199254740992.0;  // 2^-53
inline constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
inline constexpr double kIccErrBound = (10.0 + 96.0 * kEps) * kEps;

inline int sign_of(const bigrat& v) {
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

inline bigrat orient_det_exact(const Point2& a, const Point2& b, const Point2& c) {
    const bigrat ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

inline bigrat incircle_det_exact(const Point2& a, const Point2& b, const Point2& c,
                                 const Point2& d) {
    const bigrat adx = bigrat(a.x) - bigrat(d.x);
    const bigrat ady = bigrat(a.y) - bigrat(d.y);
    const bigrat bdx = bigrat(b.x) - bigrat(d.x);
    const bigrat bdy = bigrat(b.y) - bigrat(d.y);
    const bigrat cdx = bigrat(c.x) - bigrat(d.x);
    const bigrat cdy = bigrat(c.y) - bigrat(d.y);
    return (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
           (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
           (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
}

}  // namespace detail

/**
 * Sign of the orientation determinant: +1 if (a,b,c) turn counterclockwise,
 * -1 clockwise, 0 collinear. Double fast path with an exact rational
 * fallback when the filter cannot certify the sign.
 */
inline int orient2d(const Point2& a, const Point2& b, const Point2& c) {
    const double detleft = (b.x - a.x) * (c.y - a.y);
    const double detright = (b.y - a.y) * (c.x - a.x);
    const double det = detleft - detright;
    const double detsum = std::fabs(detleft) + std::fabs(detright);
    const double errbound = detail::kCcwErrBound * detsum;
    if (det > errbound) return 1;
    if (-det > errbound) return -1;
    return detail::sign_of(detail::orient_det_exact(a, b, c));
}

/**
 * Sign of the incircle determinant for a counterclockwise triangle (a,b,c):
 * +1 if d lies strictly inside the open circumdisk, -1 strictly outside,
 * 0 cocircular. Filtered like orient2d.
 */
inline int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                       clift * (adxbdy - bdxady);
    const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                             (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                             (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
    const double errbound = detail::kIccErrBound * permanent;
    if (det > errbound) return 1;
    if (-det > errbound) return -1;
    return detail::sign_of(detail::incircle_det_exact(a, b, c, d));
}

/**
 * Incircle with symbolic perturbation. Ranks are the lexicographic ranks of
 * the four points within the point set being triangulated; cocircular ties
 * resolve as if point of rank r were lifted by an infinitesimal weight
 * eps^(r+1), which fans cocircular polygons around their lexicographically
 * smallest vertex. Never returns 0 for four distinct points.
 */
inline int incircle_perturbed(const Point2& a, const Point2& b, const Point2& c, const Point2& d,
                              std::uint32_t rank_a, std::uint32_t rank_b, std::uint32_t rank_c,
                              std::uint32_t rank_d) {
    const int s = incircle(a, b, c, d);
    if (s != 0) return s;

    // det' = det - sum_i w_i * C_i with C_i the z-column cofactor of row i.
    // The smallest rank (largest weight) with a nonzero cofactor decides.
    struct Entry {
        std::uint32_t rank;
        int row;
    };
    Entry order[4] = {{rank_a, 0}, {rank_b, 1}, {rank_c, 2}, {rank_d, 3}};
    for (int i = 1; i < 4; ++i)
        for (int j = i; j > 0 && order[j].rank < order[j - 1].rank; --j)
            std::swap(order[j], order[j - 1]);

    for (const Entry& e : order) {
        detail::bigrat cof;
        switch (e.row) {
            case 0: cof = detail::orient_det_exact(b, c, d); break;
            case 1: cof = -detail::orient_det_exact(a, c, d); break;
            case 2: cof = detail::orient_det_exact(a, b, d); break;
            default: cof = -detail::orient_det_exact(a, b, c); break;
        }
        const int cs = detail::sign_of(cof);
        if (cs != 0) return -cs;
    }
    return 0;  // all four collinear; unreachable for a valid CCW triangle
}

}  // namespace nervetopo

#endif  // NERVETOPO_GEOMETRY_HPP
