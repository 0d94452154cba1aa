#ifndef NERVETOPO_PROXIMITY_HPP
#define NERVETOPO_PROXIMITY_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nervetopo/descriptor.hpp>
#include <nervetopo/mesh.hpp>

namespace nervetopo {

enum class RelationKind { near, dnear, sn, snd };

inline const char* relation_name(RelationKind kind) {
    switch (kind) {
        case RelationKind::near: return "near";
        case RelationKind::dnear: return "dnear";
        case RelationKind::sn: return "sn";
        default: return "snd";
    }
}

inline RelationKind relation_from_name(const std::string& name) {
    if (name == "near") return RelationKind::near;
    if (name == "dnear") return RelationKind::dnear;
    if (name == "sn") return RelationKind::sn;
    if (name == "snd") return RelationKind::snd;
    throw std::invalid_argument("unknown relation: " + name);
}

inline bool is_descriptive(RelationKind kind) {
    return kind == RelationKind::dnear || kind == RelationKind::snd;
}

/** A bundle of proximity relations endowed on one space. */
struct Relator {
    std::vector<RelationKind> relations;

    explicit Relator(std::vector<RelationKind> rels) : relations(std::move(rels)) {
        if (relations.empty()) throw std::invalid_argument("relator must be nonempty");
    }
};

/**
 * Spatial proximity: the closed regions meet, i.e. the triangle sets share
 * support vertices. Empty arguments are never near anything.
 */
inline bool near(const TriMesh& mesh, const SimplexSet& A, const SimplexSet& B) {
    if (A.empty() || B.empty()) return false;
    const std::vector<VertexId> va = closure_vertices(mesh, A);
    const std::vector<VertexId> vb = closure_vertices(mesh, B);
    std::vector<VertexId> common;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
    return !common.empty();
}

/** Strong proximity: overlapping interiors, i.e. a shared triangle. */
inline bool strongly_near(const TriMesh& mesh, const SimplexSet& A, const SimplexSet& B) {
    if (A.empty() || B.empty()) return false;
    return interiors_overlap(mesh, A, B);
}

namespace detail {
inline const DescriptorMap& require_triangle_phi(const DescriptorMap& phi) {
    if (phi.domain() != DescriptorDomain::triangle)
        throw std::invalid_argument("set-level descriptive relations need a triangle-domain map");
    return phi;
}

inline std::vector<QuantizedVector> description_set(const SimplexSet& s, const DescriptorMap& phi) {
    std::vector<QuantizedVector> out;
    for (TriId t : s) out.push_back(phi.quantized(t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}
}  // namespace detail

/**
 * Descriptive intersection: the elements of A union B whose descriptor
 * occurs in both description sets Phi(A) and Phi(B).
 */
inline SimplexSet desc_intersection(const TriMesh& mesh, const SimplexSet& A, const SimplexSet& B,
                                    const DescriptorMap& phi) {
    detail::require_triangle_phi(phi);
    if (!A.empty()) detail::require_valid(mesh, A);
    if (!B.empty()) detail::require_valid(mesh, B);
    const auto da = detail::description_set(A, phi);
    const auto db = detail::description_set(B, phi);
    std::vector<QuantizedVector> both;
    std::set_intersection(da.begin(), da.end(), db.begin(), db.end(), std::back_inserter(both));

    SimplexSet out;
    for (TriId t : simplex_union(A, B))
        if (std::binary_search(both.begin(), both.end(), phi.quantized(t))) out.insert(t);
    return out;
}

/** Descriptive proximity: some element of A matches some element of B. */
inline bool dnear(const TriMesh& mesh, const SimplexSet& A, const SimplexSet& B,
                  const DescriptorMap& phi) {
    if (A.empty() || B.empty()) return false;
    return !desc_intersection(mesh, A, B, phi).empty();
}

/**
 * Descriptive strong proximity: the interior supports (the triangle sets
 * themselves) contain descriptively matching elements.
 */
inline bool snd(const TriMesh& mesh, const SimplexSet& A, const SimplexSet& B,
                const DescriptorMap& phi) {
    if (A.empty() || B.empty()) return false;
    detail::require_triangle_phi(phi);
    const auto da = detail::description_set(A, phi);
    for (TriId t : B)
        if (std::binary_search(da.begin(), da.end(), phi.quantized(t))) return true;
    return false;
}

/** Point-level strong proximity at vertex granularity: v strongly contacts A
 * exactly when some triangle of A is incident to v. */
inline bool vertex_strongly_near(const TriMesh& mesh, VertexId v, const SimplexSet& A) {
    if (A.empty()) return false;
    const std::vector<VertexId> support = closure_vertices(mesh, A);
    return std::binary_search(support.begin(), support.end(), v);
}

/** Point-level descriptive strong proximity: equal quantized descriptors. */
inline bool vertex_snd(const DescriptorMap& vertex_phi, VertexId x, VertexId y) {
    if (vertex_phi.domain() != DescriptorDomain::vertex)
        throw std::invalid_argument("vertex_snd needs a vertex-domain map");
    return vertex_phi.quantized(x) == vertex_phi.quantized(y);
}

/**
 * Default geometric descriptor: per-triangle (centroid x, centroid y, area)
 * normalized over the mesh bounding box and the largest triangle, then
 * quantized. Deterministic for a fixed mesh.
 */
inline DescriptorMap default_triangle_descriptors(const TriMesh& mesh, int bins_per_channel = 8) {
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
    const double span_x = max_x > min_x ? max_x - min_x : 1.0;
    const double span_y = max_y > min_y ? max_y - min_y : 1.0;
    double max_area = 0.0;
    for (TriId t = 0; t < mesh.triangle_count(); ++t)
        max_area = std::max(max_area, triangle_area(mesh, t));
    if (max_area <= 0.0) max_area = 1.0;

    DescriptorMap phi(DescriptorDomain::triangle, bins_per_channel);
    for (TriId t = 0; t < mesh.triangle_count(); ++t) {
        const Point2 c = triangle_centroid(mesh, t);
        phi.set(t, FeatureVector{(c.x - min_x) / span_x, (c.y - min_y) / span_y,
                                 triangle_area(mesh, t) / max_area});
    }
    return phi;
}

/** One violated axiom instance with its witness sets. */
struct AxiomViolation {
    std::string axiom;
    std::string witness;
};

/** Outcome of an axiom_suite run. */
struct ConformanceReport {
    std::string relation;
    int trials = 0;
    std::vector<AxiomViolation> violations;

    bool ok() const { return violations.empty(); }
};

/** Custom evaluation hook; lets tests inject deliberately broken relations. */
using RelationFn = std::function<bool(const TriMesh&, const SimplexSet&, const SimplexSet&)>;

namespace detail {

inline std::string set_to_string(const SimplexSet& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (TriId t : s) {
        if (!first) os << ",";
        os << t;
        first = false;
    }
    os << "}";
    return os.str();
}

struct SetSampler {
    explicit SetSampler(std::uint64_t seed, TriId triangle_count)
        : rng(seed), count(triangle_count) {}

    std::uint64_t next(std::uint64_t bound) { return rng() % bound; }

    SimplexSet sample() {
        const std::size_t max_size = std::min<std::size_t>(8, count);
        const std::size_t size = 1 + static_cast<std::size_t>(next(max_size));
        SimplexSet s;
        while (s.size() < size) s.insert(static_cast<TriId>(next(count)));
        return s;
    }

    std::mt19937_64 rng;
    TriId count;
};

}  // namespace detail

/**
 * Randomized axiom conformance harness. Samples nonempty triangle sets and
 * asserts every applicable axiom instance for the chosen relation:
 * emptiness, symmetry, the intersection implications, union distribution,
 * the interior implication, and the Lodato transfer. Violations are
 * reported with witnesses rather than thrown.
 *
 * An override relation (fault injection) replaces only the relation's own
 * truth value; premises keep the honest machinery.
 */
inline ConformanceReport axiom_suite(const TriMesh& mesh, RelationKind kind,
                                     const DescriptorMap* phi, int trials, std::uint64_t seed,
                                     const RelationFn& override_eval = {}) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (is_descriptive(kind) && phi == nullptr)
        throw std::invalid_argument("descriptive relations require a descriptor map");
    if (mesh.triangle_count() == 0) throw std::invalid_argument("empty mesh");

    const auto rel = [&](const SimplexSet& A, const SimplexSet& B) {
        if (override_eval) return override_eval(mesh, A, B);
        switch (kind) {
            case RelationKind::near: return near(mesh, A, B);
            case RelationKind::dnear: return dnear(mesh, A, B, *phi);
            case RelationKind::sn: return strongly_near(mesh, A, B);
            default: return snd(mesh, A, B, *phi);
        }
    };

    ConformanceReport report;
    report.relation = relation_name(kind);
    report.trials = trials;

    detail::SetSampler sampler(seed, static_cast<TriId>(mesh.triangle_count()));
    const SimplexSet whole = mesh.all_triangles();
    const SimplexSet empty_set;

    auto violate = [&](const char* axiom, const SimplexSet& A, const SimplexSet& B) {
        report.violations.push_back(AxiomViolation{
            axiom, "A=" + detail::set_to_string(A) + " B=" + detail::set_to_string(B)});
    };

    for (int trial = 0; trial < trials; ++trial) {
        const SimplexSet A = sampler.sample();
        const SimplexSet B = sampler.sample();
        // Bias C toward supersets of B so the transfer premises fire.
        SimplexSet C = sampler.sample();
        if (sampler.next(3) == 0) C = simplex_union(B, C);
        const SimplexSet D = sampler.sample();

        // Emptiness axioms (P1 / dP0 / snN0 / dsnN0).
        if (rel(empty_set, A) || rel(A, empty_set)) violate("emptiness", empty_set, A);
        if (kind == RelationKind::sn || kind == RelationKind::snd)
            if (!rel(whole, A)) violate("whole-space", whole, A);

        // Symmetry (P2 / dP1 / snN1 / dsnN1).
        if (rel(A, B) != rel(B, A)) violate("symmetry", A, B);

        // Intersection implications (P3 / dP2 / snN2 / dsnN2).
        switch (kind) {
            case RelationKind::near:
                if (!simplex_intersection(A, B).empty() && !rel(A, B))
                    violate("P3-intersection", A, B);
                break;
            case RelationKind::dnear:
                if (!desc_intersection(mesh, A, B, *phi).empty() && !rel(A, B))
                    violate("dP2-descriptive-intersection", A, B);
                break;
            case RelationKind::sn:
                if (rel(A, B) && simplex_intersection(A, B).empty())
                    violate("snN2-shared-points", A, B);
                break;
            default:
                if (rel(A, B) && desc_intersection(mesh, A, B, *phi).empty())
                    violate("dsnN2-descriptive-intersection", A, B);
                break;
        }

        // Union distribution (P4 / dP3 biconditional; snN3 / dsnN3 one-way
        // over a sampled three-member family).
        const SimplexSet bc = simplex_union(B, C);
        if (kind == RelationKind::near || kind == RelationKind::dnear) {
            if (rel(A, bc) != (rel(A, B) || rel(A, C))) violate("union-distribution", A, bc);
        } else {
            const SimplexSet family = simplex_union(bc, D);
            if ((rel(A, B) || rel(A, C) || rel(A, D)) && !rel(A, family))
                violate("union-family", A, family);
        }

        // Interior implications (snN4 / dsnN4).
        if (kind == RelationKind::sn && interiors_overlap(mesh, A, B) && !rel(A, B))
            violate("snN4-interior-overlap", A, B);
        if (kind == RelationKind::snd && !desc_intersection(mesh, A, B, *phi).empty() &&
            !rel(A, B))
            violate("dsnN4-interior-descriptive", A, B);

        // Lodato transfer (P5 at vertex granularity, dP4 at element level).
        if (kind == RelationKind::near && rel(A, B)) {
            const auto sb = closure_vertices(mesh, B);
            const auto sc = closure_vertices(mesh, C);
            if (std::includes(sc.begin(), sc.end(), sb.begin(), sb.end()) && !rel(A, C))
                violate("P5-lodato-transfer", A, C);
        }
        if (kind == RelationKind::dnear && rel(A, B)) {
            const auto dc = detail::description_set(C, *phi);
            bool all_in = true;
            for (TriId t : B)
                if (!std::binary_search(dc.begin(), dc.end(), phi->quantized(t))) all_in = false;
            if (all_in && !rel(A, C)) violate("dP4-lodato-transfer", A, C);
        }
    }
    return report;
}

/** Pairwise relation values plus the implication chain among them. */
struct RelatorReport {
    bool near_held = false;
    bool dnear_held = false;
    bool sn_held = false;
    bool snd_held = false;
    std::vector<std::string> broken;

    bool ok() const { return broken.empty(); }
};

/**
 * Evaluates all four relations on (A, B) and checks the proximal relator
 * implications: sn forces near and dnear, and snd forces dnear.
 */
inline RelatorReport relator_check(const TriMesh& mesh, const SimplexSet& A, const SimplexSet& B,
                                   const DescriptorMap& phi) {
    RelatorReport r;
    r.near_held = near(mesh, A, B);
    r.dnear_held = dnear(mesh, A, B, phi);
    r.sn_held = strongly_near(mesh, A, B);
    r.snd_held = snd(mesh, A, B, phi);
    if (r.sn_held && !r.near_held) r.broken.push_back("sn => near");
    if (r.sn_held && !r.dnear_held) r.broken.push_back("sn => dnear");
    if (r.snd_held && !r.dnear_held) r.broken.push_back("snd => dnear");
    return r;
}

}  // namespace nervetopo

#endif  // NERVETOPO_PROXIMITY_HPP
