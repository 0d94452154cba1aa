#ifndef NERVETOPO_NERVE_HPP
#define NERVETOPO_NERVE_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nervetopo/descriptor.hpp>
#include <nervetopo/mesh.hpp>

namespace nervetopo {

/**
 * Nerve complex: the star of a vertex. The nucleus is common to every
 * triangle of spokes1, so the closed triangles have nonempty intersection.
 */
struct NerveComplex {
    VertexId nucleus = 0;
    SimplexSet spokes1;

    std::size_t spoke_count() const { return spokes1.size(); }

    friend bool operator==(const NerveComplex& a, const NerveComplex& b) {
        return a.nucleus == b.nucleus && a.spokes1 == b.spokes1;
    }
};

/** One maximal sub-collection of a family whose members share support. */
struct ClosureNerveGroup {
    /** Indices into the input family, ascending. */
    std::vector<std::size_t> members;
    /** Union of the member triangle sets. */
    SimplexSet support;
};

/** Grouping of a family into maximal common-support sub-collections. */
struct ClosureNerveFamily {
    std::vector<ClosureNerveGroup> groups;
};

/** The nerve at v: all triangles incident to v. */
inline NerveComplex nerve_at(const TriMesh& mesh, VertexId v) {
    const std::vector<TriId>& star = mesh.star(v);
    if (star.empty()) throw std::invalid_argument("empty nerve");
    return NerveComplex{v, SimplexSet(star)};
}

/** One nerve per vertex with at least one incident triangle, by vertex id. */
inline std::vector<NerveComplex> all_nerves(const TriMesh& mesh) {
    if (mesh.triangle_count() == 0) throw std::invalid_argument("empty mesh");
    std::vector<NerveComplex> out;
    for (VertexId v = 0; v < mesh.vertex_count(); ++v)
        if (!mesh.star(v).empty()) out.push_back(nerve_at(mesh, v));
    return out;
}

/** The nerve with the most triangles; ties go to the smallest nucleus id. */
inline NerveComplex maximal_nerve(const TriMesh& mesh) {
    if (mesh.triangle_count() == 0) throw std::invalid_argument("empty mesh");
    VertexId best = 0;
    std::size_t best_size = 0;
    for (VertexId v = 0; v < mesh.vertex_count(); ++v) {
        const std::size_t s = mesh.star(v).size();
        if (s > best_size) {
            best = v;
            best_size = s;
        }
    }
    if (best_size == 0) throw std::invalid_argument("empty mesh");
    return nerve_at(mesh, best);
}

/** Separated triangles share no vertex. */
inline bool separated(const TriMesh& mesh, TriId t1, TriId t2) {
    if (t1 == t2) throw std::invalid_argument("separated requires distinct triangles");
    const Triangle& a = mesh.triangle(t1);
    const Triangle& b = mesh.triangle(t2);
    for (VertexId v : {a.a, a.b, a.c})
        if (b.has_vertex(v)) return false;
    return true;
}

/** Multi-nerve check: a separated pair forces at least two distinct nerves. */
struct NerveCountReport {
    bool witness_found = false;
    TriId witness_t1 = 0, witness_t2 = 0;
    bool passed = true;
    std::string detail;
};

/**
 * Scans for a separated triangle pair and, when one exists, certifies that
 * the two triangles belong to nerves with distinct nuclei and that the mesh
 * carries at least two distinct maximal-by-inclusion nerves. A mesh without
 * separated pairs passes vacuously.
 */
inline NerveCountReport nerve_count_lower_bound(const TriMesh& mesh) {
    NerveCountReport report;
    const TriId n = static_cast<TriId>(mesh.triangle_count());
    for (TriId i = 0; i < n && !report.witness_found; ++i)
        for (TriId j = i + 1; j < n; ++j)
            if (separated(mesh, i, j)) {
                report.witness_found = true;
                report.witness_t1 = i;
                report.witness_t2 = j;
                break;
            }
    if (!report.witness_found) {
        report.detail = "no separated pair; vacuous pass";
        return report;
    }

    const Triangle& t1 = mesh.triangle(report.witness_t1);
    const Triangle& t2 = mesh.triangle(report.witness_t2);
    for (VertexId u : {t1.a, t1.b, t1.c})
        for (VertexId w : {t2.a, t2.b, t2.c})
            if (nerve_at(mesh, u).nucleus == nerve_at(mesh, w).nucleus) report.passed = false;

    // Maximal-by-inclusion nerves: stars not strictly contained in another star.
    std::vector<NerveComplex> maximal;
    for (const NerveComplex& nv : all_nerves(mesh)) {
        bool dominated = false;
        for (VertexId u = 0; u < mesh.vertex_count() && !dominated; ++u) {
            if (u == nv.nucleus || mesh.star(u).empty()) continue;
            const SimplexSet other(mesh.star(u));
            if (other.size() > nv.spokes1.size() &&
                simplex_intersection(nv.spokes1, other).size() == nv.spokes1.size())
                dominated = true;
        }
        if (!dominated) maximal.push_back(nv);
    }
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        bool dup = false;
        for (std::size_t j = 0; j < i; ++j)
            if (maximal[j].spokes1 == maximal[i].spokes1) dup = true;
        if (!dup) ++distinct;
    }
    if (distinct < 2) {
        report.passed = false;
        report.detail = "separated pair found but fewer than two maximal nerves";
    } else {
        report.detail = "witness triangles " + std::to_string(report.witness_t1) + "," +
                        std::to_string(report.witness_t2) + "; distinct maximal nerves: " +
                        std::to_string(distinct);
    }
    return report;
}

namespace detail {

// Maximal groups of family members indexed by a shared key (a vertex id or a
// quantized descriptor): every key yields the group of members containing
// it; groups strictly contained in another are dropped.
template <typename Key>
inline std::vector<std::vector<std::size_t>> maximal_key_groups(
    const std::map<Key, std::vector<std::size_t>>& by_key) {
    std::vector<std::vector<std::size_t>> groups;
    for (const auto& [key, members] : by_key) groups.push_back(members);
    std::sort(groups.begin(), groups.end());
    groups.erase(std::unique(groups.begin(), groups.end()), groups.end());

    std::vector<std::vector<std::size_t>> out;
    for (const auto& g : groups) {
        bool dominated = false;
        for (const auto& h : groups)
            if (h.size() > g.size() && std::includes(h.begin(), h.end(), g.begin(), g.end()))
                dominated = true;
        if (!dominated) out.push_back(g);
    }
    return out;
}

inline ClosureNerveFamily to_family(const std::vector<SimplexSet>& family,
                                    std::vector<std::vector<std::size_t>> groups) {
    std::sort(groups.begin(), groups.end());
    ClosureNerveFamily out;
    for (auto& g : groups) {
        ClosureNerveGroup group;
        group.members = std::move(g);
        for (std::size_t idx : group.members)
            group.support = simplex_union(group.support, family[idx]);
        out.groups.push_back(std::move(group));
    }
    return out;
}

}  // namespace detail

/**
 * Closure nerve: maximal sub-collections of the family whose members'
 * closed supports share a common vertex.
 */
inline ClosureNerveFamily closure_nerve(const TriMesh& mesh,
                                        const std::vector<SimplexSet>& family) {
    if (family.empty()) throw std::invalid_argument("empty family");
    std::map<VertexId, std::vector<std::size_t>> by_vertex;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (VertexId v : closure_vertices(mesh, family[i])) by_vertex[v].push_back(i);
    return detail::to_family(family, detail::maximal_key_groups(by_vertex));
}

/**
 * Descriptive closure nerve: maximal sub-collections whose members'
 * description sets (quantized descriptors over member triangles) have a
 * common element.
 */
inline ClosureNerveFamily descriptive_closure_nerve(const TriMesh& mesh,
                                                    const std::vector<SimplexSet>& family,
                                                    const DescriptorMap& phi) {
    if (family.empty()) throw std::invalid_argument("empty family");
    std::map<QuantizedVector, std::vector<std::size_t>> by_descriptor;
    for (std::size_t i = 0; i < family.size(); ++i) {
        detail::require_valid(mesh, family[i]);
        std::vector<QuantizedVector> seen;
        for (TriId t : family[i]) {
            QuantizedVector q = phi.quantized(t);
            if (std::find(seen.begin(), seen.end(), q) == seen.end()) {
                by_descriptor[q].push_back(i);
                seen.push_back(std::move(q));
            }
        }
    }
    return detail::to_family(family, detail::maximal_key_groups(by_descriptor));
}

}  // namespace nervetopo

#endif  // NERVETOPO_NERVE_HPP
