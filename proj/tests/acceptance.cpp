// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 8/9 drive the installed CLI end to end; pass its path
// as argv[1].

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include <nervetopo/io.hpp>
#include <nervetopo/nerve.hpp>
#include <nervetopo/proximity.hpp>
#include <nervetopo/shape.hpp>
#include <nervetopo/spokes.hpp>
#include <nervetopo/triangulation.hpp>

#include "helpers.hpp"

namespace fs = std::filesystem;
using namespace nervetopo;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli_path;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------- criterion 1
bool fan_fixtures(std::ostream& log) {
    const auto start = Clock::now();
    const TriMesh fan8 = fixtures::fan_mesh(8);
    const NerveComplex max8 = maximal_nerve(fan8);
    bool ok = max8.spoke_count() == 8;
    ok = ok && euler_characteristic(fan8, max8.spokes1) == 1;
    const Edgelet contour = edgelet(fan8, mnc_cluster(fan8));
    ok = ok && contour.loops.size() == 1 && contour.loops[0].size() == 8;

    const TriMesh fan5 = fixtures::fan_mesh(5);
    ok = ok && maximal_nerve(fan5).spoke_count() == 5;

    const double elapsed = seconds_since(start);
    ok = ok && elapsed < 1.0;
    log << "8-fan spokes=" << max8.spoke_count() << " loops=" << contour.loops.size()
        << " 5-fan spokes=" << maximal_nerve(fan5).spoke_count();
    return ok;
}

// ---------------------------------------------------------------- criterion 2
bool delaunay_oracle(std::ostream& log) {
    const auto start = Clock::now();
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const std::size_t n = 4 + seed % 5;  // 4..8 points
        const auto pts = fixtures::random_points(seed * 977 + 13, n);
        const TriMesh mesh = delaunay(pts);
        const auto result = oracle::check_against_bruteforce(pts, mesh);
        if (!result.ok) {
            log << "seed " << seed << ": " << result.message;
            return false;
        }
        ++checked;
    }
    const double elapsed = seconds_since(start);
    log << checked << " point sets in " << elapsed << " s";
    return elapsed < 30.0;
}

// ---------------------------------------------------------------- criterion 3
bool axiom_conformance(std::ostream& log) {
    const auto start = Clock::now();
    const std::size_t point_counts[3] = {35, 60, 100};  // 50..200 triangles
    int runs = 0;
    for (int m = 0; m < 3; ++m) {
        const TriMesh mesh = fixtures::random_mesh(700 + m, point_counts[m]);
        if (mesh.triangle_count() < 50 || mesh.triangle_count() > 200) {
            log << "mesh " << m << " has " << mesh.triangle_count() << " triangles (want 50..200)";
            return false;
        }
        const DescriptorMap phi = default_triangle_descriptors(mesh);
        for (RelationKind kind :
             {RelationKind::near, RelationKind::dnear, RelationKind::sn, RelationKind::snd}) {
            const ConformanceReport report = axiom_suite(mesh, kind, &phi, 1000, 9000 + m);
            if (!report.ok()) {
                log << relation_name(kind) << " on mesh " << m << ": "
                    << report.violations.size() << " violations, first "
                    << report.violations[0].axiom << " " << report.violations[0].witness;
                return false;
            }
            ++runs;
        }
    }
    // Fault injection: symmetry broken by id parity must be detected.
    const TriMesh mesh = fixtures::random_mesh(701, 40);
    const RelationFn faulty = [](const TriMesh& m, const SimplexSet& A, const SimplexSet& B) {
        const bool honest = near(m, A, B);
        if (!A.empty() && (*A.begin()) % 2 == 1) return !honest;
        return honest;
    };
    const ConformanceReport broken = axiom_suite(mesh, RelationKind::near, nullptr, 500, 11, faulty);
    const double elapsed = seconds_since(start);
    log << runs << " clean runs, fault-injected violations=" << broken.violations.size() << ", "
        << elapsed << " s";
    return !broken.ok() && elapsed < 60.0;
}

// ---------------------------------------------------------------- criterion 4
bool relator_implications(std::ostream& log) {
    std::mt19937_64 rng(404);
    int pairs = 0, sn_pairs = 0;
    for (std::uint64_t m = 0; m < 5; ++m) {
        const TriMesh mesh = fixtures::random_mesh(800 + m, 40);
        const DescriptorMap phi = default_triangle_descriptors(mesh);
        for (int rep = 0; rep < 100; ++rep) {
            const VertexId a = static_cast<VertexId>(rng() % mesh.vertex_count());
            const VertexId b = static_cast<VertexId>(rng() % mesh.vertex_count());
            if (mesh.star(a).empty() || mesh.star(b).empty()) continue;
            const NerveComplex na = nerve_at(mesh, a), nb = nerve_at(mesh, b);
            const RelatorReport r = relator_check(mesh, na.spokes1, nb.spokes1, phi);
            if (!r.ok()) {
                log << "implication broken for nuclei " << a << "," << b;
                return false;
            }
            const bool has_common = !common_2_spokes(mesh, na, nb).empty();
            if (has_common != r.sn_held) {
                log << "2-spoke equivalence broken for nuclei " << a << "," << b;
                return false;
            }
            ++pairs;
            if (r.sn_held) ++sn_pairs;
        }
    }
    log << pairs << " pairs (" << sn_pairs << " strongly near)";
    return pairs >= 500 && sn_pairs > 0;
}

// ---------------------------------------------------------------- criterion 5
bool spoke_structure(std::ostream& log) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const TriMesh mesh = fixtures::random_mesh(900 + seed, 22 + seed);
        const NerveComplex nerve = maximal_nerve(mesh);

        const auto one = one_spokes(nerve);
        for (SpokeMode mode : {SpokeMode::edge, SpokeMode::vertex}) {
            const auto k1 = k_spokes(mesh, nerve, 1, mode);
            if (k1.size() != one.size()) {
                log << "k=1 differs from one_spokes at seed " << seed;
                return false;
            }
            for (std::size_t i = 0; i < k1.size(); ++i)
                if (k1[i].triangles != one[i].triangles) {
                    log << "k=1 chain mismatch at seed " << seed;
                    return false;
                }

            SimplexSet prev;
            for (int k = 1; k <= 5; ++k) {
                const SimplexSet u = spoke_union(mesh, nerve, k, mode);
                if (simplex_intersection(prev, u) != prev) {
                    log << "monotonicity broken at seed " << seed << " k=" << k;
                    return false;
                }
                // vertex-connected and nucleus-bearing
                SimplexSet seen{*u.begin()};
                std::vector<TriId> stack = {*u.begin()};
                while (!stack.empty()) {
                    const TriId t = stack.back();
                    stack.pop_back();
                    const Triangle& tri = mesh.triangle(t);
                    for (VertexId v : {tri.a, tri.b, tri.c})
                        for (TriId n : mesh.star(v))
                            if (u.contains(n) && !seen.contains(n)) {
                                seen.insert(n);
                                stack.push_back(n);
                            }
                }
                if (!(seen == u)) {
                    log << "spoke union disconnected at seed " << seed << " k=" << k;
                    return false;
                }
                const auto sup = closure_vertices(mesh, u);
                if (!std::binary_search(sup.begin(), sup.end(), nerve.nucleus)) {
                    log << "nucleus outside spoke union at seed " << seed;
                    return false;
                }
                prev = u;
            }
        }
        for (int k = 1; k <= 5; ++k) {
            const SimplexSet ue = spoke_union(mesh, nerve, k, SpokeMode::edge);
            const SimplexSet uv = spoke_union(mesh, nerve, k, SpokeMode::vertex);
            if (simplex_intersection(ue, uv) != ue) {
                log << "edge union not within vertex union at seed " << seed << " k=" << k;
                return false;
            }
        }
    }
    log << "20 meshes, k=1..5, both modes";
    return true;
}

// ---------------------------------------------------------------- criterion 6
bool multi_nerve_theorem(std::ostream& log) {
    int witnessed = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const TriMesh mesh = fixtures::random_mesh(1100 + seed, 10 + seed % 20);
        const NerveCountReport report = nerve_count_lower_bound(mesh);
        if (!report.passed) {
            log << "seed " << seed << ": " << report.detail;
            return false;
        }
        if (report.witness_found) ++witnessed;
    }
    log << witnessed << "/50 meshes carried a separated pair";
    return witnessed == 50;
}

// ---------------------------------------------------------------- criterion 7
bool euler_contour_consistency(std::ostream& log) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const TriMesh mesh = fixtures::random_mesh(1300 + seed, 25 + 2 * seed);
        const MncCluster cluster = mnc_cluster(mesh);
        const Edgelet contour = edgelet(mesh, cluster);
        const long holes = 1 - euler_characteristic(mesh, cluster.support);
        if (static_cast<long>(contour.loops.size()) != 1 + holes) {
            log << "seed " << seed << ": loops=" << contour.loops.size() << " holes=" << holes;
            return false;
        }
        std::vector<Edge> walked;
        for (const auto& loop : contour.loops)
            for (std::size_t i = 0; i < loop.size(); ++i)
                walked.emplace_back(loop[i], loop[(i + 1) % loop.size()]);
        std::sort(walked.begin(), walked.end());
        if (std::adjacent_find(walked.begin(), walked.end()) != walked.end() ||
            walked != boundary_edges(mesh, cluster.support)) {
            log << "seed " << seed << ": boundary edges not used exactly once";
            return false;
        }
    }
    log << "20 clusters consistent";
    return true;
}

// ------------------------------------------------------------ criteria 8 & 9
struct ShapeRun {
    bool ok = false;
    std::string features, edgelet_json, mesh_json, svg;
    double elapsed = 0.0;
};

constexpr int kDiskSize = 64;
constexpr double kDiskCenter = 31.5;
constexpr double kDiskRadius = 24.0;
constexpr double kDiskEdgeWidth = 3.0;

ShapeRun run_shape_cli(const fs::path& dir) {
    ShapeRun run;
    fs::create_directories(dir);
    const fs::path png = dir / "disk.png";
    save_grayscale(fixtures::disk_image(kDiskSize, kDiskCenter, kDiskCenter, kDiskRadius,
                                        kDiskEdgeWidth),
                   png.string());
    const fs::path svg = dir / "out.svg";
    const fs::path features = dir / "features.json";
    const fs::path edgelet_path = dir / "edgelet.json";
    const fs::path mesh = dir / "mesh.json";
    std::ostringstream cmd;
    cmd << g_cli_path << " shape --image " << png << " --k 300 --svg " << svg << " --features "
        << features << " --edgelet " << edgelet_path << " --mesh-out " << mesh << " > "
        << (dir / "stdout.txt") << " 2>&1";
    const auto start = Clock::now();
    const int rc = std::system(cmd.str().c_str());
    run.elapsed = seconds_since(start);
    if (rc != 0) return run;
    if (!fs::exists(svg) || !fs::exists(features) || !fs::exists(edgelet_path) ||
        !fs::exists(mesh))
        return run;
    run.features = read_text_file(features.string());
    run.edgelet_json = read_text_file(edgelet_path.string());
    run.mesh_json = read_text_file(mesh.string());
    run.svg = read_text_file(svg.string());
    run.ok = true;
    return run;
}

bool disk_shape_run(std::ostream& log) {
    if (g_cli_path.empty()) {
        log << "CLI path missing (pass it as argv[1])";
        return false;
    }
    const fs::path dir = fs::temp_directory_path() / "nervetopo_acceptance" / "run1";
    const ShapeRun run = run_shape_cli(dir);
    if (!run.ok) {
        log << "CLI run failed";
        return false;
    }
    const TriMesh mesh = parse_mesh_json(run.mesh_json);
    const auto doc = nlohmann::json::parse(run.edgelet_json);
    const auto& outer = doc["loops"][0];

    double max_dev = 0.0, edge_sum = 0.0;
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const Point2& p = mesh.vertex(outer[i].get<VertexId>());
        const Point2& q = mesh.vertex(outer[(i + 1) % outer.size()].get<VertexId>());
        const double r = std::hypot(p.x - kDiskCenter, p.y - kDiskCenter);
        max_dev = std::max(max_dev, std::fabs(r - kDiskRadius));
        edge_sum += distance(p, q);
    }
    const double mean_edge = edge_sum / static_cast<double>(outer.size());
    log << "outer loop " << outer.size() << " vertices, max deviation " << max_dev
        << ", mean boundary edge " << mean_edge << ", " << run.elapsed << " s";
    return max_dev <= 2.0 * mean_edge && run.elapsed < 5.0;
}

bool determinism(std::ostream& log) {
    if (g_cli_path.empty()) {
        log << "CLI path missing (pass it as argv[1])";
        return false;
    }
    const fs::path base = fs::temp_directory_path() / "nervetopo_acceptance";
    const ShapeRun a = run_shape_cli(base / "run2");
    const ShapeRun b = run_shape_cli(base / "run3");
    if (!a.ok || !b.ok) {
        log << "CLI rerun failed";
        return false;
    }
    const bool identical = a.features == b.features && a.edgelet_json == b.edgelet_json &&
                           a.mesh_json == b.mesh_json && a.svg == b.svg;
    log << (identical ? "byte-identical JSON and SVG outputs" : "outputs differ between runs");
    return identical;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::ostream&)> run;
    };
    const Criterion criteria[] = {
        {1, "fan fixtures (regular 8-fan and 5-fan)", fan_fixtures},
        {2, "Delaunay against the brute-force oracle", delaunay_oracle},
        {3, "axiom conformance with fault injection", axiom_conformance},
        {4, "relator implications and 2-spoke equivalence", relator_implications},
        {5, "spoke union structure", spoke_structure},
        {6, "multi-nerve theorem on separated pairs", multi_nerve_theorem},
        {7, "Euler/contour consistency of clusters", euler_contour_consistency},
        {8, "end-to-end disk shape run", disk_shape_run},
        {9, "byte-identical reruns", determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = Clock::now();
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        const double elapsed = seconds_since(start);
        std::printf("%s criterion %d: %s [%s] (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    detail.str().c_str(), elapsed);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", std::size(criteria));
    else
        std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
