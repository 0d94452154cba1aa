// Command-line front end: triangulate point sets and images, extract nerve
// complexes and spokes, run the proximity axiom harness, and emit shape
// contours with SVG overlays.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nervetopo/io.hpp>
#include <nervetopo/nerve.hpp>
#include <nervetopo/proximity.hpp>
#include <nervetopo/shape.hpp>
#include <nervetopo/spokes.hpp>
#include <nervetopo/svg.hpp>
#include <nervetopo/triangulation.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInvariantViolation = 2;

std::uint64_t resolve_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("NERVETOPO_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error("NERVETOPO_SEED must be an unsigned integer");
        }
    }
    return cli_seed;
}

int emit_mesh(const nervetopo::TriMesh& mesh, const std::string& path) {
    const nervetopo::MeshValidationReport report = nervetopo::validate_mesh(mesh);
    if (!report.ok()) {
        std::cerr << "internal error: emitted mesh failed validation:\n";
        for (const auto& f : report.faults) std::cerr << "  " << f.what << "\n";
        return kExitInvariantViolation;
    }
    nervetopo::write_text_file(path, nervetopo::write_mesh_json(mesh));
    return kExitOk;
}

struct TriangulateArgs {
    std::string input_csv;
    std::string image_path;
    std::string out_mesh;
    std::string out_keypoints;
    std::size_t k = 1000;
    double tolerance = nervetopo::TriMesh::kDefaultDedupTolerance;
};

int run_triangulate(const TriangulateArgs& args) {
    nervetopo::TriangulationConfig cfg;
    cfg.dedup_tolerance = args.tolerance;
    nervetopo::TriMesh mesh = [&] {
        if (!args.image_path.empty()) {
            const nervetopo::GrayImage img = nervetopo::load_grayscale(args.image_path);
            if (!args.out_keypoints.empty())
                nervetopo::write_text_file(
                    args.out_keypoints,
                    nervetopo::write_keypoints_csv(nervetopo::select_keypoints(img, args.k)));
            return nervetopo::triangulate_image(img, args.k, cfg);
        }
        return nervetopo::delaunay(nervetopo::read_points_csv(args.input_csv), cfg);
    }();
    const int rc = emit_mesh(mesh, args.out_mesh);
    if (rc == kExitOk)
        std::cout << "triangulated " << mesh.vertex_count() << " vertices into "
                  << mesh.triangle_count() << " triangles -> " << args.out_mesh << "\n";
    return rc;
}

struct NervesArgs {
    std::string mesh_path;
    std::string out_path;
};

int run_nerves(const NervesArgs& args) {
    const nervetopo::TriMesh mesh = nervetopo::read_mesh_json(args.mesh_path);
    const auto nerves = nervetopo::all_nerves(mesh);
    nervetopo::write_text_file(args.out_path, nervetopo::write_nerve_report_json(nerves));
    const auto max_nerve = nervetopo::maximal_nerve(mesh);
    std::cout << nerves.size() << " nerves; maximal nerve at vertex " << max_nerve.nucleus
              << " with " << max_nerve.spoke_count() << " spokes -> " << args.out_path << "\n";
    return kExitOk;
}

struct SpokesArgs {
    std::string mesh_path;
    std::string out_path;
    std::uint32_t nucleus = 0;
    int k = 2;
    std::string mode = "edge";
};

int run_spokes(const SpokesArgs& args) {
    const nervetopo::TriMesh mesh = nervetopo::read_mesh_json(args.mesh_path);
    const nervetopo::SpokeMode mode =
        args.mode == "vertex" ? nervetopo::SpokeMode::vertex : nervetopo::SpokeMode::edge;
    const nervetopo::NerveComplex nerve = nervetopo::nerve_at(mesh, args.nucleus);
    const auto chains = nervetopo::k_spokes(mesh, nerve, args.k, mode);
    nervetopo::write_text_file(args.out_path,
                               nervetopo::write_spoke_report_json(nerve, args.k, mode, chains));
    std::cout << chains.size() << " " << args.k << "-spoke chains at nucleus " << args.nucleus
              << " -> " << args.out_path << "\n";
    return kExitOk;
}

struct ShapeArgs {
    std::string image_path;
    std::string mesh_path;
    std::size_t k = 1000;
    std::string out_svg;
    std::string out_features;
    std::string out_edgelet;
    std::string out_mesh;
    bool all_clusters = false;
};

int run_shape(const ShapeArgs& args) {
    const nervetopo::TriMesh mesh = [&] {
        if (!args.image_path.empty())
            return nervetopo::triangulate_image(nervetopo::load_grayscale(args.image_path),
                                                args.k, nervetopo::TriangulationConfig{});
        return nervetopo::read_mesh_json(args.mesh_path);
    }();

    std::vector<nervetopo::MncCluster> clusters;
    if (args.all_clusters)
        clusters = nervetopo::all_mnc_clusters(mesh);
    else
        clusters.push_back(nervetopo::mnc_cluster(mesh));

    std::vector<nervetopo::NerveFeatures> features;
    for (const auto& cluster : clusters)
        for (const auto& member : cluster.members)
            features.push_back(nervetopo::nerve_features(mesh, member));

    const nervetopo::Edgelet contour = nervetopo::edgelet(mesh, clusters.front());
    if (!args.out_features.empty())
        nervetopo::write_text_file(args.out_features, nervetopo::write_features_json(features));
    if (!args.out_edgelet.empty())
        nervetopo::write_text_file(args.out_edgelet, nervetopo::write_edgelet_json(contour));
    if (!args.out_svg.empty())
        nervetopo::write_text_file(
            args.out_svg, nervetopo::render_svg(mesh, &clusters.front().support, &contour));
    if (!args.out_mesh.empty()) {
        const int rc = emit_mesh(mesh, args.out_mesh);
        if (rc != kExitOk) return rc;
    }
    std::cout << "shape pipeline: " << mesh.triangle_count() << " triangles, cluster of "
              << clusters.front().members.size() << " nerves, edgelet with "
              << contour.loops.size() << " loop(s)\n";
    return kExitOk;
}

struct AxiomsArgs {
    std::string mesh_path;
    std::string relation = "near";
    int trials = 1000;
    std::uint64_t seed = 0;
    int bins = 8;
    std::string out_path;
};

int run_axioms(const AxiomsArgs& args) {
    const nervetopo::TriMesh mesh = nervetopo::read_mesh_json(args.mesh_path);
    const nervetopo::RelationKind kind = nervetopo::relation_from_name(args.relation);
    const std::uint64_t seed = resolve_seed(args.seed);

    nervetopo::ConformanceReport report;
    if (nervetopo::is_descriptive(kind)) {
        const nervetopo::DescriptorMap phi =
            nervetopo::default_triangle_descriptors(mesh, args.bins);
        report = nervetopo::axiom_suite(mesh, kind, &phi, args.trials, seed);
    } else {
        report = nervetopo::axiom_suite(mesh, kind, nullptr, args.trials, seed);
    }
    if (!args.out_path.empty())
        nervetopo::write_text_file(args.out_path, nervetopo::write_conformance_json(report));
    std::cout << "relation " << report.relation << ": " << report.trials << " trials, "
              << report.violations.size() << " violations\n";
    return report.ok() ? kExitOk : kExitInvariantViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar triangulation, nerve complexes, proximity relations, shape contours"};
    app.require_subcommand(1);

    TriangulateArgs tri_args;
    CLI::App* tri = app.add_subcommand("triangulate", "build a Delaunay mesh from points or image");
    auto* tri_input = tri->add_option("--input", tri_args.input_csv, "point CSV (x,y per line)");
    auto* tri_image = tri->add_option("--image", tri_args.image_path, "PNG image to mesh");
    tri->add_option("--k", tri_args.k, "keypoint budget for image input")->check(CLI::PositiveNumber);
    tri->add_option("--keypoints", tri_args.out_keypoints, "write selected keypoints CSV here");
    tri->add_option("--tolerance", tri_args.tolerance, "duplicate-point tolerance")
        ->check(CLI::PositiveNumber);
    tri->add_option("--out", tri_args.out_mesh, "output mesh JSON")->required();
    tri_input->excludes(tri_image);

    NervesArgs nerves_args;
    CLI::App* nerves = app.add_subcommand("nerves", "extract all nerve complexes of a mesh");
    nerves->add_option("--mesh", nerves_args.mesh_path, "input mesh JSON")->required();
    nerves->add_option("--out", nerves_args.out_path, "output nerve report JSON")->required();

    SpokesArgs spokes_args;
    CLI::App* spokes = app.add_subcommand("spokes", "enumerate k-spoke chains of one nerve");
    spokes->add_option("--mesh", spokes_args.mesh_path, "input mesh JSON")->required();
    spokes->add_option("--nucleus", spokes_args.nucleus, "nucleus vertex id")->required();
    spokes->add_option("--k", spokes_args.k, "spoke level")->check(CLI::PositiveNumber);
    spokes->add_option("--mode", spokes_args.mode, "edge or vertex")
        ->check(CLI::IsMember({"edge", "vertex"}));
    spokes->add_option("--out", spokes_args.out_path, "output spoke report JSON")->required();

    ShapeArgs shape_args;
    CLI::App* shape = app.add_subcommand("shape", "detect a shape contour via the MNC pipeline");
    auto* shape_image = shape->add_option("--image", shape_args.image_path, "PNG image input");
    auto* shape_mesh = shape->add_option("--mesh", shape_args.mesh_path, "mesh JSON input");
    shape->add_option("--k", shape_args.k, "keypoint budget")->check(CLI::PositiveNumber);
    shape->add_option("--svg", shape_args.out_svg, "output SVG overlay");
    shape->add_option("--features", shape_args.out_features, "output nerve features JSON");
    shape->add_option("--edgelet", shape_args.out_edgelet, "output edgelet JSON");
    shape->add_option("--mesh-out", shape_args.out_mesh, "also write the mesh JSON");
    shape->add_flag("--all-clusters", shape_args.all_clusters,
                    "peel clusters over the whole mesh instead of the single MNC");
    shape_image->excludes(shape_mesh);

    AxiomsArgs axioms_args;
    CLI::App* axioms = app.add_subcommand("axioms", "run the proximity axiom conformance harness");
    axioms->add_option("--mesh", axioms_args.mesh_path, "input mesh JSON")->required();
    axioms->add_option("--relation", axioms_args.relation, "near, dnear, sn or snd")
        ->check(CLI::IsMember({"near", "dnear", "sn", "snd"}));
    axioms->add_option("--trials", axioms_args.trials, "number of sampled axiom instances")
        ->check(CLI::PositiveNumber);
    axioms->add_option("--seed", axioms_args.seed, "RNG seed (NERVETOPO_SEED overrides)");
    axioms->add_option("--bins", axioms_args.bins, "descriptor quantization bins per channel")
        ->check(CLI::PositiveNumber);
    axioms->add_option("--out", axioms_args.out_path, "output conformance JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tri->parsed()) {
            if (tri_args.input_csv.empty() && tri_args.image_path.empty())
                throw std::runtime_error("triangulate needs --input or --image");
            return run_triangulate(tri_args);
        }
        if (nerves->parsed()) return run_nerves(nerves_args);
        if (spokes->parsed()) return run_spokes(spokes_args);
        if (shape->parsed()) {
            if (shape_args.image_path.empty() && shape_args.mesh_path.empty())
                throw std::runtime_error("shape needs --image or --mesh");
            return run_shape(shape_args);
        }
        if (axioms->parsed()) return run_axioms(axioms_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvariantViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
