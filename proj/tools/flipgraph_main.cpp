// Command-line front end: graph generation, spectra, colorings, verification
// and exports, with seeded, reproducible outputs.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 budget exhausted (bracket result emitted).

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "flipgraphs/bigint.hpp"
#include "flipgraphs/coloring.hpp"
#include "flipgraphs/flip_colorings.hpp"
#include "flipgraphs/gf.hpp"
#include "flipgraphs/graph.hpp"
#include "flipgraphs/matchings.hpp"
#include "flipgraphs/signed_perms.hpp"
#include "flipgraphs/spectra.hpp"

namespace fg = flipgraphs;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudgetExhausted = 3;

struct GlobalOptions {
    unsigned long long seed = 0;
    double budget_seconds = std::numeric_limits<double>::infinity();
    unsigned threads = 1;
    std::string out_path;
};

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

// Writes the primary output to stdout or --out; a manifest side file
// records the invocation and a digest of the result bytes (wall time is
// kept out of the digest so reruns stay byte-identical).
int emit(const GlobalOptions& opts, const std::string& command, const json& parameters,
         const std::string& payload, double wall_seconds, int exit_code) {
    if (opts.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << opts.out_path << "\n";
            return kExitUsage;
        }
        out << payload;
        json manifest;
        manifest["command"] = command;
        manifest["parameters"] = parameters;
        manifest["seed"] = opts.seed;
        manifest["versions"] = json{{"flipgraphs", kVersion}};
        manifest["wall_time_seconds"] = wall_seconds;
        manifest["result_digest"] = "fnv1a64:" + hex64(fnv1a64(payload));
        std::ofstream mout(opts.out_path + ".manifest.json", std::ios::binary);
        mout << manifest.dump(2) << "\n";
    }
    return exit_code;
}

enum class Family { kFlip, kSr, kRev };

Family parse_family(const std::string& name) {
    if (name == "flip") return Family::kFlip;
    if (name == "sr") return Family::kSr;
    if (name == "rev") return Family::kRev;
    throw CLI::ValidationError("family must be flip, sr or rev");
}

fg::Graph build_family_graph(Family family, int n, unsigned threads) {
    switch (family) {
        case Family::kFlip: return fg::build_flip_graph(n, threads).graph;
        case Family::kSr: return fg::build_signed_reversal_graph(n).graph;
        case Family::kRev: return fg::build_reversal_graph(n);
    }
    throw std::logic_error("unreachable");
}

json spectrum_json(const std::vector<fg::SpectrumEntry>& spec) {
    json arr = json::array();
    for (const auto& e : spec) {
        json partitions = json::array();
        for (const auto& lambda : e.sources) partitions.push_back(lambda.parts);
        arr.push_back(json{{"eigenvalue", e.eigenvalue},
                           {"multiplicity", e.multiplicity.str()},
                           {"partitions", partitions}});
    }
    return arr;
}

std::string coloring_file_text(const fg::Coloring& c) {
    std::ostringstream os;
    fg::write_coloring(c, os);
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flip graphs on perfect matchings and signed reversal graphs"};
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_option("--seed", opts.seed, "seed for all randomized tie-breaking");
    app.add_option("--budget-seconds", opts.budget_seconds, "time budget for exact searches");
    app.add_option("--threads", opts.threads, "worker threads for graph construction")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", opts.out_path, "write output here (plus a .manifest.json side file)");

    // gen <family> <n>
    auto* gen = app.add_subcommand("gen", "emit a graph as an edge list");
    gen->fallthrough();
    std::string gen_family;
    int gen_n = 0;
    gen->add_option("family", gen_family, "flip | sr | rev")->required();
    gen->add_option("n", gen_n, "graph parameter")->required();

    // spectrum flip <n> [--verify-exact]
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues with multiplicities");
    spectrum->fallthrough();
    std::string spectrum_family;
    int spectrum_n = 0;
    bool spectrum_verify = false;
    spectrum->add_option("family", spectrum_family, "flip")->required();
    spectrum->add_option("n", spectrum_n, "graph parameter")->required();
    spectrum->add_flag("--verify-exact", spectrum_verify,
                       "check the formula spectrum against the built graph");

    // color <method> <family> <n>
    auto* color = app.add_subcommand("color", "construct a proper coloring");
    color->fallthrough();
    std::string color_method, color_family;
    int color_n = 0;
    std::string coloring_out, sr5_coloring_path;
    color->add_option("method", color_method, "gf | layered | dsatur | exact")->required();
    color->add_option("family", color_family, "flip | sr | rev")->required();
    color->add_option("n", color_n, "graph parameter")->required();
    color->add_option("--coloring-out", coloring_out, "also write the coloring file here");
    color->add_option("--sr5-coloring", sr5_coloring_path,
                      "coloring file for SR_5 used by the layered construction");

    // verify-coloring <graph> <coloring>
    auto* verify = app.add_subcommand("verify-coloring", "check a coloring file against a graph");
    verify->fallthrough();
    std::string verify_graph_path, verify_coloring_path;
    verify->add_option("graph", verify_graph_path, "edge-list file")->required();
    verify->add_option("coloring", verify_coloring_path, "coloring file")->required();

    // alpha <family> <n>
    auto* alpha = app.add_subcommand("alpha", "maximum independent set");
    alpha->fallthrough();
    std::string alpha_family;
    int alpha_n = 0;
    alpha->add_option("family", alpha_family, "flip | sr | rev")->required();
    alpha->add_option("n", alpha_n, "graph parameter")->required();

    // quotient <kind> <family> <n>
    auto* quotient = app.add_subcommand("quotient", "equitable partition quotient matrix");
    quotient->fallthrough();
    std::string quotient_kind, quotient_family;
    int quotient_n = 0;
    quotient->add_option("kind", quotient_kind, "type | cells")->required();
    quotient->add_option("family", quotient_family, "flip (type) or sr (cells)")->required();
    quotient->add_option("n", quotient_n, "graph parameter")->required();

    // distance <n> <m1> <m2>
    auto* distance = app.add_subcommand("distance", "flip distance between two matchings");
    distance->fallthrough();
    int distance_n = 0;
    std::string distance_m1, distance_m2;
    distance->add_option("n", distance_n, "matchings of K_{2n}")->required();
    distance->add_option("m1", distance_m1, "matching, e.g. 0-1,2-3,4-5")->required();
    distance->add_option("m2", distance_m2, "matching, e.g. 0-2,1-3,4-5")->required();

    // geodesics <n>
    auto* geodesics = app.add_subcommand("geodesics", "BFS layers and geodesic counts from M0");
    geodesics->fallthrough();
    int geodesics_n = 0;
    geodesics->add_option("n", geodesics_n, "flip graph parameter")->required();

    // expand sr <k> <fixture>
    auto* expand = app.add_subcommand("expand", "expand a parity-class coloring fixture");
    expand->fallthrough();
    std::string expand_family, expand_fixture;
    int expand_k = 0;
    expand->add_option("family", expand_family, "sr")->required();
    expand->add_option("k", expand_k, "signed reversal degree")->required();
    expand->add_option("fixture", expand_fixture, "parity-class fixture file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    std::string command;
    for (int i = 1; i < argc; ++i) command += std::string(i > 1 ? " " : "") + argv[i];

    const auto t0 = std::chrono::steady_clock::now();
    auto wall = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    try {
        if (gen->parsed()) {
            const fg::Graph g = build_family_graph(parse_family(gen_family), gen_n, opts.threads);
            std::ostringstream payload;
            fg::write_edge_list(g, payload);
            return emit(opts, command, json{{"family", gen_family}, {"n", gen_n}}, payload.str(),
                        wall(), 0);
        }

        if (spectrum->parsed()) {
            if (spectrum_family != "flip") throw CLI::ValidationError("spectrum supports flip only");
            const auto spec = fg::flip_spectrum(spectrum_n);
            json params{{"family", spectrum_family}, {"n", spectrum_n},
                        {"verify_exact", spectrum_verify}};
            int code = 0;
            std::string payload;
            if (spectrum_verify) {
                const fg::FlipGraph graph = fg::build_flip_graph(spectrum_n, opts.threads);
                const auto report = fg::verify_spectrum_exact(graph.graph, spec, opts.threads);
                json obj{{"n", spectrum_n}, {"spectrum", spectrum_json(spec)},
                         {"verified", report.ok}};
                if (!report.ok) {
                    obj["failure"] = report.failure;
                    if (report.first_failing_moment >= 0)
                        obj["first_failing_moment"] = report.first_failing_moment;
                    code = kExitVerifyFailure;
                }
                payload = obj.dump(2) + "\n";
            } else {
                payload = spectrum_json(spec).dump(2) + "\n";
            }
            return emit(opts, command, params, payload, wall(), code);
        }

        if (color->parsed()) {
            const Family family = parse_family(color_family);
            json obj{{"method", color_method}, {"family", color_family}, {"n", color_n}};
            fg::Coloring coloring;
            int code = 0;
            if (color_method == "gf" || color_method == "layered") {
                if (family != Family::kFlip)
                    throw CLI::ValidationError(color_method + " coloring applies to flip graphs");
                const fg::FlipGraph graph = fg::build_flip_graph(color_n, opts.threads);
                if (color_method == "gf") {
                    auto res = fg::gf_coloring(graph);
                    coloring = std::move(res.coloring);
                    obj["q"] = res.field.q;
                    obj["field"] = res.field.to_string();
                } else {
                    fg::Coloring sr5;
                    const fg::Coloring* sr5_ptr = nullptr;
                    if (!sr5_coloring_path.empty()) {
                        std::ifstream in(sr5_coloring_path);
                        if (!in) throw CLI::ValidationError("cannot read " + sr5_coloring_path);
                        sr5 = fg::read_coloring(in);
                        sr5_ptr = &sr5;
                    }
                    coloring = fg::layered_coloring(
                        graph, fg::standard_factor_colorings(color_n - 1, sr5_ptr));
                }
                obj["proper"] = true;
            } else if (color_method == "dsatur") {
                const fg::Graph g = build_family_graph(family, color_n, opts.threads);
                coloring = fg::dsatur_coloring(g, opts.seed);
                obj["proper"] = fg::verify_coloring(g, coloring).proper;
            } else if (color_method == "exact") {
                const fg::Graph g = build_family_graph(family, color_n, opts.threads);
                fg::SearchBudget budget;
                budget.seconds = opts.budget_seconds;
                const auto res = fg::exact_chromatic_number(g, budget, opts.seed);
                coloring = res.coloring;
                obj["proper"] = true;
                if (res.exact()) {
                    obj["chromatic_number"] = res.lower_bound;
                } else {
                    obj["bracket"] = json{{"lower", res.lower_bound}, {"upper", res.upper_bound}};
                    code = kExitBudgetExhausted;
                }
                obj["nodes"] = res.nodes;
            } else {
                throw CLI::ValidationError("method must be gf, layered, dsatur or exact");
            }
            obj["colors_used"] = coloring.num_colors;
            if (!coloring_out.empty()) {
                std::ofstream out(coloring_out, std::ios::binary);
                out << coloring_file_text(coloring);
            }
            const json params{{"method", color_method}, {"family", color_family}, {"n", color_n}};
            return emit(opts, command, params, obj.dump(2) + "\n", wall(), code);
        }

        if (verify->parsed()) {
            std::ifstream gin(verify_graph_path);
            if (!gin) throw CLI::ValidationError("cannot read " + verify_graph_path);
            const fg::Graph g = fg::read_edge_list(gin);
            std::ifstream cin_file(verify_coloring_path);
            if (!cin_file) throw CLI::ValidationError("cannot read " + verify_coloring_path);
            const fg::Coloring c = fg::read_coloring(cin_file);
            const auto check = fg::verify_coloring(g, c);
            json obj{{"graph", verify_graph_path},
                     {"coloring", verify_coloring_path},
                     {"num_colors", c.num_colors},
                     {"proper", check.proper}};
            if (!check.proper)
                obj["witness_edge"] = json::array({check.witness.first, check.witness.second});
            const json params{{"graph", verify_graph_path}, {"coloring", verify_coloring_path}};
            return emit(opts, command, params, obj.dump(2) + "\n", wall(),
                        check.proper ? 0 : kExitVerifyFailure);
        }

        if (alpha->parsed()) {
            const fg::Graph g =
                build_family_graph(parse_family(alpha_family), alpha_n, opts.threads);
            fg::SearchBudget budget;
            budget.seconds = opts.budget_seconds;
            const auto res = fg::max_independent_set(g, budget);
            json obj{{"family", alpha_family}, {"n", alpha_n}, {"nodes", res.nodes}};
            int code = 0;
            if (res.exact()) {
                obj["alpha"] = res.lower_bound;
            } else {
                obj["bracket"] = json{{"lower", res.lower_bound}, {"upper", res.upper_bound}};
                code = kExitBudgetExhausted;
            }
            obj["certificate"] = res.certificate;
            const json params{{"family", alpha_family}, {"n", alpha_n}};
            return emit(opts, command, params, obj.dump(2) + "\n", wall(), code);
        }

        if (quotient->parsed()) {
            json obj{{"kind", quotient_kind}, {"family", quotient_family}, {"n", quotient_n}};
            if (quotient_kind == "type" && quotient_family == "flip") {
                const fg::FlipGraph graph = fg::build_flip_graph(quotient_n, opts.threads);
                const fg::TypePartition tp = fg::type_partition(graph);
                const fg::QuotientMatrix q = fg::check_equitable(graph.graph, tp.partition);
                json cells = json::array();
                for (std::size_t i = 0; i < tp.cell_types.size(); ++i)
                    cells.push_back(json{{"type", tp.cell_types[i].parts},
                                         {"size", tp.partition.cells[i].size()}});
                obj["cells"] = cells;
                obj["matrix"] = q.entries;
            } else if (quotient_kind == "cells" && quotient_family == "sr") {
                const auto sr = fg::build_signed_reversal_graph(quotient_n);
                const fg::QuotientMatrix q =
                    fg::check_equitable(sr.graph, fg::sr_cell_partition(quotient_n));
                obj["num_cells"] = q.size();
                obj["matrix"] = q.entries;
            } else {
                throw CLI::ValidationError("quotient supports: type flip <n>, cells sr <k>");
            }
            const json params{{"kind", quotient_kind}, {"family", quotient_family},
                              {"n", quotient_n}};
            return emit(opts, command, params, obj.dump(2) + "\n", wall(), 0);
        }

        if (distance->parsed()) {
            const fg::PerfectMatching m1 = fg::parse_matching(distance_m1);
            const fg::PerfectMatching m2 = fg::parse_matching(distance_m2);
            if (m1.n() != distance_n || m2.n() != distance_n)
                throw CLI::ValidationError("matchings do not cover 2n vertices");
            json obj{{"n", distance_n}, {"distance", fg::matching_distance(m1, m2)}};
            const json params{{"n", distance_n}, {"m1", distance_m1}, {"m2", distance_m2}};
            return emit(opts, command, params, obj.dump(2) + "\n", wall(), 0);
        }

        if (geodesics->parsed()) {
            const fg::FlipGraph graph = fg::build_flip_graph(geodesics_n, opts.threads);
            const fg::BfsLayers layers = fg::bfs_layers(graph.graph, 0);
            std::vector<long long> layer_sizes(layers.eccentricity + 1, 0);
            fg::BigInt far_min = -1, far_max = -1;
            for (int v = 0; v < graph.graph.num_vertices(); ++v) {
                ++layer_sizes[layers.dist[v]];
                if (layers.dist[v] == layers.eccentricity) {
                    if (far_min < 0 || layers.geodesics[v] < far_min) far_min = layers.geodesics[v];
                    if (layers.geodesics[v] > far_max) far_max = layers.geodesics[v];
                }
            }
            json obj{{"n", geodesics_n},
                     {"source", fg::matching_to_string(graph.matchings[0])},
                     {"eccentricity", layers.eccentricity},
                     {"layer_sizes", layer_sizes},
                     {"geodesics_at_eccentricity",
                      json{{"min", far_min.str()}, {"max", far_max.str()}}}};
            return emit(opts, command, json{{"n", geodesics_n}}, obj.dump(2) + "\n", wall(), 0);
        }

        if (expand->parsed()) {
            if (expand_family != "sr") throw CLI::ValidationError("expand supports sr only");
            std::ifstream in(expand_fixture);
            if (!in) throw CLI::ValidationError("cannot read " + expand_fixture);
            const auto classes = fg::read_parity_coloring(in);
            const fg::Coloring c = fg::expand_parity_coloring(expand_k, classes);
            json params{{"family", expand_family}, {"k", expand_k}, {"fixture", expand_fixture}};
            return emit(opts, command, params, coloring_file_text(c), wall(), 0);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
