// tsph: time series -> complex network -> persistence features, end to end.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsph/embedding.hpp"
#include "tsph/features.hpp"
#include "tsph/graph_metrics.hpp"
#include "tsph/networks.hpp"
#include "tsph/persistence.hpp"
#include "tsph/pipeline.hpp"

namespace {

struct CommonOptions {
    std::string input;
    std::string output;
    std::string graph = "cgssn";
    std::string dist;
    std::optional<int> tau;
    std::optional<int> n;
    int bins = 8;
    int k = 5;
    std::optional<int> t;
    bool normalize = false;
    std::vector<std::string> snrs;
    int folds = 5;
    std::uint64_t seed = 42;
    int index = 0;
};

tsph::GraphType parse_graph(const std::string& name) {
    if (name == "nvg") return tsph::GraphType::NVG;
    if (name == "hvg") return tsph::GraphType::HVG;
    if (name == "opn") return tsph::GraphType::OPN;
    if (name == "cgssn") return tsph::GraphType::CGSSN;
    if (name == "knn") return tsph::GraphType::KNN;
    throw tsph::ConfigError("unknown graph type '" + name + "'");
}

tsph::DistanceType parse_dist(const std::string& name, tsph::GraphType graph) {
    if (name.empty()) {
        // Family default: shortest path for unweighted graphs, diffusion otherwise.
        return tsph::graph_is_weighted(graph) ? tsph::DistanceType::Diffusion
                                              : tsph::DistanceType::ShortestPath;
    }
    if (name == "sp") return tsph::DistanceType::ShortestPath;
    if (name == "sp-hop") return tsph::DistanceType::HopOnOptimal;
    if (name == "sp-recip") return tsph::DistanceType::ReciprocalPath;
    if (name == "diffusion") return tsph::DistanceType::Diffusion;
    throw tsph::ConfigError("unknown distance type '" + name + "'");
}

double parse_snr(const std::string& token) {
    if (token == "inf" || token == "Inf" || token == "INF") {
        return std::numeric_limits<double>::infinity();
    }
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
        throw tsph::ConfigError("bad SNR value '" + token + "'");
    }
    return value;
}

tsph::PipelineConfig make_config(const CommonOptions& opt) {
    tsph::PipelineConfig cfg;
    cfg.graph_type = parse_graph(opt.graph);
    cfg.distance_type = parse_dist(opt.dist, cfg.graph_type);
    cfg.tau = opt.tau;
    cfg.n = opt.n;
    cfg.bins = opt.bins;
    cfg.k = opt.k;
    cfg.normalize = opt.normalize;
    cfg.diffusion_t = opt.t;
    cfg.seed = opt.seed;
    tsph::validate(cfg);
    return cfg;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path);
    if (!out.is_open()) throw tsph::DataError(output_path + ": cannot open for writing");
    out << text;
}

const tsph::TimeSeries& pick_series(const tsph::Dataset& ds, int index) {
    if (index < 0 || index >= ds.size()) {
        throw tsph::ConfigError("--index " + std::to_string(index) + " out of range (dataset has " +
                                std::to_string(ds.size()) + " series)");
    }
    return ds.series[index];
}

// graph/distmat/persist inspect one series; embedding parameters fall back to
// the dataset-level selection exactly as a full run would use.
tsph::Graph build_one_graph(const tsph::Dataset& ds, const tsph::PipelineConfig& cfg_in,
                            const tsph::TimeSeries& x) {
    tsph::PipelineConfig cfg = cfg_in;
    int tau = cfg.tau.value_or(0);
    int n = cfg.n.value_or(0);
    if (cfg.graph_type == tsph::GraphType::OPN || cfg.graph_type == tsph::GraphType::CGSSN ||
        cfg.graph_type == tsph::GraphType::KNN) {
        if (!cfg.tau || !cfg.n) {
            const tsph::ParamFamily family = cfg.graph_type == tsph::GraphType::OPN
                                                 ? tsph::ParamFamily::Opn
                                                 : tsph::ParamFamily::CgssnKnn;
            const tsph::EmbeddingParams selected = tsph::select_shared_params(ds.series, family);
            tau = cfg.tau.value_or(selected.tau);
            n = cfg.n.value_or(selected.n);
        }
    }
    switch (cfg.graph_type) {
        case tsph::GraphType::NVG: return tsph::build_nvg(x);
        case tsph::GraphType::HVG: return tsph::build_hvg(x);
        case tsph::GraphType::OPN: return tsph::build_opn(x, tau, n);
        case tsph::GraphType::CGSSN: return tsph::build_cgssn(x, tau, n, cfg.bins);
        case tsph::GraphType::KNN: return tsph::build_knn(x, tau, n, cfg.k);
    }
    throw tsph::ConfigError("unknown graph type");
}

tsph::DissimilarityMatrix build_one_matrix(const tsph::Graph& g, const tsph::PipelineConfig& cfg) {
    tsph::DissimilarityMatrix d;
    switch (cfg.distance_type) {
        case tsph::DistanceType::ShortestPath: d = tsph::dist_shortest_unweighted(g); break;
        case tsph::DistanceType::HopOnOptimal: d = tsph::dist_hop_on_optimal(g); break;
        case tsph::DistanceType::ReciprocalPath: d = tsph::dist_reciprocal_shortest(g); break;
        case tsph::DistanceType::Diffusion: {
            tsph::DiffusionConfig walk;
            walk.t = cfg.diffusion_t.value_or(tsph::default_walk_length(g));
            d = tsph::dist_diffusion(g, walk);
            break;
        }
    }
    if (cfg.normalize) d = tsph::normalize(d);
    return d;
}

int run_command(const std::string& command, const CommonOptions& opt) {
    const tsph::Dataset ds = tsph::load_ucr_tsv(opt.input);

    if (command == "params") {
        const tsph::EmbeddingParams mspe =
            tsph::select_shared_params(ds.series, tsph::ParamFamily::Opn);
        const tsph::EmbeddingParams mifnn =
            tsph::select_shared_params(ds.series, tsph::ParamFamily::CgssnKnn);
        std::string text;
        text += "dataset " + ds.name + " (" + std::to_string(ds.size()) + " series)\n";
        text += "mspe (opn):       tau=" + std::to_string(mspe.tau) +
                " n=" + std::to_string(mspe.n) + "\n";
        text += "mi+fnn (cgssn/knn): tau=" + std::to_string(mifnn.tau) +
                " n=" + std::to_string(mifnn.n) + "\n";
        emit(text, opt.output);
        return 0;
    }

    const tsph::PipelineConfig cfg = make_config(opt);

    if (command == "graph") {
        const tsph::Graph g = build_one_graph(ds, cfg, pick_series(ds, opt.index));
        emit(tsph::to_edge_list_text(g), opt.output);
        return 0;
    }
    if (command == "distmat") {
        const tsph::Graph g = build_one_graph(ds, cfg, pick_series(ds, opt.index));
        emit(tsph::to_csv(build_one_matrix(g, cfg)), opt.output);
        return 0;
    }
    if (command == "persist") {
        const tsph::Graph g = build_one_graph(ds, cfg, pick_series(ds, opt.index));
        const auto [dgm0, dgm1] = tsph::persist(build_one_matrix(g, cfg));
        emit("[" + tsph::to_json(dgm0) + "," + tsph::to_json(dgm1) + "]\n", opt.output);
        return 0;
    }
    if (command == "featurize") {
        const tsph::PipelineResult result = tsph::run_pipeline(ds, cfg);
        emit(tsph::features_to_csv(result.features), opt.output);
        return 0;
    }
    if (command == "run") {
        const tsph::PipelineResult result = tsph::run_pipeline(ds, cfg);
        const tsph::EvalReport report =
            tsph::evaluate_baseline(result.features, result.labels, opt.folds, opt.seed);
        if (!opt.output.empty()) emit(tsph::features_to_csv(result.features), opt.output);
        std::printf("dataset %s: graph=%s dist=%s tau=%d n=%d bins=%d k=%d\n", ds.name.c_str(),
                    tsph::to_string(cfg.graph_type).c_str(),
                    tsph::to_string(cfg.distance_type).c_str(), result.meta.tau, result.meta.n,
                    result.meta.bins, result.meta.k);
        for (size_t i = 0; i < report.fold_f1.size(); ++i) {
            std::printf("fold %zu macro-F1: %.4f\n", i + 1, report.fold_f1[i]);
        }
        std::printf("mean macro-F1: %.4f +/- %.4f\n", report.mean_f1, report.std_f1);
        return 0;
    }
    if (command == "ablate") {
        tsph::PipelineConfig base = cfg;
        base.tau.reset();
        base.n.reset();
        const std::vector<tsph::AblationCell> cells =
            tsph::ablation_matrix(ds, base, opt.folds);
        std::string text = "graph,dist,mean_f1,std_f1\n";
        char buf[64];
        for (const tsph::AblationCell& cell : cells) {
            std::snprintf(buf, sizeof(buf), ",%.4f,%.4f\n", cell.mean_f1, cell.std_f1);
            text += tsph::to_string(cell.graph) + "," + tsph::to_string(cell.distance) + buf;
        }
        emit(text, opt.output);
        return 0;
    }
    if (command == "noise-sweep") {
        if (opt.snrs.empty()) throw tsph::ConfigError("noise-sweep: give at least one --snr");
        std::vector<double> snrs;
        snrs.reserve(opt.snrs.size());
        for (const std::string& token : opt.snrs) snrs.push_back(parse_snr(token));
        const std::vector<tsph::NoisePoint> points =
            tsph::noise_sweep(ds, cfg, snrs, opt.folds);
        std::string text = "snr_db,mean_f1,std_f1\n";
        char buf[96];
        for (const tsph::NoisePoint& p : points) {
            if (std::isinf(p.snr_db)) {
                std::snprintf(buf, sizeof(buf), "inf,%.4f,%.4f\n", p.mean_f1, p.std_f1);
            } else {
                std::snprintf(buf, sizeof(buf), "%g,%.4f,%.4f\n", p.snr_db, p.mean_f1, p.std_f1);
            }
            text += buf;
        }
        emit(text, opt.output);
        return 0;
    }
    throw tsph::ConfigError("unknown command '" + command + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistence-based time series features via complex networks"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::vector<CLI::App*> commands;
    for (const char* name : {"params", "graph", "distmat", "persist", "featurize", "run",
                             "ablate", "noise-sweep"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", opt.input, "UCR-style TSV (label, tab, values)")->required();
        sub->add_option("--output", opt.output, "output path (stdout when absent)");
        if (std::string(name) != "params") {
            sub->add_option("--graph", opt.graph, "nvg|hvg|opn|cgssn|knn");
            sub->add_option("--dist", opt.dist, "sp|sp-hop|sp-recip|diffusion");
            sub->add_option("--tau", opt.tau, "embedding delay override");
            sub->add_option("--n", opt.n, "embedding dimension override");
            sub->add_option("--bins", opt.bins, "CGSSN bin count");
            sub->add_option("--k", opt.k, "k-NN neighbor count");
            sub->add_option("--t", opt.t, "diffusion walk length override");
            sub->add_flag("--normalize", opt.normalize, "normalize the matrix to [0,1]");
            sub->add_option("--seed", opt.seed, "random seed");
        }
        if (std::string(name) == "graph" || std::string(name) == "distmat" ||
            std::string(name) == "persist") {
            sub->add_option("--index", opt.index, "series index within the dataset");
        }
        if (std::string(name) == "run" || std::string(name) == "ablate" ||
            std::string(name) == "noise-sweep") {
            sub->add_option("--folds", opt.folds, "cross-validation folds");
        }
        if (std::string(name) == "noise-sweep") {
            sub->add_option("--snr", opt.snrs, "SNR in dB ('inf' for clean); repeatable");
        }
        commands.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        for (CLI::App* sub : commands) {
            if (sub->parsed()) return run_command(sub->get_name(), opt);
        }
        std::cerr << "no command given\n";
        return 1;
    } catch (const tsph::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const tsph::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
