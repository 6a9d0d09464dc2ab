#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tsph/embedding.hpp"
#include "tsph/features.hpp"
#include "tsph/graph_metrics.hpp"
#include "tsph/networks.hpp"
#include "tsph/persistence.hpp"
#include "tsph/pipeline.hpp"

namespace py = pybind11;
using namespace tsph;

namespace {

TimeSeries make_series(const std::vector<double>& values, const std::string& label,
                       const std::string& id) {
    return TimeSeries{values, label, id};
}

} // namespace

PYBIND11_MODULE(tsph, m) {
    m.doc() = "persistence-based time series features via complex networks";

    // -- types ----------------------------------------------------------------
    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init(&make_series), py::arg("values"), py::arg("label") = "",
             py::arg("id") = "")
        .def_readwrite("values", &TimeSeries::values)
        .def_readwrite("label", &TimeSeries::label)
        .def_readwrite("id", &TimeSeries::id)
        .def("__len__", [](const TimeSeries& x) { return x.values.size(); });

    py::class_<PointCloud>(m, "PointCloud")
        .def_readonly("points", &PointCloud::points)
        .def_readonly("dim", &PointCloud::dim)
        .def_readonly("delay", &PointCloud::delay)
        .def("__len__", [](const PointCloud& c) { return c.points.size(); });

    py::class_<GraphEdge>(m, "GraphEdge")
        .def_readonly("u", &GraphEdge::u)
        .def_readonly("v", &GraphEdge::v)
        .def_readonly("weight", &GraphEdge::weight)
        .def("__repr__", [](const GraphEdge& e) {
            return "GraphEdge(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ", " +
                   std::to_string(e.weight) + ")";
        });

    py::class_<Graph>(m, "Graph")
        .def_readonly("vertex_count", &Graph::vertex_count)
        .def_readonly("weighted", &Graph::weighted)
        .def_readonly("edges", &Graph::edges)
        .def_readonly("vertex_labels", &Graph::vertex_labels)
        .def("degrees", &Graph::degrees)
        .def("has_edge", &Graph::has_edge)
        .def("edge_weight", &Graph::edge_weight)
        .def("to_edge_list", [](const Graph& g) { return to_edge_list_text(g); });

    py::class_<DissimilarityMatrix>(m, "DissimilarityMatrix")
        .def(py::init<int>())
        .def_readonly("size", &DissimilarityMatrix::size)
        .def("at", [](const DissimilarityMatrix& d, int i, int j) { return d.at(i, j); })
        .def("set",
             [](DissimilarityMatrix& d, int i, int j, double v) {
                 d.at(i, j) = v;
                 d.at(j, i) = v;
             })
        .def("to_csv", [](const DissimilarityMatrix& d) { return to_csv(d); })
        .def("rows", [](const DissimilarityMatrix& d) {
            std::vector<std::vector<double>> rows(d.size, std::vector<double>(d.size));
            for (int i = 0; i < d.size; ++i) {
                for (int j = 0; j < d.size; ++j) rows[i][j] = d.at(i, j);
            }
            return rows;
        });

    py::class_<PersistencePair>(m, "PersistencePair")
        .def_readonly("birth", &PersistencePair::birth)
        .def_readonly("death", &PersistencePair::death)
        .def("__repr__", [](const PersistencePair& p) {
            return "(" + std::to_string(p.birth) + ", " + std::to_string(p.death) + ")";
        });

    py::class_<PersistenceDiagram>(m, "PersistenceDiagram")
        .def(py::init([](int dimension, const std::vector<std::pair<double, double>>& pairs) {
                 PersistenceDiagram dgm{dimension, {}};
                 for (const auto& [b, d] : pairs) dgm.pairs.push_back({b, d});
                 return dgm;
             }),
             py::arg("dimension"), py::arg("pairs"))
        .def_readonly("dimension", &PersistenceDiagram::dimension)
        .def_readonly("pairs", &PersistenceDiagram::pairs)
        .def("__len__", [](const PersistenceDiagram& d) { return d.pairs.size(); })
        .def("to_json", [](const PersistenceDiagram& d) { return to_json(d); });

    py::class_<LandscapeGrid>(m, "LandscapeGrid")
        .def_readonly("grid", &LandscapeGrid::grid)
        .def_readonly("values", &LandscapeGrid::values);

    py::class_<ScalarSummaries>(m, "ScalarSummaries")
        .def_readonly("entropy", &ScalarSummaries::entropy)
        .def_readonly("amplitude", &ScalarSummaries::amplitude)
        .def_readonly("total_persistence", &ScalarSummaries::total_persistence)
        .def_readonly("cardinality", &ScalarSummaries::cardinality)
        .def_readonly("f1", &ScalarSummaries::f1)
        .def_readonly("f2", &ScalarSummaries::f2)
        .def_readonly("f3", &ScalarSummaries::f3)
        .def_readonly("f4", &ScalarSummaries::f4)
        .def_readonly("landscape_norm", &ScalarSummaries::landscape_norm);

    py::enum_<ParamFamily>(m, "ParamFamily")
        .value("OPN", ParamFamily::Opn)
        .value("CGSSN_KNN", ParamFamily::CgssnKnn);

    py::class_<EmbeddingParams>(m, "EmbeddingParams")
        .def_readonly("tau", &EmbeddingParams::tau)
        .def_readonly("n", &EmbeddingParams::n);

    py::enum_<GraphType>(m, "GraphType")
        .value("NVG", GraphType::NVG)
        .value("HVG", GraphType::HVG)
        .value("OPN", GraphType::OPN)
        .value("CGSSN", GraphType::CGSSN)
        .value("KNN", GraphType::KNN);

    py::enum_<DistanceType>(m, "DistanceType")
        .value("SHORTEST_PATH", DistanceType::ShortestPath)
        .value("HOP_ON_OPTIMAL", DistanceType::HopOnOptimal)
        .value("RECIPROCAL_PATH", DistanceType::ReciprocalPath)
        .value("DIFFUSION", DistanceType::Diffusion);

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("graph_type", &PipelineConfig::graph_type)
        .def_readwrite("distance_type", &PipelineConfig::distance_type)
        .def_readwrite("tau", &PipelineConfig::tau)
        .def_readwrite("n", &PipelineConfig::n)
        .def_readwrite("bins", &PipelineConfig::bins)
        .def_readwrite("k", &PipelineConfig::k)
        .def_readwrite("normalize", &PipelineConfig::normalize)
        .def_readwrite("diffusion_t", &PipelineConfig::diffusion_t)
        .def_readwrite("seed", &PipelineConfig::seed);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def(py::init([](const std::vector<TimeSeries>& series, const std::string& name) {
                 return Dataset{series, name};
             }),
             py::arg("series"), py::arg("name") = "")
        .def_readwrite("series", &Dataset::series)  // note: reads copy the vector
        .def_readwrite("name", &Dataset::name)
        .def("add", [](Dataset& ds, const TimeSeries& x) { ds.series.push_back(x); })
        .def("__len__", [](const Dataset& ds) { return ds.series.size(); });

    py::class_<RunMetadata>(m, "RunMetadata")
        .def_readonly("tau", &RunMetadata::tau)
        .def_readonly("n", &RunMetadata::n)
        .def_readonly("bins", &RunMetadata::bins)
        .def_readonly("k", &RunMetadata::k)
        .def_readonly("diffusion_t", &RunMetadata::diffusion_t)
        .def_readonly("diffusion_t_auto", &RunMetadata::diffusion_t_auto);

    py::class_<PipelineResult>(m, "PipelineResult")
        .def_readonly("features", &PipelineResult::features)
        .def_readonly("labels", &PipelineResult::labels)
        .def_readonly("meta", &PipelineResult::meta);

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("fold_f1", &EvalReport::fold_f1)
        .def_readonly("mean_f1", &EvalReport::mean_f1)
        .def_readonly("std_f1", &EvalReport::std_f1)
        .def_readonly("fold_assignment", &EvalReport::fold_assignment);

    py::class_<AblationCell>(m, "AblationCell")
        .def_readonly("graph", &AblationCell::graph)
        .def_readonly("distance", &AblationCell::distance)
        .def_readonly("mean_f1", &AblationCell::mean_f1)
        .def_readonly("std_f1", &AblationCell::std_f1);

    py::class_<NoisePoint>(m, "NoisePoint")
        .def_readonly("snr_db", &NoisePoint::snr_db)
        .def_readonly("mean_f1", &NoisePoint::mean_f1)
        .def_readonly("std_f1", &NoisePoint::std_f1);

    // -- embedding --------------------------------------------------------------
    m.def("delay_embed", &delay_embed, py::arg("x"), py::arg("tau"), py::arg("n"));
    m.def("mutual_information_curve", &mutual_information_curve, py::arg("x"),
          py::arg("tau_max"));
    m.def("select_delay_mi", &select_delay_mi, py::arg("x"), py::arg("tau_max"));
    m.def("mspe_delay_curve", &mspe_delay_curve, py::arg("x"), py::arg("n_probe"),
          py::arg("tau_max"));
    m.def("select_delay_mspe", &select_delay_mspe, py::arg("x"), py::arg("n_probe"),
          py::arg("tau_max"));
    m.def("normalized_permutation_entropy", &normalized_permutation_entropy, py::arg("x"),
          py::arg("tau"), py::arg("n"));
    m.def("fnn_fraction_curve", &fnn_fraction_curve, py::arg("x"), py::arg("tau"),
          py::arg("n_max"), py::arg("r_tol") = 15.0);
    m.def("select_dim_fnn", &select_dim_fnn, py::arg("x"), py::arg("tau"), py::arg("n_max") = 7,
          py::arg("r_tol") = 15.0, py::arg("frac_threshold") = 0.01);
    m.def("select_dim_mspe", &select_dim_mspe, py::arg("x"), py::arg("tau"),
          py::arg("n_min") = 3, py::arg("n_max") = 7);
    m.def("select_shared_params", &select_shared_params, py::arg("dataset"), py::arg("family"),
          py::arg("subset_size") = 30);

    // -- networks ----------------------------------------------------------------
    m.def(
        "ordinal_pattern",
        [](const std::vector<double>& window) { return ordinal_pattern(window); },
        py::arg("window"));
    m.def("build_nvg", &build_nvg, py::arg("x"));
    m.def("build_hvg", &build_hvg, py::arg("x"));
    m.def("build_opn", &build_opn, py::arg("x"), py::arg("tau"), py::arg("n"));
    m.def("build_cgssn", &build_cgssn, py::arg("x"), py::arg("tau"), py::arg("n"), py::arg("b"));
    m.def("build_knn", &build_knn, py::arg("x"), py::arg("tau"), py::arg("n"), py::arg("k"));

    // -- graph metrics -------------------------------------------------------------
    m.def("dist_shortest_unweighted", &dist_shortest_unweighted, py::arg("g"));
    m.def("dist_hop_on_optimal", &dist_hop_on_optimal, py::arg("g"));
    m.def("dist_reciprocal_shortest", &dist_reciprocal_shortest, py::arg("g"));
    m.def(
        "dist_diffusion",
        [](const Graph& g, int t) { return dist_diffusion(g, DiffusionConfig{t}); },
        py::arg("g"), py::arg("t"));
    m.def("default_walk_length", &default_walk_length, py::arg("g"));
    m.def("graph_diameter", &graph_diameter, py::arg("g"));
    m.def(
        "normalize_matrix", [](const DissimilarityMatrix& d) { return normalize(d); },
        py::arg("d"));
    m.def("max_finite_entry", &max_finite_entry, py::arg("d"));

    // -- persistence -----------------------------------------------------------------
    m.def("persist", &persist, py::arg("d"));
    m.def("betti_oracle", &betti_oracle, py::arg("d"), py::arg("eps"));
    m.def("landscape_stability_check", &landscape_stability_check, py::arg("d"),
          py::arg("d_prime"));

    // -- features ----------------------------------------------------------------
    m.def("landscape_value", &landscape_value, py::arg("dgm"), py::arg("k"), py::arg("t"));
    m.def("mean_landscape", &mean_landscape, py::arg("dgm"),
          py::arg("layers") = kLandscapeLayers, py::arg("grid_size") = kLandscapeGridSize);
    m.def("persistent_entropy", &persistent_entropy, py::arg("dgm"));
    m.def("scalar_summaries", &scalar_summaries, py::arg("dgm"));
    m.def("finitize", &finitize, py::arg("dgm"), py::arg("cap"));
    m.def("assemble_features", &assemble_features, py::arg("dgm0"), py::arg("dgm1"),
          py::arg("cap"));
    m.def("feature_header", &feature_header);
    m.attr("FEATURE_LENGTH") = kFeatureLength;

    // -- pipeline ----------------------------------------------------------------
    m.def("load_ucr_tsv", &load_ucr_tsv, py::arg("path"));
    m.def("inject_noise", &inject_noise, py::arg("x"), py::arg("snr_db"), py::arg("seed"));
    m.def("run_pipeline", &run_pipeline, py::arg("dataset"), py::arg("config"));
    m.def("evaluate_baseline", &evaluate_baseline, py::arg("features"), py::arg("labels"),
          py::arg("folds"), py::arg("seed"));
    m.def("ablation_matrix", &ablation_matrix, py::arg("dataset"), py::arg("base_config"),
          py::arg("folds") = 5);
    m.def("noise_sweep", &noise_sweep, py::arg("dataset"), py::arg("config"), py::arg("snrs_db"),
          py::arg("folds") = 5);
}
