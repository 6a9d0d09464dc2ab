#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "tsph/pipeline.hpp"
#include "test_util.hpp"

using namespace tsph;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/tsph_test_" + name;
    std::ofstream out(path);
    out << content;
    out.close();
    return path;
}

} // namespace

TEST_CASE("load_ucr_tsv parses label + tab-separated values") {
    const std::string path = write_temp("basic.tsv", "1\t0.5\t0.7\t0.9\n2\t-1\t2.25\n");
    const Dataset ds = load_ucr_tsv(path);
    REQUIRE(ds.size() == 2);
    CHECK(ds.series[0].label == "1");
    CHECK(ds.series[0].values == std::vector<double>{0.5, 0.7, 0.9});
    CHECK(ds.series[1].label == "2");
    CHECK(ds.series[1].values == std::vector<double>{-1.0, 2.25});  // mixed lengths accepted
}

TEST_CASE("load_ucr_tsv reports malformed tokens with the line number") {
    const std::string path = write_temp("bad.tsv", "1\t0.5\n1\tabc\t0.7\n");
    try {
        load_ucr_tsv(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("load_ucr_tsv: empty and headerless edge cases") {
    CHECK_THROWS_AS(load_ucr_tsv(write_temp("empty.tsv", "")), EmptyFile);
    CHECK_THROWS_AS(load_ucr_tsv(write_temp("blank.tsv", "\n   \n")), EmptyFile);
    CHECK_THROWS_AS(load_ucr_tsv("/tmp/tsph_no_such_file.tsv"), ParseError);
    CHECK_THROWS_AS(load_ucr_tsv(write_temp("label_only.tsv", "1\n")), ParseError);
}

TEST_CASE("inject_noise: infinite SNR returns the input exactly") {
    auto rng = testutil::make_rng(501);
    const TimeSeries x = testutil::gaussian_series(rng, 64);
    const TimeSeries clean = inject_noise(x, kInfDist, 7);
    CHECK(clean.values == x.values);
}

TEST_CASE("inject_noise is deterministic and seed-sensitive") {
    auto rng = testutil::make_rng(502);
    const TimeSeries x = testutil::gaussian_series(rng, 256);
    const TimeSeries a = inject_noise(x, 10.0, 99);
    const TimeSeries b = inject_noise(x, 10.0, 99);
    const TimeSeries c = inject_noise(x, 10.0, 100);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
}

TEST_CASE("inject_noise hits the requested power ratio") {
    const TimeSeries sine = testutil::sine_series(100000, 337.0);
    double signal_power = 0.0, mean = 0.0;
    for (double v : sine.values) mean += v;
    mean /= sine.length();
    for (double v : sine.values) signal_power += (v - mean) * (v - mean);
    signal_power /= sine.length();

    for (double snr : {0.0, 10.0, 20.0}) {
        const TimeSeries noisy = inject_noise(sine, snr, 42);
        double noise_power = 0.0;
        for (int i = 0; i < sine.length(); ++i) {
            const double diff = noisy.values[i] - sine.values[i];
            noise_power += diff * diff;
        }
        noise_power /= sine.length();
        const double expected = std::pow(10.0, -snr / 10.0);
        CHECK(noise_power / signal_power == doctest::Approx(expected).epsilon(0.1));
    }
}

TEST_CASE("inject_noise rejects constant series at finite SNR") {
    TimeSeries flat;
    flat.values.assign(32, 5.0);
    CHECK_THROWS_AS(inject_noise(flat, 10.0, 1), ZeroPowerSignal);
    CHECK_NOTHROW(inject_noise(flat, kInfDist, 1));
}

TEST_CASE("mix_seed separates series ordinals") {
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 100; ++i) seen.insert(mix_seed(42, i));
    CHECK(seen.size() == 100);
    CHECK(mix_seed(42, 3) == mix_seed(42, 3));
    CHECK(mix_seed(43, 3) != mix_seed(42, 3));
}

TEST_CASE("config validation: the 14 valid pairs pass, the 6 invalid are rejected") {
    int accepted = 0, rejected = 0;
    for (GraphType g : {GraphType::NVG, GraphType::HVG, GraphType::OPN, GraphType::CGSSN,
                        GraphType::KNN}) {
        for (DistanceType dist : {DistanceType::ShortestPath, DistanceType::HopOnOptimal,
                                  DistanceType::ReciprocalPath, DistanceType::Diffusion}) {
            PipelineConfig cfg;
            cfg.graph_type = g;
            cfg.distance_type = dist;
            try {
                validate(cfg);
                ++accepted;
            } catch (const ConfigError&) {
                ++rejected;
                CHECK_FALSE(graph_is_weighted(g));
                CHECK((dist == DistanceType::HopOnOptimal || dist == DistanceType::ReciprocalPath));
            }
        }
    }
    CHECK(accepted == 14);
    CHECK(rejected == 6);
}

TEST_CASE("run_pipeline rejects weight-based distances on unweighted graphs") {
    Dataset ds = testutil::synthetic_suite(3, 60);
    PipelineConfig cfg;
    cfg.graph_type = GraphType::NVG;
    cfg.distance_type = DistanceType::ReciprocalPath;
    CHECK_THROWS_AS(run_pipeline(ds, cfg), ConfigError);
}

TEST_CASE("run_pipeline: identical series produce identical feature rows") {
    const TimeSeries sine = testutil::sine_series(80, 23.0, 0.4, 0.05, 3);
    Dataset ds;
    ds.name = "copies";
    for (int i = 0; i < 10; ++i) {
        TimeSeries copy = sine;
        copy.label = i % 2 == 0 ? "a" : "b";
        copy.id = std::to_string(i);
        ds.series.push_back(std::move(copy));
    }
    PipelineConfig cfg;
    cfg.graph_type = GraphType::OPN;
    cfg.distance_type = DistanceType::Diffusion;
    const PipelineResult result = run_pipeline(ds, cfg);
    REQUIRE(result.features.size() == 10);
    for (const FeatureVector& row : result.features) CHECK(row == result.features.front());
}

TEST_CASE("run_pipeline emits one 418-feature row per series, in order") {
    const Dataset ds = testutil::synthetic_suite(4, 80);
    PipelineConfig cfg;
    cfg.graph_type = GraphType::CGSSN;
    cfg.distance_type = DistanceType::Diffusion;
    const PipelineResult result = run_pipeline(ds, cfg);
    REQUIRE(static_cast<int>(result.features.size()) == ds.size());
    for (int i = 0; i < ds.size(); ++i) {
        CHECK(static_cast<int>(result.features[i].size()) == kFeatureLength);
        CHECK(result.labels[i] == ds.series[i].label);
    }
    CHECK(result.meta.tau >= 1);
    CHECK(result.meta.n >= 2);
    CHECK(result.meta.bins >= 2);
}

TEST_CASE("run_pipeline names the failing series") {
    Dataset ds = testutil::synthetic_suite(2, 40);
    ds.series[1].values.resize(2);  // too short to embed
    ds.series[1].id = "shorty";
    PipelineConfig cfg;
    cfg.graph_type = GraphType::KNN;
    cfg.distance_type = DistanceType::ShortestPath;
    cfg.tau = 1;
    cfg.n = 3;
    try {
        run_pipeline(ds, cfg);
        FAIL("expected PipelineError");
    } catch (const PipelineError& e) {
        CHECK(std::string(e.what()).find("shorty") != std::string::npos);
    }
}

TEST_CASE("run_pipeline is bitwise deterministic end to end") {
    const Dataset ds = testutil::synthetic_suite(5, 60);
    PipelineConfig cfg;
    cfg.graph_type = GraphType::CGSSN;
    cfg.distance_type = DistanceType::Diffusion;
    cfg.normalize = true;
    const PipelineResult a = run_pipeline(ds, cfg);
    const PipelineResult b = run_pipeline(ds, cfg);
    CHECK(features_to_csv(a.features) == features_to_csv(b.features));

    const EvalReport ra = evaluate_baseline(a.features, a.labels, 5, 42);
    const EvalReport rb = evaluate_baseline(b.features, b.labels, 5, 42);
    CHECK(ra.fold_f1 == rb.fold_f1);
    CHECK(ra.fold_assignment == rb.fold_assignment);
}

TEST_CASE("CGSSN state-space cap trims n before bins") {
    const Dataset ds = testutil::synthetic_suite(3, 120);
    PipelineConfig cfg;
    cfg.graph_type = GraphType::CGSSN;
    cfg.distance_type = DistanceType::ShortestPath;
    cfg.tau = 1;
    cfg.n = 7;  // 8^7 >> 4096
    cfg.bins = 8;
    const PipelineResult result = run_pipeline(ds, cfg);
    CHECK(result.meta.n == 4);  // 8^4 = 4096
    CHECK(result.meta.bins == 8);
}

TEST_CASE("monotone series still yields a feature row through OPN") {
    Dataset ds;
    ds.name = "monotone";
    TimeSeries rising;
    for (int i = 0; i < 50; ++i) rising.values.push_back(static_cast<double>(i));
    rising.label = "up";
    TimeSeries falling;
    for (int i = 0; i < 50; ++i) falling.values.push_back(50.0 - i);
    falling.label = "down";
    ds.series = {rising, falling};
    PipelineConfig cfg;
    cfg.graph_type = GraphType::OPN;
    cfg.distance_type = DistanceType::Diffusion;
    cfg.tau = 1;
    cfg.n = 3;
    const PipelineResult result = run_pipeline(ds, cfg);  // single-vertex graphs inside
    REQUIRE(result.features.size() == 2);
    for (const FeatureVector& row : result.features) {
        CHECK(static_cast<int>(row.size()) == kFeatureLength);
        for (double v : row) CHECK(std::isfinite(v));
    }
}

TEST_CASE("evaluate_baseline: separable constants score a perfect F1") {
    std::vector<FeatureVector> features;
    std::vector<std::string> labels;
    for (int i = 0; i < 20; ++i) {
        FeatureVector row(10, i % 2 == 0 ? 0.0 : 5.0);
        features.push_back(row);
        labels.push_back(i % 2 == 0 ? "a" : "b");
    }
    const EvalReport report = evaluate_baseline(features, labels, 5, 42);
    for (double f1 : report.fold_f1) CHECK(f1 == 1.0);
    CHECK(report.mean_f1 == 1.0);
    CHECK(report.std_f1 == 0.0);
}

TEST_CASE("evaluate_baseline: identical features collapse to one predicted class") {
    std::vector<FeatureVector> features(30, FeatureVector(8, 1.25));
    std::vector<std::string> labels;
    for (int i = 0; i < 30; ++i) labels.push_back(i % 2 == 0 ? "a" : "b");
    const EvalReport report = evaluate_baseline(features, labels, 5, 42);
    CHECK(report.mean_f1 <= 0.6);
}

TEST_CASE("evaluate_baseline enforces class sizes and fold stratification") {
    std::vector<FeatureVector> features(7, FeatureVector(4, 0.0));
    std::vector<std::string> labels{"a", "a", "a", "a", "a", "b", "b"};
    CHECK_THROWS_AS(evaluate_baseline(features, labels, 5, 42), ClassTooSmall);

    // stratification: per-fold class counts within 1 of each other
    auto rng = testutil::make_rng(503);
    std::vector<FeatureVector> feats;
    std::vector<std::string> labs;
    for (int i = 0; i < 52; ++i) {
        FeatureVector row(6);
        for (double& v : row) v = static_cast<double>(rng() % 1000);
        feats.push_back(row);
        labs.push_back(i < 31 ? "x" : "y");
    }
    const EvalReport report = evaluate_baseline(feats, labs, 5, 7);
    std::map<std::pair<int, std::string>, int> counts;
    for (int i = 0; i < 52; ++i) ++counts[{report.fold_assignment[i], labs[i]}];
    for (const std::string& cls : {"x", "y"}) {
        int lo = 1 << 30, hi = 0;
        for (int fold = 0; fold < 5; ++fold) {
            lo = std::min(lo, counts[{fold, cls}]);
            hi = std::max(hi, counts[{fold, cls}]);
        }
        CHECK(hi - lo <= 1);
    }
}

TEST_CASE("ablation_matrix covers exactly the 14 valid combinations") {
    const Dataset ds = testutil::synthetic_suite(5, 50);
    PipelineConfig base;
    base.tau = 1;
    base.n = 3;
    const std::vector<AblationCell> cells = ablation_matrix(ds, base, 2);
    CHECK(cells.size() == 14);
    std::map<GraphType, int> per_graph;
    for (const AblationCell& cell : cells) ++per_graph[cell.graph];
    CHECK(per_graph[GraphType::NVG] == 2);
    CHECK(per_graph[GraphType::HVG] == 2);
    CHECK(per_graph[GraphType::KNN] == 2);
    CHECK(per_graph[GraphType::OPN] == 4);
    CHECK(per_graph[GraphType::CGSSN] == 4);
    for (const AblationCell& cell : cells) {
        CHECK(cell.mean_f1 >= 0.0);
        CHECK(cell.mean_f1 <= 1.0);
    }
}

TEST_CASE("noise_sweep at infinite SNR equals the clean run") {
    const Dataset ds = testutil::synthetic_suite(5, 60);
    PipelineConfig cfg;
    cfg.graph_type = GraphType::CGSSN;
    cfg.distance_type = DistanceType::Diffusion;
    const std::vector<NoisePoint> sweep = noise_sweep(ds, cfg, {kInfDist}, 5);
    REQUIRE(sweep.size() == 1);

    const PipelineResult clean = run_pipeline(ds, cfg);
    const EvalReport report = evaluate_baseline(clean.features, clean.labels, 5, cfg.seed);
    CHECK(sweep[0].mean_f1 == doctest::Approx(report.mean_f1));
    CHECK(std::isinf(sweep[0].snr_db));
}

TEST_CASE("noise_sweep emits rows in the order of the SNR list") {
    const Dataset ds = testutil::synthetic_suite(4, 60);
    PipelineConfig cfg;
    cfg.graph_type = GraphType::OPN;
    cfg.distance_type = DistanceType::ShortestPath;
    const std::vector<double> snrs{kInfDist, 20.0, 0.0};
    const std::vector<NoisePoint> sweep = noise_sweep(ds, cfg, snrs, 2);
    REQUIRE(sweep.size() == 3);
    CHECK(std::isinf(sweep[0].snr_db));
    CHECK(sweep[1].snr_db == 20.0);
    CHECK(sweep[2].snr_db == 0.0);
}
