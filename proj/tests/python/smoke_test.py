"""Smoke tests for the tsph python module: worked examples plus a tiny run."""

import math
import sys

import tsph


def check(condition, message):
    if not condition:
        print(f"FAIL: {message}")
        sys.exit(1)


def test_visibility_graphs():
    x = tsph.TimeSeries([1, 2, 1, 5, 2])
    nvg = tsph.build_nvg(x)
    edges = {(e.u, e.v) for e in nvg.edges}
    check(edges == {(0, 1), (1, 2), (2, 3), (3, 4), (1, 3), (0, 3)}, "NVG edge set")
    check(nvg.degrees()[3] == 4, "NVG hub degree")

    hvg = tsph.build_hvg(x)
    check(len(hvg.edges) == 5 and not hvg.has_edge(0, 3), "HVG drops (1,4)")


def test_transition_networks():
    opn = tsph.build_opn(tsph.TimeSeries([1, 3, 2, 5, 4, 2, 4, 1, 3]), 1, 3)
    check(opn.vertex_count == 5, "OPN vertex count")
    check(opn.edge_weight(0, 1) == 2.0, "OPN symmetrized weight")

    cg = tsph.build_cgssn(tsph.TimeSeries([1, 4, 7, 2, 5, 8, 3, 6, 1]), 1, 3, 2)
    check(list(cg.vertex_labels) == [3, 4, 5, 6, 7], "CGSSN states")

    knn = tsph.build_knn(tsph.TimeSeries([1, 2, 1, 5, 2, 3, 1]), 1, 3, 2)
    check({(e.u, e.v) for e in knn.edges} ==
          {(0, 1), (0, 2), (0, 4), (1, 3), (2, 4), (3, 4)}, "k-NN edge set")


def test_persistence_and_features():
    d = tsph.DissimilarityMatrix(4)
    hops = [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]
    for i in range(4):
        for j in range(i + 1, 4):
            d.set(i, j, hops[i][j])

    dgm0, dgm1 = tsph.persist(d)
    births_deaths = sorted((p.birth, p.death) for p in dgm0.pairs)
    check(births_deaths[:3] == [(0.0, 1.0)] * 3, "Dgm0 finite pairs")
    check(math.isinf(births_deaths[3][1]), "Dgm0 essential pair")
    check([(p.birth, p.death) for p in dgm1.pairs] == [(1.0, 2.0)], "Dgm1 loop")
    check(tsph.betti_oracle(d, 1.0) == (1, 1), "betti oracle at 1")

    toy = tsph.PersistenceDiagram(1, [(0.0, 4.0), (1.0, 3.0)])
    check(tsph.landscape_value(toy, 1, 2.0) == 2.0, "lambda1")
    check(tsph.landscape_value(toy, 2, 2.0) == 1.0, "lambda2")
    s = tsph.scalar_summaries(toy)
    check((s.amplitude, s.total_persistence, s.cardinality) == (4.0, 6.0, 2), "summaries")
    check((s.f1, s.f2, s.f3, s.f4) == (2.0, 2.0, 16.0, 16.0), "AC coordinates")

    fv = tsph.assemble_features(dgm0, dgm1, tsph.max_finite_entry(d))
    check(len(fv) == tsph.FEATURE_LENGTH == 418, "feature length")


def test_pipeline_run():
    ds = tsph.Dataset()
    ds.name = "smoke"
    for i in range(12):
        if i % 2 == 0:
            values = [math.sin(2 * math.pi * t / (18 + i)) for t in range(70)]
            ds.add(tsph.TimeSeries(values, "sine", str(i)))
        else:
            rng_values = [math.sin(1e4 * math.sin(7 * t + i)) for t in range(70)]
            ds.add(tsph.TimeSeries(rng_values, "other", str(i)))

    cfg = tsph.PipelineConfig()
    cfg.graph_type = tsph.GraphType.OPN
    cfg.distance_type = tsph.DistanceType.DIFFUSION
    cfg.tau = 1
    cfg.n = 3
    result = tsph.run_pipeline(ds, cfg)
    check(len(result.features) == 12, "one row per series")
    check(all(len(row) == 418 for row in result.features), "row width")

    report = tsph.evaluate_baseline(result.features, result.labels, 3, 42)
    check(0.0 <= report.mean_f1 <= 1.0, "macro F1 in range")
    check(len(report.fold_f1) == 3, "fold count")


def main():
    test_visibility_graphs()
    test_transition_networks()
    test_persistence_and_features()
    test_pipeline_run()
    print("python smoke tests passed")


if __name__ == "__main__":
    main()
