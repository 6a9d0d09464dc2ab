#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tsph/features.hpp"
#include "tsph/persistence.hpp"
#include "test_util.hpp"

using namespace tsph;

namespace {

PersistenceDiagram toy_diagram() { return PersistenceDiagram{1, {{0, 4}, {1, 3}}}; }

double tent_at(const PersistencePair& p, double t) {
    if (t <= p.birth || t >= p.death) return 0.0;
    return std::min(t - p.birth, p.death - t);
}

// direct k-max over all tents
double oracle_landscape(const PersistenceDiagram& dgm, int k, double t) {
    std::vector<double> values;
    for (const PersistencePair& p : dgm.pairs) {
        if (p.death > p.birth) values.push_back(tent_at(p, t));
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    if (static_cast<int>(values.size()) < k) return 0.0;
    return values[k - 1];
}

// dense trapezoid quadrature of lambda_1 (numeric cross-check of the exact integral)
double oracle_norm(const PersistenceDiagram& dgm) {
    double lo = kInfDist, hi = -kInfDist;
    for (const PersistencePair& p : dgm.pairs) {
        lo = std::min(lo, p.birth);
        hi = std::max(hi, p.death);
    }
    if (!(hi > lo)) return 0.0;
    const int samples = 200000;
    double area = 0.0;
    double prev = oracle_landscape(dgm, 1, lo);
    for (int i = 1; i <= samples; ++i) {
        const double t = lo + (hi - lo) * i / samples;
        const double cur = oracle_landscape(dgm, 1, t);
        area += 0.5 * (prev + cur) * ((hi - lo) / samples);
        prev = cur;
    }
    return area;
}

PersistenceDiagram random_diagram(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> birth(0.0, 2.0);
    std::uniform_real_distribution<double> life(0.0, 1.5);
    PersistenceDiagram dgm{1, {}};
    for (int i = 0; i < count; ++i) {
        const double b = birth(rng);
        dgm.pairs.push_back({b, b + life(rng)});
    }
    return dgm;
}

} // namespace

TEST_CASE("landscape layers on the worked diagram") {
    const PersistenceDiagram dgm = toy_diagram();
    CHECK(landscape_value(dgm, 1, 2.0) == 2.0);
    CHECK(landscape_value(dgm, 2, 2.0) == 1.0);
    CHECK(landscape_value(dgm, 3, 2.0) == 0.0);
    CHECK(landscape_value(dgm, 1, 0.0) == 0.0);
    CHECK(landscape_value(dgm, 1, -1.0) == 0.0);
    CHECK(landscape_value(dgm, 1, 4.0) == 0.0);
    CHECK(landscape_value(dgm, 1, 5.5) == 0.0);
}

TEST_CASE("landscape layers are ordered and match the direct k-max") {
    auto rng = testutil::make_rng(401);
    for (int trial = 0; trial < 10; ++trial) {
        const PersistenceDiagram dgm = random_diagram(rng, 6);
        std::uniform_real_distribution<double> tdist(-0.5, 4.0);
        for (int probe = 0; probe < 50; ++probe) {
            const double t = tdist(rng);
            double prev = kInfDist;
            for (int k = 1; k <= 5; ++k) {
                const double value = landscape_value(dgm, k, t);
                CHECK(value == doctest::Approx(oracle_landscape(dgm, k, t)).epsilon(1e-12));
                CHECK(value <= prev);
                CHECK(value >= 0.0);
                prev = value;
            }
        }
    }
}

TEST_CASE("landscapes are 1-Lipschitz in t") {
    auto rng = testutil::make_rng(402);
    const PersistenceDiagram dgm = random_diagram(rng, 8);
    std::uniform_real_distribution<double> tdist(0.0, 3.5);
    for (int probe = 0; probe < 200; ++probe) {
        const double t1 = tdist(rng);
        const double t2 = tdist(rng);
        for (int k = 1; k <= 3; ++k) {
            CHECK(std::abs(landscape_value(dgm, k, t1) - landscape_value(dgm, k, t2)) <=
                  std::abs(t1 - t2) + 1e-12);
        }
    }
}

TEST_CASE("mean landscape: empty diagram is a zero grid over [0,1]") {
    const PersistenceDiagram empty{1, {}};
    const LandscapeGrid grid = mean_landscape(empty);
    REQUIRE(grid.grid.size() == 200);
    REQUIRE(grid.values.size() == 200);
    CHECK(grid.grid.front() == 0.0);
    CHECK(grid.grid.back() == 1.0);
    for (double v : grid.values) CHECK(v == 0.0);
    for (size_t i = 1; i < grid.grid.size(); ++i) CHECK(grid.grid[i] > grid.grid[i - 1]);
}

TEST_CASE("mean landscape averages the first J layers on the worked diagram") {
    // grid of 5 points over [0,4] hits t=2 exactly: (2 + 1 + 0)/3 = 1
    const LandscapeGrid grid = mean_landscape(toy_diagram(), 3, 5);
    CHECK(grid.grid[2] == 2.0);
    CHECK(grid.values[2] == doctest::Approx(1.0));

    // single pair (0, 2): peak (1 + 0 + 0)/3 at t=1
    const PersistenceDiagram single{1, {{0, 2}}};
    const LandscapeGrid sg = mean_landscape(single, 3, 3);
    CHECK(sg.grid[1] == 1.0);
    CHECK(sg.values[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("mean landscape grid spans [min birth, max death]") {
    const LandscapeGrid grid = mean_landscape(toy_diagram());
    CHECK(grid.grid.front() == 0.0);
    CHECK(grid.grid.back() == 4.0);
}

TEST_CASE("persistent entropy") {
    CHECK(persistent_entropy(PersistenceDiagram{0, {{0, 3}}}) == 0.0);
    CHECK(persistent_entropy(PersistenceDiagram{0, {{0, 2}, {1, 3}}}) ==
          doctest::Approx(std::log(2.0)));
    CHECK(persistent_entropy(PersistenceDiagram{1, {{0, 4}, {1, 3}}}) ==
          doctest::Approx(0.636514).epsilon(1e-6));
    CHECK(persistent_entropy(PersistenceDiagram{1, {}}) == 0.0);
}

TEST_CASE("persistent entropy is scale-invariant") {
    auto rng = testutil::make_rng(403);
    const PersistenceDiagram dgm = random_diagram(rng, 7);
    PersistenceDiagram scaled = dgm;
    for (PersistencePair& p : scaled.pairs) {
        p.birth *= 37.5;
        p.death *= 37.5;
    }
    CHECK(persistent_entropy(scaled) == doctest::Approx(persistent_entropy(dgm)).epsilon(1e-12));
}

TEST_CASE("scalar summaries on the worked diagram") {
    const ScalarSummaries s = scalar_summaries(toy_diagram());
    CHECK(s.amplitude == 4.0);
    CHECK(s.total_persistence == 6.0);
    CHECK(s.cardinality == 2);
    CHECK(s.f1 == 2.0);
    CHECK(s.f2 == 2.0);
    CHECK(s.f3 == 16.0);
    CHECK(s.f4 == 16.0);
    CHECK(s.landscape_norm == doctest::Approx(4.0));  // overlapping tents
    CHECK(s.entropy == doctest::Approx(0.636514).epsilon(1e-6));

    const ScalarSummaries lone = scalar_summaries(PersistenceDiagram{1, {{0, 4}}});
    CHECK(lone.landscape_norm == doctest::Approx(4.0));  // (1/4) * 16, disjoint case
}

TEST_CASE("landscape norm matches quadrature and the disjoint closed form") {
    auto rng = testutil::make_rng(404);
    const PersistenceDiagram dgm = random_diagram(rng, 6);
    CHECK(scalar_summaries(dgm).landscape_norm ==
          doctest::Approx(oracle_norm(dgm)).epsilon(1e-4));

    // disjoint tents: ||lambda_1||_1 = (1/4) sum (d-b)^2
    const PersistenceDiagram disjoint{1, {{0, 1}, {2, 3.5}, {5, 5.25}}};
    const double closed_form = (1.0 + 1.5 * 1.5 + 0.25 * 0.25) / 4.0;
    CHECK(scalar_summaries(disjoint).landscape_norm == doctest::Approx(closed_form).epsilon(1e-12));
}

TEST_CASE("amplitude and total persistence equal a direct fold") {
    auto rng = testutil::make_rng(405);
    const PersistenceDiagram dgm = random_diagram(rng, 9);
    double amp = 0.0, total = 0.0;
    for (const PersistencePair& p : dgm.pairs) {
        amp = std::max(amp, p.death - p.birth);
        total += p.death - p.birth;
    }
    const ScalarSummaries s = scalar_summaries(dgm);
    CHECK(s.amplitude == doctest::Approx(amp));
    CHECK(s.total_persistence == doctest::Approx(total));
}

TEST_CASE("finitize substitutes the cap and keeps collapsed pairs for cardinality") {
    const PersistenceDiagram dgm{0, {{0, kInfDist}, {0, 1}}};
    const PersistenceDiagram fin = finitize(dgm, 2.0);
    CHECK(fin.size() == 2);
    CHECK(fin.pairs[0].death == 2.0);
    CHECK(fin.pairs[1].death == 1.0);

    const PersistenceDiagram unchanged = finitize(PersistenceDiagram{1, {{1, 2}}}, 5.0);
    CHECK(unchanged.pairs[0].death == 2.0);

    CHECK_THROWS_AS(finitize(dgm, kInfDist), CapNotFinite);

    // collapsed pair: counted, but carries no landscape/summary mass
    const PersistenceDiagram edge{0, {{0, kInfDist}}};
    const PersistenceDiagram collapsed = finitize(edge, 0.0);
    const ScalarSummaries s = scalar_summaries(collapsed);
    CHECK(s.cardinality == 1);
    CHECK(s.total_persistence == 0.0);
    CHECK(s.amplitude == 0.0);
}

TEST_CASE("finitized 4-cycle dim-0 diagram has lifetimes {1,1,1,2}") {
    DissimilarityMatrix d(4);
    const double values[4][4] = {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) d.at(i, j) = values[i][j];
    }
    const auto [dgm0, dgm1] = persist(d);
    const PersistenceDiagram fin = finitize(dgm0, max_finite_entry(d));
    std::multiset<double> lifetimes;
    for (const PersistencePair& p : fin.pairs) lifetimes.insert(p.death - p.birth);
    CHECK(lifetimes == std::multiset<double>{1, 1, 1, 2});

    // entropy of {1,1,1,2}: direct evaluation
    double expected = 0.0;
    for (double l : lifetimes) expected -= (l / 5.0) * std::log(l / 5.0);
    CHECK(persistent_entropy(fin) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("assemble_features layout and conventions") {
    DissimilarityMatrix d(4);
    const double values[4][4] = {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) d.at(i, j) = values[i][j];
    }
    const auto [dgm0, dgm1] = persist(d);
    const FeatureVector fv = assemble_features(dgm0, dgm1, max_finite_entry(d));
    REQUIRE(static_cast<int>(fv.size()) == kFeatureLength);
    for (double v : fv) CHECK(std::isfinite(v));

    // summary blocks sit at [400..408] (dim 0) and [409..417] (dim 1)
    const PersistenceDiagram fin0 = finitize(dgm0, 2.0);
    const ScalarSummaries s0 = scalar_summaries(fin0);
    CHECK(fv[400] == s0.entropy);
    CHECK(fv[401] == s0.amplitude);
    CHECK(fv[402] == s0.total_persistence);
    CHECK(fv[403] == static_cast<double>(s0.cardinality));
    CHECK(fv[408] == s0.landscape_norm);

    // deterministic across runs
    const FeatureVector again = assemble_features(dgm0, dgm1, max_finite_entry(d));
    CHECK(fv == again);
}

TEST_CASE("assemble_features with an empty dim-1 diagram zeroes its blocks") {
    const PersistenceDiagram dgm0{0, {{0, 1}, {0, kInfDist}}};
    const PersistenceDiagram dgm1{1, {}};
    const FeatureVector fv = assemble_features(dgm0, dgm1, 1.0);
    REQUIRE(static_cast<int>(fv.size()) == kFeatureLength);
    for (int i = 200; i < 400; ++i) CHECK(fv[i] == 0.0);
    for (int i = 409; i < 418; ++i) CHECK(fv[i] == 0.0);
}

TEST_CASE("feature header names the blocks") {
    const auto header = feature_header();
    REQUIRE(static_cast<int>(header.size()) == kFeatureLength);
    CHECK(header.front() == "h0_land_000");
    CHECK(header[199] == "h0_land_199");
    CHECK(header[200] == "h1_land_000");
    CHECK(header[400] == "h0_entropy");
    CHECK(header[403] == "h0_cardinality");
    CHECK(header[409] == "h1_entropy");
    CHECK(header.back() == "h1_norm");
}

TEST_CASE("feature CSV round-trips bit-exactly through max-precision text") {
    const PersistenceDiagram dgm0{0, {{0, 0.123456789012345}, {0, kInfDist}}};
    const PersistenceDiagram dgm1{1, {{0.1, 0.9}}};
    const FeatureVector fv = assemble_features(dgm0, dgm1, 1.0);
    const std::string csv = features_to_csv({fv});

    // parse the second line back
    const size_t newline = csv.find('\n');
    std::vector<double> parsed;
    size_t start = newline + 1;
    while (start < csv.size()) {
        size_t end = csv.find_first_of(",\n", start);
        parsed.push_back(std::stod(csv.substr(start, end - start)));
        start = end + 1;
    }
    REQUIRE(parsed.size() == fv.size());
    for (size_t i = 0; i < fv.size(); ++i) CHECK(parsed[i] == fv[i]);
}
