#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "ramanmp/model_io.hpp"
#include "ramanmp/models.hpp"
#include "support/tmpdir.hpp"

using namespace ramanmp;

namespace {

FeatureMatrix matrix(std::vector<std::vector<double>> rows,
                     std::vector<PolymerType> labels) {
    FeatureMatrix m;
    m.rows = std::move(rows);
    m.labels = std::move(labels);
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        m.ids.push_back("row" + std::to_string(i));
    return m;
}

double train_accuracy(const DecisionTree& t, const FeatureMatrix& m) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (t.predict(m.rows[i]) == m.labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(m.size());
}

}  // namespace

TEST_CASE("criterion names round-trip") {
    CHECK(criterion_name(SplitCriterion::kInformationGain) == "entropy");
    CHECK(criterion_name(SplitCriterion::kGini) == "gini");
    CHECK(criterion_from_name("entropy") == SplitCriterion::kInformationGain);
    CHECK(criterion_from_name("gini") == SplitCriterion::kGini);
    CHECK_THROWS_AS(criterion_from_name("mse"), ConfigError);
}

TEST_CASE("impurity boundary values") {
    const std::size_t pure[] = {5, 0};
    CHECK(impurity(pure, SplitCriterion::kInformationGain) == 0.0);
    CHECK(impurity(pure, SplitCriterion::kGini) == 0.0);

    const std::size_t even[] = {1, 1};
    CHECK(impurity(even, SplitCriterion::kInformationGain) == 1.0);
    CHECK(impurity(even, SplitCriterion::kGini) == 0.5);

    const std::size_t four[] = {3, 3, 3, 3};
    CHECK(std::abs(impurity(four, SplitCriterion::kInformationGain) - 2.0) <=
          1e-12);
    CHECK(std::abs(impurity(four, SplitCriterion::kGini) - 0.75) <= 1e-12);

    const std::size_t none[] = {0, 0};
    CHECK_THROWS_AS(impurity(none, SplitCriterion::kInformationGain),
                    DataError);
}

TEST_CASE("uniform distributions maximize impurity") {
    for (std::size_t c = 2; c <= 15; ++c) {
        std::vector<std::size_t> counts(c, 7);
        CHECK(std::abs(impurity(counts, SplitCriterion::kInformationGain) -
                       std::log2(static_cast<double>(c))) <= 1e-12);
        CHECK(std::abs(impurity(counts, SplitCriterion::kGini) -
                       (1.0 - 1.0 / static_cast<double>(c))) <= 1e-12);
    }
}

// ---------------------------------------------------------------------------
// Decision tree
// ---------------------------------------------------------------------------

TEST_CASE("a linearly separable pair of clusters yields a depth-1 stump") {
    const auto m = matrix({{0.0}, {1.0}, {10.0}, {11.0}},
                          {PolymerType::kAcrylic, PolymerType::kAcrylic,
                           PolymerType::kPolystyrene, PolymerType::kPolystyrene});
    Rng rng(1);
    const DecisionTree t = train_tree(m, SplitCriterion::kInformationGain,
                                      TreeParams{}, rng);
    CHECK(t.depth() == 1);
    CHECK(t.nodes().size() == 3);
    CHECK(t.nodes()[0].feature == 0);
    CHECK(t.nodes()[0].threshold == 5.5);  // midpoint of 1 and 10
    CHECK(train_accuracy(t, m) == 1.0);
}

TEST_CASE("a single-class matrix trains to one leaf") {
    const auto m = matrix({{1.0, 2.0}, {3.0, 4.0}},
                          {PolymerType::kCotton, PolymerType::kCotton});
    Rng rng(1);
    const DecisionTree t =
        train_tree(m, SplitCriterion::kGini, TreeParams{}, rng);
    CHECK(t.nodes().size() == 1);
    CHECK(t.depth() == 0);
    CHECK(t.predict(std::vector<double>{-100.0, 100.0}) ==
          PolymerType::kCotton);
}

TEST_CASE("xor needs two levels and still fits the training data") {
    const auto m = matrix({{0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}},
                          {PolymerType::kAcrylic, PolymerType::kAcrylic,
                           PolymerType::kPolystyrene, PolymerType::kPolystyrene});
    Rng rng(1);
    const DecisionTree t = train_tree(m, SplitCriterion::kInformationGain,
                                      TreeParams{}, rng);
    CHECK(t.depth() >= 2);
    CHECK(train_accuracy(t, m) == 1.0);
}

TEST_CASE("distinct rows always reach perfect training accuracy") {
    Rng gen(43);
    std::vector<std::vector<double>> rows;
    std::vector<PolymerType> labels;
    for (int i = 0; i < 40; ++i) {
        std::vector<double> row;
        for (int j = 0; j < 5; ++j) row.push_back(gen.uniform(-5.0, 5.0));
        rows.push_back(std::move(row));
        labels.push_back(static_cast<PolymerType>(gen.index(4)));
    }
    const auto m = matrix(std::move(rows), std::move(labels));
    for (SplitCriterion c :
         {SplitCriterion::kInformationGain, SplitCriterion::kGini}) {
        Rng rng(7);
        const DecisionTree t = train_tree(m, c, TreeParams{}, rng);
        CHECK(train_accuracy(t, m) == 1.0);
    }
}

TEST_CASE("training is invariant to row order") {
    Rng gen(17);
    std::vector<std::vector<double>> rows;
    std::vector<PolymerType> labels;
    for (int i = 0; i < 30; ++i) {
        // duplicated values on purpose, to exercise threshold tie-breaks
        std::vector<double> row;
        for (int j = 0; j < 4; ++j)
            row.push_back(static_cast<double>(gen.index(5)));
        rows.push_back(std::move(row));
        labels.push_back(static_cast<PolymerType>(gen.index(3)));
    }
    const auto m = matrix(rows, labels);

    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(99);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[shuffle_rng.index(i)]);
    std::vector<std::vector<double>> shuffled_rows;
    std::vector<PolymerType> shuffled_labels;
    for (std::size_t idx : order) {
        shuffled_rows.push_back(rows[idx]);
        shuffled_labels.push_back(labels[idx]);
    }
    const auto shuffled = matrix(std::move(shuffled_rows),
                                 std::move(shuffled_labels));

    Rng r1(5), r2(5);
    const DecisionTree a = train_tree(m, SplitCriterion::kGini, TreeParams{}, r1);
    const DecisionTree b =
        train_tree(shuffled, SplitCriterion::kGini, TreeParams{}, r2);

    REQUIRE(a.nodes().size() == b.nodes().size());
    for (std::size_t i = 0; i < a.nodes().size(); ++i) {
        CHECK(a.nodes()[i].feature == b.nodes()[i].feature);
        CHECK(a.nodes()[i].threshold == b.nodes()[i].threshold);
        CHECK(a.nodes()[i].left == b.nodes()[i].left);
        CHECK(a.nodes()[i].right == b.nodes()[i].right);
        CHECK(a.nodes()[i].counts == b.nodes()[i].counts);
    }
}

TEST_CASE("depth and split-size limits stop growth") {
    const auto m = matrix({{0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}},
                          {PolymerType::kAcrylic, PolymerType::kAcrylic,
                           PolymerType::kPolystyrene, PolymerType::kPolystyrene});
    Rng rng(1);
    TreeParams capped;
    capped.max_depth = 1;
    const DecisionTree stump =
        train_tree(m, SplitCriterion::kInformationGain, capped, rng);
    CHECK(stump.depth() <= 1);
    CHECK(train_accuracy(stump, m) < 1.0);  // xor cannot fit in one split

    TreeParams no_split;
    no_split.min_samples_split = 5;
    const DecisionTree leaf =
        train_tree(m, SplitCriterion::kInformationGain, no_split, rng);
    CHECK(leaf.nodes().size() == 1);

    TreeParams big_leaves;
    big_leaves.min_samples_leaf = 3;  // 4 points cannot split into 3+3
    const DecisionTree forced =
        train_tree(m, SplitCriterion::kInformationGain, big_leaves, rng);
    CHECK(forced.nodes().size() == 1);
}

TEST_CASE("leaf counts sum to the training rows that reach the leaf") {
    const auto m = matrix({{0.0}, {1.0}, {10.0}, {11.0}, {12.0}},
                          {PolymerType::kAcrylic, PolymerType::kAcrylic,
                           PolymerType::kPolystyrene, PolymerType::kPolystyrene,
                           PolymerType::kPolystyrene});
    Rng rng(1);
    const DecisionTree t =
        train_tree(m, SplitCriterion::kGini, TreeParams{}, rng);
    std::size_t leaf_total = 0;
    for (const auto& node : t.nodes())
        if (node.feature == -1)
            leaf_total += std::accumulate(node.counts.begin(),
                                          node.counts.end(), std::size_t{0});
    CHECK(leaf_total == m.size());
}

TEST_CASE("tree vote fractions are a distribution over its classes") {
    const auto m = matrix({{0.0}, {0.0}, {1.0}},
                          {PolymerType::kAcrylic, PolymerType::kPolystyrene,
                           PolymerType::kPolystyrene});
    Rng rng(1);
    const DecisionTree t =
        train_tree(m, SplitCriterion::kInformationGain, TreeParams{}, rng);
    const auto f = t.vote_fractions(std::vector<double>{0.0});
    REQUIRE(f.size() == t.classes().size());
    CHECK(std::abs(std::accumulate(f.begin(), f.end(), 0.0) - 1.0) <= 1e-12);
}

TEST_CASE("training rejects empty and ragged input") {
    Rng rng(1);
    CHECK_THROWS_AS(train_tree(FeatureMatrix{}, SplitCriterion::kGini,
                               TreeParams{}, rng),
                    DataError);
    auto ragged = matrix({{1.0, 2.0}, {3.0}},
                         {PolymerType::kAcrylic, PolymerType::kCotton});
    CHECK_THROWS_AS(
        train_tree(ragged, SplitCriterion::kGini, TreeParams{}, rng),
        DataError);
}

TEST_CASE("prediction checks the feature width") {
    const auto m = matrix({{0.0, 1.0}, {1.0, 0.0}},
                          {PolymerType::kAcrylic, PolymerType::kCotton});
    Rng rng(1);
    const DecisionTree t =
        train_tree(m, SplitCriterion::kGini, TreeParams{}, rng);
    CHECK_THROWS_WITH_AS(t.predict(std::vector<double>{1.0}),
                         doctest::Contains("width"), DataError);
}

// ---------------------------------------------------------------------------
// Random forest
// ---------------------------------------------------------------------------

TEST_CASE("one tree without bootstrap or subsampling equals a plain tree") {
    Rng gen(3);
    std::vector<std::vector<double>> rows;
    std::vector<PolymerType> labels;
    for (int i = 0; i < 25; ++i) {
        rows.push_back({gen.uniform(0.0, 9.0), gen.uniform(0.0, 9.0),
                        gen.uniform(0.0, 9.0)});
        labels.push_back(static_cast<PolymerType>(gen.index(3)));
    }
    const auto m = matrix(std::move(rows), std::move(labels));

    ForestParams params;
    params.n_trees = 1;
    params.bootstrap = false;
    params.feature_subsample = 0;  // consider all features at every node
    const RandomForestModel forest =
        train_forest(m, SplitCriterion::kInformationGain, params, 42);

    Rng tree_rng(derive_seed(42, 0));
    const DecisionTree alone = train_tree(m, SplitCriterion::kInformationGain,
                                          TreeParams{}, tree_rng);

    REQUIRE(forest.trees().size() == 1);
    REQUIRE(forest.trees()[0].nodes().size() == alone.nodes().size());
    for (std::size_t i = 0; i < m.size(); ++i)
        CHECK(forest.predict(m.rows[i]) == alone.predict(m.rows[i]));
}

TEST_CASE("forests are a pure function of (data, params, seed)") {
    Rng gen(5);
    std::vector<std::vector<double>> rows;
    std::vector<PolymerType> labels;
    for (int i = 0; i < 30; ++i) {
        rows.push_back({gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0),
                        gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0)});
        labels.push_back(static_cast<PolymerType>(gen.index(4)));
    }
    const auto m = matrix(std::move(rows), std::move(labels));

    ForestParams params;
    params.n_trees = 9;
    const auto a = train_forest(m, SplitCriterion::kGini, params, 7, 1);
    const auto b = train_forest(m, SplitCriterion::kGini, params, 7, 3);
    const auto c = train_forest(m, SplitCriterion::kGini, params, 8, 1);

    REQUIRE(a.trees().size() == b.trees().size());
    bool differs_from_c = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(a.predict(m.rows[i]) == b.predict(m.rows[i]));
        CHECK(a.vote_fractions(m.rows[i]) == b.vote_fractions(m.rows[i]));
        if (a.predict(m.rows[i]) != c.predict(m.rows[i]) ||
            a.vote_fractions(m.rows[i]) != c.vote_fractions(m.rows[i]))
            differs_from_c = true;
    }
    // node-level comparison: same seed must give byte-equal trees
    for (std::size_t t = 0; t < a.trees().size(); ++t) {
        const auto& na = a.trees()[t].nodes();
        const auto& nb = b.trees()[t].nodes();
        REQUIRE(na.size() == nb.size());
        for (std::size_t i = 0; i < na.size(); ++i) {
            CHECK(na[i].feature == nb[i].feature);
            CHECK(na[i].threshold == nb[i].threshold);
        }
    }
    CHECK(differs_from_c);  // a different seed should not be a no-op
}

TEST_CASE("forest vote ties go to the alphabetically first class name") {
    using Node = DecisionTree::Node;
    // two single-leaf trees voting for different classes
    DecisionTree votes_ps({Node{-1, 0.0, -1, -1, {1}}},
                          {PolymerType::kPolystyrene}, 2);
    DecisionTree votes_acrylic({Node{-1, 0.0, -1, -1, {1}}},
                               {PolymerType::kAcrylic}, 2);
    RandomForestModel forest({votes_ps, votes_acrylic},
                             SplitCriterion::kGini, 0);

    const std::vector<double> x{0.0, 0.0};
    CHECK(forest.predict(x) == PolymerType::kAcrylic);  // "acrylic" < "polystyrene"
    CHECK(forest.classes() ==
          std::vector<PolymerType>{PolymerType::kAcrylic,
                                   PolymerType::kPolystyrene});
    CHECK(forest.vote_fractions(x) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("sqrt feature subsampling is the default") {
    Rng gen(11);
    std::vector<std::vector<double>> rows;
    std::vector<PolymerType> labels;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> row;
        for (int j = 0; j < 9; ++j) row.push_back(gen.uniform(0.0, 1.0));
        rows.push_back(std::move(row));
        labels.push_back(static_cast<PolymerType>(gen.index(2)));
    }
    const auto m = matrix(std::move(rows), std::move(labels));

    ForestParams sqrt_default;  // feature_subsample = nullopt -> floor(sqrt(9)) = 3
    sqrt_default.n_trees = 3;
    ForestParams explicit_three;
    explicit_three.n_trees = 3;
    explicit_three.feature_subsample = 3;

    const auto a = train_forest(m, SplitCriterion::kGini, sqrt_default, 4);
    const auto b = train_forest(m, SplitCriterion::kGini, explicit_three, 4);
    for (std::size_t t = 0; t < 3; ++t) {
        const auto& na = a.trees()[t].nodes();
        const auto& nb = b.trees()[t].nodes();
        REQUIRE(na.size() == nb.size());
        for (std::size_t i = 0; i < na.size(); ++i) {
            CHECK(na[i].feature == nb[i].feature);
            CHECK(na[i].threshold == nb[i].threshold);
        }
    }
}

// ---------------------------------------------------------------------------
// K nearest neighbours
// ---------------------------------------------------------------------------

TEST_CASE("k=1 on a stored row returns that row's label") {
    const auto m = matrix({{1.0, 0.0}, {0.0, 1.0}, {5.0, 5.0}},
                          {PolymerType::kAcrylic, PolymerType::kCotton,
                           PolymerType::kPolystyrene});
    const KnnModel knn(m, 1);
    CHECK(knn.predict(std::vector<double>{1.0, 0.0}) == PolymerType::kAcrylic);
    CHECK(knn.predict(std::vector<double>{0.0, 1.0}) == PolymerType::kCotton);
    CHECK(knn.predict(std::vector<double>{5.0, 5.0}) ==
          PolymerType::kPolystyrene);
}

TEST_CASE("majority beats the single closest neighbour") {
    // two polystyrene rows at distance 1, one acrylic row at distance 0.5
    const auto m = matrix({{1.0}, {-1.0}, {0.5}},
                          {PolymerType::kPolystyrene, PolymerType::kPolystyrene,
                           PolymerType::kAcrylic});
    const KnnModel knn(m, 3);
    CHECK(knn.predict(std::vector<double>{0.0}) == PolymerType::kPolystyrene);
    // with k=1 the acrylic row wins instead
    CHECK(KnnModel(m, 1).predict(std::vector<double>{0.0}) ==
          PolymerType::kAcrylic);
}

TEST_CASE("knn matches a brute-force oracle on random instances") {
    Rng gen(21);
    for (int instance = 0; instance < 30; ++instance) {
        const std::size_t n = 1 + gen.index(50);
        const std::size_t width = 1 + gen.index(6);
        std::vector<std::vector<double>> rows;
        std::vector<PolymerType> labels;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row;
            for (std::size_t j = 0; j < width; ++j)
                row.push_back(gen.uniform(-5.0, 5.0));
            rows.push_back(std::move(row));
            labels.push_back(static_cast<PolymerType>(gen.index(6)));
        }
        const auto m = matrix(std::move(rows), std::move(labels));
        const std::size_t k = 1 + gen.index(n);
        const KnnModel knn(m, k);

        for (int q = 0; q < 5; ++q) {
            std::vector<double> x;
            for (std::size_t j = 0; j < width; ++j)
                x.push_back(gen.uniform(-6.0, 6.0));

            // independent oracle: full sort on (squared distance, row index)
            std::vector<std::pair<double, std::size_t>> dist;
            for (std::size_t r = 0; r < m.size(); ++r) {
                double d2 = 0.0;
                for (std::size_t j = 0; j < width; ++j) {
                    const double diff = m.rows[r][j] - x[j];
                    d2 += diff * diff;
                }
                dist.emplace_back(d2, r);
            }
            std::sort(dist.begin(), dist.end());
            std::array<std::size_t, kPolymerTypeCount> votes{};
            for (std::size_t i = 0; i < k; ++i)
                ++votes[static_cast<std::size_t>(m.labels[dist[i].second])];
            std::size_t best = 0;
            for (std::size_t c = 1; c < votes.size(); ++c)
                if (votes[c] > votes[best]) best = c;

            CHECK(knn.predict(x) == static_cast<PolymerType>(best));
        }
    }
}

TEST_CASE("knn vote fractions align with its class list") {
    const auto m = matrix({{0.0}, {0.1}, {10.0}},
                          {PolymerType::kCotton, PolymerType::kCotton,
                           PolymerType::kPolystyrene});
    const KnnModel knn(m, 3);
    CHECK(knn.classes() == std::vector<PolymerType>{PolymerType::kCotton,
                                                    PolymerType::kPolystyrene});
    const auto f = knn.vote_fractions(std::vector<double>{0.0});
    REQUIRE(f.size() == 2);
    CHECK(std::abs(f[0] - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(f[1] - 1.0 / 3.0) <= 1e-12);
}

TEST_CASE("knn validates k and query width") {
    const auto m = matrix({{0.0}, {1.0}},
                          {PolymerType::kAcrylic, PolymerType::kCotton});
    CHECK_THROWS_AS(KnnModel(m, 0), ConfigError);
    CHECK_THROWS_AS(KnnModel(m, 3), ConfigError);
    CHECK_THROWS_AS(KnnModel(FeatureMatrix{}, 1), DataError);
    const KnnModel knn(m, 1);
    CHECK_THROWS_AS(knn.predict(std::vector<double>{0.0, 1.0}), DataError);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

FeatureMatrix demo_matrix() {
    Rng gen(33);
    std::vector<std::vector<double>> rows;
    std::vector<PolymerType> labels;
    for (int i = 0; i < 24; ++i) {
        rows.push_back({gen.uniform(0.0, 4.0), gen.uniform(0.0, 4.0),
                        gen.uniform(0.0, 4.0)});
        labels.push_back(static_cast<PolymerType>(gen.index(4)));
    }
    return matrix(std::move(rows), std::move(labels));
}

std::vector<std::vector<double>> probe_points() {
    Rng gen(34);
    std::vector<std::vector<double>> probes;
    for (int i = 0; i < 20; ++i)
        probes.push_back({gen.uniform(-1.0, 5.0), gen.uniform(-1.0, 5.0),
                          gen.uniform(-1.0, 5.0)});
    return probes;
}

PipelineConfig demo_pipeline() {
    PipelineConfig pl;
    pl.bin_width = 7;
    pl.transform = Transform::kPc;
    pl.pc_window = 4;
    pl.shift_positive = true;
    return pl;
}

}  // namespace

TEST_CASE("saved models predict identically after reload") {
    const auto m = demo_matrix();
    const auto probes = probe_points();
    testsupport::TempDir dir;

    SUBCASE("decision tree") {
        Rng rng(2);
        ModelBundle bundle;
        bundle.model = train_tree(m, SplitCriterion::kInformationGain,
                                  TreeParams{}, rng);
        bundle.pipeline = demo_pipeline();
        const auto file = dir.file("tree.json");
        save_model(bundle, file);
        const ModelBundle loaded = load_model(file);
        CHECK(loaded.pipeline.bin_width == 7);
        CHECK(loaded.pipeline.transform == Transform::kPc);
        CHECK(loaded.pipeline.pc_window == 4);
        CHECK(loaded.pipeline.shift_positive == true);
        for (const auto& x : probes) {
            CHECK(loaded.predict(x) == bundle.predict(x));
            CHECK(loaded.vote_fractions(x) == bundle.vote_fractions(x));
        }
    }

    SUBCASE("random forest") {
        ForestParams params;
        params.n_trees = 5;
        ModelBundle bundle;
        bundle.model = train_forest(m, SplitCriterion::kGini, params, 6);
        const auto file = dir.file("forest.json");
        save_model(bundle, file);
        const ModelBundle loaded = load_model(file);
        CHECK(loaded.classes() == bundle.classes());
        for (const auto& x : probes) {
            CHECK(loaded.predict(x) == bundle.predict(x));
            CHECK(loaded.vote_fractions(x) == bundle.vote_fractions(x));
        }
    }

    SUBCASE("knn") {
        ModelBundle bundle;
        bundle.model = KnnModel(m, 3);
        const auto file = dir.file("knn.json");
        save_model(bundle, file);
        const ModelBundle loaded = load_model(file);
        CHECK(loaded.n_features() == 3);
        for (const auto& x : probes) {
            CHECK(loaded.predict(x) == bundle.predict(x));
            CHECK(loaded.vote_fractions(x) == bundle.vote_fractions(x));
        }
    }
}

TEST_CASE("loading rejects unsupported versions and malformed files") {
    testsupport::TempDir dir;

    const auto versioned = dir.file("v2.json");
    testsupport::write_file(
        versioned,
        "{\"format_version\": 2, \"pipeline\": {}, \"model\": {}}\n");
    CHECK_THROWS_WITH_AS(load_model(versioned), doctest::Contains("version"),
                         ConfigError);

    const auto garbled = dir.file("garbled.json");
    testsupport::write_file(garbled, "{not json at all");
    CHECK_THROWS_AS(load_model(garbled), FormatError);

    const auto unknown_kind = dir.file("kind.json");
    testsupport::write_file(
        unknown_kind,
        "{\"format_version\": 1, \"pipeline\": {}, "
        "\"model\": {\"kind\": \"svm\"}}\n");
    CHECK_THROWS_AS(load_model(unknown_kind), FormatError);

    CHECK_THROWS_AS(load_model(dir.file("missing.json")), DataError);
}
