#include "ramanmp/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace ramanmp {

std::string_view criterion_name(SplitCriterion c) {
    return c == SplitCriterion::kInformationGain ? "entropy" : "gini";
}

SplitCriterion criterion_from_name(std::string_view name) {
    if (name == "entropy" || name == "information_gain")
        return SplitCriterion::kInformationGain;
    if (name == "gini") return SplitCriterion::kGini;
    throw ConfigError("unknown criterion '" + std::string(name) +
                      "' (expected entropy|gini)");
}

double impurity(std::span<const std::size_t> counts, SplitCriterion criterion) {
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    if (total == 0) throw DataError("impurity: all-zero count vector");
    const double n = static_cast<double>(total);
    if (criterion == SplitCriterion::kInformationGain) {
        double h = 0.0;
        for (std::size_t c : counts) {
            if (c == 0) continue;
            const double p = static_cast<double>(c) / n;
            h -= p * std::log2(p);
        }
        return h;
    }
    double sum_sq = 0.0;
    for (std::size_t c : counts) {
        const double p = static_cast<double>(c) / n;
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

// ---------------------------------------------------------------------------
// Decision tree
// ---------------------------------------------------------------------------

DecisionTree::DecisionTree(std::vector<Node> nodes,
                           std::vector<PolymerType> classes,
                           std::size_t n_features)
    : nodes_(std::move(nodes)),
      classes_(std::move(classes)),
      n_features_(n_features) {}

const DecisionTree::Node& DecisionTree::leaf_for(std::span<const double> x) const {
    if (x.size() != n_features_)
        throw DataError("predict: feature width mismatch (got " +
                        std::to_string(x.size()) + ", trained on " +
                        std::to_string(n_features_) + ")");
    const Node* node = &nodes_.front();
    while (node->feature >= 0) {
        node = x[static_cast<std::size_t>(node->feature)] <= node->threshold
                   ? &nodes_[static_cast<std::size_t>(node->left)]
                   : &nodes_[static_cast<std::size_t>(node->right)];
    }
    return *node;
}

PolymerType DecisionTree::predict(std::span<const double> x) const {
    const Node& leaf = leaf_for(x);
    // Ties resolve to the lexicographically smallest canonical name; classes_
    // is sorted that way.
    std::size_t best = 0;
    for (std::size_t i = 1; i < leaf.counts.size(); ++i)
        if (leaf.counts[i] > leaf.counts[best]) best = i;
    return classes_[best];
}

std::vector<double> DecisionTree::vote_fractions(std::span<const double> x) const {
    const Node& leaf = leaf_for(x);
    std::size_t total = 0;
    for (std::size_t c : leaf.counts) total += c;
    std::vector<double> out(leaf.counts.size(), 0.0);
    for (std::size_t i = 0; i < leaf.counts.size(); ++i)
        out[i] = static_cast<double>(leaf.counts[i]) / static_cast<double>(total);
    return out;
}

std::size_t DecisionTree::depth() const {
    if (nodes_.empty()) return 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    std::size_t deepest = 0;
    while (!stack.empty()) {
        auto [idx, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        const Node& n = nodes_[idx];
        if (n.feature >= 0) {
            stack.push_back({static_cast<std::size_t>(n.left), d + 1});
            stack.push_back({static_cast<std::size_t>(n.right), d + 1});
        }
    }
    return deepest;
}

namespace {

struct TreeBuilder {
    const FeatureMatrix& m;
    SplitCriterion criterion;
    const TreeParams& params;
    Rng& rng;
    std::size_t subsample;  // 0 = consider every feature

    std::vector<std::size_t> row_class;  // class index per matrix row
    std::size_t n_classes = 0;
    std::vector<std::size_t> feature_pool;
    std::vector<DecisionTree::Node> nodes;

    std::vector<std::size_t> count_classes(std::span<const std::size_t> rows) const {
        std::vector<std::size_t> counts(n_classes, 0);
        for (std::size_t r : rows) ++counts[row_class[r]];
        return counts;
    }

    // Candidate features for one node, ascending so the lowest-index tie rule
    // is just "first wins".
    std::vector<std::size_t> candidate_features() {
        const std::size_t d = m.width();
        if (subsample == 0 || subsample >= d) {
            std::vector<std::size_t> all(d);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        for (std::size_t i = 0; i < subsample; ++i) {
            const std::size_t j = i + rng.index(d - i);
            std::swap(feature_pool[i], feature_pool[j]);
        }
        std::vector<std::size_t> picked(feature_pool.begin(),
                                        feature_pool.begin() +
                                            static_cast<long>(subsample));
        std::sort(picked.begin(), picked.end());
        return picked;
    }

    struct Split {
        bool found = false;
        std::size_t feature = 0;
        double threshold = 0.0;
        double gain = 0.0;
    };

    Split best_split(std::span<const std::size_t> rows,
                     std::span<const std::size_t> node_counts) {
        const double parent = impurity(node_counts, criterion);
        const double n = static_cast<double>(rows.size());
        Split best;

        std::vector<std::pair<double, std::size_t>> vals(rows.size());
        std::vector<std::size_t> left(n_classes), right(n_classes);
        for (std::size_t f : candidate_features()) {
            for (std::size_t i = 0; i < rows.size(); ++i)
                vals[i] = {m.rows[rows[i]][f], row_class[rows[i]]};
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::fill(left.begin(), left.end(), 0);
            for (std::size_t c = 0; c < n_classes; ++c) right[c] = node_counts[c];
            std::size_t nl = 0;

            std::size_t i = 0;
            while (i < vals.size()) {
                // absorb the whole block of equal values
                std::size_t j = i;
                const double a = vals[i].first;
                while (j < vals.size() && vals[j].first == a) {
                    ++left[vals[j].second];
                    --right[vals[j].second];
                    ++nl;
                    ++j;
                }
                if (j == vals.size()) break;
                const double b = vals[j].first;
                const double thr = a + (b - a) / 2.0;
                if (!(a < thr && thr < b)) {  // adjacent doubles; unusable boundary
                    i = j;
                    continue;
                }
                const std::size_t nr = rows.size() - nl;
                if (nl < params.min_samples_leaf || nr < params.min_samples_leaf) {
                    i = j;
                    continue;
                }
                const double weighted =
                    (static_cast<double>(nl) * impurity(left, criterion) +
                     static_cast<double>(nr) * impurity(right, criterion)) /
                    n;
                const double gain = parent - weighted;
                // Zero-gain splits are kept: an impure node must keep
                // splitting while any usable boundary exists, or patterns
                // like xor would never be separated. Strict > keeps the
                // first (lowest feature, lowest threshold) of any tie.
                if (!best.found || gain > best.gain) {
                    best = {true, f, thr, gain};
                }
                i = j;
            }
        }
        return best;
    }

    int build(std::vector<std::size_t> rows, std::size_t depth) {
        const auto counts = count_classes(rows);
        std::size_t nonzero = 0;
        for (std::size_t c : counts) nonzero += c > 0 ? 1 : 0;

        const bool stop = nonzero <= 1 ||
                          rows.size() < params.min_samples_split ||
                          (params.max_depth > 0 && depth >= params.max_depth);

        const int self = static_cast<int>(nodes.size());
        nodes.emplace_back();
        if (!stop) {
            const Split split = best_split(rows, counts);
            if (split.found) {
                std::vector<std::size_t> left_rows, right_rows;
                for (std::size_t r : rows) {
                    if (m.rows[r][split.feature] <= split.threshold)
                        left_rows.push_back(r);
                    else
                        right_rows.push_back(r);
                }
                nodes[self].feature = static_cast<int>(split.feature);
                nodes[self].threshold = split.threshold;
                nodes[self].left = build(std::move(left_rows), depth + 1);
                nodes[self].right = build(std::move(right_rows), depth + 1);
                return self;
            }
        }
        nodes[self].counts = counts;
        return self;
    }
};

std::vector<PolymerType> sorted_unique_labels(const FeatureMatrix& m) {
    std::set<PolymerType> s(m.labels.begin(), m.labels.end());
    return {s.begin(), s.end()};
}

}  // namespace

DecisionTree train_tree(const FeatureMatrix& m, SplitCriterion criterion,
                        const TreeParams& params, Rng& rng,
                        std::size_t feature_subsample) {
    if (m.rows.empty()) throw DataError("train_tree: empty feature matrix");
    for (const auto& row : m.rows)
        if (row.size() != m.width())
            throw DataError("train_tree: inconsistent row widths");

    TreeBuilder builder{m, criterion, params, rng, feature_subsample, {}, 0, {}, {}};
    const auto classes = sorted_unique_labels(m);
    builder.n_classes = classes.size();
    builder.row_class.resize(m.rows.size());
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        const auto it =
            std::lower_bound(classes.begin(), classes.end(), m.labels[r]);
        builder.row_class[r] = static_cast<std::size_t>(it - classes.begin());
    }
    builder.feature_pool.resize(m.width());
    std::iota(builder.feature_pool.begin(), builder.feature_pool.end(), 0);

    std::vector<std::size_t> all(m.rows.size());
    std::iota(all.begin(), all.end(), 0);
    builder.build(std::move(all), 0);
    return DecisionTree(std::move(builder.nodes), classes, m.width());
}

// ---------------------------------------------------------------------------
// Random forest
// ---------------------------------------------------------------------------

RandomForestModel::RandomForestModel(std::vector<DecisionTree> trees,
                                     SplitCriterion criterion,
                                     std::uint64_t seed)
    : trees_(std::move(trees)), criterion_(criterion), seed_(seed) {
    if (trees_.empty()) throw DataError("forest needs at least one tree");
    // Bootstrap resamples can miss classes in individual trees; the forest
    // vocabulary is the union.
    std::set<PolymerType> s;
    for (const auto& t : trees_)
        s.insert(t.classes().begin(), t.classes().end());
    classes_.assign(s.begin(), s.end());
}

const std::vector<PolymerType>& RandomForestModel::classes() const {
    return classes_;
}

std::size_t RandomForestModel::n_features() const {
    return trees_.front().n_features();
}

PolymerType RandomForestModel::predict(std::span<const double> x) const {
    std::array<std::size_t, kPolymerTypeCount> votes{};
    for (const auto& tree : trees_)
        ++votes[static_cast<std::size_t>(tree.predict(x))];
    std::size_t best = 0;
    for (std::size_t i = 1; i < votes.size(); ++i)
        if (votes[i] > votes[best]) best = i;
    return static_cast<PolymerType>(best);
}

std::vector<double> RandomForestModel::vote_fractions(
    std::span<const double> x) const {
    std::array<std::size_t, kPolymerTypeCount> votes{};
    for (const auto& tree : trees_)
        ++votes[static_cast<std::size_t>(tree.predict(x))];
    std::vector<double> out(classes_.size(), 0.0);
    for (std::size_t i = 0; i < classes_.size(); ++i)
        out[i] = static_cast<double>(votes[static_cast<std::size_t>(classes_[i])]) /
                 static_cast<double>(trees_.size());
    return out;
}

namespace {

FeatureMatrix bootstrap_resample(const FeatureMatrix& m, Rng& rng) {
    FeatureMatrix out;
    const std::size_t n = m.rows.size();
    out.rows.reserve(n);
    out.labels.reserve(n);
    out.ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pick = rng.index(n);
        out.rows.push_back(m.rows[pick]);
        out.labels.push_back(m.labels[pick]);
        out.ids.push_back(m.ids[pick]);
    }
    return out;
}

}  // namespace

RandomForestModel train_forest(const FeatureMatrix& m, SplitCriterion criterion,
                               const ForestParams& params, std::uint64_t seed,
                               int jobs) {
    if (m.rows.empty()) throw DataError("train_forest: empty feature matrix");
    if (params.n_trees < 1) throw ConfigError("model.n_trees: must be >= 1");

    const std::size_t subsample = params.feature_subsample.has_value()
                                      ? *params.feature_subsample
                                      : static_cast<std::size_t>(std::floor(
                                            std::sqrt(static_cast<double>(m.width()))));

    std::vector<DecisionTree> trees(params.n_trees);
    parallel_for(params.n_trees, jobs, [&](std::size_t t) {
        Rng rng(derive_seed(seed, t));
        if (params.bootstrap) {
            const FeatureMatrix resampled = bootstrap_resample(m, rng);
            trees[t] = train_tree(resampled, criterion, params.tree, rng, subsample);
        } else {
            trees[t] = train_tree(m, criterion, params.tree, rng, subsample);
        }
    });
    return RandomForestModel(std::move(trees), criterion, seed);
}

// ---------------------------------------------------------------------------
// K nearest neighbours
// ---------------------------------------------------------------------------

KnnModel::KnnModel(FeatureMatrix data, std::size_t k)
    : data_(std::move(data)), k_(k) {
    if (data_.rows.empty()) throw DataError("knn: empty feature matrix");
    if (k_ < 1 || k_ > data_.rows.size())
        throw ConfigError("model.knn_k: must lie in [1, stored rows]");
    classes_ = sorted_unique_labels(data_);
}

std::array<std::size_t, kPolymerTypeCount> KnnModel::neighbour_votes(
    std::span<const double> x) const {
    if (x.size() != data_.width())
        throw DataError("predict: feature width mismatch (got " +
                        std::to_string(x.size()) + ", trained on " +
                        std::to_string(data_.width()) + ")");
    std::vector<std::pair<double, std::size_t>> dist(data_.rows.size());
    for (std::size_t r = 0; r < data_.rows.size(); ++r) {
        double d2 = 0.0;
        const auto& row = data_.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            const double diff = row[i] - x[i];
            d2 += diff * diff;
        }
        dist[r] = {d2, r};  // (distance, row index) pairs sort deterministically
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k_),
                      dist.end());

    std::array<std::size_t, kPolymerTypeCount> votes{};
    for (std::size_t i = 0; i < k_; ++i)
        ++votes[static_cast<std::size_t>(data_.labels[dist[i].second])];
    return votes;
}

std::vector<double> KnnModel::vote_fractions(std::span<const double> x) const {
    const auto votes = neighbour_votes(x);
    std::vector<double> out(classes_.size(), 0.0);
    for (std::size_t i = 0; i < classes_.size(); ++i)
        out[i] = static_cast<double>(votes[static_cast<std::size_t>(classes_[i])]) /
                 static_cast<double>(k_);
    return out;
}

PolymerType KnnModel::predict(std::span<const double> x) const {
    const auto votes = neighbour_votes(x);
    std::size_t best = 0;
    for (std::size_t i = 1; i < votes.size(); ++i)
        if (votes[i] > votes[best]) best = i;
    return static_cast<PolymerType>(best);
}

PolymerType predict(const DecisionTree& model, std::span<const double> x) {
    return model.predict(x);
}
PolymerType predict(const RandomForestModel& model, std::span<const double> x) {
    return model.predict(x);
}
PolymerType predict(const KnnModel& model, std::span<const double> x) {
    return model.predict(x);
}

}  // namespace ramanmp
