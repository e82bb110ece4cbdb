#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ramanmp/common.hpp"
#include "ramanmp/preprocess.hpp"

namespace ramanmp {

enum class SplitCriterion { kInformationGain, kGini };

std::string_view criterion_name(SplitCriterion c);
SplitCriterion criterion_from_name(std::string_view name);  // throws ConfigError

// entropy = -sum p log2 p, gini = 1 - sum p^2; both 0 on pure nodes.
// Throws DataError on an all-zero count vector.
double impurity(std::span<const std::size_t> counts, SplitCriterion criterion);

struct TreeParams {
    std::size_t max_depth = 0;  // 0 = unlimited
    std::size_t min_samples_split = 2;
    std::size_t min_samples_leaf = 1;
};

// Axis-aligned binary tree. Leaves hold raw training class counts (they sum
// to the leaf's sample count); internal nodes route on value <= threshold.
class DecisionTree {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        std::vector<std::size_t> counts;  // leaf class distribution
    };

    DecisionTree() = default;
    DecisionTree(std::vector<Node> nodes, std::vector<PolymerType> classes,
                 std::size_t n_features);

    PolymerType predict(std::span<const double> x) const;
    // Reached-leaf distribution normalized to fractions.
    std::vector<double> vote_fractions(std::span<const double> x) const;

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<PolymerType>& classes() const { return classes_; }
    std::size_t n_features() const { return n_features_; }
    std::size_t depth() const;

private:
    const Node& leaf_for(std::span<const double> x) const;

    std::vector<Node> nodes_;
    std::vector<PolymerType> classes_;
    std::size_t n_features_ = 0;
};

// Greedy CART: best impurity-decrease split over midpoint thresholds between
// sorted distinct feature values. Ties break on the lowest feature index,
// then the lowest threshold, so training is invariant to row order. When
// feature_subsample > 0 each node draws that many distinct candidate
// features from rng (0 considers every feature).
DecisionTree train_tree(const FeatureMatrix& m, SplitCriterion criterion,
                        const TreeParams& params, Rng& rng,
                        std::size_t feature_subsample = 0);

struct ForestParams {
    std::size_t n_trees = 100;
    TreeParams tree;
    bool bootstrap = true;  // test hook; sampling with replacement, size |m|
    // nullopt = floor(sqrt(feature count)); 0 = all features.
    std::optional<std::size_t> feature_subsample;
};

class RandomForestModel {
public:
    RandomForestModel() = default;
    RandomForestModel(std::vector<DecisionTree> trees, SplitCriterion criterion,
                      std::uint64_t seed);

    PolymerType predict(std::span<const double> x) const;
    // Tree-vote shares aligned with classes().
    std::vector<double> vote_fractions(std::span<const double> x) const;

    const std::vector<DecisionTree>& trees() const { return trees_; }
    SplitCriterion criterion() const { return criterion_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<PolymerType>& classes() const;
    std::size_t n_features() const;

private:
    std::vector<DecisionTree> trees_;
    SplitCriterion criterion_ = SplitCriterion::kInformationGain;
    std::uint64_t seed_ = 0;
    std::vector<PolymerType> classes_;  // union over trees, sorted
};

// Per-tree seeds derive from `seed`, so the forest is a pure function of
// (data, params, seed) for any `jobs`.
RandomForestModel train_forest(const FeatureMatrix& m, SplitCriterion criterion,
                               const ForestParams& params, std::uint64_t seed,
                               int jobs = 1);

// Majority vote over the k nearest stored rows by Euclidean distance;
// neighbour order ties break on the lower row index, vote ties on the
// lexicographically smallest canonical class name.
class KnnModel {
public:
    KnnModel() = default;
    KnnModel(FeatureMatrix data, std::size_t k);  // 1 <= k <= rows

    PolymerType predict(std::span<const double> x) const;
    // Neighbour shares aligned with classes().
    std::vector<double> vote_fractions(std::span<const double> x) const;

    std::size_t k() const { return k_; }
    const FeatureMatrix& data() const { return data_; }
    const std::vector<PolymerType>& classes() const { return classes_; }

private:
    std::array<std::size_t, kPolymerTypeCount> neighbour_votes(
        std::span<const double> x) const;

    FeatureMatrix data_;
    std::size_t k_ = 1;
    std::vector<PolymerType> classes_;
};

PolymerType predict(const DecisionTree& model, std::span<const double> x);
PolymerType predict(const RandomForestModel& model, std::span<const double> x);
PolymerType predict(const KnnModel& model, std::span<const double> x);

}  // namespace ramanmp
