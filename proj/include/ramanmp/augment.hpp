#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ramanmp/common.hpp"
#include "ramanmp/dataset.hpp"

namespace ramanmp {

struct AugmentParams {
    double random_change = 0.05;
    double shift = 0.0;          // constant offset for the first value
    double max_pct_change = 99.0;

    void validate() const;  // random_change >= 0, 0 <= max_pct_change < 100
};

struct AugmentTarget {
    PolymerType type;
    std::size_t min_examples = 1;
};

// Consecutive-intensity ratios r[i] = y'[i+1] / y'[i] on the positivity-
// shifted series y' (shifted only when min(y) <= 0). All ratios are > 0.
std::vector<double> ratio_series(std::span<const double> y);

// Adds an independent uniform offset in [-random_change, +random_change] to
// each ratio; a perturbed ratio that lands <= 0 reverts to its original
// value, so the output stays positive.
std::vector<double> perturb_ratios(std::span<const double> ratios,
                                   double random_change, Rng& rng);

// Rebuilds a series from ratios: out[0] = init + shift, then each step
// multiplies by the next ratio and clamps into
// [orig'[i] * (1 - max_pct_change/100), orig'[i] * (1 + max_pct_change/100)]
// around the positivity-shifted original. The clamped value feeds the next
// multiplication; out[0] is never clamped.
std::vector<double> reconstruct(std::span<const double> original,
                                std::span<const double> ratios, double init,
                                double shift, double max_pct_change);

// Tops up each targeted class to min_examples by cycling its original
// samples round-robin and appending perturbed reconstructions. Originals are
// kept unmodified; augmented samples reuse their source's x grid and carry
// (source id, seed) provenance. Classes are processed with per-class derived
// seeds, so the result does not depend on target order.
// Throws DataError for a target type missing from the dataset.
LabeledDataset generate_augmented(const LabeledDataset& train,
                                  std::span<const AugmentTarget> targets,
                                  const AugmentParams& params,
                                  std::uint64_t seed);

}  // namespace ramanmp
