#include "ramanmp/augment.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ramanmp/preprocess.hpp"

namespace ramanmp {

void AugmentParams::validate() const {
    if (random_change < 0.0)
        throw ConfigError("augment.random_change: must be >= 0");
    if (max_pct_change < 0.0 || max_pct_change >= 100.0)
        throw ConfigError(
            "augment.max_pct_change: must lie in [0, 100) so the clamp "
            "envelope stays positive");
}

std::vector<double> ratio_series(std::span<const double> y) {
    if (y.size() < 2) throw DataError("ratio_series: need at least 2 values");
    std::vector<double> shifted = shift_positive({y.begin(), y.end()});
    std::vector<double> ratios(shifted.size() - 1);
    for (std::size_t i = 0; i + 1 < shifted.size(); ++i)
        ratios[i] = shifted[i + 1] / shifted[i];
    return ratios;
}

std::vector<double> perturb_ratios(std::span<const double> ratios,
                                   double random_change, Rng& rng) {
    std::vector<double> out(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const double perturbed =
            ratios[i] + rng.uniform(-random_change, random_change);
        // A non-positive ratio would flip or kill the reconstruction; keep
        // the original (which is > 0 by construction).
        out[i] = perturbed <= 0.0 ? ratios[i] : perturbed;
    }
    return out;
}

std::vector<double> reconstruct(std::span<const double> original,
                                std::span<const double> ratios, double init,
                                double shift, double max_pct_change) {
    if (ratios.size() + 1 != original.size())
        throw DataError("reconstruct: ratio count must be original length - 1");
    const std::vector<double> envelope =
        shift_positive({original.begin(), original.end()});

    std::vector<double> out;
    out.reserve(original.size());
    double value = init + shift;  // never clamped
    out.push_back(value);
    const double hi_factor = 1.0 + max_pct_change / 100.0;
    const double lo_factor = 1.0 - max_pct_change / 100.0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        value *= ratios[i];
        const double hi = envelope[i + 1] * hi_factor;
        const double lo = envelope[i + 1] * lo_factor;
        value = std::clamp(value, lo, hi);
        out.push_back(value);
    }
    return out;
}

LabeledDataset generate_augmented(const LabeledDataset& train,
                                  std::span<const AugmentTarget> targets,
                                  const AugmentParams& params,
                                  std::uint64_t seed) {
    params.validate();

    // Duplicate targets collapse to the strongest request, so the result
    // cannot depend on list order.
    std::map<PolymerType, std::size_t> wanted;
    for (const auto& t : targets) {
        if (t.min_examples < 1)
            throw ConfigError("augment.targets: min_examples must be >= 1");
        auto [it, inserted] = wanted.emplace(t.type, t.min_examples);
        if (!inserted) it->second = std::max(it->second, t.min_examples);
    }
    for (const auto& [type, n] : wanted) {
        if (train.count(type) == 0)
            throw DataError("augment target '" + std::string(canonical_name(type)) +
                            "' has no training samples");
    }

    LabeledDataset out(train.source());
    for (const auto& [type, samples] : train.entries())
        for (const auto& s : samples) out.add(type, s);

    for (const auto& [type, min_examples] : wanted) {
        const auto& sources = train.entries().at(type);
        const std::uint64_t class_seed =
            derive_seed(seed, static_cast<std::uint64_t>(type));
        Rng rng(class_seed);

        std::size_t have = sources.size();
        std::size_t iterate = 0;
        while (have < min_examples) {
            const Sample& src = sources[iterate % sources.size()];
            const auto& y = src.spectrum.intensities;

            const auto ratios = ratio_series(y);
            const auto perturbed = perturb_ratios(ratios, params.random_change, rng);
            double init = y.front();
            const double mn = *std::min_element(y.begin(), y.end());
            if (mn <= 0.0) init += std::abs(mn) + 1.0;

            Sample aug;
            aug.spectrum.wavenumbers = src.spectrum.wavenumbers;
            aug.spectrum.intensities = reconstruct(y, perturbed, init, params.shift,
                                                   params.max_pct_change);
            aug.id = src.id + "#aug" + std::to_string(iterate);
            aug.augmented = true;
            aug.source_id = src.id;
            aug.seed = class_seed;
            out.add(type, std::move(aug));
            ++have;
            ++iterate;
        }
    }
    return out;
}

}  // namespace ramanmp
