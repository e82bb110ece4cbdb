#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ramanmp/common.hpp"
#include "ramanmp/dataset.hpp"

namespace ramanmp {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

// Dense intensities over an integer wavenumber grid; values[i] sits at
// wavenumber min_range + i. Length is always max_range - min_range + 1
// (3501 for the 0..3500 range used throughout).
struct ScaledSpectrum {
    std::vector<double> values;
    int min_range = 0;
    int max_range = 0;

    int wavenumber_at(std::size_t i) const {
        return min_range + static_cast<int>(i);
    }
};

enum class Transform { kNone, kRoc, kPc };

std::string_view transform_name(Transform t);
Transform transform_from_name(std::string_view name);  // throws ConfigError

// Output of a transform. ROC values are intensity per cm^-1 and may be
// negative; PC values are dimensionless ratios.
struct TransformedSeries {
    std::vector<double> values;
    Transform transform = Transform::kNone;
};

struct FeatureVector {
    std::vector<double> bins;
    int bin_width = 1;
};

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

struct ScaleStats {
    std::size_t dropped_below_range = 0;  // floor(x) < min_range
    std::size_t dropped_above_range = 0;  // floor(x) > max_range (loop break)
};

// Maps a spectrum onto the dense integer grid. Each point writes its
// intensity at floor(x); the first written index back-fills the head with
// its own intensity, interior gaps take the value at the gap's left edge,
// and the tail forward-fills from the last written index. Points with
// floor(x) > max_range stop the scan; points below min_range are skipped
// (counted in stats). Throws DataError when nothing lands in range or an
// intensity is non-finite.
ScaledSpectrum scale_x(const Spectrum& s, int min_range, int max_range,
                       ScaleStats* stats = nullptr);

// Adds |min| + 1 when min(values) <= 0, otherwise identity. Output is
// strictly positive.
std::vector<double> shift_positive(std::vector<double> values);

// First difference over the unit grid; length shrinks by one.
TransformedSeries roc_transform(const ScaledSpectrum& s);
std::vector<double> roc_values(std::span<const double> y);

// value / mean of the preceding `window` values; defined from index `window`
// on, so length shrinks by `window`. Input must be strictly positive.
TransformedSeries pc_transform(const ScaledSpectrum& s, int window);
std::vector<double> pc_values(std::span<const double> y, int window);

// Equal-width partition, each bin replaced by its arithmetic mean; the final
// partial bin averages over its actual members.
FeatureVector bin_means(const TransformedSeries& series, int width);
std::vector<double> bin_means_values(std::span<const double> y, int width);

// Independent uniform perturbation in [-amplitude, +amplitude] per value.
ScaledSpectrum add_noise(const ScaledSpectrum& s, double amplitude, Rng& rng);

// ---------------------------------------------------------------------------
// Feature pipeline
// ---------------------------------------------------------------------------

struct PipelineConfig {
    bool scale_x = true;
    int min_range = 0;
    int max_range = 3500;
    Transform transform = Transform::kRoc;
    int pc_window = 5;
    int bin_width = 12;
    double noise_amplitude = 0.0;
    bool shift_positive = false;  // y rescaling; off in the winning configs
    // scale_x == false leaves ragged raw spectra; they are truncated to this
    // common length (computed over train+test by the caller).
    std::size_t raw_truncate_len = 0;

    void validate() const;  // throws ConfigError naming the field
};

struct FeatureMatrix {
    std::vector<std::vector<double>> rows;
    std::vector<PolymerType> labels;
    std::vector<std::string> ids;

    std::size_t size() const { return rows.size(); }
    std::size_t width() const { return rows.empty() ? 0 : rows.front().size(); }
};

// scale_x -> optional noise -> optional shift -> transform -> bin means, per
// sample. Noise uses a per-sample seed derived from (seed, sample index), so
// the matrix is a pure function of (data, cfg, seed) regardless of `jobs`.
// PC always runs on shifted values (ratios need a positive series).
FeatureMatrix build_features(const LabeledDataset& ds, const PipelineConfig& cfg,
                             std::uint64_t seed, int jobs = 1);

// One spectrum through the same stages (noise excluded); used by predict.
std::vector<double> build_feature_row(const Spectrum& s, const PipelineConfig& cfg);

// Plain CSV, one row per sample, label as the last column.
void write_feature_csv(std::ostream& out, const FeatureMatrix& m);

// Shortest common raw length over every sample of the given datasets.
std::size_t common_raw_length(std::span<const LabeledDataset* const> datasets);

}  // namespace ramanmp
