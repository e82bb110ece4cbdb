#include "ramanmp/preprocess.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

namespace ramanmp {

std::string_view transform_name(Transform t) {
    switch (t) {
        case Transform::kNone: return "none";
        case Transform::kRoc: return "roc";
        case Transform::kPc: return "pc";
    }
    return "unknown";
}

Transform transform_from_name(std::string_view name) {
    if (name == "none") return Transform::kNone;
    if (name == "roc") return Transform::kRoc;
    if (name == "pc") return Transform::kPc;
    throw ConfigError("unknown transform '" + std::string(name) +
                      "' (expected none|roc|pc)");
}

ScaledSpectrum scale_x(const Spectrum& s, int min_range, int max_range,
                       ScaleStats* stats) {
    if (min_range >= max_range)
        throw ConfigError("scale_x: min_range must be below max_range");
    s.validate();

    const std::size_t n = static_cast<std::size_t>(max_range - min_range) + 1;
    ScaledSpectrum out;
    out.min_range = min_range;
    out.max_range = max_range;
    out.values.assign(n, 0.0);

    ScaleStats local;
    ScaleStats& st = stats ? *stats : local;

    long last = -1;  // index of the last written grid slot
    for (std::size_t p = 0; p < s.size(); ++p) {
        const double y = s.intensities[p];
        if (!std::isfinite(y))
            throw DataError("scale_x: non-finite intensity at point " +
                            std::to_string(p));
        const double fx = std::floor(s.wavenumbers[p]);
        if (fx > static_cast<double>(max_range)) {
            // Wavenumbers are sorted, so everything from here on is out of
            // range too.
            st.dropped_above_range += s.size() - p;
            break;
        }
        if (fx < static_cast<double>(min_range)) {
            ++st.dropped_below_range;
            continue;
        }
        const long idx = static_cast<long>(fx) - min_range;
        if (last >= 0) {
            for (long i = last + 1; i < idx; ++i) out.values[i] = out.values[last];
        } else {
            // Head takes the first in-range point's intensity.
            for (long i = 0; i < idx; ++i) out.values[i] = y;
        }
        out.values[idx] = y;
        last = idx;
    }
    if (last < 0)
        throw DataError("scale_x: no points fall inside [" +
                        std::to_string(min_range) + ", " +
                        std::to_string(max_range) + "]");
    for (std::size_t i = static_cast<std::size_t>(last) + 1; i < n; ++i)
        out.values[i] = out.values[last];
    return out;
}

std::vector<double> shift_positive(std::vector<double> values) {
    if (values.empty()) throw DataError("shift_positive: empty input");
    const double mn = *std::min_element(values.begin(), values.end());
    if (!std::isfinite(mn)) throw DataError("shift_positive: non-finite input");
    if (mn <= 0.0) {
        const double offset = std::abs(mn) + 1.0;
        for (double& v : values) v += offset;
    }
    return values;
}

std::vector<double> roc_values(std::span<const double> y) {
    if (y.size() < 2) throw DataError("roc: need at least 2 values");
    std::vector<double> out(y.size() - 1);
    for (std::size_t i = 0; i + 1 < y.size(); ++i) out[i] = y[i + 1] - y[i];
    return out;
}

TransformedSeries roc_transform(const ScaledSpectrum& s) {
    return {roc_values(s.values), Transform::kRoc};
}

std::vector<double> pc_values(std::span<const double> y, int window) {
    if (window < 1) throw ConfigError("pc: window must be >= 1");
    const std::size_t w = static_cast<std::size_t>(window);
    if (y.size() <= w)
        throw DataError("pc: series length must exceed the window");
    for (double v : y)
        if (!(v > 0.0))
            throw DataError("pc: input must be strictly positive (shift first)");
    std::vector<double> out(y.size() - w);
    // value over the mean of the preceding `window` values
    double win_sum = std::accumulate(y.begin(), y.begin() + window, 0.0);
    for (std::size_t i = w; i < y.size(); ++i) {
        out[i - w] = y[i] / (win_sum / static_cast<double>(window));
        win_sum += y[i] - y[i - w];
    }
    return out;
}

TransformedSeries pc_transform(const ScaledSpectrum& s, int window) {
    return {pc_values(s.values, window), Transform::kPc};
}

std::vector<double> bin_means_values(std::span<const double> y, int width) {
    if (width < 1) throw ConfigError("bin_means: width must be >= 1");
    const std::size_t w = static_cast<std::size_t>(width);
    std::vector<double> out;
    out.reserve((y.size() + w - 1) / w);
    for (std::size_t start = 0; start < y.size(); start += w) {
        const std::size_t end = std::min(start + w, y.size());
        double sum = 0.0;
        for (std::size_t i = start; i < end; ++i) sum += y[i];
        out.push_back(sum / static_cast<double>(end - start));
    }
    return out;
}

FeatureVector bin_means(const TransformedSeries& series, int width) {
    return {bin_means_values(series.values, width), width};
}

ScaledSpectrum add_noise(const ScaledSpectrum& s, double amplitude, Rng& rng) {
    if (amplitude < 0.0) throw ConfigError("add_noise: amplitude must be >= 0");
    ScaledSpectrum out = s;
    for (double& v : out.values) v += rng.uniform(-amplitude, amplitude);
    return out;
}

// ---------------------------------------------------------------------------
// Feature pipeline
// ---------------------------------------------------------------------------

void PipelineConfig::validate() const {
    if (scale_x && min_range >= max_range)
        throw ConfigError("pipeline.min_range: must be below pipeline.max_range");
    if (bin_width < 1) throw ConfigError("pipeline.bin_width: must be >= 1");
    if (pc_window < 1) throw ConfigError("pipeline.pc_window: must be >= 1");
    if (noise_amplitude < 0.0)
        throw ConfigError("pipeline.noise_amplitude: must be >= 0");
}

namespace {

std::vector<double> sample_series(const Spectrum& spectrum,
                                  const PipelineConfig& cfg) {
    if (cfg.scale_x)
        return scale_x(spectrum, cfg.min_range, cfg.max_range).values;
    if (cfg.raw_truncate_len == 0)
        throw ConfigError(
            "pipeline.raw_truncate_len: required when scale_x is off");
    if (spectrum.size() < cfg.raw_truncate_len)
        throw DataError("raw spectrum shorter than the common length");
    return {spectrum.intensities.begin(),
            spectrum.intensities.begin() +
                static_cast<long>(cfg.raw_truncate_len)};
}

std::vector<double> apply_stages(std::vector<double> series,
                                 const PipelineConfig& cfg) {
    // PC is a ratio against a window mean; it always runs on the shifted
    // series so the denominator stays positive.
    if (cfg.shift_positive || cfg.transform == Transform::kPc)
        series = shift_positive(std::move(series));
    switch (cfg.transform) {
        case Transform::kRoc: series = roc_values(series); break;
        case Transform::kPc: series = pc_values(series, cfg.pc_window); break;
        case Transform::kNone: break;
    }
    return bin_means_values(series, cfg.bin_width);
}

}  // namespace

FeatureMatrix build_features(const LabeledDataset& ds, const PipelineConfig& cfg,
                             std::uint64_t seed, int jobs) {
    cfg.validate();
    struct Item {
        PolymerType type;
        const Sample* sample;
    };
    std::vector<Item> items;
    for (const auto& [type, samples] : ds.entries())
        for (const auto& s : samples) items.push_back({type, &s});

    FeatureMatrix m;
    m.rows.resize(items.size());
    m.labels.resize(items.size());
    m.ids.resize(items.size());

    parallel_for(items.size(), jobs, [&](std::size_t i) {
        std::vector<double> series = sample_series(items[i].sample->spectrum, cfg);
        if (cfg.noise_amplitude > 0.0) {
            Rng rng(derive_seed(seed, i));
            for (double& v : series)
                v += rng.uniform(-cfg.noise_amplitude, cfg.noise_amplitude);
        }
        m.rows[i] = apply_stages(std::move(series), cfg);
        m.labels[i] = items[i].type;
        m.ids[i] = items[i].sample->id;
    });

    for (const auto& row : m.rows)
        if (row.size() != m.width())
            throw DataError("feature rows have inconsistent widths");
    return m;
}

std::vector<double> build_feature_row(const Spectrum& s,
                                      const PipelineConfig& cfg) {
    cfg.validate();
    return apply_stages(sample_series(s, cfg), cfg);
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& m) {
    std::array<char, 32> buf;
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        for (double v : m.rows[r]) {
            auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
            out.write(buf.data(), ptr - buf.data());
            out.put(',');
        }
        out << canonical_name(m.labels[r]) << '\n';
    }
}

std::size_t common_raw_length(std::span<const LabeledDataset* const> datasets) {
    std::size_t len = SIZE_MAX;
    for (const LabeledDataset* ds : datasets)
        for (const auto& [type, samples] : ds->entries())
            for (const auto& s : samples) len = std::min(len, s.spectrum.size());
    if (len == SIZE_MAX) throw DataError("common_raw_length: no samples");
    return len;
}

}  // namespace ramanmp
