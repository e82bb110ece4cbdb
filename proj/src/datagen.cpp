#include "ramanmp/datagen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "ramanmp/common.hpp"
#include "ramanmp/dataset.hpp"

namespace ramanmp {

namespace {

struct LabelCount {
    const char* label;  // raw manifest string, not yet normalized
    std::size_t n;
};

// Class counts mirror the public library distributions, including the labels
// ingestion must reject.
constexpr LabelCount kSloppCounts[] = {
    {"Acrylic", 10},
    {"Acrylonitrile Butadiene Styrene", 10},
    {"Cellulose Acetate", 4},
    {"Cotton", 16},
    {"Polyamide", 7},
    {"Polycarbonate", 7},
    {"Polyester", 10},
    {"Polyethylene", 24},
    {"Polyethylene Terephthalate", 9},
    {"Polyethylene Vinyl Acetate", 5},
    {"Polymethyl Methacrylate", 1},
    {"Polypropylene", 17},
    {"Polystyrene", 11},
    {"Polyurethane", 6},
    {"Polyvinyl Chloride", 11},
};

constexpr LabelCount kSloppECounts[] = {
    {"Acrylic", 3},
    {"Acrylonitrile Butadiene Styrene", 1},
    {"Cellulose Acetate", 3},
    {"Polyamide", 7},
    {"Polycarbonate", 2},
    {"Polyester", 12},
    {"Polyethylene", 26},
    {"Polyethylene Terephthalate", 1},
    {"Polymethyl Methacrylate", 3},
    {"Polypropylene", 21},
    {"Polystyrene", 9},
    {"Polyurethane", 6},
    {"Polyvinyl Chloride", 3},
    {"Dyed Cellulose", 5},
    {"Polybutylene Terephthalate", 1},
    {"Polyethylene Terephthalate-co-Polycarbonate", 1},
    {"Polyethylene-co-Polypropylene", 3},
    {"Polystyrene-co-Polyvinyl Chloride", 1},
    {"Polysulfone", 1},
    {"Rubber", 4},
};

constexpr LabelCount kMendeleyCounts[] = {
    {"Not detected", 8},
    {"Acrylonitrile Butadiene Styrene", 1},
    {"Nitrocellulose", 1},
    {"Polyamine (nylon)", 6},
    {"Polycarbonate", 2},
    {"Polyethylene", 74},
    {"Polyester", 16},
    {"Polypropylene", 54},
    {"Polystyrene (maybe)", 2},
    {"Polyvinyl chloride", 9},
};

struct Peak {
    double center;  // cm^-1
    double amp;     // relative height
};

// Loosely band-like peak patterns; the point is per-class separability, not
// spectroscopic fidelity.
const std::vector<Peak>& peaks_for(PolymerType type) {
    static const std::vector<Peak> table[kPolymerTypeCount] = {
        /* acrylic    */ {{605, 0.5}, {1450, 0.8}, {2930, 1.0}},
        /* abs        */ {{620, 0.5}, {1001, 1.0}, {1602, 0.7}, {2237, 0.6}},
        /* cell. ac.  */ {{655, 0.4}, {1123, 0.7}, {1740, 0.9}, {2940, 1.0}},
        /* cotton     */ {{380, 0.5}, {1096, 1.0}, {2895, 0.8}},
        /* polyamide  */ {{930, 0.5}, {1635, 0.8}, {2900, 1.0}, {3300, 0.4}},
        /* pc         */ {{705, 0.6}, {888, 0.8}, {1235, 0.7}, {1605, 1.0}},
        /* polyester  */ {{858, 0.7}, {1290, 0.6}, {1615, 1.0}, {1726, 0.9}},
        /* pe         */ {{1063, 0.7}, {1130, 0.8}, {1296, 0.9}, {1440, 0.7},
                          {2848, 1.0}, {2882, 0.9}},
        /* pet        */ {{632, 0.4}, {857, 0.7}, {1096, 0.6}, {1614, 1.0},
                          {1730, 0.9}},
        /* peva       */ {{640, 0.4}, {1130, 0.6}, {1440, 0.8}, {1740, 0.7},
                          {2850, 1.0}},
        /* pmma       */ {{600, 0.5}, {813, 0.9}, {1453, 0.7}, {1730, 0.6},
                          {2953, 1.0}},
        /* pp         */ {{398, 0.5}, {809, 0.8}, {841, 0.9}, {973, 0.7},
                          {1152, 0.6}, {1458, 0.7}, {2840, 0.8}, {2885, 1.0},
                          {2950, 0.9}},
        /* ps         */ {{621, 0.6}, {1001, 1.0}, {1031, 0.7}, {1602, 0.8},
                          {3054, 0.9}},
        /* pu         */ {{640, 0.4}, {1250, 0.6}, {1535, 0.7}, {1617, 0.8},
                          {2860, 1.0}},
        /* pvc        */ {{636, 1.0}, {695, 0.9}, {1428, 0.7}, {2912, 0.8}},
    };
    return table[static_cast<std::size_t>(type)];
}

// Rejected labels still need plausible spectra; derive stable pseudo peaks
// from the label bytes.
std::vector<Peak> pseudo_peaks(std::string_view label) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char c : label) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    std::vector<Peak> peaks;
    for (int i = 0; i < 4; ++i) {
        h = derive_seed(h, static_cast<std::uint64_t>(i));
        peaks.push_back({300.0 + static_cast<double>(h % 2900),
                         0.4 + 0.15 * static_cast<double>(i)});
    }
    return peaks;
}

std::string slug(std::string_view label) {
    std::string out;
    for (const char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out.push_back(static_cast<char>(
                std::tolower(static_cast<unsigned char>(c))));
        else if (!out.empty() && out.back() != '-')
            out.push_back('-');
    }
    while (!out.empty() && out.back() == '-') out.pop_back();
    return out;
}

Spectrum synth_spectrum(SourceKind kind, std::string_view label, Rng& rng) {
    const auto type = normalize_label(label);
    const std::vector<Peak> peaks = type ? peaks_for(*type) : pseudo_peaks(label);

    // Sample-specific acquisition window; ends straddle the 0..3500 grid so
    // head fill, tail fill and the above-range cutoff all occur in the corpus.
    const double start = 50.0 + rng.uniform(0.0, 150.0);
    double step;
    if (rng.index(8) == 0) {
        step = 0.5;  // sub-integer grids exercise duplicate-bin handling
    } else {
        const double choices[] = {0.9, 1.0, 1.1, 2.0};
        step = choices[rng.index(4)];
    }
    const double end = 3350.0 + rng.uniform(0.0, 300.0);

    double base_level = 40.0 + rng.uniform(0.0, 60.0);
    double slope = rng.uniform(-0.01, 0.02);
    double noise_amp = 4.0;
    double wave_amp = 0.0, wave_period = 700.0, wave_phase = 0.0;
    if (kind == SourceKind::kSloppE) {
        noise_amp = 20.0;  // weathered particles read noisier
        slope += rng.uniform(0.0, 0.03);
    } else if (kind == SourceKind::kMendeley) {
        noise_amp = 8.0;
        wave_amp = 50.0 + rng.uniform(0.0, 60.0);
        wave_period = 500.0 + rng.uniform(0.0, 400.0);
        wave_phase = rng.uniform(0.0, 6.28318);
    }
    const double amp_scale = 300.0 + rng.uniform(0.0, 700.0);
    const double width_scale = 1.0 + rng.uniform(0.0, 0.6);
    const double center_jitter = rng.uniform(-4.0, 4.0);

    Spectrum s;
    for (double x = start; x <= end; x += step) {
        double y = base_level + slope * x;
        if (wave_amp > 0.0)
            y += wave_amp * std::sin(x / wave_period * 6.28318 + wave_phase);
        for (const Peak& p : peaks) {
            const double c = p.center + center_jitter;
            const double w = 12.0 * width_scale;
            const double d = (x - c) / w;
            y += amp_scale * p.amp * std::exp(-0.5 * d * d);
        }
        y += rng.uniform(-noise_amp, noise_amp);
        s.wavenumbers.push_back(x);
        s.intensities.push_back(y);
    }
    return s;
}

void write_library(const std::filesystem::path& dir, SourceKind kind,
                   std::span<const LabelCount> counts, std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    std::ofstream manifest(dir / "manifest.csv");
    if (!manifest)
        throw DataError("cannot write manifest: " + (dir / "manifest.csv").string());
    manifest << "file,label\n";

    std::uint64_t stream = 0;
    for (const LabelCount& entry : counts) {
        const std::string base = slug(entry.label);
        for (std::size_t i = 0; i < entry.n; ++i) {
            const std::string name =
                base + "_" + std::to_string(i + 1) + ".csv";
            Rng rng(derive_seed(seed, stream++));
            const Spectrum s = synth_spectrum(kind, entry.label, rng);
            std::ofstream file(dir / name);
            if (!file)
                throw DataError("cannot write spectrum: " + (dir / name).string());
            write_spectrum_csv(file, s);
            manifest << name << ',' << entry.label << '\n';
        }
    }
    if (!manifest) throw DataError("short write to manifest in " + dir.string());
}

}  // namespace

void write_demo_corpus(const std::filesystem::path& root, std::uint64_t seed) {
    write_library(root / "slopp", SourceKind::kSlopp, kSloppCounts,
                  derive_seed(seed, 1));
    write_library(root / "sloppe", SourceKind::kSloppE, kSloppECounts,
                  derive_seed(seed, 2));
    write_library(root / "mendeley", SourceKind::kMendeley, kMendeleyCounts,
                  derive_seed(seed, 3));
}

}  // namespace ramanmp
