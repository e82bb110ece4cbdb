#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramanmp/common.hpp"

namespace ramanmp {

// ---------------------------------------------------------------------------
// Polymer vocabulary
// ---------------------------------------------------------------------------

// The closed 15-class vocabulary shared by the three libraries. Enum order is
// lexicographic over the canonical (lowercase) names; deterministic
// tie-breaking in the classifiers relies on that.
enum class PolymerType : std::uint8_t {
    kAcrylic,
    kAcrylonitrileButadieneStyrene,
    kCelluloseAcetate,
    kCotton,
    kPolyamide,
    kPolycarbonate,
    kPolyester,
    kPolyethylene,
    kPolyethyleneTerephthalate,
    kPolyethyleneVinylAcetate,
    kPolymethylMethacrylate,
    kPolypropylene,
    kPolystyrene,
    kPolyurethane,
    kPolyvinylChloride,
};

inline constexpr std::size_t kPolymerTypeCount = 15;

std::string_view canonical_name(PolymerType type);
std::optional<PolymerType> polymer_from_canonical(std::string_view name);
const std::vector<PolymerType>& all_polymer_types();

// Maps raw library labels onto the vocabulary. A lookup miss after
// lowercasing/trimming means the label is rejected (rejection is a value,
// not an error). Extra synonyms can be merged from a CSV with rows
// "raw_label,canonical_or_rejected".
class SynonymTable {
public:
    static SynonymTable builtin();
    static SynonymTable from_csv(const std::filesystem::path& file);

    // raw (lowercased, trimmed) -> canonical type, or nullopt for an explicit
    // rejection entry.
    void add(std::string raw, std::optional<PolymerType> target);
    void merge(const SynonymTable& other);

    std::optional<PolymerType> normalize(std::string_view raw) const;

private:
    std::map<std::string, std::optional<PolymerType>> entries_;
};

// Lowercase + trim + builtin synonym table. Returns nullopt for labels
// outside the vocabulary.
std::optional<PolymerType> normalize_label(std::string_view raw);

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

// One Raman sample: intensity over strictly increasing wavenumbers (cm^-1).
struct Spectrum {
    std::vector<double> wavenumbers;
    std::vector<double> intensities;

    std::size_t size() const { return wavenumbers.size(); }

    // Throws DataError unless non-empty, equal-length, strictly increasing x.
    void validate() const;
};

// Parses a two-column (wavenumber, intensity) CSV. One optional header line;
// points are returned sorted by wavenumber; duplicate wavenumbers keep the
// last occurrence in input order. Throws FormatError naming the line on bad
// cells, and on fewer than 2 points.
Spectrum parse_spectrum_csv(std::istream& in);
Spectrum parse_spectrum_csv_file(const std::filesystem::path& file);

// Shortest round-trip formatting; parse(write(s)) reproduces the exact
// doubles.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

// ---------------------------------------------------------------------------
// Labeled datasets
// ---------------------------------------------------------------------------

enum class SourceKind { kSlopp, kSloppE, kMendeley, kCombined };

std::string_view source_name(SourceKind kind);

struct Sample {
    std::string id;  // "<library>/<file>" for loaded data
    Spectrum spectrum;
    bool augmented = false;
    std::string source_id;   // originating sample id (augmented only)
    std::uint64_t seed = 0;  // generator seed used (augmented only)
};

class LabeledDataset {
public:
    explicit LabeledDataset(SourceKind source = SourceKind::kCombined)
        : source_(source) {}

    SourceKind source() const { return source_; }
    const std::map<PolymerType, std::vector<Sample>>& entries() const {
        return entries_;
    }

    void add(PolymerType type, Sample sample);

    std::size_t total_count() const;
    std::size_t count(PolymerType type) const;
    std::vector<PolymerType> types() const;  // sorted, only non-empty classes
    bool empty() const { return entries_.empty(); }

private:
    SourceKind source_;
    std::map<PolymerType, std::vector<Sample>> entries_;
};

struct LoadRejection {
    std::string file;
    std::string raw_label;
    std::string reason;
};

struct LoadReport {
    std::string library;
    std::size_t accepted = 0;
    std::vector<LoadRejection> rejections;
    // Raw manifest label histogram, before normalization. The public tables
    // disagree on the Mendeley total; the report keeps the raw counts so the
    // manifest stays the source of truth.
    std::map<std::string, std::size_t> raw_label_counts;

    // One JSON record per rejected file.
    void write_jsonl(std::ostream& out) const;
};

// Loads one library: `root` must contain manifest.csv with (file,label) rows
// plus one spectrum CSV per sample. Unparseable files and rejected labels go
// to the report; throws DataError on a missing directory/manifest or zero
// accepted samples.
LabeledDataset load_library(const std::filesystem::path& root, SourceKind kind,
                            LoadReport* report = nullptr,
                            const SynonymTable* synonyms = nullptr);

// train = SLoPP + (Mendeley restricted to SLoPP's types),
// test  = SLoPP-E restricted to SLoPP's types.
// Throws DataError when the label vocabularies do not intersect.
std::pair<LabeledDataset, LabeledDataset> assemble_train_test(
    const LabeledDataset& slopp, const LabeledDataset& mendeley,
    const LabeledDataset& sloppe);

// Writes the CSV-per-sample layout (manifest.csv + spectra); augmented
// samples additionally land in provenance.csv as (file,label,source,seed).
void export_dataset(const LabeledDataset& ds, const std::filesystem::path& dir);

}  // namespace ramanmp
