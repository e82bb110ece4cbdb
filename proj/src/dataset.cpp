#include "ramanmp/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace fs = std::filesystem;

namespace ramanmp {

namespace {

constexpr std::array<std::string_view, kPolymerTypeCount> kCanonicalNames = {
    "acrylic",
    "acrylonitrile butadiene styrene",
    "cellulose acetate",
    "cotton",
    "polyamide",
    "polycarbonate",
    "polyester",
    "polyethylene",
    "polyethylene terephthalate",
    "polyethylene vinyl acetate",
    "polymethyl methacrylate",
    "polypropylene",
    "polystyrene",
    "polyurethane",
    "polyvinyl chloride",
};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

std::string strip_quotes(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

bool parse_double(std::string_view token, double& out) {
    const std::string t = trim(token);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::string format_double(double v) {
    std::array<char, 32> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void strip_bom(std::string& line) {
    if (line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF')
        line.erase(0, 3);
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

// ---------------------------------------------------------------------------
// Vocabulary
// ---------------------------------------------------------------------------

std::string_view canonical_name(PolymerType type) {
    return kCanonicalNames[static_cast<std::size_t>(type)];
}

std::optional<PolymerType> polymer_from_canonical(std::string_view name) {
    for (std::size_t i = 0; i < kCanonicalNames.size(); ++i) {
        if (kCanonicalNames[i] == name) return static_cast<PolymerType>(i);
    }
    return std::nullopt;
}

const std::vector<PolymerType>& all_polymer_types() {
    static const std::vector<PolymerType> types = [] {
        std::vector<PolymerType> v;
        for (std::size_t i = 0; i < kPolymerTypeCount; ++i)
            v.push_back(static_cast<PolymerType>(i));
        return v;
    }();
    return types;
}

SynonymTable SynonymTable::builtin() {
    SynonymTable t;
    // Mendeley quirks. "polyamine (nylon)" is rejected rather than mapped to
    // polyamide: the combined-dataset table shows no Mendeley polyamide
    // samples, so the original assembly dropped them too.
    t.add("polyamine (nylon)", std::nullopt);
    t.add("polystyrene (maybe)", PolymerType::kPolystyrene);
    return t;
}

SynonymTable SynonymTable::from_csv(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("synonyms file not readable: " + file.string());
    SynonymTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) strip_bom(line);
        strip_cr(line);
        if (trim(line).empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw FormatError(file.string() + " line " + std::to_string(line_no) +
                              ": expected raw_label,canonical");
        std::string raw = lower(trim(strip_quotes(trim(line.substr(0, comma)))));
        std::string target = lower(trim(strip_quotes(trim(line.substr(comma + 1)))));
        if (line_no == 1 && raw == "raw_label" && target == "canonical") continue;
        if (target == "rejected") {
            t.add(raw, std::nullopt);
            continue;
        }
        auto type = polymer_from_canonical(target);
        if (!type)
            throw FormatError(file.string() + " line " + std::to_string(line_no) +
                              ": unknown canonical name '" + target + "'");
        t.add(raw, type);
    }
    return t;
}

void SynonymTable::add(std::string raw, std::optional<PolymerType> target) {
    entries_[std::move(raw)] = target;
}

void SynonymTable::merge(const SynonymTable& other) {
    for (const auto& [raw, target] : other.entries_) entries_[raw] = target;
}

std::optional<PolymerType> SynonymTable::normalize(std::string_view raw) const {
    const std::string key = lower(trim(raw));
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    return polymer_from_canonical(key);
}

std::optional<PolymerType> normalize_label(std::string_view raw) {
    static const SynonymTable table = SynonymTable::builtin();
    return table.normalize(raw);
}

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

void Spectrum::validate() const {
    if (wavenumbers.empty()) throw DataError("spectrum is empty");
    if (wavenumbers.size() != intensities.size())
        throw DataError("spectrum x/y length mismatch");
    for (std::size_t i = 1; i < wavenumbers.size(); ++i) {
        if (!(wavenumbers[i - 1] < wavenumbers[i]))
            throw DataError("spectrum wavenumbers not strictly increasing");
    }
}

Spectrum parse_spectrum_csv(std::istream& in) {
    // Input order matters only for duplicates: the last occurrence of a
    // wavenumber wins. std::map hands the points back sorted.
    std::map<double, double> points;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) strip_bom(line);
        strip_cr(line);
        if (trim(line).empty()) continue;
        auto comma = line.find(',');
        std::string xs = comma == std::string::npos ? line : line.substr(0, comma);
        std::string ys = comma == std::string::npos ? "" : line.substr(comma + 1);
        double x = 0.0, y = 0.0;
        const bool x_ok = parse_double(xs, x) && std::isfinite(x);
        const bool y_ok = comma != std::string::npos &&
                          ys.find(',') == std::string::npos &&
                          parse_double(ys, y) && std::isfinite(y);
        if (!(x_ok && y_ok)) {
            // A non-numeric first cell on the first content line is the one
            // permitted header; anything else is malformed.
            if (first_content && !x_ok) {
                first_content = false;
                continue;
            }
            throw FormatError("line " + std::to_string(line_no) +
                              ": expected two numeric columns, got '" + line + "'");
        }
        points[x] = y;
        first_content = false;
    }
    if (points.empty()) throw FormatError("empty spectrum file");
    if (points.size() < 2)
        throw FormatError("spectrum has fewer than 2 points");
    Spectrum s;
    s.wavenumbers.reserve(points.size());
    s.intensities.reserve(points.size());
    for (const auto& [x, y] : points) {
        s.wavenumbers.push_back(x);
        s.intensities.push_back(y);
    }
    return s;
}

Spectrum parse_spectrum_csv_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open spectrum file: " + file.string());
    try {
        return parse_spectrum_csv(in);
    } catch (const FormatError& e) {
        throw FormatError(file.string() + ": " + e.what());
    }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    out << "wavenumber,intensity\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << format_double(s.wavenumbers[i]) << ','
            << format_double(s.intensities[i]) << '\n';
}

// ---------------------------------------------------------------------------
// Labeled datasets
// ---------------------------------------------------------------------------

std::string_view source_name(SourceKind kind) {
    switch (kind) {
        case SourceKind::kSlopp: return "slopp";
        case SourceKind::kSloppE: return "sloppe";
        case SourceKind::kMendeley: return "mendeley";
        case SourceKind::kCombined: return "combined";
    }
    return "unknown";
}

void LabeledDataset::add(PolymerType type, Sample sample) {
    sample.spectrum.validate();
    entries_[type].push_back(std::move(sample));
}

std::size_t LabeledDataset::total_count() const {
    std::size_t n = 0;
    for (const auto& [type, samples] : entries_) n += samples.size();
    return n;
}

std::size_t LabeledDataset::count(PolymerType type) const {
    auto it = entries_.find(type);
    return it == entries_.end() ? 0 : it->second.size();
}

std::vector<PolymerType> LabeledDataset::types() const {
    std::vector<PolymerType> v;
    for (const auto& [type, samples] : entries_)
        if (!samples.empty()) v.push_back(type);
    return v;
}

void LoadReport::write_jsonl(std::ostream& out) const {
    for (const auto& r : rejections) {
        nlohmann::json j{{"library", library},
                         {"file", r.file},
                         {"raw_label", r.raw_label},
                         {"reason", r.reason}};
        out << j.dump() << '\n';
    }
}

namespace {

struct ManifestRow {
    std::string file;
    std::string label;
};

std::vector<ManifestRow> read_manifest(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("missing manifest: " + file.string());
    std::vector<ManifestRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) strip_bom(line);
        strip_cr(line);
        if (trim(line).empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw FormatError(file.string() + " line " + std::to_string(line_no) +
                              ": expected file,label");
        ManifestRow row;
        row.file = trim(strip_quotes(trim(line.substr(0, comma))));
        row.label = trim(strip_quotes(trim(line.substr(comma + 1))));
        if (line_no == 1 && lower(row.file) == "file" && lower(row.label) == "label")
            continue;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

LabeledDataset load_library(const fs::path& root, SourceKind kind,
                            LoadReport* report, const SynonymTable* synonyms) {
    if (!fs::is_directory(root))
        throw DataError("library directory not found: " + root.string());

    const SynonymTable table =
        synonyms ? *synonyms : SynonymTable::builtin();
    LoadReport local;
    LoadReport& rep = report ? *report : local;
    rep.library = std::string(source_name(kind));

    LabeledDataset ds(kind);
    const auto rows = read_manifest(root / "manifest.csv");
    for (const auto& row : rows) {
        ++rep.raw_label_counts[row.label];
        const auto type = table.normalize(row.label);
        if (!type) {
            rep.rejections.push_back(
                {row.file, row.label, "label outside the vocabulary"});
            continue;
        }
        Sample sample;
        sample.id = std::string(source_name(kind)) + "/" + row.file;
        try {
            sample.spectrum = parse_spectrum_csv_file(root / row.file);
        } catch (const Error& e) {
            rep.rejections.push_back({row.file, row.label, e.what()});
            continue;
        }
        ds.add(*type, std::move(sample));
        ++rep.accepted;
    }
    if (ds.total_count() == 0)
        throw DataError("no accepted samples in " + root.string());
    return ds;
}

std::pair<LabeledDataset, LabeledDataset> assemble_train_test(
    const LabeledDataset& slopp, const LabeledDataset& mendeley,
    const LabeledDataset& sloppe) {
    const auto vocab_list = slopp.types();
    const std::set<PolymerType> vocab(vocab_list.begin(), vocab_list.end());
    if (vocab.empty())
        throw DataError("training vocabulary is empty (no SLoPP samples)");

    bool test_overlap = false;
    for (const auto& [type, samples] : sloppe.entries())
        if (!samples.empty() && vocab.count(type)) test_overlap = true;
    if (!test_overlap)
        throw DataError("test/train label vocabularies do not intersect");

    LabeledDataset train(SourceKind::kCombined);
    for (const auto& [type, samples] : slopp.entries())
        for (const auto& s : samples) train.add(type, s);
    for (const auto& [type, samples] : mendeley.entries()) {
        if (!vocab.count(type)) continue;
        for (const auto& s : samples) train.add(type, s);
    }

    LabeledDataset test(SourceKind::kSloppE);
    for (const auto& [type, samples] : sloppe.entries()) {
        if (!vocab.count(type)) continue;
        for (const auto& s : samples) test.add(type, s);
    }
    return {std::move(train), std::move(test)};
}

void export_dataset(const LabeledDataset& ds, const fs::path& dir) {
    fs::create_directories(dir);
    std::ofstream manifest(dir / "manifest.csv");
    if (!manifest) throw DataError("cannot write manifest in " + dir.string());
    manifest << "file,label\n";

    std::ofstream provenance;
    bool any_augmented = false;
    for (const auto& [type, samples] : ds.entries())
        for (const auto& s : samples)
            if (s.augmented) any_augmented = true;
    if (any_augmented) {
        provenance.open(dir / "provenance.csv");
        provenance << "file,label,source,seed\n";
    }

    std::size_t file_no = 0;
    for (const auto& [type, samples] : ds.entries()) {
        for (const auto& s : samples) {
            std::string name = "sample_" + std::to_string(file_no++) + ".csv";
            std::ofstream out(dir / name);
            if (!out) throw DataError("cannot write " + (dir / name).string());
            write_spectrum_csv(out, s.spectrum);
            manifest << name << ',' << canonical_name(type) << '\n';
            if (s.augmented)
                provenance << name << ',' << canonical_name(type) << ','
                           << s.source_id << ',' << s.seed << '\n';
        }
    }
}

}  // namespace ramanmp
