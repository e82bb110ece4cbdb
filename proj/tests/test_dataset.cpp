#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "ramanmp/dataset.hpp"
#include "support/tmpdir.hpp"

using namespace ramanmp;
using testsupport::TempDir;
using testsupport::write_file;

// ---------------------------------------------------------------------------
// Spectrum CSV parsing
// ---------------------------------------------------------------------------

TEST_CASE("two plain rows parse in order") {
    std::istringstream in("100,5.0\n101,6.0\n");
    const Spectrum s = parse_spectrum_csv(in);
    REQUIRE(s.size() == 2);
    CHECK(s.wavenumbers == std::vector<double>{100.0, 101.0});
    CHECK(s.intensities == std::vector<double>{5.0, 6.0});
}

TEST_CASE("header line is skipped and points are sorted by wavenumber") {
    std::istringstream in("x,y\n300,1.5\n200,2.5\n");
    const Spectrum s = parse_spectrum_csv(in);
    REQUIRE(s.size() == 2);
    CHECK(s.wavenumbers == std::vector<double>{200.0, 300.0});
    CHECK(s.intensities == std::vector<double>{2.5, 1.5});
}

TEST_CASE("numeric wavenumber with junk intensity is an error, not a header") {
    std::istringstream in("100,abc\n");
    CHECK_THROWS_WITH_AS(parse_spectrum_csv(in),
                         doctest::Contains("line 1"), FormatError);
}

TEST_CASE("duplicate wavenumbers keep the last occurrence") {
    std::istringstream in("100,1\n200,2\n100,3\n");
    const Spectrum s = parse_spectrum_csv(in);
    REQUIRE(s.size() == 2);
    CHECK(s.wavenumbers == std::vector<double>{100.0, 200.0});
    CHECK(s.intensities == std::vector<double>{3.0, 2.0});
}

TEST_CASE("empty and single-point files are format errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_spectrum_csv(empty), FormatError);
    std::istringstream one("100,1\n");
    CHECK_THROWS_AS(parse_spectrum_csv(one), FormatError);
    std::istringstream header_only("x,y\n");
    CHECK_THROWS_AS(parse_spectrum_csv(header_only), FormatError);
}

TEST_CASE("non-numeric cell mid-file names its line") {
    std::istringstream in("100,1\netc,2\n300,3\n");
    CHECK_THROWS_WITH_AS(parse_spectrum_csv(in),
                         doctest::Contains("line 2"), FormatError);
}

TEST_CASE("non-finite cells are rejected") {
    std::istringstream in("100,1\n200,nan\n");
    CHECK_THROWS_AS(parse_spectrum_csv(in), FormatError);
}

TEST_CASE("blank lines, CRLF endings and a BOM are tolerated") {
    std::istringstream in("\xEF\xBB\xBFwavenumber,intensity\r\n100,1\r\n\r\n200,2\r\n");
    const Spectrum s = parse_spectrum_csv(in);
    CHECK(s.size() == 2);
}

TEST_CASE("write then parse reproduces the exact doubles") {
    Spectrum s;
    s.wavenumbers = {0.1, 100.0, 250.7, 3500.0};
    s.intensities = {1.0 / 3.0, -2.5e-7, 1234.5678901234567, 9.9e99};
    std::ostringstream out;
    write_spectrum_csv(out, s);
    std::istringstream in(out.str());
    const Spectrum back = parse_spectrum_csv(in);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(back.wavenumbers[i] == s.wavenumbers[i]);
        CHECK(back.intensities[i] == s.intensities[i]);
    }
}

// ---------------------------------------------------------------------------
// Label vocabulary
// ---------------------------------------------------------------------------

TEST_CASE("canonical names are lowercase, unique and sorted") {
    const auto& types = all_polymer_types();
    REQUIRE(types.size() == kPolymerTypeCount);
    for (std::size_t i = 1; i < types.size(); ++i)
        CHECK(canonical_name(types[i - 1]) < canonical_name(types[i]));
    for (PolymerType t : types) {
        auto back = polymer_from_canonical(canonical_name(t));
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
}

TEST_CASE("normalize_label folds case and trims") {
    CHECK(normalize_label("Polypropylene") == PolymerType::kPolypropylene);
    CHECK(normalize_label("  polyethylene  ") == PolymerType::kPolyethylene);
    CHECK(normalize_label("POLYVINYL CHLORIDE") ==
          PolymerType::kPolyvinylChloride);
}

TEST_CASE("labels outside the vocabulary are rejected as values") {
    CHECK(normalize_label("Not detected") == std::nullopt);
    CHECK(normalize_label("Rubber") == std::nullopt);
    CHECK(normalize_label("Nitrocellulose") == std::nullopt);
    CHECK(normalize_label("Dyed Cellulose") == std::nullopt);
}

TEST_CASE("builtin synonym table settles the odd library labels") {
    CHECK(normalize_label("Polystyrene (maybe)") == PolymerType::kPolystyrene);
    CHECK(normalize_label("Polyamine (nylon)") == std::nullopt);
}

TEST_CASE("synonym CSV merges on top of the builtin table") {
    TempDir dir;
    write_file(dir.file("syn.csv"),
               "raw_label,canonical\nPE pellet,polyethylene\nmystery,rejected\n");
    SynonymTable table = SynonymTable::builtin();
    table.merge(SynonymTable::from_csv(dir.file("syn.csv")));
    CHECK(table.normalize("pe PELLET") == PolymerType::kPolyethylene);
    CHECK(table.normalize("mystery") == std::nullopt);
    CHECK(table.normalize("Polystyrene (maybe)") == PolymerType::kPolystyrene);
}

TEST_CASE("synonym CSV with an unknown canonical name fails loudly") {
    TempDir dir;
    write_file(dir.file("syn.csv"), "foo,polyfoam\n");
    CHECK_THROWS_AS(SynonymTable::from_csv(dir.file("syn.csv")), FormatError);
}

// ---------------------------------------------------------------------------
// Library loading
// ---------------------------------------------------------------------------

namespace {

void write_sample(const std::filesystem::path& file, double base) {
    std::ostringstream body;
    body << "wavenumber,intensity\n";
    for (int i = 0; i < 8; ++i)
        body << (100 + 10 * i) << ',' << base + i << '\n';
    write_file(file, body.str());
}

// A minimal library: 2 accepted polypropylene, 1 accepted polystyrene,
// 1 rejected label, 1 broken file.
void write_tiny_library(const std::filesystem::path& root) {
    std::filesystem::create_directories(root);
    write_sample(root / "a.csv", 1.0);
    write_sample(root / "b.csv", 2.0);
    write_sample(root / "c.csv", 3.0);
    write_file(root / "broken.csv", "100,oops\n");
    write_sample(root / "e.csv", 4.0);
    write_file(root / "manifest.csv",
               "file,label\n"
               "a.csv,Polypropylene\n"
               "b.csv,polypropylene\n"
               "c.csv,Polystyrene\n"
               "broken.csv,Polystyrene\n"
               "e.csv,Rubber\n");
}

}  // namespace

TEST_CASE("load_library accepts good rows and reports the rest") {
    TempDir dir;
    write_tiny_library(dir.path() / "lib");
    LoadReport report;
    const LabeledDataset ds =
        load_library(dir.path() / "lib", SourceKind::kSlopp, &report);
    CHECK(ds.total_count() == 3);
    CHECK(ds.count(PolymerType::kPolypropylene) == 2);
    CHECK(ds.count(PolymerType::kPolystyrene) == 1);
    CHECK(report.accepted == 3);
    REQUIRE(report.rejections.size() == 2);
    CHECK(report.raw_label_counts.at("Rubber") == 1);
    CHECK(report.library == "slopp");

    // sample ids carry the library prefix
    const auto& pp = ds.entries().at(PolymerType::kPolypropylene);
    CHECK(pp.front().id == "slopp/a.csv");

    std::ostringstream jsonl;
    report.write_jsonl(jsonl);
    CHECK(jsonl.str().find("broken.csv") != std::string::npos);
    CHECK(jsonl.str().find("Rubber") != std::string::npos);
}

TEST_CASE("load_library errors on a missing directory") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(
        load_library(dir.path() / "nope", SourceKind::kSlopp),
        doctest::Contains("nope"), DataError);
}

TEST_CASE("load_library errors when nothing is accepted") {
    TempDir dir;
    const auto root = dir.path() / "lib";
    std::filesystem::create_directories(root);
    write_sample(root / "a.csv", 1.0);
    write_file(root / "manifest.csv", "file,label\na.csv,Rubber\n");
    CHECK_THROWS_AS(load_library(root, SourceKind::kSlopp), DataError);
}

// ---------------------------------------------------------------------------
// Train/test assembly
// ---------------------------------------------------------------------------

namespace {

Sample make_sample(const std::string& id, double base) {
    Sample s;
    s.id = id;
    for (int i = 0; i < 6; ++i) {
        s.spectrum.wavenumbers.push_back(100 + 10.0 * i);
        s.spectrum.intensities.push_back(base + i);
    }
    return s;
}

}  // namespace

TEST_CASE("assemble keeps SLoPP's vocabulary and restricts the others to it") {
    LabeledDataset slopp(SourceKind::kSlopp);
    slopp.add(PolymerType::kPolypropylene, make_sample("slopp/1", 1));
    slopp.add(PolymerType::kPolystyrene, make_sample("slopp/2", 2));

    LabeledDataset mendeley(SourceKind::kMendeley);
    mendeley.add(PolymerType::kPolypropylene, make_sample("mendeley/1", 3));
    mendeley.add(PolymerType::kPolyethylene, make_sample("mendeley/2", 4));

    LabeledDataset sloppe(SourceKind::kSloppE);
    sloppe.add(PolymerType::kPolystyrene, make_sample("sloppe/1", 5));
    sloppe.add(PolymerType::kPolyethylene, make_sample("sloppe/2", 6));

    const auto [train, test] = assemble_train_test(slopp, mendeley, sloppe);
    CHECK(train.total_count() == 3);  // PE from Mendeley is outside the vocab
    CHECK(train.count(PolymerType::kPolypropylene) == 2);
    CHECK(train.count(PolymerType::kPolyethylene) == 0);
    CHECK(test.total_count() == 1);
    CHECK(test.count(PolymerType::kPolystyrene) == 1);

    // test vocabulary is a subset of the train vocabulary
    for (PolymerType t : test.types())
        CHECK(train.count(t) > 0);
}

TEST_CASE("assembly without a vocabulary intersection fails") {
    LabeledDataset slopp(SourceKind::kSlopp);
    slopp.add(PolymerType::kPolypropylene, make_sample("slopp/1", 1));
    LabeledDataset mendeley(SourceKind::kMendeley);
    LabeledDataset sloppe(SourceKind::kSloppE);
    sloppe.add(PolymerType::kCotton, make_sample("sloppe/1", 2));
    CHECK_THROWS_AS(assemble_train_test(slopp, mendeley, sloppe), DataError);

    LabeledDataset empty(SourceKind::kSlopp);
    CHECK_THROWS_AS(assemble_train_test(empty, mendeley, sloppe), DataError);
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

TEST_CASE("export writes a loadable layout and provenance for augmented rows") {
    LabeledDataset ds(SourceKind::kCombined);
    ds.add(PolymerType::kPolypropylene, make_sample("orig/1", 1));
    Sample aug = make_sample("orig/1#aug0", 2);
    aug.augmented = true;
    aug.source_id = "orig/1";
    aug.seed = 42;
    ds.add(PolymerType::kPolypropylene, aug);

    TempDir dir;
    const auto out = dir.path() / "export";
    export_dataset(ds, out);

    const LabeledDataset back = load_library(out, SourceKind::kCombined);
    CHECK(back.total_count() == 2);
    CHECK(back.count(PolymerType::kPolypropylene) == 2);

    const std::string provenance = testsupport::read_file(out / "provenance.csv");
    CHECK(provenance.find("orig/1") != std::string::npos);
    CHECK(provenance.find("42") != std::string::npos);
}

TEST_CASE("datasets validate spectra on add") {
    LabeledDataset ds(SourceKind::kCombined);
    Sample bad;
    bad.id = "bad";
    bad.spectrum.wavenumbers = {2.0, 1.0};
    bad.spectrum.intensities = {1.0, 1.0};
    CHECK_THROWS_AS(ds.add(PolymerType::kAcrylic, bad), DataError);
}
