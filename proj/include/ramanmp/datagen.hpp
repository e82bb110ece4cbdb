#pragma once

#include <cstdint>
#include <filesystem>

namespace ramanmp {

// Writes a synthetic three-library corpus (root/slopp, root/sloppe,
// root/mendeley) in the documented manifest + CSV-per-sample layout. Class
// counts and raw label strings mirror the public libraries, including the
// labels the loader must reject, so ingestion, assembly and the full
// pipeline can run end to end without the real downloads. Spectra are
// synthetic: per-class peak patterns with sample-dependent grids, baselines
// and noise. Deterministic in `seed`.
//
// This is a demo/testing aid; numbers obtained on it say nothing about the
// real libraries.
void write_demo_corpus(const std::filesystem::path& root, std::uint64_t seed);

}  // namespace ramanmp
