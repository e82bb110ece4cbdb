#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ramanmp {

// Error categories map onto CLI exit codes: ConfigError -> 1, DataError and
// FormatError -> 2, anything else -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files (CSV cells, manifests, model files).
struct FormatError : Error {
    using Error::Error;
};

// Invalid configuration or parameters.
struct ConfigError : Error {
    using Error::Error;
};

// Structurally valid input that violates a data contract (missing directory,
// empty dataset, out-of-range spectra, ...).
struct DataError : Error {
    using Error::Error;
};

// Derives an independent child seed from (base, stream). Used everywhere a
// unit of work needs its own generator (per sample, per class, per tree) so
// results do not depend on scheduling. splitmix64 finalizer.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + (stream + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic uniform generator. Doubles are produced from the raw 64-bit
// stream directly (not through std::uniform_real_distribution, whose output
// is implementation-defined), so identical seeds give identical sequences on
// every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform index in [0, n). n must be >= 1.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

private:
    std::mt19937_64 engine_;
};

// Runs fn(i) for i in [0, n). jobs <= 1 runs inline; jobs == 0 uses the
// hardware thread count. Work units must be independent; determinism comes
// from per-unit derived seeds, never from scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    if (jobs == 0) {
        unsigned hw = std::thread::hardware_concurrency();
        jobs = hw == 0 ? 1 : static_cast<int>(hw);
    }
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace ramanmp
