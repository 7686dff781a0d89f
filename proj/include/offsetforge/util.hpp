#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace offsetforge {

// splitmix64, used to derive independent per-file seeds from a master seed.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

// Bounded draw from any 64-bit generator. std::uniform_int_distribution is
// implementation-defined, which would break byte-identical corpora across
// platforms; plain modulo is deterministic everywhere and the bias is
// irrelevant for test data.
template <typename Rng>
uint64_t bounded(Rng& rng, uint64_t lo, uint64_t hi) {
    if (hi <= lo) return lo;
    return lo + rng() % (hi - lo + 1);
}

template <typename Rng>
double unit_real(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}

    double seconds() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Regular files in `dir` whose name matches `pattern` (fnmatch-style glob),
// sorted by name. Non-recursive: corpora are flat directories.
std::vector<std::string> list_files(const std::string& dir, const std::string& pattern);

uint64_t file_size_bytes(const std::string& path);
bool path_exists(const std::string& path);

// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
// exception wins, stops remaining work, and is rethrown after join.
void parallel_for(size_t count, unsigned workers, const std::function<void(size_t)>& fn);

} // namespace offsetforge
