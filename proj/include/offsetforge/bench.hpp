#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "offsetforge/corpus.hpp"
#include "offsetforge/extraction.hpp"
#include "offsetforge/index_builder.hpp"

namespace offsetforge {

struct BenchConfig {
    std::vector<size_t> target_counts;
    unsigned repetitions = 3;
    uint64_t seed = 1;
    unsigned worker_count = 1;
    std::string pattern = "*.sdf";
    std::string id_property = "PUBCHEM_IUPAC_INCHI";
    size_t buffer_size = kDefaultBufferCapacity;
    // Best effort only: asks the kernel to drop cached corpus pages before
    // each timed run. Recorded as flags, never required for correctness.
    bool attempt_cold_cache = false;
    // Reuse an existing index CSV at index_path instead of rebuilding.
    bool reuse_index = false;
    std::string index_path; // default: <corpus>/offsetforge-index.csv
};

struct BenchRun {
    std::string method; // "baseline" | "indexed"
    size_t target_count = 0;
    unsigned rep = 0;
    double wall_seconds = 0;
    uint64_t bytes_read = 0;
    uint64_t files_opened = 0;
    uint64_t seeks = 0;
    uint64_t records_processed = 0;
    double throughput_rps = 0; // records processed per second
    size_t found = 0;
    size_t missing = 0;
};

struct BenchSummary {
    std::string method;
    size_t target_count = 0;
    double mean_wall = 0;
    double stddev_wall = 0;
    double mean_bytes = 0;
};

struct SpeedupRow {
    size_t target_count = 0;
    double wall_speedup = 0;     // baseline mean / indexed mean
    double bytes_read_ratio = 0; // indexed mean / baseline mean
};

struct ReextractionResult {
    size_t target_count = 0;
    double first_wall_median = 0;
    double second_wall_median = 0;
    double ratio = 0; // second / first
    uint64_t index_rebuilds = 0; // build-phase invocations after the initial one
    uint64_t second_records_parsed = 0;
    uint64_t second_bytes_read = 0;
};

struct BenchReport {
    std::string corpus_dir;
    uint64_t seed = 0;
    unsigned repetitions = 0;
    uint64_t corpus_bytes = 0;
    uint64_t corpus_records = 0;

    double index_build_seconds = 0;
    uint64_t index_entries = 0;
    uint64_t index_csv_bytes = 0;
    bool index_reused = false;

    std::vector<BenchRun> runs;
    std::vector<BenchSummary> summary;
    std::vector<SpeedupRow> speedups;
    ReextractionResult reextraction;

    bool cold_cache_attempted = false;
    bool cold_cache_effective = false;

    std::string to_json() const;
    void write_json(const std::string& path) const;
    // target_count,baseline_seconds,indexed_seconds,index_build_seconds,indexed_total_seconds
    void write_curve_csv(const std::string& path) const;
};

/// Times baseline_scan against indexed_extract over seeded target samples
/// drawn from the corpus manifest. Builds (and times) the index unless
/// config.reuse_index points at an existing one. Non-timing fields are fully
/// reproducible from the seed. Repetitions must be >= 3.
BenchReport run_benchmark(const std::string& corpus_dir, const BenchConfig& config);

} // namespace offsetforge
