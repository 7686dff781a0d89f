#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "offsetforge/index_builder.hpp"
#include "offsetforge/record_store.hpp"

namespace offsetforge {

struct ExtractionStats {
    uint64_t files_opened = 0;
    uint64_t seeks_performed = 0;
    uint64_t bytes_read = 0; // bytes actually fetched from the OS
    uint64_t records_parsed = 0;
    // Location-level read/verify errors under targets that still resolved
    // elsewhere; fully failed targets land in verification_failures instead.
    uint64_t location_errors = 0;
    double wall_seconds = 0.0;
};

struct FoundRecord {
    std::string target; // matched target identifier (Full) or key (Hashed)
    MoleculeRecord record;
};

struct VerificationFailure {
    std::string target;
    RecordLocation location;
    std::string observed; // id property at the location, or an error note
};

/// Result of one extraction pass. The target identifiers of found, missing,
/// and verification_failures partition the input targets pairwise
/// disjointly.
struct ExtractionReport {
    std::vector<FoundRecord> found; // sorted by (target, file, offset)
    std::vector<std::string> missing; // sorted
    std::vector<VerificationFailure> verification_failures; // sorted by (target, location)
    std::vector<std::string> fingerprint_warnings;
    ExtractionStats stats;

    std::vector<std::string> found_targets() const;
    std::vector<std::string> failed_targets() const;
};

struct ScanOptions {
    std::string pattern = "*.sdf";
    size_t buffer_size = kDefaultBufferCapacity;
};

/// Naive lookup: one sequential pass per file in lexicographic order, set
/// membership against the remaining targets, stopping as soon as every
/// target is found. The oracle for indexed_extract.
ExtractionReport baseline_scan(const std::string& directory,
                               const std::vector<std::string>& targets,
                               const std::string& id_property, const ScanOptions& options = {});

struct ExtractOptions {
    unsigned worker_count = 1;
    bool sort_offsets = true; // ascending per-file offset order
    bool strict_fingerprint = false;
    size_t buffer_size = kDefaultBufferCapacity;
    size_t fetch_granularity = kSeekFetchGranularity;
};

/// Index-driven extraction: targets are grouped by source file, sorted by
/// ascending byte offset, then each hit is a direct seek + single-record
/// read + identity check. Under the Full scheme a target matches the first
/// indexed location of its identifier (the record the baseline scan would
/// find); under a Hashed scheme a target is a key and every indexed location
/// is read so distinct full identifiers under one key surface together.
ExtractionReport indexed_extract(const PersistentIndex& index, const std::string& directory,
                                 const std::vector<std::string>& targets,
                                 const ExtractOptions& options = {});

/// Concatenates found records (sorted by target identifier) into a valid
/// multi-record SDF file, bytes preserved verbatim. Returns bytes written.
uint64_t write_extraction_sdf(const ExtractionReport& report, const std::string& out_path);

} // namespace offsetforge
