#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "offsetforge/identifier_scheme.hpp"
#include "offsetforge/record_store.hpp"

namespace offsetforge {

struct IndexEntry {
    std::string key;             // equals full_identifier under the Full scheme
    std::string full_identifier; // untruncated canonical identifier
    RecordLocation location;

    friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

/// Identifier -> location multimap over a fingerprinted corpus. Entries are
/// kept in canonical (key, source_file, byte_offset) order, so lists under
/// one key are sorted and CSV emission is deterministic. Immutable after
/// construction; safe for concurrent reads.
struct PersistentIndex {
    IdentifierScheme scheme;
    std::string id_property;
    std::vector<IndexEntry> entries;
    std::vector<std::pair<std::string, uint64_t>> source_fingerprint; // (file, size), sorted

    size_t entry_count() const { return entries.size(); }

    // All entries sharing `key`, ordered by (source_file, byte_offset).
    std::span<const IndexEntry> find(std::string_view key) const;

    // Restores canonical order; build/load/migrate call this before handing
    // the index out.
    void canonicalize();

    friend bool operator==(const PersistentIndex&, const PersistentIndex&) = default;
};

struct IndexBuildOptions {
    unsigned worker_count = 1;
    std::string pattern = "*.sdf";
    bool fail_fast = false;
};

struct IndexBuildStats {
    uint64_t files_scanned = 0;
    uint64_t records_scanned = 0;
    uint64_t skipped_records = 0; // records lacking the id property
    uint64_t duplicate_property_warnings = 0;
    std::vector<std::string> unreadable_files; // only populated when not fail-fast
    std::vector<std::string> all_skipped_files;
    double wall_seconds = 0.0;
};

struct IndexBuildResult {
    PersistentIndex index;
    IndexBuildStats stats;
};

/// Scans every record file under `directory` (one task per file) and builds
/// the identifier index. The result is identical for any worker count.
/// Records lacking the id property are tallied, not indexed. An empty corpus
/// yields an empty index. Filenames containing commas, quotes, or line breaks
/// are rejected, keeping the CSV format unambiguous.
IndexBuildResult build_index(const std::string& directory, unsigned worker_count,
                             const IdentifierScheme& scheme, const std::string& id_property,
                             const IndexBuildOptions& options = {});

/// Writes the index as CSV: `#`-prefixed metadata lines, then the
/// `identifier,filename,byte_offset` header, then one row per entry in
/// canonical order. The identifier column carries the full identifier and is
/// RFC 4180 quoted when needed; filename and offset are never quoted.
/// Returns bytes written.
uint64_t write_index_csv(const PersistentIndex& index, const std::string& out_path);

/// Inverse of write_index_csv: load(write(I)) == I, including scheme
/// metadata. Keys are recomputed from the persisted full identifiers under
/// the persisted scheme. Raises FormatError with the 1-based row number on
/// wrong column counts, non-integer offsets, or a missing header.
PersistentIndex load_index_csv(const std::string& path);

struct VerifyFailure {
    std::string expected; // full identifier recorded in the index
    std::string observed; // id property found at the location
    RecordLocation location;
};

struct FingerprintDrift {
    std::string file;
    uint64_t indexed_size = 0;
    uint64_t current_size = 0;
    bool missing = false;
};

struct VerifySummary {
    uint64_t checked = 0;
    uint64_t passed = 0;
    uint64_t failed = 0;
    std::vector<VerifyFailure> failures;
    std::vector<FingerprintDrift> drift;
};

/// Re-reads a deterministic uniform sample of entries and checks the record
/// at each location still carries the indexed identifier; also reports
/// source fingerprint drift. Failures are data, not errors.
VerifySummary verify_index(const PersistentIndex& index, const std::string& directory,
                           double sample_fraction, uint64_t seed = 1);

} // namespace offsetforge
