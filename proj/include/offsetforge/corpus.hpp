#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace offsetforge {

/// Shape of a generated synthetic corpus. Same spec (and seed) always
/// produces byte-identical directories, regardless of worker count.
struct CorpusSpec {
    unsigned file_count = 1;
    unsigned records_per_file = 1;
    uint64_t seed = 1;
    std::string id_property = "PUBCHEM_IUPAC_INCHI";
    std::pair<unsigned, unsigned> identifier_length_range = {40, 100};
    std::pair<unsigned, unsigned> record_body_size_range = {600, 2400};
    double duplicate_fraction = 0.0; // fraction of records reusing an earlier identifier
    bool crlf = false;
};

struct ManifestRow {
    std::string identifier;
    std::string filename;
    uint64_t byte_offset = 0;
    uint64_t byte_length = 0;
};

/// Ground truth for every generated record: the oracle all extraction tests
/// check against. Persisted as manifest.csv next to the corpus files.
struct CorpusManifest {
    std::vector<ManifestRow> rows;
    uint64_t duplicate_records = 0; // identifiers drawn from the reuse pool

    std::vector<std::string> unique_identifiers() const;
};

inline constexpr const char* kManifestFilename = "manifest.csv";

/// Writes file_count SDF files plus manifest.csv into out_dir (which must be
/// empty or absent) and returns the manifest. Identifiers mimic InChI shape,
/// including comma-bearing layers, so downstream CSV quoting gets exercised
/// realistically.
CorpusManifest generate_corpus(const CorpusSpec& spec, const std::string& out_dir,
                               unsigned worker_count = 1);

void write_manifest_csv(const CorpusManifest& manifest, const std::string& path);
CorpusManifest load_manifest_csv(const std::string& path);

} // namespace offsetforge
