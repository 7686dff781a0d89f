#include "offsetforge/index_builder.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>

#include "offsetforge/csv.hpp"
#include "offsetforge/errors.hpp"
#include "offsetforge/util.hpp"

namespace offsetforge {

namespace {

bool entry_less(const IndexEntry& a, const IndexEntry& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.location < b.location;
}

void check_filename_indexable(const std::string& name) {
    if (name.find_first_of(",\"\r\n") != std::string::npos) {
        throw Error("filename not indexable (contains comma, quote, or line break): " + name);
    }
}

} // namespace

std::span<const IndexEntry> PersistentIndex::find(std::string_view key) const {
    auto lo = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const IndexEntry& e, std::string_view k) { return e.key < k; });
    auto hi = lo;
    while (hi != entries.end() && hi->key == key) ++hi;
    return {entries.data() + (lo - entries.begin()), static_cast<size_t>(hi - lo)};
}

void PersistentIndex::canonicalize() {
    std::sort(entries.begin(), entries.end(), entry_less);
    std::sort(source_fingerprint.begin(), source_fingerprint.end());
}

IndexBuildResult build_index(const std::string& directory, unsigned worker_count,
                             const IdentifierScheme& scheme, const std::string& id_property,
                             const IndexBuildOptions& options) {
    Timer timer;
    if (worker_count < 1) throw DomainError("worker_count must be >= 1");

    std::vector<std::string> files = list_files(directory, options.pattern);
    for (const auto& f : files) check_filename_indexable(f);

    struct FileScan {
        std::vector<IndexEntry> entries;
        uint64_t records = 0;
        uint64_t skipped = 0;
        uint64_t dup_warnings = 0;
        uint64_t size = 0;
        bool unreadable = false;
        bool scanned = false;
    };
    std::vector<FileScan> partial(files.size());

    parallel_for(files.size(), worker_count, [&](size_t i) {
        const std::string& name = files[i];
        FileScan& scan = partial[i];
        try {
            RecordFile file(directory + "/" + name, name);
            scan.size = file.file_size();
            MoleculeRecord rec;
            while (file.next(rec)) {
                scan.records += 1;
                scan.dup_warnings += rec.duplicate_property_count;
                auto id = get_property(rec, id_property);
                if (!id.has_value()) {
                    scan.skipped += 1;
                    continue;
                }
                IndexEntry entry;
                entry.full_identifier.assign(id->data(), id->size());
                entry.key = hash_key(entry.full_identifier, scheme);
                entry.location = {name, rec.start_offset};
                scan.entries.push_back(std::move(entry));
            }
            scan.scanned = true;
        } catch (const UnreadableFileError&) {
            if (options.fail_fast) throw;
            scan.unreadable = true;
        }
    });

    IndexBuildResult result;
    result.index.scheme = scheme;
    result.index.id_property = id_property;

    for (size_t i = 0; i < files.size(); ++i) {
        FileScan& scan = partial[i];
        if (scan.unreadable) {
            result.stats.unreadable_files.push_back(files[i]);
            continue;
        }
        result.stats.files_scanned += 1;
        result.stats.records_scanned += scan.records;
        result.stats.skipped_records += scan.skipped;
        result.stats.duplicate_property_warnings += scan.dup_warnings;
        if (scan.records > 0 && scan.entries.empty()) {
            result.stats.all_skipped_files.push_back(files[i]);
        }
        result.index.source_fingerprint.emplace_back(files[i], scan.size);
        for (auto& e : scan.entries) result.index.entries.push_back(std::move(e));
    }

    result.index.canonicalize();
    result.stats.wall_seconds = timer.seconds();
    return result;
}

// ---------------------------------------------------------------------------
// CSV persistence

uint64_t write_index_csv(const PersistentIndex& index, const std::string& out_path) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteFailureError(out_path, "cannot open for writing");

    std::string buf;
    buf.reserve(1 << 20);
    buf += "# scheme=" + index.scheme.to_string() + "\n";
    buf += "# id_property=" + index.id_property + "\n";
    for (const auto& [file, size] : index.source_fingerprint) {
        buf += "# file=" + file + "," + std::to_string(size) + "\n";
    }
    buf += "identifier,filename,byte_offset\n";

    uint64_t total = 0;
    auto flush = [&] {
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        total += buf.size();
        buf.clear();
    };

    for (const auto& entry : index.entries) {
        buf += csv::escape(entry.full_identifier);
        buf += ',';
        buf += entry.location.source_file;
        buf += ',';
        buf += std::to_string(entry.location.byte_offset);
        buf += '\n';
        if (buf.size() > (1 << 20)) flush();
    }
    flush();
    out.flush();
    if (!out) throw WriteFailureError(out_path);
    return total;
}

namespace {

uint64_t parse_offset_field(const std::string& field, size_t row) {
    uint64_t value = 0;
    if (field.empty()) throw FormatError("empty byte_offset", row);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw FormatError("byte_offset is not a non-negative integer: '" + field + "'", row);
    }
    return value;
}

} // namespace

PersistentIndex load_index_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IndexMissingError(path);

    PersistentIndex index;
    std::string line;
    size_t row = 0;
    bool saw_header = false;
    bool saw_scheme = false;

    std::vector<std::string> fields;
    std::string err;

    while (std::getline(in, line)) {
        row += 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!saw_header) {
            if (line.rfind("# ", 0) == 0) {
                std::string meta = line.substr(2);
                if (meta.rfind("scheme=", 0) == 0) {
                    index.scheme = IdentifierScheme::parse(meta.substr(7));
                    saw_scheme = true;
                } else if (meta.rfind("id_property=", 0) == 0) {
                    index.id_property = meta.substr(12);
                } else if (meta.rfind("file=", 0) == 0) {
                    std::string entry = meta.substr(5);
                    size_t comma = entry.rfind(',');
                    if (comma == std::string::npos) {
                        throw FormatError("malformed file fingerprint line", row);
                    }
                    index.source_fingerprint.emplace_back(
                        entry.substr(0, comma), parse_offset_field(entry.substr(comma + 1), row));
                }
                // Unknown metadata keys are ignored for forward compatibility.
                continue;
            }
            if (line == "identifier,filename,byte_offset") {
                saw_header = true;
                continue;
            }
            throw FormatError("missing header 'identifier,filename,byte_offset'", row);
        }

        if (line.empty()) continue;
        if (!csv::split_row(line, fields, err)) throw FormatError(err, row);
        if (fields.size() != 3) {
            throw FormatError("expected 3 columns, got " + std::to_string(fields.size()), row);
        }
        IndexEntry entry;
        entry.full_identifier = std::move(fields[0]);
        entry.location.source_file = std::move(fields[1]);
        entry.location.byte_offset = parse_offset_field(fields[2], row);
        index.entries.push_back(std::move(entry));
    }
    if (!saw_header) {
        throw FormatError("missing header 'identifier,filename,byte_offset'", row + 1);
    }
    if (!saw_scheme) throw FormatError("missing '# scheme=' metadata line", row + 1);

    for (auto& entry : index.entries) {
        entry.key = hash_key(entry.full_identifier, index.scheme);
    }
    index.canonicalize();
    return index;
}

// ---------------------------------------------------------------------------
// Verification

VerifySummary verify_index(const PersistentIndex& index, const std::string& directory,
                           double sample_fraction, uint64_t seed) {
    VerifySummary summary;

    for (const auto& [file, indexed_size] : index.source_fingerprint) {
        std::string path = directory + "/" + file;
        if (!path_exists(path)) {
            summary.drift.push_back({file, indexed_size, 0, true});
            continue;
        }
        uint64_t current = file_size_bytes(path);
        if (current != indexed_size) {
            summary.drift.push_back({file, indexed_size, current, false});
        }
    }

    if (sample_fraction <= 0.0) return summary;

    std::mt19937_64 rng(derive_seed(seed, 0xF00D));
    for (const auto& entry : index.entries) {
        if (sample_fraction < 1.0 && unit_real(rng) >= sample_fraction) continue;
        summary.checked += 1;
        std::string observed;
        try {
            MoleculeRecord rec = read_record_at(directory + "/" + entry.location.source_file,
                                                entry.location.byte_offset,
                                                entry.location.source_file);
            auto id = get_property(rec, index.id_property);
            observed = id.has_value() ? std::string(*id) : "<absent>";
        } catch (const Error& e) {
            observed = std::string("<error: ") + e.what() + ">";
        }
        if (observed == entry.full_identifier) {
            summary.passed += 1;
        } else {
            summary.failed += 1;
            summary.failures.push_back({entry.full_identifier, observed, entry.location});
        }
    }
    return summary;
}

} // namespace offsetforge
