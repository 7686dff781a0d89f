#include "offsetforge/extraction.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <unordered_set>

#include "offsetforge/errors.hpp"
#include "offsetforge/util.hpp"

namespace offsetforge {

namespace {

std::vector<std::string> unique_sorted(const std::vector<std::string>& values) {
    std::vector<std::string> out(values);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void sort_report(ExtractionReport& report) {
    std::sort(report.found.begin(), report.found.end(),
              [](const FoundRecord& a, const FoundRecord& b) {
                  if (a.target != b.target) return a.target < b.target;
                  if (a.record.source_file != b.record.source_file)
                      return a.record.source_file < b.record.source_file;
                  return a.record.start_offset < b.record.start_offset;
              });
    std::sort(report.missing.begin(), report.missing.end());
    std::sort(report.verification_failures.begin(), report.verification_failures.end(),
              [](const VerificationFailure& a, const VerificationFailure& b) {
                  if (a.target != b.target) return a.target < b.target;
                  return a.location < b.location;
              });
}

} // namespace

std::vector<std::string> ExtractionReport::found_targets() const {
    std::vector<std::string> out;
    out.reserve(found.size());
    for (const auto& f : found) out.push_back(f.target);
    return unique_sorted(out);
}

std::vector<std::string> ExtractionReport::failed_targets() const {
    std::vector<std::string> out;
    out.reserve(verification_failures.size());
    for (const auto& f : verification_failures) out.push_back(f.target);
    return unique_sorted(out);
}

// ---------------------------------------------------------------------------
// Baseline scan (naive sequential lookup)

ExtractionReport baseline_scan(const std::string& directory,
                               const std::vector<std::string>& targets,
                               const std::string& id_property, const ScanOptions& options) {
    Timer timer;
    ExtractionReport report;

    std::unordered_set<std::string> remaining(targets.begin(), targets.end());
    std::vector<std::string> files = list_files(directory, options.pattern);

    for (const auto& name : files) {
        if (remaining.empty()) break; // all targets found; skip remaining files
        RecordFile file(directory + "/" + name, name, options.buffer_size);
        report.stats.files_opened += 1;
        MoleculeRecord rec;
        while (!remaining.empty() && file.next(rec)) {
            report.stats.records_parsed += 1;
            auto id = get_property(rec, id_property);
            if (!id.has_value()) continue;
            auto it = remaining.find(std::string(*id));
            if (it != remaining.end()) {
                report.found.push_back({*it, rec});
                remaining.erase(it);
            }
        }
        report.stats.bytes_read += file.bytes_fetched();
    }

    report.missing.assign(remaining.begin(), remaining.end());
    sort_report(report);
    report.stats.wall_seconds = timer.seconds();
    return report;
}

// ---------------------------------------------------------------------------
// Indexed extraction

namespace {

struct Hit {
    uint64_t offset;
    const IndexEntry* entry;
    const std::string* target;
};

struct FileTask {
    std::string file;
    std::vector<Hit> hits;
};

struct FileOutcome {
    std::vector<FoundRecord> found;
    std::vector<VerificationFailure> failures;
    uint64_t seeks = 0;
    uint64_t bytes = 0;
    uint64_t records = 0;
    bool opened = false;
};

} // namespace

ExtractionReport indexed_extract(const PersistentIndex& index, const std::string& directory,
                                 const std::vector<std::string>& targets,
                                 const ExtractOptions& options) {
    Timer timer;
    if (options.worker_count < 1) throw DomainError("worker_count must be >= 1");
    ExtractionReport report;

    // Corpus drift check against the recorded fingerprint.
    for (const auto& [file, indexed_size] : index.source_fingerprint) {
        std::string path = directory + "/" + file;
        std::string warning;
        if (!path_exists(path)) {
            warning = file + ": missing (indexed size " + std::to_string(indexed_size) + ")";
        } else {
            uint64_t current = file_size_bytes(path);
            if (current != indexed_size) {
                warning = file + ": size " + std::to_string(current) + " differs from indexed " +
                          std::to_string(indexed_size);
            }
        }
        if (!warning.empty()) {
            if (options.strict_fingerprint) {
                throw FingerprintMismatchError(file, warning);
            }
            report.fingerprint_warnings.push_back(warning);
        }
    }

    const std::vector<std::string> unique_targets = unique_sorted(targets);

    // GroupByFilename: every location to visit, keyed by source file.
    std::map<std::string, std::vector<Hit>> by_file;
    for (const auto& target : unique_targets) {
        std::span<const IndexEntry> entries = index.find(target);
        if (entries.empty()) {
            report.missing.push_back(target);
            continue;
        }
        if (index.scheme.is_full()) {
            // First location in (file, offset) order: the record the
            // baseline scan finds for this identifier.
            const IndexEntry& e = entries.front();
            by_file[e.location.source_file].push_back({e.location.byte_offset, &e, &target});
        } else {
            for (const IndexEntry& e : entries) {
                by_file[e.location.source_file].push_back({e.location.byte_offset, &e, &target});
            }
        }
    }

    std::vector<FileTask> tasks;
    tasks.reserve(by_file.size());
    for (auto& [file, hits] : by_file) {
        if (options.sort_offsets) {
            std::sort(hits.begin(), hits.end(),
                      [](const Hit& a, const Hit& b) { return a.offset < b.offset; });
        }
        tasks.push_back({file, std::move(hits)});
    }

    std::vector<FileOutcome> outcomes(tasks.size());
    parallel_for(tasks.size(), options.worker_count, [&](size_t t) {
        const FileTask& task = tasks[t];
        FileOutcome& outcome = outcomes[t];
        std::unique_ptr<RecordFile> file;
        try {
            file = std::make_unique<RecordFile>(directory + "/" + task.file, task.file,
                                                options.buffer_size, options.fetch_granularity);
            outcome.opened = true;
        } catch (const Error& e) {
            for (const Hit& hit : task.hits) {
                outcome.failures.push_back(
                    {*hit.target, hit.entry->location, std::string("<unreadable: ") + e.what() + ">"});
            }
            return;
        }
        for (const Hit& hit : task.hits) {
            outcome.seeks += 1;
            try {
                MoleculeRecord rec = file->read_at(hit.offset);
                outcome.records += 1;
                auto id = get_property(rec, index.id_property);
                std::string observed = id.has_value() ? std::string(*id) : "<absent>";
                bool ok = index.scheme.is_full()
                              ? observed == *hit.target
                              : hash_key(observed, index.scheme) == *hit.target;
                if (ok) {
                    outcome.found.push_back({*hit.target, std::move(rec)});
                } else {
                    outcome.failures.push_back({*hit.target, hit.entry->location, observed});
                }
            } catch (const Error& e) {
                outcome.failures.push_back(
                    {*hit.target, hit.entry->location, std::string("<error: ") + e.what() + ">"});
            }
        }
        outcome.bytes = file->bytes_fetched();
    });

    // Deterministic merge, then settle the per-target partition: a target
    // counts as found if any location verified; its residual location errors
    // become a counter rather than failure rows.
    std::unordered_set<std::string> found_set;
    for (const auto& outcome : outcomes) {
        if (outcome.opened) report.stats.files_opened += 1;
        report.stats.seeks_performed += outcome.seeks;
        report.stats.bytes_read += outcome.bytes;
        report.stats.records_parsed += outcome.records;
        for (const auto& f : outcome.found) {
            found_set.insert(f.target);
            report.found.push_back(f);
        }
    }
    for (auto& outcome : outcomes) {
        for (auto& failure : outcome.failures) {
            if (found_set.count(failure.target)) {
                report.stats.location_errors += 1;
            } else {
                report.verification_failures.push_back(std::move(failure));
            }
        }
    }

    sort_report(report);
    report.stats.wall_seconds = timer.seconds();
    return report;
}

// ---------------------------------------------------------------------------

uint64_t write_extraction_sdf(const ExtractionReport& report, const std::string& out_path) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteFailureError(out_path, "cannot open for writing");
    uint64_t total = 0;
    for (const auto& f : report.found) { // already sorted by target
        out.write(f.record.raw.data(), static_cast<std::streamsize>(f.record.raw.size()));
        total += f.record.raw.size();
    }
    out.flush();
    if (!out) throw WriteFailureError(out_path);
    return total;
}

} // namespace offsetforge
