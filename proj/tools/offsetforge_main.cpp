// offsetforge: persistent byte-offset indexes over directories of
// delimiter-terminated record files, targeted seek extraction with identity
// verification, identifier-set intersection, and hash-key collision audits.
//
// Exit codes: 0 success, 1 operational error, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "offsetforge/bench.hpp"
#include "offsetforge/corpus.hpp"
#include "offsetforge/cost_model.hpp"
#include "offsetforge/errors.hpp"
#include "offsetforge/extraction.hpp"
#include "offsetforge/index_builder.hpp"
#include "offsetforge/integrity.hpp"
#include "offsetforge/util.hpp"

namespace of = offsetforge;

namespace {

unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

std::vector<std::string> read_id_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw of::UnreadableFileError(path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

void write_id_list(const std::vector<std::string>& ids, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw of::WriteFailureError(path, "cannot open for writing");
    for (const auto& id : ids) out << id << '\n';
    if (!out) throw of::WriteFailureError(path);
}

nlohmann::json report_to_json(const of::ExtractionReport& report, const std::string& method,
                              size_t target_count) {
    nlohmann::json j;
    j["method"] = method;
    j["targets"] = target_count;
    j["found"] = nlohmann::json::array();
    for (const auto& f : report.found) {
        j["found"].push_back({{"target", f.target},
                              {"filename", f.record.source_file},
                              {"byte_offset", f.record.start_offset},
                              {"byte_length", f.record.raw.size()}});
    }
    j["missing"] = report.missing;
    j["verification_failures"] = nlohmann::json::array();
    for (const auto& v : report.verification_failures) {
        j["verification_failures"].push_back({{"target", v.target},
                                              {"filename", v.location.source_file},
                                              {"byte_offset", v.location.byte_offset},
                                              {"observed", v.observed}});
    }
    j["fingerprint_warnings"] = report.fingerprint_warnings;
    j["stats"] = {{"files_opened", report.stats.files_opened},
                  {"seeks_performed", report.stats.seeks_performed},
                  {"bytes_read", report.stats.bytes_read},
                  {"records_parsed", report.stats.records_parsed},
                  {"location_errors", report.stats.location_errors},
                  {"wall_seconds", report.stats.wall_seconds}};
    return j;
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw of::WriteFailureError(path, "cannot open for writing");
    out << j.dump(2) << '\n';
    if (!out) throw of::WriteFailureError(path);
}

// Shared defaults: flag > environment variable > built-in.
struct CommonFlags {
    unsigned workers = default_workers();
    std::string id_property = "PUBCHEM_IUPAC_INCHI";
    std::string scheme = "full";
    size_t buffer_size = of::kDefaultBufferCapacity;
};

std::string g_log_level = "info"; // quiet | info

template <typename... Args>
void log_info(const char* format, Args... args) {
    if (g_log_level != "quiet") std::fprintf(stderr, format, args...);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"offsetforge: byte-offset record indexing, extraction, and identifier audits"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonFlags common;
    int exit_code = 0;

    app.add_option("--log-level", g_log_level, "quiet or info (default info)")
        ->envname("OFFSETFORGE_LOG_LEVEL")
        ->check(CLI::IsMember({"quiet", "info"}));

    // --- index ------------------------------------------------------------
    auto* cmd_index = app.add_subcommand("index", "Build an identifier index over a directory");
    std::string idx_dir, idx_out, idx_pattern = "*.sdf";
    bool idx_fail_fast = false;
    cmd_index->add_option("--dir", idx_dir, "Directory of record files")->required();
    cmd_index->add_option("--out", idx_out, "Output index CSV path")->required();
    cmd_index->add_option("--workers", common.workers, "Worker threads")
        ->envname("OFFSETFORGE_WORKERS");
    cmd_index->add_option("--scheme", common.scheme, "full or hashed:<bits>")
        ->envname("OFFSETFORGE_SCHEME");
    cmd_index->add_option("--id-property", common.id_property, "Identifier property name")
        ->envname("OFFSETFORGE_ID_PROPERTY");
    cmd_index->add_option("--pattern", idx_pattern, "Filename glob (default *.sdf)");
    cmd_index->add_flag("--fail-fast", idx_fail_fast, "Abort on the first unreadable file");
    cmd_index->callback([&] {
        of::IndexBuildOptions opts;
        opts.pattern = idx_pattern;
        opts.fail_fast = idx_fail_fast;
        of::IndexBuildResult result =
            of::build_index(idx_dir, common.workers, of::IdentifierScheme::parse(common.scheme),
                            common.id_property, opts);
        uint64_t bytes = of::write_index_csv(result.index, idx_out);
        log_info(
                     "indexed %zu entries from %llu records in %llu files "
                     "(%llu skipped, %zu unreadable) -> %s (%llu bytes, %.2fs)\n",
                     result.index.entry_count(),
                     static_cast<unsigned long long>(result.stats.records_scanned),
                     static_cast<unsigned long long>(result.stats.files_scanned),
                     static_cast<unsigned long long>(result.stats.skipped_records),
                     result.stats.unreadable_files.size(), idx_out.c_str(),
                     static_cast<unsigned long long>(bytes), result.stats.wall_seconds);
        if (!result.stats.unreadable_files.empty()) {
            for (const auto& f : result.stats.unreadable_files) {
                std::fprintf(stderr, "warning: unreadable file skipped: %s\n", f.c_str());
            }
            exit_code = 1;
        }
    });

    // --- extract ----------------------------------------------------------
    auto* cmd_extract = app.add_subcommand("extract", "Seek-extract targets using an index");
    std::string ext_index, ext_dir, ext_targets, ext_out, ext_report;
    bool ext_no_sort = false, ext_strict = false;
    cmd_extract->add_option("--index", ext_index, "Index CSV path")->required();
    cmd_extract->add_option("--dir", ext_dir, "Corpus directory")->required();
    cmd_extract->add_option("--targets", ext_targets, "Target list file (one per line)")
        ->required();
    cmd_extract->add_option("--out", ext_out, "Output SDF of found records")->required();
    cmd_extract->add_option("--report", ext_report, "Optional JSON report path");
    cmd_extract->add_option("--workers", common.workers, "Worker threads")
        ->envname("OFFSETFORGE_WORKERS");
    cmd_extract->add_option("--buffer-size", common.buffer_size, "Read buffer bytes")
        ->envname("OFFSETFORGE_BUFFER_SIZE");
    cmd_extract->add_flag("--no-sort", ext_no_sort, "Skip per-file offset sorting");
    cmd_extract->add_flag("--strict-fingerprint", ext_strict,
                          "Abort when the corpus drifted since indexing");
    cmd_extract->callback([&] {
        of::PersistentIndex index = of::load_index_csv(ext_index);
        std::vector<std::string> targets = read_id_list(ext_targets);
        of::ExtractOptions opts;
        opts.worker_count = common.workers;
        opts.sort_offsets = !ext_no_sort;
        opts.strict_fingerprint = ext_strict;
        opts.buffer_size = common.buffer_size;
        of::ExtractionReport report = of::indexed_extract(index, ext_dir, targets, opts);
        uint64_t bytes = of::write_extraction_sdf(report, ext_out);
        for (const auto& w : report.fingerprint_warnings) {
            std::fprintf(stderr, "warning: fingerprint drift: %s\n", w.c_str());
        }
        log_info(
                     "extracted %zu records (%zu missing, %zu verification failures) "
                     "-> %s (%llu bytes, %.3fs)\n",
                     report.found.size(), report.missing.size(),
                     report.verification_failures.size(), ext_out.c_str(),
                     static_cast<unsigned long long>(bytes), report.stats.wall_seconds);
        if (!ext_report.empty()) {
            write_json_file(report_to_json(report, "indexed", targets.size()), ext_report);
        }
    });

    // --- scan ---------------------------------------------------------------
    auto* cmd_scan = app.add_subcommand("scan", "Naive sequential lookup (baseline)");
    std::string scan_dir, scan_targets, scan_out, scan_report, scan_pattern = "*.sdf";
    cmd_scan->add_option("--dir", scan_dir, "Corpus directory")->required();
    cmd_scan->add_option("--targets", scan_targets, "Target list file")->required();
    cmd_scan->add_option("--out", scan_out, "Output SDF of found records")->required();
    cmd_scan->add_option("--report", scan_report, "Optional JSON report path");
    cmd_scan->add_option("--id-property", common.id_property, "Identifier property name")
        ->envname("OFFSETFORGE_ID_PROPERTY");
    cmd_scan->add_option("--pattern", scan_pattern, "Filename glob (default *.sdf)");
    cmd_scan->callback([&] {
        std::vector<std::string> targets = read_id_list(scan_targets);
        of::ScanOptions opts;
        opts.pattern = scan_pattern;
        of::ExtractionReport report =
            of::baseline_scan(scan_dir, targets, common.id_property, opts);
        uint64_t bytes = of::write_extraction_sdf(report, scan_out);
        log_info( "scan found %zu records (%zu missing) -> %s (%llu bytes, %.3fs)\n",
                     report.found.size(), report.missing.size(), scan_out.c_str(),
                     static_cast<unsigned long long>(bytes), report.stats.wall_seconds);
        if (!scan_report.empty()) {
            write_json_file(report_to_json(report, "baseline", targets.size()), scan_report);
        }
    });

    // --- intersect ----------------------------------------------------------
    auto* cmd_intersect = app.add_subcommand("intersect", "N-way identifier set intersection");
    std::vector<std::string> int_lists;
    std::string int_out;
    cmd_intersect->add_option("--lists", int_lists, "Two or more identifier list files")
        ->required()
        ->expected(2, -1);
    cmd_intersect->add_option("--out", int_out, "Output list path")->required();
    cmd_intersect->add_option("--scheme", common.scheme, "full or hashed:<bits>")
        ->envname("OFFSETFORGE_SCHEME");
    cmd_intersect->callback([&] {
        std::vector<std::vector<std::string>> lists;
        lists.reserve(int_lists.size());
        for (const auto& path : int_lists) lists.push_back(read_id_list(path));
        of::IdentifierScheme scheme = of::IdentifierScheme::parse(common.scheme);
        std::vector<std::string> common_ids = scheme.is_full()
                                                  ? of::intersect(lists)
                                                  : of::intersect_keys(lists, scheme);
        write_id_list(common_ids, int_out);
        log_info( "intersection of %zu lists: %zu identifiers -> %s\n", lists.size(),
                     common_ids.size(), int_out.c_str());
    });

    // --- audit --------------------------------------------------------------
    auto* cmd_audit = app.add_subcommand("audit", "Collision audit of a persisted index");
    std::string audit_index, audit_report;
    cmd_audit->add_option("--index", audit_index, "Index CSV path")->required();
    cmd_audit->add_option("--report", audit_report, "Output collisions JSON")->required();
    cmd_audit->callback([&] {
        of::PersistentIndex index = of::load_index_csv(audit_index);
        of::CollisionReport report = of::audit_collisions(index);
        nlohmann::json j;
        j["scheme"] = index.scheme.to_string();
        j["scanned_entry_count"] = report.scanned_entry_count;
        j["colliding_key_count"] = report.colliding_key_count;
        j["colliding_record_count"] = report.colliding_record_count;
        j["duplicate_record_count"] = report.duplicate_record_count;
        j["observed_rate"] = report.observed_rate;
        j["expected_count"] = report.expected_count;
        j["excess_ratio"] = report.expected_count > 0
                                ? static_cast<double>(report.colliding_key_count) /
                                      report.expected_count
                                : 0.0;
        j["collision_groups"] = nlohmann::json::array();
        for (const auto& group : report.collision_groups) {
            nlohmann::json members = nlohmann::json::array();
            for (const auto& [id, loc] : group.members) {
                members.push_back({{"full_identifier", id},
                                   {"filename", loc.source_file},
                                   {"byte_offset", loc.byte_offset}});
            }
            j["collision_groups"].push_back({{"key", group.key}, {"members", members}});
        }
        write_json_file(j, audit_report);
        log_info( "audit: %llu colliding keys, %llu colliding records of %llu entries\n",
                     static_cast<unsigned long long>(report.colliding_key_count),
                     static_cast<unsigned long long>(report.colliding_record_count),
                     static_cast<unsigned long long>(report.scanned_entry_count));
    });

    // --- estimate -----------------------------------------------------------
    auto* cmd_estimate = app.add_subcommand("estimate", "Analytic cost projections");
    double est_targets = 0, est_files = 0, est_per_file = 0, est_rate = 0;
    double est_index_hours = -1, est_lookup_us = -1;
    unsigned est_extractions = 1;
    std::string est_curve;
    cmd_estimate->add_option("--targets", est_targets, "Target count N")->required();
    cmd_estimate->add_option("--files", est_files, "File count M")->required();
    cmd_estimate->add_option("--per-file", est_per_file, "Average records per file S")
        ->required();
    cmd_estimate->add_option("--scan-rate", est_rate, "Scan rate, records/second")->required();
    cmd_estimate->add_option("--index-hours", est_index_hours, "Index build time, hours");
    cmd_estimate->add_option("--lookup-us", est_lookup_us, "Per-lookup cost, microseconds");
    cmd_estimate->add_option("--extractions", est_extractions, "Extractions planned");
    cmd_estimate->add_option("--curve-out", est_curve, "Write crossover curve CSV here");
    cmd_estimate->callback([&] {
        of::CostParams params;
        params.n_targets = est_targets;
        params.n_files = est_files;
        params.avg_records_per_file = est_per_file;
        params.scan_rate = est_rate;
        double ops = of::brute_force_ops(params);
        double hours = of::brute_force_hours(ops, est_rate);
        std::printf("operations=%.10g\n", ops);
        std::printf("hours=%.10g\n", hours);
        std::printf("days=%.10g\n", hours / 24.0);
        if (est_index_hours >= 0 && est_lookup_us >= 0) {
            params.index_build_seconds = est_index_hours * 3600.0;
            params.per_lookup_seconds = est_lookup_us * 1e-6;
            of::CrossoverResult crossover = of::crossover_targets(params, est_extractions);
            std::printf("crossover_targets=%.6g\n", crossover.threshold_targets);
            std::printf("crossover_targets_ceil=%.0f\n", std::ceil(crossover.threshold_targets));
            if (!est_curve.empty()) of::write_cost_curve_csv(crossover, est_curve);
        }
    });

    // --- gen-corpus ---------------------------------------------------------
    auto* cmd_gen = app.add_subcommand("gen-corpus", "Generate a deterministic synthetic corpus");
    of::CorpusSpec spec;
    std::string gen_out;
    cmd_gen->add_option("--files", spec.file_count, "Number of files")->required();
    cmd_gen->add_option("--records", spec.records_per_file, "Records per file")->required();
    cmd_gen->add_option("--seed", spec.seed, "Master seed")->required();
    cmd_gen->add_option("--out", gen_out, "Output directory (must be empty or absent)")
        ->required();
    cmd_gen->add_option("--dup-frac", spec.duplicate_fraction,
                        "Fraction of records reusing an earlier identifier");
    cmd_gen->add_flag("--crlf", spec.crlf, "CRLF line terminators");
    cmd_gen->add_option("--id-property", spec.id_property, "Identifier property name")
        ->envname("OFFSETFORGE_ID_PROPERTY");
    cmd_gen->add_option("--body-min", spec.record_body_size_range.first, "Min body bytes");
    cmd_gen->add_option("--body-max", spec.record_body_size_range.second, "Max body bytes");
    cmd_gen->add_option("--workers", common.workers, "Worker threads")
        ->envname("OFFSETFORGE_WORKERS");
    cmd_gen->callback([&] {
        of::CorpusManifest manifest = of::generate_corpus(spec, gen_out, common.workers);
        uint64_t bytes = 0;
        for (const auto& row : manifest.rows) bytes += row.byte_length;
        log_info( "generated %zu records (%llu duplicate ids) in %u files, %llu bytes -> %s\n",
                     manifest.rows.size(),
                     static_cast<unsigned long long>(manifest.duplicate_records), spec.file_count,
                     static_cast<unsigned long long>(bytes), gen_out.c_str());
    });

    // --- bench --------------------------------------------------------------
    auto* cmd_bench = app.add_subcommand("bench", "Baseline-vs-indexed benchmark harness");
    std::string bench_dir, bench_targets = "10,100,1000", bench_out, bench_curve;
    of::BenchConfig bench_config;
    cmd_bench->add_option("--dir", bench_dir, "Corpus directory (with manifest.csv)")->required();
    cmd_bench->add_option("--targets", bench_targets, "Comma-separated target counts");
    cmd_bench->add_option("--reps", bench_config.repetitions, "Repetitions per cell (>=3)");
    cmd_bench->add_option("--seed", bench_config.seed, "Sampling seed");
    cmd_bench->add_option("--out", bench_out, "Output report JSON")->required();
    cmd_bench->add_option("--curve-out", bench_curve, "Output runtime curve CSV");
    cmd_bench->add_option("--workers", bench_config.worker_count, "Worker threads")
        ->envname("OFFSETFORGE_WORKERS");
    cmd_bench->add_option("--id-property", bench_config.id_property, "Identifier property name")
        ->envname("OFFSETFORGE_ID_PROPERTY");
    cmd_bench->add_flag("--cold", bench_config.attempt_cold_cache,
                        "Best-effort page cache drop before each timed run");
    cmd_bench->callback([&] {
        bench_config.target_counts.clear();
        std::string token;
        for (char c : bench_targets + ",") {
            if (c == ',') {
                if (!token.empty()) bench_config.target_counts.push_back(std::stoull(token));
                token.clear();
            } else {
                token += c;
            }
        }
        of::BenchReport report = of::run_benchmark(bench_dir, bench_config);
        report.write_json(bench_out);
        if (!bench_curve.empty()) report.write_curve_csv(bench_curve);
        for (const auto& s : report.speedups) {
            log_info( "targets=%zu speedup=%.1fx bytes_ratio=%.5f\n", s.target_count,
                         s.wall_speedup, s.bytes_read_ratio);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const of::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_code;
}
