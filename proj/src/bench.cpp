#include "offsetforge/bench.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "offsetforge/errors.hpp"
#include "offsetforge/util.hpp"

namespace offsetforge {

namespace {

// Seeded partial Fisher-Yates over the unique identifier pool. Samples for
// the different target counts are prefixes of one shuffled pool, so larger
// target sets contain the smaller ones.
std::vector<std::string> shuffled_pool(const CorpusManifest& manifest, uint64_t seed,
                                       uint64_t stream) {
    std::vector<std::string> pool = manifest.unique_identifiers();
    std::mt19937_64 rng(derive_seed(seed, stream));
    for (size_t i = pool.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(bounded(rng, 0, i - 1));
        std::swap(pool[i - 1], pool[j]);
    }
    return pool;
}

bool drop_page_cache(const std::string& dir, const std::string& pattern) {
    bool ok = true;
    for (const auto& name : list_files(dir, pattern)) {
        std::string path = dir + "/" + name;
        int fd = ::open(path.c_str(), O_RDONLY);
        if (fd < 0) {
            ok = false;
            continue;
        }
        if (::posix_fadvise(fd, 0, 0, POSIX_FADV_DONTNEED) != 0) ok = false;
        ::close(fd);
    }
    return ok;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

BenchRun to_run(const char* method, size_t target_count, unsigned rep,
                const ExtractionReport& report) {
    BenchRun run;
    run.method = method;
    run.target_count = target_count;
    run.rep = rep;
    run.wall_seconds = report.stats.wall_seconds;
    run.bytes_read = report.stats.bytes_read;
    run.files_opened = report.stats.files_opened;
    run.seeks = report.stats.seeks_performed;
    run.records_processed = report.stats.records_parsed;
    run.throughput_rps = report.stats.wall_seconds > 0
                             ? static_cast<double>(report.stats.records_parsed) /
                                   report.stats.wall_seconds
                             : 0;
    run.found = report.found.size();
    run.missing = report.missing.size();
    return run;
}

} // namespace

BenchReport run_benchmark(const std::string& corpus_dir, const BenchConfig& config) {
    if (config.repetitions < 3) {
        throw DomainError("repetitions must be >= 3 (mean/stddev protocol)");
    }
    if (!path_exists(corpus_dir)) throw CorpusMissingError(corpus_dir);
    if (list_files(corpus_dir, config.pattern).empty()) {
        throw CorpusMissingError(corpus_dir + " (no files matching " + config.pattern + ")");
    }

    CorpusManifest manifest = load_manifest_csv(corpus_dir + "/" + kManifestFilename);

    BenchReport report;
    report.corpus_dir = corpus_dir;
    report.seed = config.seed;
    report.repetitions = config.repetitions;
    report.corpus_records = manifest.rows.size();
    for (const auto& row : manifest.rows) report.corpus_bytes += row.byte_length;
    report.cold_cache_attempted = config.attempt_cold_cache;

    // Index phase, timed separately from extraction (one-time cost row).
    std::string index_path = config.index_path.empty()
                                 ? corpus_dir + "/offsetforge-index.csv"
                                 : config.index_path;
    PersistentIndex index;
    if (config.reuse_index) {
        if (!path_exists(index_path)) throw IndexMissingError(index_path);
        index = load_index_csv(index_path);
        report.index_reused = true;
        report.index_csv_bytes = file_size_bytes(index_path);
    } else {
        IndexBuildOptions opts;
        opts.pattern = config.pattern;
        IndexBuildResult built = build_index(corpus_dir, config.worker_count,
                                             IdentifierScheme::full(), config.id_property, opts);
        report.index_build_seconds = built.stats.wall_seconds;
        report.index_csv_bytes = write_index_csv(built.index, index_path);
        index = std::move(built.index);
    }
    report.index_entries = index.entry_count();

    const std::vector<std::string> pool = shuffled_pool(manifest, config.seed, 0x7A55);

    ScanOptions scan_opts;
    scan_opts.pattern = config.pattern;
    scan_opts.buffer_size = config.buffer_size;
    ExtractOptions extract_opts;
    extract_opts.worker_count = config.worker_count;
    extract_opts.buffer_size = config.buffer_size;

    bool cold_ok = true;
    auto maybe_drop_cache = [&] {
        if (config.attempt_cold_cache) {
            cold_ok = drop_page_cache(corpus_dir, config.pattern) && cold_ok;
        }
    };

    for (size_t target_count : config.target_counts) {
        size_t k = std::min(target_count, pool.size());
        std::vector<std::string> targets(pool.begin(), pool.begin() + k);

        std::vector<double> baseline_walls, indexed_walls;
        std::vector<double> baseline_bytes, indexed_bytes;

        for (unsigned rep = 0; rep < config.repetitions; ++rep) {
            maybe_drop_cache();
            ExtractionReport r = baseline_scan(corpus_dir, targets, config.id_property, scan_opts);
            report.runs.push_back(to_run("baseline", target_count, rep, r));
            baseline_walls.push_back(r.stats.wall_seconds);
            baseline_bytes.push_back(static_cast<double>(r.stats.bytes_read));
        }
        for (unsigned rep = 0; rep < config.repetitions; ++rep) {
            maybe_drop_cache();
            ExtractionReport r = indexed_extract(index, corpus_dir, targets, extract_opts);
            report.runs.push_back(to_run("indexed", target_count, rep, r));
            indexed_walls.push_back(r.stats.wall_seconds);
            indexed_bytes.push_back(static_cast<double>(r.stats.bytes_read));
        }

        auto summarize = [&](const char* method, const std::vector<double>& walls,
                             const std::vector<double>& bytes) {
            BenchSummary s;
            s.method = method;
            s.target_count = target_count;
            double n = static_cast<double>(walls.size());
            for (double w : walls) s.mean_wall += w;
            s.mean_wall /= n;
            for (double w : walls) s.stddev_wall += (w - s.mean_wall) * (w - s.mean_wall);
            s.stddev_wall = n > 1 ? std::sqrt(s.stddev_wall / (n - 1)) : 0;
            for (double b : bytes) s.mean_bytes += b;
            s.mean_bytes /= n;
            report.summary.push_back(s);
            return s;
        };
        BenchSummary sb = summarize("baseline", baseline_walls, baseline_bytes);
        BenchSummary si = summarize("indexed", indexed_walls, indexed_bytes);

        SpeedupRow row;
        row.target_count = target_count;
        row.wall_speedup = si.mean_wall > 0 ? sb.mean_wall / si.mean_wall : 0;
        row.bytes_read_ratio = sb.mean_bytes > 0 ? si.mean_bytes / sb.mean_bytes : 0;
        report.speedups.push_back(row);
    }

    // Re-extraction behavior: a fresh seeded target set against the already
    // persisted index, no rebuild work.
    if (!config.target_counts.empty()) {
        size_t target_count = *std::max_element(config.target_counts.begin(),
                                                config.target_counts.end());
        size_t k = std::min(target_count, pool.size());
        std::vector<std::string> first_targets(pool.begin(), pool.begin() + k);
        std::vector<std::string> second_pool = shuffled_pool(manifest, config.seed, 0xBEEF);
        std::vector<std::string> second_targets(second_pool.begin(), second_pool.begin() + k);

        std::vector<double> first_walls, second_walls;
        ReextractionResult& re = report.reextraction;
        re.target_count = k;
        for (unsigned rep = 0; rep < config.repetitions; ++rep) {
            maybe_drop_cache();
            ExtractionReport r1 = indexed_extract(index, corpus_dir, first_targets, extract_opts);
            first_walls.push_back(r1.stats.wall_seconds);
        }
        for (unsigned rep = 0; rep < config.repetitions; ++rep) {
            maybe_drop_cache();
            ExtractionReport r2 = indexed_extract(index, corpus_dir, second_targets, extract_opts);
            second_walls.push_back(r2.stats.wall_seconds);
            re.second_records_parsed = r2.stats.records_parsed;
            re.second_bytes_read = r2.stats.bytes_read;
        }
        re.first_wall_median = median(first_walls);
        re.second_wall_median = median(second_walls);
        re.ratio = re.first_wall_median > 0 ? re.second_wall_median / re.first_wall_median : 0;
        re.index_rebuilds = 0; // extraction never re-enters the build phase
    }

    report.cold_cache_effective = config.attempt_cold_cache && cold_ok;
    return report;
}

// ---------------------------------------------------------------------------
// Serialization

std::string BenchReport::to_json() const {
    nlohmann::json j;
    j["corpus_dir"] = corpus_dir;
    j["seed"] = seed;
    j["repetitions"] = repetitions;
    j["corpus_bytes"] = corpus_bytes;
    j["corpus_records"] = corpus_records;
    j["index"] = {{"build_seconds", index_build_seconds},
                  {"entries", index_entries},
                  {"csv_bytes", index_csv_bytes},
                  {"reused", index_reused}};
    j["cold_cache"] = {{"attempted", cold_cache_attempted}, {"effective", cold_cache_effective}};

    j["runs"] = nlohmann::json::array();
    for (const auto& r : runs) {
        j["runs"].push_back({{"method", r.method},
                             {"target_count", r.target_count},
                             {"rep", r.rep},
                             {"wall_seconds", r.wall_seconds},
                             {"bytes_read", r.bytes_read},
                             {"files_opened", r.files_opened},
                             {"seeks", r.seeks},
                             {"records_processed", r.records_processed},
                             {"throughput_rps", r.throughput_rps},
                             {"found", r.found},
                             {"missing", r.missing}});
    }
    j["summary"] = nlohmann::json::array();
    for (const auto& s : summary) {
        j["summary"].push_back({{"method", s.method},
                                {"target_count", s.target_count},
                                {"mean_wall_seconds", s.mean_wall},
                                {"stddev_wall_seconds", s.stddev_wall},
                                {"mean_bytes_read", s.mean_bytes}});
    }
    j["speedups"] = nlohmann::json::array();
    for (const auto& s : speedups) {
        j["speedups"].push_back({{"target_count", s.target_count},
                                 {"wall_speedup", s.wall_speedup},
                                 {"bytes_read_ratio", s.bytes_read_ratio}});
    }
    j["reextraction"] = {{"target_count", reextraction.target_count},
                         {"first_wall_median", reextraction.first_wall_median},
                         {"second_wall_median", reextraction.second_wall_median},
                         {"ratio", reextraction.ratio},
                         {"index_rebuilds", reextraction.index_rebuilds},
                         {"second_records_parsed", reextraction.second_records_parsed},
                         {"second_bytes_read", reextraction.second_bytes_read}};
    return j.dump(2);
}

void BenchReport::write_json(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw WriteFailureError(path, "cannot open for writing");
    out << to_json() << '\n';
    if (!out) throw WriteFailureError(path);
}

void BenchReport::write_curve_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw WriteFailureError(path, "cannot open for writing");
    out << "target_count,baseline_seconds,indexed_seconds,index_build_seconds,indexed_total_seconds\n";
    for (const auto& s : speedups) {
        double baseline = 0, indexed = 0;
        for (const auto& row : summary) {
            if (row.target_count != s.target_count) continue;
            if (row.method == "baseline") baseline = row.mean_wall;
            if (row.method == "indexed") indexed = row.mean_wall;
        }
        out << s.target_count << ',' << baseline << ',' << indexed << ',' << index_build_seconds
            << ',' << (indexed + index_build_seconds) << '\n';
    }
    if (!out) throw WriteFailureError(path);
}

} // namespace offsetforge
