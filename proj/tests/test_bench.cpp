#include <doctest.h>

#include <json.hpp>

#include "offsetforge/bench.hpp"
#include "offsetforge/util.hpp"
#include "test_support.hpp"

using namespace offsetforge;
using namespace testsupport;

namespace {

void make_corpus(const TempDir& dir, unsigned files, unsigned records, uint64_t seed) {
    CorpusSpec spec;
    spec.file_count = files;
    spec.records_per_file = records;
    spec.seed = seed;
    spec.record_body_size_range = {80, 200};
    generate_corpus(spec, dir.str());
}

} // namespace

TEST_SUITE("bench") {
    TEST_CASE("report structure: runs, summaries, speedups, reextraction") {
        TempDir dir("bn");
        make_corpus(dir, 4, 50, 3);
        BenchConfig config;
        config.target_counts = {5, 20};
        config.repetitions = 3;
        config.seed = 17;
        BenchReport report = run_benchmark(dir.str(), config);

        CHECK(report.corpus_records == 200);
        CHECK(report.index_entries == 200);
        CHECK(report.runs.size() == 2 * 2 * 3); // methods x counts x reps
        CHECK(report.summary.size() == 4);
        CHECK(report.speedups.size() == 2);
        CHECK(report.reextraction.target_count == 20);
        CHECK(report.reextraction.index_rebuilds == 0);
        // Every baseline run found all sampled targets.
        for (const auto& run : report.runs) {
            CHECK(run.found == run.target_count);
            CHECK(run.missing == 0);
        }
        // The index CSV landed next to the corpus.
        CHECK(path_exists(dir.file("offsetforge-index.csv")));
    }

    TEST_CASE("non-timing fields are reproducible from the seed") {
        TempDir dir("bn");
        make_corpus(dir, 3, 40, 5);
        BenchConfig config;
        config.target_counts = {10};
        config.repetitions = 3;
        config.seed = 23;
        BenchReport a = run_benchmark(dir.str(), config);
        BenchReport b = run_benchmark(dir.str(), config);
        REQUIRE(a.runs.size() == b.runs.size());
        for (size_t i = 0; i < a.runs.size(); ++i) {
            CHECK(a.runs[i].method == b.runs[i].method);
            CHECK(a.runs[i].bytes_read == b.runs[i].bytes_read);
            CHECK(a.runs[i].files_opened == b.runs[i].files_opened);
            CHECK(a.runs[i].seeks == b.runs[i].seeks);
            CHECK(a.runs[i].records_processed == b.runs[i].records_processed);
            CHECK(a.runs[i].found == b.runs[i].found);
        }
    }

    TEST_CASE("baseline bytes_read is non-decreasing in target count (nested samples)") {
        TempDir dir("bn");
        make_corpus(dir, 4, 80, 7);
        BenchConfig config;
        config.target_counts = {1, 10, 40};
        config.repetitions = 3;
        config.seed = 31;
        BenchReport report = run_benchmark(dir.str(), config);
        double prev = -1;
        for (const auto& s : report.summary) {
            if (s.method != "baseline") continue;
            CHECK(s.mean_bytes >= prev);
            prev = s.mean_bytes;
        }
    }

    TEST_CASE("indexed bytes_read scales with found payload, not corpus size") {
        TempDir dir("bn");
        CorpusSpec spec;
        spec.file_count = 6;
        spec.records_per_file = 300;
        spec.seed = 9;
        spec.record_body_size_range = {200, 500};
        generate_corpus(spec, dir.str());

        BenchConfig config;
        config.target_counts = {10};
        config.repetitions = 3;
        config.seed = 41;
        BenchReport report = run_benchmark(dir.str(), config);
        uint64_t corpus_bytes = report.corpus_bytes;
        for (const auto& run : report.runs) {
            if (run.method != "indexed") continue;
            // At most one fetch-granularity slab per seek.
            CHECK(run.bytes_read <= run.seeks * offsetforge::kSeekFetchGranularity +
                                        corpus_bytes / 100);
            CHECK(run.bytes_read < corpus_bytes / 4);
            CHECK(run.records_processed == 10);
        }
    }

    TEST_CASE("zero targets do near-zero work") {
        TempDir dir("bn");
        make_corpus(dir, 2, 20, 11);
        BenchConfig config;
        config.target_counts = {0};
        config.repetitions = 3;
        config.seed = 43;
        BenchReport report = run_benchmark(dir.str(), config);
        for (const auto& run : report.runs) {
            if (run.method == "indexed") {
                CHECK(run.bytes_read == 0);
                CHECK(run.seeks == 0);
            }
            CHECK(run.found == 0);
        }
    }

    TEST_CASE("json and curve outputs parse") {
        TempDir dir("bn");
        make_corpus(dir, 2, 30, 13);
        BenchConfig config;
        config.target_counts = {5};
        config.repetitions = 3;
        config.seed = 47;
        BenchReport report = run_benchmark(dir.str(), config);

        std::string json_path = dir.file("report.json");
        report.write_json(json_path);
        auto parsed = nlohmann::json::parse(read_file(json_path));
        CHECK(parsed["repetitions"] == 3);
        CHECK(parsed["runs"].size() == 6);
        CHECK(parsed["reextraction"]["index_rebuilds"] == 0);

        std::string curve_path = dir.file("curve.csv");
        report.write_curve_csv(curve_path);
        std::string curve = read_file(curve_path);
        CHECK(curve.rfind("target_count,baseline_seconds,indexed_seconds,", 0) == 0);
    }

    TEST_CASE("errors: missing corpus, missing manifest, bad repetitions") {
        TempDir dir("bn");
        BenchConfig config;
        config.target_counts = {1};
        CHECK_THROWS_AS(run_benchmark(dir.file("nope"), config), CorpusMissingError);

        // Files exist but no manifest.
        write_file(dir.file("x.sdf"), "t\n$$$$\n");
        CHECK_THROWS_AS(run_benchmark(dir.str(), config), CorpusMissingError);

        config.repetitions = 2;
        CHECK_THROWS_AS(run_benchmark(dir.str(), config), DomainError);
    }

    TEST_CASE("reuse_index loads instead of rebuilding") {
        TempDir dir("bn");
        make_corpus(dir, 2, 20, 15);
        BenchConfig config;
        config.target_counts = {5};
        config.repetitions = 3;
        config.seed = 53;
        BenchReport first = run_benchmark(dir.str(), config);
        CHECK_FALSE(first.index_reused);

        config.reuse_index = true;
        BenchReport second = run_benchmark(dir.str(), config);
        CHECK(second.index_reused);
        CHECK(second.index_build_seconds == 0.0);
        CHECK(second.index_entries == first.index_entries);

        config.index_path = dir.file("absent.csv");
        CHECK_THROWS_AS(run_benchmark(dir.str(), config), IndexMissingError);
    }
}
