#include "offsetforge/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "offsetforge/csv.hpp"
#include "offsetforge/errors.hpp"
#include "offsetforge/util.hpp"

namespace offsetforge {

namespace fs = std::filesystem;

namespace {

// 64 printable characters, deliberately excluding '$' and '>' so filler can
// never fake a delimiter or a property header.
constexpr char kFillerAlphabet[] =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .";

void append_filler_lines(std::string& out, std::mt19937_64& rng, size_t budget,
                         std::string_view nl) {
    size_t written = 0;
    while (written < budget) {
        size_t line_len = 32 + (rng() & 31);
        if (written + line_len + nl.size() > budget) {
            line_len = budget - written > nl.size() ? budget - written - nl.size() : 1;
        }
        size_t emitted = 0;
        while (emitted < line_len) {
            uint64_t bits = rng();
            for (int b = 0; b < 8 && emitted < line_len; ++b) {
                out += kFillerAlphabet[bits & 63];
                bits >>= 6;
                ++emitted;
            }
        }
        out += nl;
        written += line_len + nl.size();
    }
}

std::string make_identifier(std::mt19937_64& rng, unsigned min_len, unsigned max_len,
                            uint64_t serial) {
    const size_t target = bounded(rng, min_len, max_len);

    std::string id = "InChI=1S/C" + std::to_string(serial + 1);
    id += "H" + std::to_string(bounded(rng, 2, 60));
    if (rng() % 3 == 0) id += "N" + std::to_string(bounded(rng, 1, 9));
    if (rng() % 2 == 0) id += "O" + std::to_string(bounded(rng, 1, 12));
    const size_t stem_end = id.size(); // truncation below this would break uniqueness

    id += "/c";
    bool first = true;
    while (id.size() + 18 < target) {
        if (!first) id += "-";
        id += std::to_string(bounded(rng, 1, 29));
        if (rng() % 4 == 0) {
            id += "(" + std::to_string(bounded(rng, 1, 29)) + ")";
        }
        first = false;
    }

    // Hydrogen layer: comma-separated groups, the layer that puts commas
    // into real InChI strings.
    id += "/h" + std::to_string(bounded(rng, 1, 5)) + "-" + std::to_string(bounded(rng, 6, 9)) +
          "H";
    id += "," + std::to_string(bounded(rng, 10, 15)) + "H2";
    if (id.size() + 7 <= target) {
        id += "," + std::to_string(bounded(rng, 16, 25)) + "H3";
    }
    while (id.size() < target) {
        id += "/t" + std::to_string(bounded(rng, 1, 9));
    }
    if (id.size() > target && target > stem_end) {
        id.resize(target); // never cuts into the uniqueness-bearing stem
    }
    return id;
}

std::string record_bytes(std::mt19937_64& body_rng, const CorpusSpec& spec,
                         const std::string& identifier, uint64_t serial) {
    const std::string_view nl = spec.crlf ? "\r\n" : "\n";
    std::string r;
    r.reserve(spec.record_body_size_range.second + identifier.size() + 128);

    char title[32];
    std::snprintf(title, sizeof(title), "OF-%08llu", static_cast<unsigned long long>(serial));
    r += title;
    r += nl;
    r += "  OffsetForge";
    r += nl;
    r += nl;

    size_t budget = bounded(body_rng, spec.record_body_size_range.first,
                            spec.record_body_size_range.second);
    append_filler_lines(r, body_rng, budget, nl);

    r += "M  END";
    r += nl;
    r += "> <" + spec.id_property + ">";
    r += nl;
    r += identifier;
    r += nl;
    r += nl;
    r += "> <OF_SEQ>";
    r += nl;
    r += std::to_string(serial);
    r += nl;
    r += nl;
    r += "$$$$";
    r += nl;
    return r;
}

std::string corpus_filename(unsigned index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "corpus_%04u.sdf", index);
    return buf;
}

} // namespace

std::vector<std::string> CorpusManifest::unique_identifiers() const {
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.identifier);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CorpusManifest generate_corpus(const CorpusSpec& spec, const std::string& out_dir,
                               unsigned worker_count) {
    if (spec.identifier_length_range.first > spec.identifier_length_range.second ||
        spec.record_body_size_range.first > spec.record_body_size_range.second) {
        throw DomainError("corpus spec ranges must be non-empty");
    }
    if (spec.duplicate_fraction < 0.0 || spec.duplicate_fraction > 1.0) {
        throw DomainError("duplicate_fraction must be in [0,1]");
    }

    if (fs::exists(out_dir)) {
        if (!fs::is_directory(out_dir) || !fs::is_empty(out_dir)) {
            throw OutputDirNotEmptyError(out_dir);
        }
    } else {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw WriteFailureError(out_dir, ec.message());
    }

    const uint64_t total = uint64_t(spec.file_count) * spec.records_per_file;
    CorpusManifest manifest;
    manifest.rows.resize(total);

    // Identifier pass is sequential so the duplicate pool spans the whole
    // corpus; file bodies are then generated independently per file.
    std::vector<std::string> identifiers(total);
    {
        std::mt19937_64 id_rng(derive_seed(spec.seed, 0));
        std::vector<uint64_t> fresh;
        fresh.reserve(total);
        uint64_t fresh_serial = 0;
        for (uint64_t r = 0; r < total; ++r) {
            bool reuse = !fresh.empty() && unit_real(id_rng) < spec.duplicate_fraction;
            if (reuse) {
                identifiers[r] = identifiers[fresh[bounded(id_rng, 0, fresh.size() - 1)]];
                manifest.duplicate_records += 1;
            } else {
                identifiers[r] =
                    make_identifier(id_rng, spec.identifier_length_range.first,
                                    spec.identifier_length_range.second, fresh_serial++);
                fresh.push_back(r);
            }
        }
    }

    parallel_for(spec.file_count, worker_count, [&](size_t f) {
        std::mt19937_64 body_rng(derive_seed(spec.seed, 1000 + f));
        const std::string name = corpus_filename(static_cast<unsigned>(f));
        std::string content;
        uint64_t offset = 0;
        for (unsigned r = 0; r < spec.records_per_file; ++r) {
            uint64_t serial = uint64_t(f) * spec.records_per_file + r;
            std::string rec = record_bytes(body_rng, spec, identifiers[serial], serial);
            ManifestRow& row = manifest.rows[serial];
            row.identifier = identifiers[serial];
            row.filename = name;
            row.byte_offset = offset;
            row.byte_length = rec.size();
            offset += rec.size();
            content += rec;
        }
        std::ofstream out(out_dir + "/" + name, std::ios::binary | std::ios::trunc);
        if (!out) throw WriteFailureError(out_dir + "/" + name, "cannot open for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw WriteFailureError(out_dir + "/" + name);
    });

    write_manifest_csv(manifest, out_dir + "/" + kManifestFilename);
    return manifest;
}

void write_manifest_csv(const CorpusManifest& manifest, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteFailureError(path, "cannot open for writing");
    std::string buf = "identifier,filename,byte_offset,byte_length\n";
    for (const auto& row : manifest.rows) {
        buf += csv::escape(row.identifier);
        buf += ',';
        buf += row.filename;
        buf += ',';
        buf += std::to_string(row.byte_offset);
        buf += ',';
        buf += std::to_string(row.byte_length);
        buf += '\n';
        if (buf.size() > (1 << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) throw WriteFailureError(path);
}

CorpusManifest load_manifest_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusMissingError(path + " (no manifest)");

    CorpusManifest manifest;
    std::string line;
    size_t row_no = 0;
    std::vector<std::string> fields;
    std::string err;
    bool saw_header = false;

    // Duplicate tally is reconstructed from the rows themselves.
    std::set<std::string> seen;

    while (std::getline(in, line)) {
        row_no += 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "identifier,filename,byte_offset,byte_length") {
                throw FormatError("missing manifest header", row_no);
            }
            saw_header = true;
            continue;
        }
        if (!csv::split_row(line, fields, err)) throw FormatError(err, row_no);
        if (fields.size() != 4) {
            throw FormatError("expected 4 columns, got " + std::to_string(fields.size()), row_no);
        }
        ManifestRow row;
        row.identifier = std::move(fields[0]);
        row.filename = std::move(fields[1]);
        auto parse_u64 = [&](const std::string& s) {
            uint64_t v = 0;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || p != s.data() + s.size()) {
                throw FormatError("not a non-negative integer: '" + s + "'", row_no);
            }
            return v;
        };
        row.byte_offset = parse_u64(fields[2]);
        row.byte_length = parse_u64(fields[3]);
        if (!seen.insert(row.identifier).second) manifest.duplicate_records += 1;
        manifest.rows.push_back(std::move(row));
    }
    if (!saw_header) throw FormatError("missing manifest header", row_no + 1);
    return manifest;
}

} // namespace offsetforge
