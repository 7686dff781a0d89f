#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "offsetforge/errors.hpp"

namespace offsetforge {

inline constexpr std::string_view kRecordDelimiter = "$$$$";
inline constexpr size_t kDefaultBufferCapacity = 64 * 1024;
// Refill granularity used after a seek; keeps per-seek read slack small so
// targeted extraction fetches little more than the record itself.
inline constexpr size_t kSeekFetchGranularity = 4 * 1024;

struct RecordLocation {
    std::string source_file;
    uint64_t byte_offset = 0;

    friend bool operator==(const RecordLocation&, const RecordLocation&) = default;
    friend auto operator<=>(const RecordLocation&, const RecordLocation&) = default;
};

/// One delimiter-terminated record, byte-exact as stored on disk. `raw` runs
/// from the record's first byte through the `$$$$` line and its terminator;
/// concatenating the raw blocks of a file reproduces the file (minus trailing
/// whitespace after the last delimiter).
struct MoleculeRecord {
    std::string raw;
    // Property blocks in file order. Duplicate names keep their first
    // position but the last value wins; duplicates are tallied below.
    std::vector<std::pair<std::string, std::string>> properties;
    uint64_t start_offset = 0;
    std::string source_file;
    uint32_t duplicate_property_count = 0;

    bool same_bytes(const MoleculeRecord& other) const {
        return raw == other.raw && start_offset == other.start_offset &&
               source_file == other.source_file;
    }
};

std::optional<std::string_view> get_property(const MoleculeRecord& record, std::string_view name);

// Pull interface so parsing runs over plain files, memory, or a sequential
// decompressing reader. Only file-backed sources support seeking.
class ByteSource {
public:
    virtual ~ByteSource() = default;
    virtual size_t read(char* dst, size_t max) = 0; // 0 means EOF
    virtual bool seekable() const { return false; }
    virtual void seek_to(uint64_t) { throw Error("byte source is not seekable"); }
    virtual uint64_t size() const { throw Error("byte source has no known size"); }
    // Bytes actually fetched from the underlying medium.
    virtual uint64_t bytes_fetched() const { return 0; }
};

class FileSource final : public ByteSource {
public:
    explicit FileSource(const std::string& path);
    ~FileSource() override;

    FileSource(const FileSource&) = delete;
    FileSource& operator=(const FileSource&) = delete;

    size_t read(char* dst, size_t max) override;
    bool seekable() const override { return true; }
    void seek_to(uint64_t offset) override;
    uint64_t size() const override { return size_; }
    uint64_t bytes_fetched() const override { return fetched_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    int fd_ = -1;
    uint64_t size_ = 0;
    uint64_t pos_ = 0;
    uint64_t fetched_ = 0;
};

class MemorySource final : public ByteSource {
public:
    explicit MemorySource(std::string data) : data_(std::move(data)) {}

    size_t read(char* dst, size_t max) override;
    bool seekable() const override { return true; }
    void seek_to(uint64_t offset) override { pos_ = offset; }
    uint64_t size() const override { return data_.size(); }
    uint64_t bytes_fetched() const override { return fetched_; }

private:
    std::string data_;
    uint64_t pos_ = 0;
    uint64_t fetched_ = 0;
};

/// Buffered line iteration over a ByteSource with byte-exact offsets. Lines
/// are returned including their terminator; the view stays valid until the
/// next call. seek() reuses the buffered window when the target lies inside
/// it, which turns sorted near-sequential seeks into memory reads.
class LineReader {
public:
    explicit LineReader(ByteSource& source,
                        size_t capacity = kDefaultBufferCapacity,
                        size_t fetch_granularity = 0); // 0: fetch full capacity

    std::optional<std::string_view> next_line();
    void seek(uint64_t offset);
    uint64_t position() const { return window_start_ + cursor_; }
    bool seekable() const { return source_->seekable(); }
    uint64_t source_size() const { return source_->size(); }
    uint64_t bytes_fetched() const { return source_->bytes_fetched(); }

private:
    bool fill_more();

    ByteSource* source_;
    std::vector<char> buffer_;
    size_t capacity_;
    size_t granularity_;
    uint64_t window_start_ = 0; // file offset of buffer_[0]
    size_t window_len_ = 0;
    size_t cursor_ = 0; // next unconsumed byte within the window
    bool eof_ = false;
};

// Line helpers shared by the parser and tests.
struct LineShape {
    std::string_view content;    // without terminator
    std::string_view terminator; // "\n", "\r\n", or empty at EOF
};
LineShape split_line(std::string_view line_with_terminator);
bool is_delimiter_line(std::string_view content);
bool is_blank_line(std::string_view content);

/// Streaming parser for delimiter-terminated record files. Yields records in
/// file order with correct start offsets; whitespace-only bytes after the
/// last delimiter are ignored; anything else raises MalformedRecordError at
/// the offset where the orphan content begins.
class RecordScanner {
public:
    RecordScanner(LineReader& reader, std::string source_name)
        : reader_(&reader), source_name_(std::move(source_name)) {}

    // Reuses `out`'s buffers; returns false at clean end of stream.
    bool next(MoleculeRecord& out);

    uint64_t records_scanned() const { return records_scanned_; }

private:
    LineReader* reader_;
    std::string source_name_;
    uint64_t records_scanned_ = 0;
};

/// Convenience owner of the FileSource + LineReader + RecordScanner stack for
/// one file on disk.
class RecordFile {
public:
    explicit RecordFile(const std::string& path,
                        std::string source_name = "",
                        size_t buffer_capacity = kDefaultBufferCapacity,
                        size_t fetch_granularity = 0);

    bool next(MoleculeRecord& out) { return scanner_.next(out); }
    MoleculeRecord read_at(uint64_t offset);

    uint64_t bytes_fetched() const { return source_.bytes_fetched(); }
    uint64_t file_size() const { return source_.size(); }
    uint64_t records_scanned() const { return scanner_.records_scanned(); }

private:
    FileSource source_;
    LineReader reader_;
    RecordScanner scanner_;
    std::string source_name_;
};

/// Reads all records of a file into memory. Test and small-fixture helper;
/// production paths stream.
std::vector<MoleculeRecord> stream_records(const std::string& path, std::string source_name = "");

/// Seeks to `offset` (which must be the first byte of a record) and reads
/// exactly that record. Raises SeekOutOfRangeError when offset >= file size
/// and MalformedRecordError when no delimiter follows before EOF.
MoleculeRecord read_record_at(const std::string& path, uint64_t offset, std::string source_name = "");

} // namespace offsetforge
