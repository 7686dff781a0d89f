#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace offsetforge {

// Base class for every operational failure raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A record stream ended mid-record, or non-whitespace bytes trail the last
// delimiter. Carries the offset where the orphan content begins.
class MalformedRecordError : public Error {
public:
    MalformedRecordError(const std::string& what, std::string file, uint64_t offset)
        : Error(what + " (file " + file + ", offset " + std::to_string(offset) + ")"),
          file_(std::move(file)),
          offset_(offset) {}

    const std::string& file() const { return file_; }
    uint64_t offset() const { return offset_; }

private:
    std::string file_;
    uint64_t offset_;
};

class SeekOutOfRangeError : public Error {
public:
    SeekOutOfRangeError(std::string file, uint64_t offset, uint64_t file_size)
        : Error("seek offset " + std::to_string(offset) + " out of range for " + file +
                " (size " + std::to_string(file_size) + ")"),
          file_(std::move(file)),
          offset_(offset),
          file_size_(file_size) {}

    const std::string& file() const { return file_; }
    uint64_t offset() const { return offset_; }
    uint64_t file_size() const { return file_size_; }

private:
    std::string file_;
    uint64_t offset_;
    uint64_t file_size_;
};

class UnreadableFileError : public Error {
public:
    explicit UnreadableFileError(std::string path, const std::string& detail = "")
        : Error("unreadable file: " + path + (detail.empty() ? "" : " (" + detail + ")")),
          path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class WriteFailureError : public Error {
public:
    explicit WriteFailureError(const std::string& path, const std::string& detail = "")
        : Error("write failure: " + path + (detail.empty() ? "" : " (" + detail + ")")) {}
};

// CSV/manifest parse failure; row is 1-based and counts every line in the
// file, metadata and header included.
class FormatError : public Error {
public:
    FormatError(const std::string& what, size_t row)
        : Error(what + " (row " + std::to_string(row) + ")"), row_(row) {}

    size_t row() const { return row_; }

private:
    size_t row_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// crossover_targets: the indexed path dominates (or never wins) for all N.
class NoCrossoverError : public Error {
public:
    explicit NoCrossoverError(const std::string& what) : Error(what) {}
};

class OutputDirNotEmptyError : public Error {
public:
    explicit OutputDirNotEmptyError(const std::string& dir)
        : Error("output directory not empty: " + dir) {}
};

class CorpusMissingError : public Error {
public:
    explicit CorpusMissingError(const std::string& dir) : Error("corpus missing: " + dir) {}
};

class IndexMissingError : public Error {
public:
    explicit IndexMissingError(const std::string& path) : Error("index missing: " + path) {}
};

// Raised by strict-fingerprint extraction when the corpus drifted since
// indexing; names the first drifted file.
class FingerprintMismatchError : public Error {
public:
    FingerprintMismatchError(std::string file, const std::string& detail)
        : Error("fingerprint mismatch: " + file + " (" + detail + ")"), file_(std::move(file)) {}

    const std::string& file() const { return file_; }

private:
    std::string file_;
};

} // namespace offsetforge
