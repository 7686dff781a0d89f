#include "offsetforge/record_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

namespace offsetforge {

// ---------------------------------------------------------------------------
// Sources

FileSource::FileSource(const std::string& path) : path_(path) {
    fd_ = ::open(path.c_str(), O_RDONLY);
    if (fd_ < 0) throw UnreadableFileError(path, std::strerror(errno));
    off_t end = ::lseek(fd_, 0, SEEK_END);
    if (end < 0) {
        ::close(fd_);
        fd_ = -1;
        throw UnreadableFileError(path, "not seekable");
    }
    size_ = static_cast<uint64_t>(end);
}

FileSource::~FileSource() {
    if (fd_ >= 0) ::close(fd_);
}

size_t FileSource::read(char* dst, size_t max) {
    if (pos_ >= size_) return 0;
    ssize_t n = ::pread(fd_, dst, max, static_cast<off_t>(pos_));
    if (n < 0) throw UnreadableFileError(path_, std::strerror(errno));
    pos_ += static_cast<uint64_t>(n);
    fetched_ += static_cast<uint64_t>(n);
    return static_cast<size_t>(n);
}

void FileSource::seek_to(uint64_t offset) {
    pos_ = offset;
}

size_t MemorySource::read(char* dst, size_t max) {
    if (pos_ >= data_.size()) return 0;
    size_t n = std::min<uint64_t>(max, data_.size() - pos_);
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
    fetched_ += n;
    return n;
}

// ---------------------------------------------------------------------------
// LineReader

LineReader::LineReader(ByteSource& source, size_t capacity, size_t fetch_granularity)
    : source_(&source),
      capacity_(std::max<size_t>(capacity, 256)),
      granularity_(fetch_granularity == 0 ? capacity_
                                          : std::min(std::max<size_t>(fetch_granularity, 256), capacity_)) {
    buffer_.resize(capacity_);
}

bool LineReader::fill_more() {
    if (eof_) return false;
    if (cursor_ > 0 && window_len_ == buffer_.size()) {
        // Slide consumed bytes out to make room.
        std::memmove(buffer_.data(), buffer_.data() + cursor_, window_len_ - cursor_);
        window_start_ += cursor_;
        window_len_ -= cursor_;
        cursor_ = 0;
    }
    if (window_len_ == buffer_.size()) {
        // A single line longer than the window; grow transiently.
        buffer_.resize(buffer_.size() * 2);
    }
    size_t want = std::min(granularity_, buffer_.size() - window_len_);
    size_t got = source_->read(buffer_.data() + window_len_, want);
    if (got == 0) {
        eof_ = true;
        return false;
    }
    window_len_ += got;
    return true;
}

std::optional<std::string_view> LineReader::next_line() {
    while (true) {
        const char* base = buffer_.data() + cursor_;
        size_t avail = window_len_ - cursor_;
        const char* nl = static_cast<const char*>(std::memchr(base, '\n', avail));
        if (nl != nullptr) {
            size_t len = static_cast<size_t>(nl - base) + 1;
            std::string_view line(base, len);
            cursor_ += len;
            return line;
        }
        if (!fill_more()) {
            // fill_more may have slid or regrown the buffer; re-derive.
            const char* tail = buffer_.data() + cursor_;
            size_t remaining = window_len_ - cursor_;
            if (remaining == 0) return std::nullopt;
            // Final line without terminator.
            std::string_view line(tail, remaining);
            cursor_ += remaining;
            return line;
        }
    }
}

void LineReader::seek(uint64_t offset) {
    if (offset >= window_start_ && offset <= window_start_ + window_len_) {
        cursor_ = static_cast<size_t>(offset - window_start_);
        return;
    }
    source_->seek_to(offset);
    window_start_ = offset;
    window_len_ = 0;
    cursor_ = 0;
    eof_ = false;
    if (buffer_.size() > capacity_) {
        buffer_.resize(capacity_);
        buffer_.shrink_to_fit();
    }
}

// ---------------------------------------------------------------------------
// Line shape helpers

LineShape split_line(std::string_view line) {
    if (!line.empty() && line.back() == '\n') {
        size_t term = (line.size() >= 2 && line[line.size() - 2] == '\r') ? 2 : 1;
        return {line.substr(0, line.size() - term), line.substr(line.size() - term)};
    }
    return {line, {}};
}

// The delimiter is a line whose content, after stripping a trailing CR, is
// exactly "$$$$"; lines merely containing the sequence do not split records.
bool is_delimiter_line(std::string_view content) {
    if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
    return content == kRecordDelimiter;
}

bool is_blank_line(std::string_view content) {
    if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
    return content.empty();
}

// ---------------------------------------------------------------------------
// Record parsing

namespace {

// `> <NAME>` (and lenient variants such as `> <NAME> (ext)`): a line starting
// with '>' that carries a <...> bracket pair.
std::optional<std::string_view> property_header_name(std::string_view content) {
    if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
    if (content.empty() || content[0] != '>') return std::nullopt;
    size_t open = content.find('<');
    if (open == std::string_view::npos) return std::nullopt;
    size_t close = content.find('>', open + 1);
    if (close == std::string_view::npos) return std::nullopt;
    return content.substr(open + 1, close - open - 1);
}

void commit_property(MoleculeRecord& rec, std::string& name, std::string& value) {
    for (auto& [existing, existing_value] : rec.properties) {
        if (existing == name) {
            // Duplicate name: last occurrence wins, keep first position.
            existing_value = std::move(value);
            rec.duplicate_property_count += 1;
            name.clear();
            value.clear();
            return;
        }
    }
    rec.properties.emplace_back(std::move(name), std::move(value));
    name.clear();
    value.clear();
}

enum class ParseOutcome { Record, CleanEnd, Unterminated };

// Accumulates one record starting at the reader's current position. On
// Unterminated, `out.raw` holds the residual bytes for the caller to judge.
ParseOutcome parse_one_record(LineReader& reader, const std::string& source_name,
                              MoleculeRecord& out) {
    out.raw.clear();
    out.properties.clear();
    out.duplicate_property_count = 0;
    out.start_offset = reader.position();
    out.source_file = source_name;

    bool in_value = false;
    std::string prop_name;
    std::string prop_value;
    bool value_started = false;
    std::string pending_terminator;

    while (true) {
        auto line_opt = reader.next_line();
        if (!line_opt.has_value()) {
            if (out.raw.empty()) return ParseOutcome::CleanEnd;
            return ParseOutcome::Unterminated;
        }
        std::string_view line = *line_opt;
        out.raw.append(line.data(), line.size());
        LineShape shape = split_line(line);

        if (is_delimiter_line(shape.content)) {
            // The delimiter always terminates, even inside an open value
            // block; commit whatever was gathered.
            if (in_value) commit_property(out, prop_name, prop_value);
            return ParseOutcome::Record;
        }

        if (in_value) {
            if (is_blank_line(shape.content)) {
                commit_property(out, prop_name, prop_value);
                in_value = false;
            } else {
                // Multi-line values are joined with the file's own
                // terminators; the final terminator is excluded.
                if (value_started) prop_value.append(pending_terminator);
                prop_value.append(shape.content.data(), shape.content.size());
                value_started = true;
                pending_terminator.assign(shape.terminator);
            }
            continue;
        }

        if (auto name = property_header_name(shape.content)) {
            in_value = true;
            value_started = false;
            prop_name.assign(name->data(), name->size());
            prop_value.clear();
            pending_terminator.clear();
        }
        // Anything else is molblock/body content; raw already has it.
    }
}

bool all_whitespace(std::string_view bytes) {
    for (unsigned char c : bytes) {
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n' && c != '\v' && c != '\f') return false;
    }
    return true;
}

} // namespace

bool RecordScanner::next(MoleculeRecord& out) {
    uint64_t start = reader_->position();
    switch (parse_one_record(*reader_, source_name_, out)) {
    case ParseOutcome::Record:
        records_scanned_ += 1;
        return true;
    case ParseOutcome::CleanEnd:
        return false;
    case ParseOutcome::Unterminated:
        if (all_whitespace(out.raw)) return false;
        throw MalformedRecordError("stream ends mid-record: content after last delimiter",
                                   source_name_, start);
    }
    return false;
}

std::optional<std::string_view> get_property(const MoleculeRecord& record, std::string_view name) {
    for (const auto& [prop, value] : record.properties) {
        if (prop == name) return std::string_view(value);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// RecordFile

RecordFile::RecordFile(const std::string& path, std::string source_name,
                       size_t buffer_capacity, size_t fetch_granularity)
    : source_(path),
      reader_(source_, buffer_capacity, fetch_granularity),
      scanner_(reader_, source_name.empty() ? path : source_name),
      source_name_(source_name.empty() ? path : std::move(source_name)) {}

MoleculeRecord RecordFile::read_at(uint64_t offset) {
    if (offset >= source_.size()) {
        throw SeekOutOfRangeError(source_name_, offset, source_.size());
    }
    reader_.seek(offset);
    MoleculeRecord rec;
    if (parse_one_record(reader_, source_name_, rec) != ParseOutcome::Record) {
        throw MalformedRecordError("no delimiter before end of file", source_name_, offset);
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Convenience entry points

std::vector<MoleculeRecord> stream_records(const std::string& path, std::string source_name) {
    RecordFile file(path, std::move(source_name));
    std::vector<MoleculeRecord> records;
    MoleculeRecord rec;
    while (file.next(rec)) records.push_back(rec);
    return records;
}

MoleculeRecord read_record_at(const std::string& path, uint64_t offset, std::string source_name) {
    RecordFile file(path, std::move(source_name), kDefaultBufferCapacity, kSeekFetchGranularity);
    return file.read_at(offset);
}

} // namespace offsetforge
