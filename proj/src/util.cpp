#include "offsetforge/util.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "offsetforge/errors.hpp"

namespace offsetforge {

namespace fs = std::filesystem;

std::vector<std::string> list_files(const std::string& dir, const std::string& pattern) {
    std::vector<std::string> out;
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw UnreadableFileError(dir, ec.message());
    for (const auto& entry : it) {
        if (!entry.is_regular_file(ec) && !entry.is_symlink(ec)) continue;
        std::string name = entry.path().filename().string();
        if (::fnmatch(pattern.c_str(), name.c_str(), 0) == 0) out.push_back(name);
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t file_size_bytes(const std::string& path) {
    std::error_code ec;
    auto size = fs::file_size(path, ec);
    if (ec) throw UnreadableFileError(path, ec.message());
    return static_cast<uint64_t>(size);
}

bool path_exists(const std::string& path) {
    std::error_code ec;
    return fs::exists(path, ec);
}

void parallel_for(size_t count, unsigned workers, const std::function<void(size_t)>& fn) {
    if (workers == 0) workers = 1;
    size_t n_threads = std::min<size_t>(workers, count);
    if (n_threads <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto body = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                stop.store(true, std::memory_order_relaxed);
                break;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace offsetforge
