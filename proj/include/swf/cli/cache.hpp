#pragma once

// Content-addressed result cache. Entries are whole result documents keyed by
// the SHA-256 of a canonical request; anything unreadable is evicted.

#include "swf/cli/render.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace swf::cli {

/// --cache-dir, else $SWFCALC_CACHE, else $XDG_CACHE_HOME/swfcalc, else ~/.cache/swfcalc.
std::filesystem::path default_cache_dir();

std::string sha256_hex(const std::string& bytes);

class Cache {
public:
    /// An empty dir disables the cache. Unwritable directories disable it
    /// with one warning on `warn`.
    Cache(std::optional<std::filesystem::path> dir, std::string version, std::ostream& warn);

    bool enabled() const noexcept { return dir_.has_value(); }
    const std::optional<std::filesystem::path>& dir() const noexcept { return dir_; }

    std::optional<Result> lookup(const std::string& key);
    void store(const std::string& key, const Result& value);

    struct Stats {
        std::size_t entries = 0;
        std::uintmax_t bytes = 0;
    };
    Stats stats() const;
    std::size_t clear();

    std::filesystem::path entry_path(const std::string& key) const;

private:
    void disable(const std::string& why);

    std::optional<std::filesystem::path> dir_;
    std::string version_;
    std::ostream& warn_;
};

} // namespace swf::cli
