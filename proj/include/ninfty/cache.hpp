#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ninfty {

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

/// Persistent content-addressed cache. Keys are content hashes, so stale
/// invalidation is unnecessary; a format-version bump invalidates all
/// entries. Writes are atomic (write to temp file, then rename), which
/// supports concurrent readers and a single writer per key.
class Cache {
public:
    static Cache& instance();

    /// Empty dir disables the cache.
    void set_dir(std::string dir);
    const std::string& dir() const { return dir_; }
    bool enabled() const { return !dir_.empty(); }

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& payload) const;

private:
    std::string dir_;
    static constexpr int kVersion = 1;
};

/// --cache-dir flag value, else NINFTY_CACHE, else the platform cache
/// home (XDG_CACHE_HOME or ~/.cache) under "ninfty".
std::string default_cache_dir(const std::string& flag_value);

}  // namespace ninfty
