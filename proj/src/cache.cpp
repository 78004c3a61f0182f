#include "ninfty/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace ninfty {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

Cache& Cache::instance() {
    static Cache c;
    return c;
}

void Cache::set_dir(std::string dir) { dir_ = std::move(dir); }

static std::string entry_path(const std::string& dir, const std::string& key, int version) {
    return dir + "/" + hex64(fnv1a64(key)) + ".v" + std::to_string(version) + ".cache";
}

std::optional<std::string> Cache::get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(entry_path(dir_, key, kVersion), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string body = ss.str();
    // First line stores the full key to guard against hash collisions.
    auto nl = body.find('\n');
    if (nl == std::string::npos || body.substr(0, nl) != key) return std::nullopt;
    return body.substr(nl + 1);
}

void Cache::put(const std::string& key, const std::string& payload) const {
    if (!enabled()) return;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    const std::string final_path = entry_path(dir_, key, kVersion);
    const std::string tmp_path = final_path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out << key << '\n' << payload;
    }
    fs::rename(tmp_path, final_path, ec);
    if (ec) fs::remove(tmp_path, ec);
}

std::string default_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("NINFTY_CACHE"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::string(xdg) + "/ninfty";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::string(home) + "/.cache/ninfty";
    return {};
}

}  // namespace ninfty
