#include "padiclab/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace padiclab {

namespace {

std::string sanitize(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out;
}

} // namespace

SeriesCache::SeriesCache(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
}

std::string SeriesCache::path_for(const std::string& descriptor, long T) const {
    return dir_ + "/" + sanitize(descriptor) + "_T" + std::to_string(T) + ".qs";
}

std::optional<QSeries> SeriesCache::get(const std::string& descriptor, long T) {
    const std::string key = descriptor + "\n" + std::to_string(T);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = mem_.find(key);
        if (it != mem_.end()) return it->second;
    }
    if (dir_.empty()) return std::nullopt;
    std::ifstream in(path_for(descriptor, T));
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        QSeries s = parse_qseries(buf.str());
        std::lock_guard<std::mutex> lock(mu_);
        mem_.emplace(key, s);
        return s;
    } catch (const std::exception&) {
        return std::nullopt; // corrupt entry: fall through to a rebuild
    }
}

void SeriesCache::put(const std::string& descriptor, long T, const QSeries& s) {
    const std::string key = descriptor + "\n" + std::to_string(T);
    {
        std::lock_guard<std::mutex> lock(mu_);
        mem_.insert_or_assign(key, s);
    }
    if (dir_.empty()) return;
    const std::string path = path_for(descriptor, T);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) return; // cache is best-effort; the build result still stands
        out << serialize(s);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
}

QSeries SeriesCache::get_or_build(const std::string& descriptor, long T,
                                  const std::function<QSeries()>& build) {
    if (auto hit = get(descriptor, T)) return *hit;
    QSeries s = build();
    put(descriptor, T, s);
    return s;
}

std::optional<std::string> cache_dir_from_env() {
    const char* v = std::getenv("PADICLAB_CACHE");
    if (v && *v) return std::string(v);
    return std::nullopt;
}

} // namespace padiclab
