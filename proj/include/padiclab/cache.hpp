#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "padiclab/qseries.hpp"

namespace padiclab {

// On-disk series cache keyed by (constructor descriptor, truncation); entries
// use the qseries text format. A memory layer avoids re-parsing within a run.
class SeriesCache {
public:
    explicit SeriesCache(std::string dir);

    std::optional<QSeries> get(const std::string& descriptor, long T);
    void put(const std::string& descriptor, long T, const QSeries& s);
    QSeries get_or_build(const std::string& descriptor, long T,
                         const std::function<QSeries()>& build);

    const std::string& dir() const { return dir_; }

private:
    std::string path_for(const std::string& descriptor, long T) const;

    std::string dir_;
    std::mutex mu_;
    std::map<std::string, QSeries> mem_;
};

// PADICLAB_CACHE, when set and nonempty.
std::optional<std::string> cache_dir_from_env();

} // namespace padiclab
