#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "quadclass/config.hpp"

namespace quadclass::cli {

inline constexpr int kCacheVersion = 1;

/// Append-only cache file, one JSON object per line: {"v":1,"key":...,"value":...}.
/// Lines that fail to parse or carry another version are skipped with a warning.
class JsonlCache : public ResultCache {
public:
    JsonlCache(std::filesystem::path path, std::ostream& warnings);

    std::optional<std::string> get(const std::string& key) override;
    void put(const std::string& key, const std::string& value) override;

    std::vector<std::pair<std::string, std::string>> entries() const;
    std::size_t skipped_lines() const { return skipped_; }

private:
    std::filesystem::path path_;
    std::ostream& warnings_;
    mutable std::mutex mutex_;
    std::map<std::string, std::string> entries_;
    std::size_t skipped_ = 0;
};

}  // namespace quadclass::cli
