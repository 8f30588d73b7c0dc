#include "jsonl_cache.hpp"

#include <fstream>

#include <json.hpp>

namespace quadclass::cli {

JsonlCache::JsonlCache(std::filesystem::path path, std::ostream& warnings)
    : path_(std::move(path)), warnings_(warnings) {
    std::ifstream in(path_);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        try {
            const auto j = nlohmann::json::parse(line);
            if (j.at("v").get<int>() != kCacheVersion)
                throw std::runtime_error("unsupported version");
            entries_[j.at("key").get<std::string>()] = j.at("value").get<std::string>();
        } catch (const std::exception& e) {
            ++skipped_;
            warnings_ << "warning: " << path_.string() << ":" << lineno
                      << ": skipping corrupt cache line (" << e.what() << ")\n";
        }
    }
}

std::optional<std::string> JsonlCache::get(const std::string& key) {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

void JsonlCache::put(const std::string& key, const std::string& value) {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find(key);
    if (it != entries_.end() && it->second == value)
        return;
    entries_[key] = value;
    std::ofstream out(path_, std::ios::app);
    if (!out) {
        warnings_ << "warning: cannot append to cache " << path_.string() << "\n";
        return;
    }
    nlohmann::ordered_json j;
    j["v"] = kCacheVersion;
    j["key"] = key;
    j["value"] = value;
    out << j.dump() << '\n';
}

std::vector<std::pair<std::string, std::string>> JsonlCache::entries() const {
    std::lock_guard lock(mutex_);
    return {entries_.begin(), entries_.end()};
}

}  // namespace quadclass::cli
