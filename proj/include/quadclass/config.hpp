#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace quadclass {

/// Key/value store for expensive results ("factor:<n>", "h:<disc>").
/// Implementations must be safe to call from several threads.
class ResultCache {
public:
    virtual ~ResultCache() = default;
    virtual std::optional<std::string> get(const std::string& key) = 0;
    virtual void put(const std::string& key, const std::string& value) = 0;
};

/// Limits and knobs shared by the class group, witness and family layers.
struct Config {
    std::int64_t max_disc = 100'000'000;       // cap on |disc| for form enumeration
    std::int64_t analytic_cap = 10'000'000;    // cross-check with the character sum up to this |disc|
    std::int64_t structure_cap = 10'000;       // cap on h for group_structure
    std::uint64_t factor_budget = 1ULL << 25;  // rho iterations per factorization
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    unsigned threads = 1;
    ResultCache* cache = nullptr;              // not owned
};

}  // namespace quadclass
