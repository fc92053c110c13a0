#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "kforge/kloosterman.hpp"

namespace kforge {

enum class SumKind { Tilde, Twisted };

// JSON-lines store of Kloosterman sums.  The first line is a version header;
// each further line is {"key": ..., "value": [re, im]}.  Unreadable lines are
// skipped with a warning on stderr.
class SumCache {
public:
    static constexpr int kVersion = 1;

    explicit SumCache(std::string path);

    std::optional<cplx> get(const std::string& key) const;
    void put(const std::string& key, cplx value);

    std::size_t size() const;
    std::size_t skipped_lines() const { return skipped_; }
    const std::string& path() const { return path_; }

    // arguments reduced mod D1 D2; fields the sum ignores are zeroed
    static std::string key(const KloostermanQuery& q, SumKind kind);

private:
    std::string path_;
    mutable std::shared_mutex mu_;
    std::unordered_map<std::string, cplx> map_;
    std::size_t skipped_ = 0;
};

// the cache directory from --cache-dir or KFORGE_CACHE; empty when neither is set
std::string resolve_cache_dir(const std::string& flag_value);

cplx cached_sum(SumCache* cache, const KloostermanQuery& q, SumKind kind);

}  // namespace kforge
