#include "kforge/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>

#include <nlohmann/json.hpp>

namespace kforge {

SumCache::SumCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) {
        std::ofstream out(path_);
        out << nlohmann::json{{"kforge_cache", kVersion}}.dump() << "\n";
        return;
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (lineno == 1) {
            if (j.is_discarded() || !j.contains("kforge_cache") || j["kforge_cache"] != kVersion) {
                std::cerr << "warning: " << path_ << ": missing or foreign version header, ignoring file\n";
                skipped_ = 1;
                return;
            }
            continue;
        }
        if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j["key"].is_string() ||
            !j.contains("value") || !j["value"].is_array() || j["value"].size() != 2 || !j["value"][0].is_number() ||
            !j["value"][1].is_number()) {
            std::cerr << "warning: " << path_ << ":" << lineno << ": skipping corrupt cache line\n";
            ++skipped_;
            continue;
        }
        map_[j["key"].get<std::string>()] = cplx(j["value"][0].get<double>(), j["value"][1].get<double>());
    }
}

std::optional<cplx> SumCache::get(const std::string& key) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void SumCache::put(const std::string& key, cplx value) {
    std::unique_lock lock(mu_);
    if (!map_.emplace(key, value).second) return;
    std::ofstream out(path_, std::ios::app);
    out << nlohmann::json{{"key", key}, {"value", {value.real(), value.imag()}}}.dump() << "\n";
}

std::size_t SumCache::size() const {
    std::shared_lock lock(mu_);
    return map_.size();
}

std::string SumCache::key(const KloostermanQuery& q, SumKind kind) {
    const i64 M = q.D1 * q.D2;
    auto r = [M](i64 x) { return mod_floor(x, M); };
    std::string k = kind == SumKind::Tilde ? "tilde" : "twisted";
    k += "|" + std::to_string(r(q.n1)) + "|" + std::to_string(r(q.n2)) + "|" + std::to_string(r(q.m1));
    k += "|" + std::to_string(kind == SumKind::Tilde ? 0 : r(q.m2));
    k += "|" + std::to_string(q.D1) + "|" + std::to_string(q.D2);
    k += "|" + std::to_string(kind == SumKind::Tilde ? 1 : q.N);
    return k;
}

std::string resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("KFORGE_CACHE")) return env;
    return {};
}

cplx cached_sum(SumCache* cache, const KloostermanQuery& q, SumKind kind) {
    auto compute = [&] { return kind == SumKind::Tilde ? gl3_tilde_sum(q) : gl3_twisted_sum(q); };
    if (!cache) return compute();
    const std::string k = SumCache::key(q, kind);
    if (auto v = cache->get(k)) return *v;
    cplx v = compute();
    cache->put(k, v);
    return v;
}

}  // namespace kforge
