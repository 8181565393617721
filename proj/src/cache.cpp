#include "qcb/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "qcb/error.hpp"
#include "qcb/report.hpp"

namespace qcb {

namespace {

constexpr const char* kCacheSchema = "qcb-cache-v1";

}  // namespace

std::string resolve_cache_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    const char* env = std::getenv("QCB_CACHE_DIR");
    return env ? std::string(env) : std::string();
}

std::string cache_path(const std::string& dir, const FAlgebra& alg) {
    auto file = "form-" + alg.datum().fingerprint() + ".json";
    return (std::filesystem::path(dir) / file).string();
}

size_t cache_store(const std::string& dir, const FAlgebra& alg) {
    if (dir.empty()) return 0;
    std::filesystem::create_directories(dir);
    const CartanDatum& d = alg.datum();
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, value] : alg.form_memo())
        entries.push_back({{"a", key.first.str(d)},
                           {"b", key.second.str(d)},
                           {"value", value.to_json()}});
    nlohmann::json j = {{"schema", kCacheSchema},
                        {"version", kVersion},
                        {"datum", d.describe()},
                        {"entries", entries}};
    std::ofstream out(cache_path(dir, alg));
    check(out.good(), "cannot write the cache file");
    out << j.dump(1) << "\n";
    return alg.form_memo().size();
}

size_t cache_load(const std::string& dir, FAlgebra& alg, uint64_t seed) {
    if (dir.empty()) return 0;
    std::string path = cache_path(dir, alg);
    std::ifstream in(path);
    if (!in.good()) return 0;  // plain miss

    const CartanDatum& d = alg.datum();
    std::map<WordPair, RatFunc> memo;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.value("schema", "") != kCacheSchema || j.value("version", "") != kVersion)
            return 0;  // stale format, treat as a miss
        if (j.value("datum", "") != d.describe()) {
            std::cerr << "cache: datum mismatch in " << path << ", ignoring\n";
            return 0;
        }
        for (const auto& e : j.at("entries"))
            memo.emplace(WordPair{Word::parse(d, e.at("a").get<std::string>()),
                                  Word::parse(d, e.at("b").get<std::string>())},
                         RatFunc::from_json(e.at("value").get<std::string>()));
    } catch (const std::exception& ex) {
        std::cerr << "cache: cannot read " << path << " (" << ex.what() << "), recomputing\n";
        return 0;
    }
    if (memo.empty()) return 0;

    // One spot check against a fresh computation before trusting the file.
    std::mt19937_64 rng(seed);
    size_t pick = std::uniform_int_distribution<size_t>(0, memo.size() - 1)(rng);
    auto it = std::next(memo.begin(), static_cast<long>(pick));
    FAlgebra fresh(d);
    if (!(fresh.form_words(it->first.first, it->first.second) == it->second)) {
        std::cerr << "cache: validation mismatch in " << path << ", recomputing\n";
        return 0;
    }
    size_t n = memo.size();
    alg.adopt_form_memo(std::move(memo));
    return n;
}

}  // namespace qcb
