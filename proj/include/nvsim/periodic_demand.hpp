#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nvsim/distributions.hpp"
#include "nvsim/random.hpp"
#include "nvsim/stats.hpp"

namespace nvsim {

inline constexpr std::size_t kMinPeriodicSamples = 100'000;

// Empirical distribution of demand summed over a period of consecutive
// working days. The daily demand distribution is known; the periodic one is
// not assumed to belong to any family, so inverse-CDF queries are answered
// from sorted Monte Carlo sums of independent daily draws. The periodic mean
// is kept analytic (period_days * daily mean) so downstream formulas that
// need an expectation are free of sampling noise.
class PeriodicDemandModel {
public:
    PeriodicDemandModel(DemandDistribution daily, int period_days, std::vector<double> sums)
        : daily_(daily), period_days_(period_days), samples_(std::move(sums)) {
        if (period_days_ < 1) throw std::domain_error("period must be at least one day");
        if (samples_.size() < kMinPeriodicSamples)
            throw std::domain_error("periodic model needs at least 100000 samples");
        if (!std::is_sorted(samples_.begin(), samples_.end()))
            std::sort(samples_.begin(), samples_.end());
        if (samples_.front() < 0.0)
            throw std::domain_error("periodic demand samples must be nonnegative");
        periodic_mean_ = static_cast<double>(period_days_) * daily_.mean();
    }

    // Linear-interpolated order statistic; monotone nondecreasing in the
    // fractile. Throws for fractiles outside (0, 1).
    double quantile(double fractile) const { return interpolated_quantile(samples_, fractile); }

    // Analytic periodic mean, not the sample mean.
    double expected_demand() const { return periodic_mean_; }

    const DemandDistribution& daily() const { return daily_; }
    int period_days() const { return period_days_; }
    const std::vector<double>& samples() const { return samples_; }

private:
    DemandDistribution daily_;
    int period_days_ = 0;
    std::vector<double> samples_;
    double periodic_mean_ = 0.0;
};

inline PeriodicDemandModel build_periodic_model(const DemandDistribution& daily, int period_days,
                                                std::size_t n_samples, std::uint64_t seed) {
    if (period_days < 1) throw std::domain_error("period must be at least one day");
    if (n_samples < kMinPeriodicSamples)
        throw std::domain_error("periodic model needs at least 100000 samples");
    RandomStream rng(seed);
    std::vector<double> sums(n_samples);
    for (auto& out : sums) {
        double total = 0.0;
        for (int day = 0; day < period_days; ++day) total += daily.sample(rng);
        out = total;
    }
    std::sort(sums.begin(), sums.end());
    return PeriodicDemandModel(daily, period_days, std::move(sums));
}

// Identity of a build; equal keys mean bit-identical models.
inline std::string periodic_model_key(const DemandDistribution& daily, int period_days,
                                      std::size_t n_samples, std::uint64_t seed) {
    return daily.text() + "|T=" + std::to_string(period_days) + "|n=" + std::to_string(n_samples) +
           "|seed=" + std::to_string(seed);
}

// FNV-1a over the key text; names on-disk cache entries.
inline std::uint64_t periodic_model_hash(const std::string& key) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : key) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace detail {

inline constexpr char kCacheMagic[8] = {'N', 'V', 'S', 'P', 'Q', 'v', '0', '1'};

inline std::filesystem::path cache_file_path(const std::filesystem::path& dir, std::uint64_t hash) {
    char name[32];
    std::snprintf(name, sizeof name, "pq-%016llx.bin", static_cast<unsigned long long>(hash));
    return dir / name;
}

inline bool save_periodic_cache_file(const std::filesystem::path& path, std::uint64_t hash,
                                     const PeriodicDemandModel& model) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(kCacheMagic, sizeof kCacheMagic);
    const std::uint64_t n = model.samples().size();
    const std::uint32_t period = static_cast<std::uint32_t>(model.period_days());
    out.write(reinterpret_cast<const char*>(&hash), sizeof hash);
    out.write(reinterpret_cast<const char*>(&period), sizeof period);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(model.samples().data()),
              static_cast<std::streamsize>(n * sizeof(double)));
    return static_cast<bool>(out);
}

inline std::vector<double> load_periodic_cache_file(const std::filesystem::path& path,
                                                    std::uint64_t hash, int period_days,
                                                    std::size_t n_samples) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    char magic[sizeof kCacheMagic];
    std::uint64_t stored_hash = 0, n = 0;
    std::uint32_t period = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&stored_hash), sizeof stored_hash);
    in.read(reinterpret_cast<char*>(&period), sizeof period);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0 || stored_hash != hash ||
        period != static_cast<std::uint32_t>(period_days) || n != n_samples)
        return {};
    std::vector<double> sums(n_samples);
    in.read(reinterpret_cast<char*>(sums.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) return {};
    return sums;
}

}  // namespace detail

// Shared store of built models keyed by (distribution, period, samples,
// seed). Policy construction and repeated experiments reuse one build; with a
// cache directory the sorted sums also persist across processes. Returned
// models are immutable and safe to share across threads.
class PeriodicModelCache {
public:
    PeriodicModelCache() = default;
    explicit PeriodicModelCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        if (!dir_.empty()) std::filesystem::create_directories(dir_);
    }

    std::shared_ptr<const PeriodicDemandModel> get(const DemandDistribution& daily, int period_days,
                                                   std::size_t n_samples, std::uint64_t seed) {
        const std::string key = periodic_model_key(daily, period_days, n_samples, seed);
        std::lock_guard<std::mutex> lock(mu_);
        if (auto it = built_.find(key); it != built_.end()) return it->second;

        std::shared_ptr<const PeriodicDemandModel> model;
        const std::uint64_t hash = periodic_model_hash(key);
        if (!dir_.empty()) {
            auto sums = detail::load_periodic_cache_file(detail::cache_file_path(dir_, hash), hash,
                                                         period_days, n_samples);
            if (!sums.empty())
                model = std::make_shared<PeriodicDemandModel>(daily, period_days, std::move(sums));
        }
        if (!model) {
            model = std::make_shared<PeriodicDemandModel>(
                build_periodic_model(daily, period_days, n_samples, seed));
            if (!dir_.empty())
                detail::save_periodic_cache_file(detail::cache_file_path(dir_, hash), hash, *model);
        }
        built_.emplace(key, model);
        return model;
    }

private:
    std::filesystem::path dir_;
    std::map<std::string, std::shared_ptr<const PeriodicDemandModel>> built_;
    std::mutex mu_;
};

}  // namespace nvsim
