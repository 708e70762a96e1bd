#pragma once

// Deterministic parallel Monte Carlo driver. Every sample owns a substream
// derived from (seed, tag, index) and results are reduced in index order,
// so the estimate is bitwise independent of the worker count.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rng.hpp"

namespace mixvol {

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
};

/// Worker count: explicit request, else MIXVOL_WORKERS, else the hardware
/// concurrency (capped at 8). Never affects reported numbers.
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MIXVOL_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
}

/// Substream id for sample `index` of the estimator labeled `tag`.
/// Base stream ids must stay below 2^40 so tags cannot collide.
inline std::uint64_t sample_stream_id(std::uint64_t base_id, std::uint64_t tag,
                                      std::uint64_t index) {
    return base_id + (tag << 40) + index;
}

/// Evaluates fn(ctx, stream) for each sample substream. `make_ctx` builds
/// one worker-local context per thread (scratch caches and the like); the
/// context must not change the value fn returns for a given stream.
template <class MakeCtx, class Fn>
std::vector<double> sample_values(std::uint64_t samples, std::uint64_t seed,
                                  std::uint64_t base_id, std::uint64_t tag, int workers,
                                  MakeCtx&& make_ctx, Fn&& fn) {
    std::vector<double> values(samples);
    const int w = resolve_workers(workers);
    auto run_block = [&](std::uint64_t lo, std::uint64_t hi) {
        auto ctx = make_ctx();
        for (std::uint64_t i = lo; i < hi; ++i) {
            RandomStream stream(seed, sample_stream_id(base_id, tag, i));
            values[i] = fn(ctx, stream);
        }
    };
    if (w <= 1 || samples < 2 * static_cast<std::uint64_t>(w)) {
        run_block(0, samples);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (samples + w - 1) / w;
        for (int t = 0; t < w; ++t) {
            const std::uint64_t lo = t * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_block, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return values;
}

/// Mean and standard error from per-sample values, summed in index order.
inline MonteCarloEstimate estimate_from_values(const std::vector<double>& values,
                                               std::uint64_t seed, double wall_seconds) {
    if (values.size() < 2)
        throw std::invalid_argument("estimate_from_values: at least 2 samples required");
    double sum = 0.0;
    for (const double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    MonteCarloEstimate e;
    e.mean = mean;
    e.stderr_ = std::sqrt(var / static_cast<double>(values.size()));
    e.samples = values.size();
    e.seed = seed;
    e.wall_seconds = wall_seconds;
    return e;
}

class WallClock {
public:
    WallClock() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace mixvol
