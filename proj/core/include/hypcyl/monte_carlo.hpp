#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hypcyl/rng.hpp"

namespace hypcyl {

/// Monte Carlo estimate with seed provenance.
struct Estimate {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::uint64_t n = 0;
    std::uint64_t master_seed = 0;
};

Estimate estimate_from_samples(std::span<const double> samples, std::uint64_t master_seed);

/// Binomial estimate of `scale * fraction` from `hits` out of `n` trials.
Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n, double scale,
                           std::uint64_t master_seed);

int resolve_workers(int requested);

/// Runs `task` on streams stream_offset .. stream_offset+reps-1 of
/// `master_seed`. Results are aggregated in stream order, so the outcome is
/// bitwise identical for any worker count.
Estimate replicate(const std::function<double(RngStream&)>& task, std::uint64_t reps,
                   std::uint64_t master_seed, int workers = 1,
                   std::uint64_t stream_offset = 0);

/// Vector-valued variant; returns one Estimate per output component.
std::vector<Estimate> replicate_vec(const std::function<std::vector<double>(RngStream&)>& task,
                                    std::size_t n_outputs, std::uint64_t reps,
                                    std::uint64_t master_seed, int workers = 1,
                                    std::uint64_t stream_offset = 0);

/// Raw per-stream results (row i = output of stream stream_offset + i).
std::vector<std::vector<double>> run_streams(
    const std::function<std::vector<double>(RngStream&)>& task, std::uint64_t reps,
    std::uint64_t master_seed, int workers = 1, std::uint64_t stream_offset = 0);

}  // namespace hypcyl
