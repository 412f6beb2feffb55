#include "hypcyl/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace hypcyl {

Estimate estimate_from_samples(std::span<const double> samples, std::uint64_t master_seed) {
    if (samples.empty()) throw std::invalid_argument("estimate_from_samples: no samples");
    const auto n = samples.size();
    double sum = 0.0;
    for (double x : samples) sum += x;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        ss += d * d;
    }
    Estimate e;
    e.mean = mean;
    e.n = n;
    e.master_seed = master_seed;
    e.se = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    e.ci95_low = mean - 1.96 * e.se;
    e.ci95_high = mean + 1.96 * e.se;
    return e;
}

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n, double scale,
                           std::uint64_t master_seed) {
    if (n == 0) throw std::invalid_argument("binomial_estimate: n == 0");
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    Estimate e;
    e.mean = scale * p;
    e.se = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    e.ci95_low = e.mean - 1.96 * e.se;
    e.ci95_high = e.mean + 1.96 * e.se;
    e.n = n;
    e.master_seed = master_seed;
    return e;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<std::vector<double>> run_streams(
    const std::function<std::vector<double>(RngStream&)>& task, std::uint64_t reps,
    std::uint64_t master_seed, int workers, std::uint64_t stream_offset) {
    if (reps == 0) throw std::invalid_argument("run_streams: reps == 0");
    const int nw = resolve_workers(workers);
    std::vector<std::vector<double>> results(reps);

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= reps) return;
            try {
                RngStream stream(master_seed, stream_offset + i);
                results[i] = task(stream);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::make_exception_ptr(std::runtime_error(
                        "task failed on stream " + std::to_string(stream_offset + i) + ": " +
                        e.what()));
                next.store(reps);
                return;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(reps);
                return;
            }
        }
    };

    if (nw <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(nw);
        for (int w = 0; w < nw; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (error) std::rethrow_exception(error);
    return results;
}

Estimate replicate(const std::function<double(RngStream&)>& task, std::uint64_t reps,
                   std::uint64_t master_seed, int workers, std::uint64_t stream_offset) {
    if (reps < 2) throw std::invalid_argument("replicate: need reps >= 2");
    auto rows = run_streams(
        [&task](RngStream& s) { return std::vector<double>{task(s)}; }, reps, master_seed,
        workers, stream_offset);
    std::vector<double> flat(reps);
    for (std::uint64_t i = 0; i < reps; ++i) flat[i] = rows[i][0];
    return estimate_from_samples(flat, master_seed);
}

std::vector<Estimate> replicate_vec(const std::function<std::vector<double>(RngStream&)>& task,
                                    std::size_t n_outputs, std::uint64_t reps,
                                    std::uint64_t master_seed, int workers,
                                    std::uint64_t stream_offset) {
    if (reps < 2) throw std::invalid_argument("replicate_vec: need reps >= 2");
    auto rows = run_streams(task, reps, master_seed, workers, stream_offset);
    std::vector<Estimate> out(n_outputs);
    std::vector<double> column(reps);
    for (std::size_t j = 0; j < n_outputs; ++j) {
        for (std::uint64_t i = 0; i < reps; ++i) {
            if (rows[i].size() != n_outputs)
                throw std::runtime_error("replicate_vec: task output size mismatch");
            column[i] = rows[i][j];
        }
        out[j] = estimate_from_samples(column, master_seed);
    }
    return out;
}

}  // namespace hypcyl
