#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <string_view>

namespace hypcyl {

/// Counter-based random stream (Philox2x64-10). Streams are keyed by a
/// master seed; the stream id selects a disjoint counter block, so streams
/// with the same master seed never overlap and any (master_seed, stream_id)
/// pair reproduces the same sequence regardless of how many other streams
/// are drawn from, in which order, or on which thread.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0)
        : master_seed_(master_seed), stream_id_(stream_id),
          key_(mix64(master_seed)), ctr_hi_(stream_id), ctr_lo_(0), buf_pos_(2) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    result_type operator()() {
        if (buf_pos_ == 2) {
            block(ctr_hi_, ctr_lo_, key_, buf_);
            ++ctr_lo_;
            if (ctr_lo_ == 0) ++ctr_hi_;  // 2^64 blocks per stream; never hit in practice
            buf_pos_ = 0;
        }
        return buf_[buf_pos_++];
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1); safe as a log() argument.
    double uniform_pos() {
        double x;
        do { x = uniform(); } while (x == 0.0);
        return x;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    /// Standard normal via the polar method (stateless, one value per call).
    double normal() {
        for (;;) {
            double u = 2.0 * uniform() - 1.0;
            double v = 2.0 * uniform() - 1.0;
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    long long poisson(double mean) {
        std::poisson_distribution<long long> dist(mean);
        return dist(*this);
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// SplitMix64 finalizer; also used to derive sub-seeds.
    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    static void block(std::uint64_t ctr_hi, std::uint64_t ctr_lo,
                      std::uint64_t key, std::uint64_t out[2]) {
        constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ull;
        constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;
        std::uint64_t x0 = ctr_hi, x1 = ctr_lo;
        for (int r = 0; r < 10; ++r) {
            __uint128_t prod = static_cast<__uint128_t>(kMul) * x0;
            std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
            std::uint64_t lo = static_cast<std::uint64_t>(prod);
            x0 = hi ^ (key + r * kWeyl) ^ x1;
            x1 = lo;
        }
        out[0] = x0;
        out[1] = x1;
    }

    std::uint64_t master_seed_, stream_id_;
    std::uint64_t key_, ctr_hi_, ctr_lo_;
    std::uint64_t buf_[2];
    int buf_pos_;
};

/// Deterministic sub-seed for a named experiment under one master seed.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return RngStream::mix64(master_seed ^ h);
}

}  // namespace hypcyl
