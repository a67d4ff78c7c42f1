#pragma once

// biAWGN/BPSK channel model and the Monte Carlo block-error-rate harness.
//
// Randomness is fully deterministic: a SplitMix64-seeded xoshiro256++ stream
// drives Box-Muller Gaussians, and every trial derives its own seed from
// (master seed, SNR index, trial index). Trials are executed in fixed-size
// batches with the stopping rule evaluated at batch boundaries, so results
// are bit-identical for any worker count.

#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pppc/errors.hpp"
#include "pppc/product.hpp"
#include "pppc/turbo.hpp"

namespace pppc {

struct ChannelParams {
    double ebn0_db = 0;
    double rate = 0;
    double sigma = 0; ///< noise standard deviation, sigma^2 = 1/(2 R 10^(Eb/N0 / 10))

    static ChannelParams from_ebn0(double ebn0_db, double rate) {
        if (!(rate > 0.0 && rate <= 1.0)) throw Error("ChannelParams: rate must be in (0, 1]");
        if (!std::isfinite(ebn0_db)) throw Error("ChannelParams: non-finite Eb/N0");
        ChannelParams p;
        p.ebn0_db = ebn0_db;
        p.rate = rate;
        p.sigma = std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
        return p;
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// xoshiro256++ with SplitMix64 seeding; Gaussians via Box-Muller.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : s_) s = x = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in (0, 1].
    double uniform_pos() { return (double)((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform in [0, 1).
    double uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

    std::uint8_t next_bit() { return next_u64() & 1u; }

    /// Standard normal draw.
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        constexpr double two_pi = 6.283185307179586476925287;
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double t = two_pi * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
    double spare_ = 0;
    bool have_spare_ = false;
};

/// Seed for one trial, stable across runs and worker counts.
inline std::uint64_t trial_seed(std::uint64_t master, std::size_t snr_index, std::uint64_t trial_index) {
    std::uint64_t h = splitmix64(master ^ (0x9E3779B97F4A7C15ull * (std::uint64_t)(snr_index + 1)));
    h = splitmix64(h ^ (0xD1B54A32D192ED03ull * (trial_index + 1)));
    return h;
}

/// BPSK mapping: bit 0 -> +1, bit 1 -> -1.
inline std::vector<double> modulate(const BitVector& c) {
    std::vector<double> x(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) x[i] = c[i] ? -1.0 : 1.0;
    return x;
}

/// y = x + z with z i.i.d. N(0, sigma^2), deterministic for a given seed.
inline std::vector<double> awgn(std::span<const double> x, double sigma, std::uint64_t seed) {
    if (!(sigma > 0)) throw Error("awgn: sigma must be positive");
    Rng rng(seed);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + sigma * rng.gauss();
    return y;
}

/// Channel LLRs for biAWGN/BPSK, elementwise 2 y / sigma^2.
inline LlrGrid channel_llr(std::span<const double> y, int rows, int cols, double sigma) {
    if (!(sigma > 0)) throw Error("channel_llr: sigma must be positive");
    if ((std::size_t)rows * cols != y.size()) throw Error("channel_llr: dimension mismatch");
    LlrGrid grid(rows, cols, LlrRole::channel);
    const double scale = 2.0 / (sigma * sigma);
    for (std::size_t i = 0; i < y.size(); ++i) grid.v[i] = scale * y[i];
    return grid;
}

struct StopRule {
    long long min_errors = 100;
    long long max_trials = 1000000;
};

struct SimRecord {
    double ebn0_db = 0;
    long long trials = 0;
    long long block_errors = 0;
    double cer = 0;
    double ci_low = 0, ci_high = 0; ///< 95% Wilson interval
    double avg_half_iterations = 0;
    std::uint64_t seed = 0; ///< master seed
};

/// 95% Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(long long errors, long long trials) {
    const double z = 1.959963984540054;
    const double n = (double)trials;
    const double p = (double)errors / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace detail {

struct BatchTally {
    long long errors = 0;
    long long half_iterations = 0;
};

/// One encode/transmit/decode trial; returns {block_error, half_iterations}.
inline std::pair<bool, int> run_trial(const ProductCode& pc, const TurboConfig& cfg,
                                      const ChannelParams& ch, std::uint64_t seed) {
    Rng rng(seed);
    BitVector msg((std::size_t)pc.k);
    for (auto& b : msg) b = rng.next_bit();
    const BitVector cw = encode2d(pc, msg);
    std::vector<double> y(cw.size());
    for (std::size_t i = 0; i < cw.size(); ++i)
        y[i] = (cw[i] ? -1.0 : 1.0) + ch.sigma * rng.gauss();
    const LlrGrid grid = channel_llr(y, pc.N1(), pc.N2(), ch.sigma);
    const DecodeOutcome out = turbo_decode(pc, grid, cfg);
    return {out.codeword != cw, out.half_iterations_used};
}

} // namespace detail

/// Estimates the block error rate at each SNR point. Stops per point once
/// `min_errors` block errors have accumulated at a batch boundary or
/// `max_trials` trials were run. Deterministic for fixed (master_seed,
/// configuration) regardless of `threads`.
inline std::vector<SimRecord> simulate_cer(const ProductCode& pc, const TurboConfig& cfg,
                                           const std::vector<double>& ebn0_list,
                                           const StopRule& stop, std::uint64_t master_seed,
                                           int threads = 1) {
    if (stop.min_errors < 1 || stop.max_trials < 1)
        throw Error("simulate_cer: stopping rule requires min_errors >= 1 and max_trials >= 1");
    resolve_alpha(cfg); // reject bad configurations before any worker starts
    if (threads < 1) threads = 1;
    constexpr long long kBatch = 1024;

    std::vector<SimRecord> records;
    for (std::size_t si = 0; si < ebn0_list.size(); ++si) {
        const ChannelParams ch = ChannelParams::from_ebn0(ebn0_list[si], pc.R);
        long long done = 0, errors = 0, half_sum = 0;
        while (done < stop.max_trials && errors < stop.min_errors) {
            const long long count = std::min(kBatch, stop.max_trials - done);
            std::vector<detail::BatchTally> tally(threads);
            std::vector<std::exception_ptr> broken(threads);
            auto worker = [&](int t) {
                try {
                    const long long lo = done + count * t / threads;
                    const long long hi = done + count * (t + 1) / threads;
                    detail::BatchTally local;
                    for (long long ti = lo; ti < hi; ++ti) {
                        auto [err, halves] = detail::run_trial(
                            pc, cfg, ch, trial_seed(master_seed, si, (std::uint64_t)ti));
                        local.errors += err ? 1 : 0;
                        local.half_iterations += halves;
                    }
                    tally[t] = local;
                } catch (...) {
                    broken[t] = std::current_exception();
                }
            };
            if (threads == 1) {
                worker(0);
            } else {
                std::vector<std::thread> pool;
                for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
                for (auto& th : pool) th.join();
            }
            for (const auto& e : broken)
                if (e) std::rethrow_exception(e);
            for (const auto& t : tally) {
                errors += t.errors;
                half_sum += t.half_iterations;
            }
            done += count;
        }
        SimRecord rec;
        rec.ebn0_db = ebn0_list[si];
        rec.trials = done;
        rec.block_errors = errors;
        rec.cer = (double)errors / (double)done;
        std::tie(rec.ci_low, rec.ci_high) = wilson_interval(errors, done);
        rec.avg_half_iterations = (double)half_sum / (double)done;
        rec.seed = master_seed;
        records.push_back(rec);
    }
    return records;
}

/// Fixed scientific formatting, 6 significant digits.
inline std::string format_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5e", x);
    return buf;
}

inline void write_sim_csv(std::ostream& os, const std::vector<SimRecord>& records,
                          const std::vector<std::string>& metadata_lines) {
    for (const auto& line : metadata_lines) os << "# " << line << "\n";
    os << "ebn0_db,trials,errors,cer,ci_low,ci_high,avg_half_iters,seed\n";
    for (const auto& r : records)
        os << format_sci(r.ebn0_db) << ',' << r.trials << ',' << r.block_errors << ','
           << format_sci(r.cer) << ',' << format_sci(r.ci_low) << ',' << format_sci(r.ci_high)
           << ',' << format_sci(r.avg_half_iterations) << ',' << r.seed << "\n";
}

} // namespace pppc
