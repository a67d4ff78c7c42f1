#pragma once

// LLR-domain successive cancellation (list) decoding of precoded polar codes,
// and list-based bit-wise soft output.
//
// Path metrics are exact log posteriors of the input prefix (future inputs
// treated as uniform): extending a path by bit b whose decision LLR is l adds
// log P(b|...) = -log(1+exp(-(1-2b) l)), with the check-node update computed
// in exact (tanh-domain equivalent) form. The metric of a complete path
// therefore equals the codeword log-posterior up to one additive constant
// shared by the whole list, so metric differences are codeword log-likelihood
// differences and log-sum-exp over metrics yields bit-wise APP ratios
// restricted to the list.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "pppc/errors.hpp"
#include "pppc/llr.hpp"
#include "pppc/polar.hpp"

namespace pppc {

struct ScList {
    struct Entry {
        BitVector codeword;
        double log_prob = 0.0;
    };
    std::vector<Entry> entries; ///< sorted by descending log_prob; ties keep input-prefix order
};

enum class SoftMaxMode {
    normalized, ///< fallback magnitude = |log of the best codeword's within-list posterior mass|
    literal     ///< fallback magnitude = |best accumulated path metric|
};

struct SoftOutputConfig {
    SoftMaxMode mode = SoftMaxMode::literal;
    double fallback_cap = 40.0; ///< cap on the fallback magnitude; <= 0 disables
};

class SclDecoder {
public:
    explicit SclDecoder(const PrecodedPolarCode& code)
        : n_(code.spec.n), N_(code.spec.N()), kind_(N_, Kind::frozen), sources_(N_) {
        for (int pos : code.spec.info_set) kind_[pos - 1] = Kind::info;
        for (const auto& [target, srcs] : code.spec.dyn_constraints) {
            kind_[target - 1] = Kind::dynamic_frozen;
            for (int s : srcs) sources_[target - 1].push_back(s - 1);
        }
        off_llr_.resize(n_ + 1);
        off_bits_.resize(n_ + 1);
        int lo = 0, bo = 0;
        for (int lvl = 0; lvl <= n_; ++lvl) {
            off_llr_[lvl] = lo;
            off_bits_[lvl] = bo;
            lo += N_ >> lvl;
            bo += (N_ >> lvl) * 2;
        }
        llr_len_ = lo;
        bits_len_ = bo;
    }

    int block_length() const { return N_; }

    /// Runs list decoding and fills `out` with up to `list_size` valid
    /// codewords sorted by descending metric. `input_clip <= 0` disables
    /// input clipping.
    void decode_into(std::span<const double> llr, int list_size, double input_clip, ScList& out) {
        if ((int)llr.size() != N_)
            throw Error("scl_decode: input length " + std::to_string(llr.size()) +
                        " does not match N = " + std::to_string(N_));
        if (list_size < 1) throw Error("scl_decode: list size must be >= 1");
        for (double v : llr)
            if (!std::isfinite(v)) throw Error("scl_decode: non-finite input LLR");

        ensure_pool(list_size);
        auto* cur = &pool_a_;
        auto* nxt = &pool_b_;
        int active = 1;
        {
            Path& p = (*cur)[0];
            for (int j = 0; j < N_; ++j) p.llr[j] = clip_llr(llr[j], input_clip);
            p.metric = 0.0;
        }

        for (int phase = 0; phase < N_; ++phase) {
            for (int i = 0; i < active; ++i) calc_llr((*cur)[i], n_, phase);

            if (kind_[phase] == Kind::info) {
                cands_.clear();
                for (int i = 0; i < active; ++i) {
                    const double d = (*cur)[i].llr[off_llr_[n_]];
                    const double m = (*cur)[i].metric;
                    cands_.push_back({m - decision_penalty(d, false), i, 0});
                    cands_.push_back({m - decision_penalty(d, true), i, 1});
                }
                int keep = (int)cands_.size();
                if (keep > list_size) {
                    // stable selection: ties keep the lexicographically smaller prefix
                    order_.resize(cands_.size());
                    std::iota(order_.begin(), order_.end(), 0);
                    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
                        return cands_[a].metric > cands_[b].metric;
                    });
                    order_.resize(list_size);
                    std::sort(order_.begin(), order_.end());
                    keep = list_size;
                } else {
                    order_.resize(keep);
                    std::iota(order_.begin(), order_.end(), 0);
                }
                for (int i = 0; i < keep; ++i) {
                    const Cand& c = cands_[order_[i]];
                    (*nxt)[i] = (*cur)[c.parent];
                    (*nxt)[i].metric = c.metric;
                    commit_bit((*nxt)[i], phase, c.bit != 0);
                }
                active = keep;
                std::swap(cur, nxt);
            } else {
                for (int i = 0; i < active; ++i) {
                    Path& p = (*cur)[i];
                    std::uint8_t bit = 0;
                    for (int s : sources_[phase]) bit ^= p.u[s];
                    p.metric -= decision_penalty(p.llr[off_llr_[n_]], bit != 0);
                    commit_bit(p, phase, bit != 0);
                }
            }
        }

        out.entries.resize(active);
        for (int i = 0; i < active; ++i) {
            ScList::Entry& e = out.entries[i];
            e.codeword = (*cur)[i].u;
            transform_inplace(e.codeword);
            e.log_prob = (*cur)[i].metric;
        }
        std::stable_sort(out.entries.begin(), out.entries.end(),
                         [](const ScList::Entry& a, const ScList::Entry& b) {
                             return a.log_prob > b.log_prob;
                         });
    }

private:
    enum class Kind : std::uint8_t { info, frozen, dynamic_frozen };

    struct Path {
        std::vector<double> llr;
        std::vector<std::uint8_t> bits;
        std::vector<std::uint8_t> u;
        double metric = 0.0;
    };

    struct Cand {
        double metric;
        int parent;
        std::uint8_t bit;
    };

    static void transform_inplace(BitVector& v) {
        const std::size_t len = v.size();
        for (std::size_t h = len / 2; h >= 1; h /= 2)
            for (std::size_t i = 0; i < len; i += 2 * h)
                for (std::size_t j = i; j < i + h; ++j)
                    v[j] ^= v[j + h];
    }

    void ensure_pool(int list_size) {
        for (auto* pool : {&pool_a_, &pool_b_})
            while ((int)pool->size() < list_size) {
                Path p;
                p.llr.resize(llr_len_);
                p.bits.resize(bits_len_);
                p.u.resize(N_);
                pool->push_back(std::move(p));
            }
        cands_.reserve(2 * (std::size_t)list_size);
    }

    // Decision LLR for the current phase at `level`, recomputing lower levels
    // on even phases. Level 0 holds the (clipped) input LLRs.
    void calc_llr(Path& p, int level, int phase) {
        if (level == 0) return;
        if ((phase & 1) == 0) calc_llr(p, level - 1, phase >> 1);
        const int half = N_ >> level;
        const double* lo = &p.llr[off_llr_[level - 1]];
        double* cur = &p.llr[off_llr_[level]];
        if ((phase & 1) == 0) {
            for (int b = 0; b < half; ++b) cur[b] = f_llr(lo[b], lo[b + half]);
        } else {
            const std::uint8_t* even = &p.bits[off_bits_[level]];
            for (int b = 0; b < half; ++b) cur[b] = g_llr(lo[b], lo[b + half], even[2 * b] != 0);
        }
    }

    void commit_bit(Path& p, int phase, bool bit) {
        p.u[phase] = bit ? 1 : 0;
        p.bits[off_bits_[n_] + (phase & 1)] = bit ? 1 : 0;
        if (phase & 1) update_bits(p, n_, phase);
    }

    // Propagate partial sums once both phases of a level are decided.
    void update_bits(Path& p, int level, int phase) {
        const int half = N_ >> level;
        const int psi = phase >> 1;
        const int slot = psi & 1;
        const std::uint8_t* up = &p.bits[off_bits_[level]];
        std::uint8_t* dn = &p.bits[off_bits_[level - 1]];
        for (int b = 0; b < half; ++b) {
            dn[2 * b + slot] = up[2 * b] ^ up[2 * b + 1];
            dn[2 * (b + half) + slot] = up[2 * b + 1];
        }
        if ((psi & 1) && level > 1) update_bits(p, level - 1, psi);
    }

    int n_, N_;
    int llr_len_ = 0, bits_len_ = 0;
    std::vector<Kind> kind_;
    std::vector<std::vector<int>> sources_;
    std::vector<int> off_llr_, off_bits_;
    std::vector<Path> pool_a_, pool_b_;
    std::vector<Cand> cands_;
    std::vector<int> order_;
};

/// List decoding; returns up to L valid codewords with log-domain metrics.
inline ScList scl_decode(const PrecodedPolarCode& code, std::span<const double> llr, int list_size,
                         double input_clip = 40.0) {
    SclDecoder dec(code);
    ScList out;
    dec.decode_into(llr, list_size, input_clip, out);
    return out;
}

/// SC decoding: the L = 1 list. Ties (decision LLR exactly zero) resolve to 0.
inline BitVector sc_decode(const PrecodedPolarCode& code, std::span<const double> llr,
                           double input_clip = 40.0) {
    return scl_decode(code, llr, 1, input_clip).entries.front().codeword;
}

/// Bit-wise soft output from a decoding list.
///
/// Positions where both bit values occur in the list get the log-ratio of the
/// summed list probabilities. Unanimous positions fall back to a magnitude
/// derived from the best metric -- either normalized to the within-list
/// posterior mass or taken literally -- signed by the agreed bit value and
/// bounded by `fallback_cap`.
inline void soft_output_into(const ScList& list, const PrecodedPolarCode& code,
                             const SoftOutputConfig& cfg, std::span<double> out) {
    if (list.entries.empty()) throw Error("soft_output: empty list");
    const int N = code.spec.N();
    if ((int)out.size() != N) throw Error("soft_output: output length mismatch");

    double best = -std::numeric_limits<double>::infinity();
    OnlineLse all;
    for (const auto& e : list.entries) {
        best = std::max(best, e.log_prob);
        all.add(e.log_prob);
    }
    // Magnitude used when the list is unanimous at a position.
    double mag = cfg.mode == SoftMaxMode::normalized ? all.value() - best : std::fabs(best);
    if (cfg.fallback_cap > 0) mag = std::min(mag, cfg.fallback_cap);
    mag = std::max(mag, std::numeric_limits<double>::min()); // keep the sign through hard decisions

    for (int j = 0; j < N; ++j) {
        OnlineLse lse0, lse1;
        for (const auto& e : list.entries)
            (e.codeword[j] ? lse1 : lse0).add(e.log_prob);
        if (!lse0.empty() && !lse1.empty())
            out[j] = lse0.value() - lse1.value();
        else
            out[j] = lse0.empty() ? -mag : mag;
    }
}

inline std::vector<double> soft_output(const ScList& list, const PrecodedPolarCode& code,
                                       const SoftOutputConfig& cfg = {}) {
    std::vector<double> out(code.spec.N());
    soft_output_into(list, code, cfg, out);
    return out;
}

} // namespace pppc
