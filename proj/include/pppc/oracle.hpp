#pragma once

// Exhaustive reference implementations: weight enumeration, ML decoding and
// exact bit-wise APP. All walk the full codebook (Gray-code order, one
// generator-row XOR per step) and are guarded to k <= 24.

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pppc/errors.hpp"
#include "pppc/llr.hpp"
#include "pppc/polar.hpp"

namespace pppc {

struct WeightEnumerator {
    int N = 0, k = 0;
    std::map<int, long long> counts; ///< weight -> multiplicity

    /// Smallest nonzero codeword weight.
    int min_distance() const {
        for (const auto& [w, c] : counts)
            if (w > 0 && c > 0) return w;
        throw Error("WeightEnumerator: no nonzero codeword");
    }

    long long multiplicity(int w) const {
        auto it = counts.find(w);
        return it == counts.end() ? 0 : it->second;
    }
};

namespace detail {

inline void check_enumeration_guard(int k, const char* who) {
    if (k > 24)
        throw GuardError(std::string(who) + ": exhaustive enumeration limited to k <= 24, got k = " +
                         std::to_string(k));
}

/// Calls fn(codeword) for every codeword, Gray-code order starting from zero.
template <typename Fn>
inline void for_each_codeword(const PrecodedPolarCode& code, Fn&& fn) {
    const int k = code.k();
    std::vector<BitVector> rows(k);
    for (int r = 0; r < k; ++r) rows[r] = code.generator.row_bits(r);
    BitVector cw(code.N(), 0);
    fn(cw);
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
        const int flip = std::countr_zero(i);
        const BitVector& row = rows[flip];
        for (int j = 0; j < code.N(); ++j) cw[j] ^= row[j];
        fn(cw);
    }
}

inline double correlation(const BitVector& cw, std::span<const double> llr) {
    double c = 0;
    for (std::size_t j = 0; j < cw.size(); ++j) c += cw[j] ? -llr[j] : llr[j];
    return c;
}

} // namespace detail

/// Exact weight enumerator by encoding all 2^k messages.
inline WeightEnumerator brute_wef(const PrecodedPolarCode& code) {
    detail::check_enumeration_guard(code.k(), "brute_wef");
    WeightEnumerator wef;
    wef.N = code.N();
    wef.k = code.k();
    detail::for_each_codeword(code, [&](const BitVector& cw) {
        int w = 0;
        for (std::uint8_t b : cw) w += b;
        ++wef.counts[w];
    });
    return wef;
}

/// Exhaustive maximum-likelihood decoding: argmax of the codeword correlation
/// sum_j (1-2 c_j) llr_j. Ties break toward the lexicographically smaller
/// codeword.
inline BitVector ml_decode(const PrecodedPolarCode& code, std::span<const double> llr) {
    detail::check_enumeration_guard(code.k(), "ml_decode");
    if ((int)llr.size() != code.N()) throw Error("ml_decode: input length mismatch");
    BitVector best;
    double best_corr = 0;
    detail::for_each_codeword(code, [&](const BitVector& cw) {
        const double c = detail::correlation(cw, llr);
        if (best.empty() || c > best_corr || (c == best_corr && cw < best)) {
            best = cw;
            best_corr = c;
        }
    });
    return best;
}

/// Exact bit-wise APP LLRs over the whole codebook. The log-likelihood of a
/// codeword is half its correlation (up to a shared constant), so position j
/// gets LSE_{c_j=0}(corr/2) - LSE_{c_j=1}(corr/2). Positions where one bit
/// value never occurs return +/-infinity.
inline std::vector<double> exact_bit_app(const PrecodedPolarCode& code, std::span<const double> llr) {
    detail::check_enumeration_guard(code.k(), "exact_bit_app");
    if ((int)llr.size() != code.N()) throw Error("exact_bit_app: input length mismatch");
    const int N = code.N();
    std::vector<OnlineLse> lse0(N), lse1(N);
    detail::for_each_codeword(code, [&](const BitVector& cw) {
        const double half_corr = 0.5 * detail::correlation(cw, llr);
        for (int j = 0; j < N; ++j) (cw[j] ? lse1[j] : lse0[j]).add(half_corr);
    });
    std::vector<double> out(N);
    for (int j = 0; j < N; ++j) out[j] = lse0[j].value() - lse1[j].value();
    return out;
}

} // namespace pppc
