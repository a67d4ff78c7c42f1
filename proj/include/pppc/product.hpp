#pragma once

// Two-dimensional product codes built from precoded polar components.
//
// Convention (fixed, echoed in all output metadata): a codeword is an
// N1 x N2 array flattened row-major. Component 1 governs the columns (each
// column of length N1 is a codeword of code 1), component 2 governs the rows
// (each row of length N2 is a codeword of code 2). The composed precoding
// matrix kron(P1, P2) is SC-aimed whenever both factors are, and the product
// generator is kron(G1, G2) for the same flattening.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pppc/errors.hpp"
#include "pppc/gf2.hpp"
#include "pppc/oracle.hpp"
#include "pppc/polar.hpp"

namespace pppc {

struct DistanceTerms {
    int d1 = 0, d2 = 0;          ///< component minimum distances
    long long a1 = 0, a2 = 0;    ///< component minimum-weight multiplicities
    long long d = 0;             ///< product minimum distance d1*d2
    long long a_d = 0;           ///< product minimum-weight multiplicity a1*a2
};

struct ProductCode {
    PrecodedPolarCode c1; ///< column code, length N1
    PrecodedPolarCode c2; ///< row code, length N2
    BitMatrix precoding;  ///< kron(P1, P2), k x N, SC-aimed
    CodeSpec composed_spec;
    long long N = 0, k = 0;
    double R = 0;
    std::optional<DistanceTerms> dist; ///< known when both component WEFs are enumerable

    int N1() const { return c1.N(); }
    int N2() const { return c2.N(); }
    int k1() const { return c1.k(); }
    int k2() const { return c2.k(); }

    const DistanceTerms& distance() const {
        if (!dist)
            throw SpecError("minimum-distance terms unknown for this product code "
                            "(component dimension exceeds the enumeration guard)");
        return *dist;
    }
};

/// Composes two component codes. Parameters multiply; the composed precoding
/// matrix is verified SC-aimed and its constraint sets extracted. Distance
/// terms are filled from exhaustive component weight enumeration when both
/// dimensions are within the k <= 24 guard, and left unset otherwise.
inline ProductCode compose(const PrecodedPolarCode& c1, const PrecodedPolarCode& c2) {
    ProductCode pc;
    pc.c1 = c1;
    pc.c2 = c2;
    pc.N = (long long)c1.N() * c2.N();
    pc.k = (long long)c1.k() * c2.k();
    pc.R = (double)pc.k / (double)pc.N;
    pc.precoding = kron(c1.precoding, c2.precoding);
    pc.composed_spec = spec_from_precoding(pc.precoding); // throws if not SC-aimed
    if (c1.k() <= 24 && c2.k() <= 24) {
        const WeightEnumerator w1 = brute_wef(c1);
        const WeightEnumerator w2 = brute_wef(c2);
        DistanceTerms dt;
        dt.d1 = w1.min_distance();
        dt.d2 = w2.min_distance();
        dt.a1 = w1.multiplicity(dt.d1);
        dt.a2 = w2.multiplicity(dt.d2);
        dt.d = (long long)dt.d1 * dt.d2;
        dt.a_d = dt.a1 * dt.a2;
        pc.dist = dt;
    }
    return pc;
}

/// Product encoding: place the message into a k1 x k2 array row by row,
/// encode the rows with code 2, then the columns with code 1, and flatten
/// the N1 x N2 result row-major. Equals v * kron(G1, G2).
inline BitVector encode2d(const ProductCode& pc, const BitVector& v) {
    if ((long long)v.size() != pc.k)
        throw Error("encode2d: message length " + std::to_string(v.size()) +
                    " does not match k = " + std::to_string(pc.k));
    const int n1 = pc.N1(), n2 = pc.N2(), k1 = pc.k1(), k2 = pc.k2();
    std::vector<BitVector> grid(n1, BitVector(n2, 0));
    BitVector msg_row(k2);
    for (int r = 0; r < k1; ++r) {
        for (int j = 0; j < k2; ++j) msg_row[j] = v[(std::size_t)r * k2 + j];
        grid[r] = encode(pc.c2, msg_row);
    }
    BitVector col(k1), enc_col;
    BitVector flat((std::size_t)n1 * n2);
    for (int c = 0; c < n2; ++c) {
        for (int r = 0; r < k1; ++r) col[r] = grid[r][c];
        enc_col = encode(pc.c1, col);
        for (int r = 0; r < n1; ++r) grid[r][c] = enc_col[r];
    }
    for (int r = 0; r < n1; ++r)
        for (int c = 0; c < n2; ++c) flat[(std::size_t)r * n2 + c] = grid[r][c];
    return flat;
}

/// Row/column membership: every row in code 2 and every column in code 1.
inline bool is_product_codeword(const ProductCode& pc, const BitVector& c) {
    if ((long long)c.size() != pc.N)
        throw Error("is_product_codeword: length " + std::to_string(c.size()) +
                    " does not match N = " + std::to_string(pc.N));
    const int n1 = pc.N1(), n2 = pc.N2();
    BitVector line(n2);
    for (int r = 0; r < n1; ++r) {
        for (int j = 0; j < n2; ++j) line[j] = c[(std::size_t)r * n2 + j];
        if (!is_member(pc.c2, line)) return false;
    }
    line.resize(n1);
    for (int col = 0; col < n2; ++col) {
        for (int r = 0; r < n1; ++r) line[r] = c[(std::size_t)r * n2 + col];
        if (!is_member(pc.c1, line)) return false;
    }
    return true;
}

/// Independent membership route: apply the length-N polar transform and check
/// the composed precoding constraints. Agrees with is_product_codeword.
inline bool is_product_codeword_via_precoding(const ProductCode& pc, const BitVector& c) {
    if ((long long)c.size() != pc.N) throw Error("is_product_codeword_via_precoding: length mismatch");
    const BitVector u = polar_transform(c);
    const CodeSpec& spec = pc.composed_spec;
    std::size_t next_info = 0;
    for (int pos = 1; pos <= spec.N(); ++pos) {
        if (next_info < spec.info_set.size() && spec.info_set[next_info] == pos) {
            ++next_info;
            continue;
        }
        std::uint8_t expect = 0;
        if (auto it = spec.dyn_constraints.find(pos); it != spec.dyn_constraints.end())
            for (int s : it->second) expect ^= u[s - 1];
        if (u[pos - 1] != expect) return false;
    }
    return true;
}

/// Truncated union bound on the block error probability over biAWGN/BPSK:
/// (1/2) A_d erfc(sqrt(d R Eb/N0)). Callers clamp to <= 1 for display.
inline double tub(const ProductCode& pc, double ebn0_db) {
    const DistanceTerms& dt = pc.distance();
    if (!std::isfinite(ebn0_db)) throw Error("tub: non-finite Eb/N0");
    const double snr = std::pow(10.0, ebn0_db / 10.0);
    return 0.5 * (double)dt.a_d * std::erfc(std::sqrt((double)dt.d * pc.R * snr));
}

} // namespace pppc
