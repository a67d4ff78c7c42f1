#pragma once

// Dense GF(2) vectors and matrices. Matrix rows are packed into 64-bit words;
// the public interface deals in plain 0/1 values throughout.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "pppc/errors.hpp"

namespace pppc {

/// A binary vector, one byte per bit, values restricted to {0,1}.
using BitVector = std::vector<std::uint8_t>;

class BitMatrix {
public:
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {
        if (rows == 0 || cols == 0)
            throw Error("BitMatrix: dimensions must be positive");
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
        std::size_t r = rows.size();
        std::size_t c = rows.begin()->size();
        BitMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw Error("BitMatrix: ragged rows");
            std::size_t j = 0;
            for (int v : row) m.set(i, j++, v != 0);
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = words_[r * wpr_ + (c >> 6)];
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        w = v ? (w | mask) : (w & ~mask);
    }

    /// XOR row `src` into row `dst`.
    void row_xor(std::size_t dst, std::size_t src) {
        std::uint64_t* d = &words_[dst * wpr_];
        const std::uint64_t* s = &words_[src * wpr_];
        for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
    }

    /// XOR row `src_row` of another matrix with the same column count into row `dst`.
    void row_xor_other(std::size_t dst, const BitMatrix& src, std::size_t src_row) {
        std::uint64_t* d = &words_[dst * wpr_];
        const std::uint64_t* s = &src.words_[src_row * src.wpr_];
        for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(&words_[a * wpr_], &words_[a * wpr_] + wpr_, &words_[b * wpr_]);
    }

    BitVector row_bits(std::size_t r) const {
        BitVector out(cols_);
        for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
        return out;
    }

    void set_row_bits(std::size_t r, const BitVector& bits) {
        for (std::size_t c = 0; c < cols_; ++c) set(r, c, bits[c] != 0);
    }

    const std::uint64_t* row_words(std::size_t r) const { return &words_[r * wpr_]; }
    std::size_t words_per_row() const { return wpr_; }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && words_ == o.words_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
inline BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a.get(i, j)) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    if (b.get(p, q)) out.set(i * b.rows() + p, j * b.cols() + q, 1);
        }
    return out;
}

/// GF(2) rank by Gaussian elimination on a working copy.
inline std::size_t rank_gf2(BitMatrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(rank, pivot);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rank && m.get(r, c)) m.row_xor(r, rank);
        ++rank;
    }
    return rank;
}

/// Row-vector product v * m over GF(2); length(v) must equal rows(m).
inline BitVector mat_vec_gf2(const BitVector& v, const BitMatrix& m) {
    if (v.size() != m.rows())
        throw Error("mat_vec_gf2: vector length " + std::to_string(v.size()) +
                    " does not match matrix rows " + std::to_string(m.rows()));
    std::vector<std::uint64_t> acc(m.words_per_row(), 0);
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (!v[r]) continue;
        const std::uint64_t* w = m.row_words(r);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= w[i];
    }
    BitVector out(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] = (acc[c >> 6] >> (c & 63)) & 1u;
    return out;
}

/// Matrix product a * b over GF(2).
inline BitMatrix mat_mul_gf2(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw Error("mat_mul_gf2: dimension mismatch");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.get(i, k)) out.row_xor_other(i, b, k);
    return out;
}

/// The 2x2 Hadamard kernel [[1,0],[1,1]].
inline BitMatrix hadamard_kernel() {
    return BitMatrix::from_rows({{1, 0}, {1, 1}});
}

/// n-fold Kronecker power of the Hadamard kernel (n >= 0; n = 0 gives [1]).
inline BitMatrix hadamard_kernel_power(int n) {
    BitMatrix m = BitMatrix::identity(1);
    for (int i = 0; i < n; ++i) m = kron(m, hadamard_kernel());
    return m;
}

} // namespace pppc
