#pragma once

// Iterative decoding of a 2-D product code via soft-output SCL component
// decoding. Rows and columns are decoded alternately; each pass over all
// lines of one orientation is a half iteration. After every half iteration
// the hard decision of the a-posteriori matrix is tested for product-code
// membership, which is also the termination rule. Between half iterations
// the extrinsic matrix L_e = L_app - L_ch - L_a is scaled by the
// per-half-iteration factor alpha and becomes the next a-priori matrix.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pppc/errors.hpp"
#include "pppc/product.hpp"
#include "pppc/scl.hpp"

namespace pppc {

enum class LlrRole { channel, apriori, posterior, extrinsic };

struct LlrGrid {
    int rows = 0, cols = 0;
    LlrRole role = LlrRole::channel;
    std::vector<double> v;

    LlrGrid() = default;
    LlrGrid(int r, int c, LlrRole ro) : rows(r), cols(c), role(ro), v((std::size_t)r * c, 0.0) {}

    double& at(int r, int c) { return v[(std::size_t)r * cols + c]; }
    double at(int r, int c) const { return v[(std::size_t)r * cols + c]; }
};

struct DecodeOutcome {
    BitVector codeword;       ///< length N, row-major flattening
    bool valid = false;       ///< is_product_codeword(codeword)
    int half_iterations_used = 0;
    bool converged_early = false;
};

/// Observer payload for one non-terminating half iteration (test hook).
struct HalfIterationView {
    int half = 0; ///< 1-based half-iteration index
    bool row_pass = false;
    const LlrGrid& l_ch;
    const LlrGrid& l_a;
    const LlrGrid& l_app;
    const LlrGrid& l_e;
};

struct TurboConfig {
    int list_size = 8;
    int max_iterations = 20;          ///< full iterations; 2x half iterations
    std::vector<double> alpha;        ///< 2*max_iterations entries; empty selects the default schedule
    enum class FirstPass { rows, columns } first_pass = FirstPass::rows;
    double input_clip = 40.0;         ///< SCL input clipping; <= 0 disables
    SoftOutputConfig soft;
    double extrinsic_clip = 40.0;     ///< a-priori clipping after alpha scaling; <= 0 disables
    std::function<void(const HalfIterationView&)> observer;
};

/// Ramp-up schedule for the extrinsic scaling: pairs (1/8, 1/8, 2/8, 2/8,
/// 3/8, 3/8) then 4/8 for every later half iteration, 2*i_max entries total.
inline std::vector<double> default_alpha(int i_max) {
    if (i_max < 1) throw Error("default_alpha: i_max must be >= 1");
    std::vector<double> a(2 * (std::size_t)i_max);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (double)std::min<std::size_t>(4, i / 2 + 1) / 8.0;
    return a;
}

/// Elementwise hard decision, bit 0 where the LLR is >= 0, flattened row-major.
inline BitVector hard_decision(const LlrGrid& grid) {
    BitVector out(grid.v.size());
    for (std::size_t i = 0; i < grid.v.size(); ++i) out[i] = grid.v[i] < 0 ? 1 : 0;
    return out;
}

/// Checks a TurboConfig and returns the alpha schedule it implies.
inline std::vector<double> resolve_alpha(const TurboConfig& cfg) {
    if (cfg.list_size < 1) throw Error("turbo config: list size must be >= 1");
    if (cfg.max_iterations < 1) throw Error("turbo config: max_iterations must be >= 1");
    const std::vector<double> alpha =
        cfg.alpha.empty() ? default_alpha(cfg.max_iterations) : cfg.alpha;
    if ((int)alpha.size() != 2 * cfg.max_iterations)
        throw Error("turbo config: alpha must have 2*max_iterations = " +
                    std::to_string(2 * cfg.max_iterations) + " entries, got " +
                    std::to_string(alpha.size()));
    for (double a : alpha)
        if (!(a > 0.0 && a <= 1.0)) throw Error("turbo config: alpha entries must lie in (0, 1]");
    return alpha;
}

inline DecodeOutcome turbo_decode(const ProductCode& pc, const LlrGrid& l_ch, const TurboConfig& cfg) {
    const int n1 = pc.N1(), n2 = pc.N2();
    if (l_ch.rows != n1 || l_ch.cols != n2)
        throw Error("turbo_decode: grid is " + std::to_string(l_ch.rows) + "x" +
                    std::to_string(l_ch.cols) + ", product code needs " + std::to_string(n1) + "x" +
                    std::to_string(n2));
    for (double x : l_ch.v)
        if (!std::isfinite(x)) throw Error("turbo_decode: non-finite channel LLR");
    const std::vector<double> alpha = resolve_alpha(cfg);

    LlrGrid l_a(n1, n2, LlrRole::apriori);
    LlrGrid l_app(n1, n2, LlrRole::posterior);
    LlrGrid l_e(n1, n2, LlrRole::extrinsic);

    SclDecoder dec_row(pc.c2), dec_col(pc.c1);
    ScList list;
    std::vector<double> line_in(std::max(n1, n2)), line_out(std::max(n1, n2));

    const int total_halves = 2 * cfg.max_iterations;
    BitVector chat;
    for (int half = 1; half <= total_halves; ++half) {
        const bool row_pass = (cfg.first_pass == TurboConfig::FirstPass::rows) == (half % 2 == 1);
        if (row_pass) {
            for (int r = 0; r < n1; ++r) {
                for (int j = 0; j < n2; ++j) line_in[j] = l_ch.at(r, j) + l_a.at(r, j);
                dec_row.decode_into({line_in.data(), (std::size_t)n2}, cfg.list_size, cfg.input_clip, list);
                soft_output_into(list, pc.c2, cfg.soft, {line_out.data(), (std::size_t)n2});
                for (int j = 0; j < n2; ++j) l_app.at(r, j) = line_out[j];
            }
        } else {
            for (int c = 0; c < n2; ++c) {
                for (int r = 0; r < n1; ++r) line_in[r] = l_ch.at(r, c) + l_a.at(r, c);
                dec_col.decode_into({line_in.data(), (std::size_t)n1}, cfg.list_size, cfg.input_clip, list);
                soft_output_into(list, pc.c1, cfg.soft, {line_out.data(), (std::size_t)n1});
                for (int r = 0; r < n1; ++r) l_app.at(r, c) = line_out[r];
            }
        }

        chat = hard_decision(l_app);
        if (is_product_codeword(pc, chat))
            return {std::move(chat), true, half, true};
        if (half == total_halves) break;

        for (std::size_t i = 0; i < l_e.v.size(); ++i) l_e.v[i] = l_app.v[i] - l_ch.v[i] - l_a.v[i];
        if (cfg.observer) cfg.observer(HalfIterationView{half, row_pass, l_ch, l_a, l_app, l_e});
        const double a = alpha[half]; // entering half iteration half+1 (1-based)
        for (std::size_t i = 0; i < l_a.v.size(); ++i)
            l_a.v[i] = clip_llr(a * l_e.v[i], cfg.extrinsic_clip);
    }
    return {std::move(chat), false, total_halves, false};
}

} // namespace pppc
