#pragma once

// Precoded polar component codes.
//
// A code is specified either by a full-rank k x N precoding matrix P with the
// SC-aimed structure, or equivalently by its constraint sets: the information
// set A, the frozen set F = [1..N] \ A, and for each dynamic frozen index a
// linear constraint u_i = XOR of earlier input bits. Codewords are
// c = u * K2^{(x)n} in natural order (no bit-reversal permutation anywhere);
// the Kronecker power of the 2x2 kernel is self-inverse over GF(2).
//
// All indices in CodeSpec and in every external format are 1-based.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "pppc/errors.hpp"
#include "pppc/gf2.hpp"

namespace pppc {

struct CodeSpec {
    int n = 0;                                 ///< log2 of the blocklength
    int k = 0;                                 ///< code dimension
    std::vector<int> info_set;                 ///< 1-based, strictly increasing
    std::map<int, std::vector<int>> dyn_constraints; ///< target -> sorted source indices, each < target

    int N() const { return 1 << n; }

    bool is_info(int pos) const {
        return std::binary_search(info_set.begin(), info_set.end(), pos);
    }

    /// Throws SpecError if any structural invariant is violated.
    void validate() const {
        if (n < 1 || n > 20) throw SpecError("CodeSpec: n must be in [1, 20]");
        const int len = N();
        if (k < 1 || k > len) throw SpecError("CodeSpec: k must be in [1, N]");
        if ((int)info_set.size() != k)
            throw SpecError("CodeSpec: information set has " + std::to_string(info_set.size()) +
                            " entries, expected k = " + std::to_string(k));
        for (std::size_t j = 0; j < info_set.size(); ++j) {
            if (info_set[j] < 1 || info_set[j] > len)
                throw SpecError("CodeSpec: information position " + std::to_string(info_set[j]) +
                                " outside [1, " + std::to_string(len) + "]");
            if (j > 0 && info_set[j] <= info_set[j - 1])
                throw SpecError("CodeSpec: information set must be strictly increasing");
        }
        for (const auto& [target, sources] : dyn_constraints) {
            if (target < 1 || target > len)
                throw SpecError("CodeSpec: constraint target " + std::to_string(target) +
                                " outside [1, " + std::to_string(len) + "]");
            if (is_info(target))
                throw SpecError("CodeSpec: constraint target " + std::to_string(target) +
                                " is an information position");
            if (sources.empty())
                throw SpecError("CodeSpec: constraint at " + std::to_string(target) +
                                " has no sources");
            for (std::size_t j = 0; j < sources.size(); ++j) {
                const int s = sources[j];
                if (s < 1 || s >= target)
                    throw SpecError("CodeSpec: constraint source " + std::to_string(s) +
                                    " must lie in [1, " + std::to_string(target - 1) +
                                    ") for target " + std::to_string(target));
                if (j > 0 && s <= sources[j - 1])
                    throw SpecError("CodeSpec: constraint sources must be strictly increasing");
                if (!is_info(s) && !dyn_constraints.count(s))
                    throw SpecError("CodeSpec: constraint source " + std::to_string(s) +
                                    " is neither an information position nor a dynamic frozen bit");
            }
        }
    }

    /// Rewrites every constraint so its sources are information positions only,
    /// expanding references to other dynamic frozen bits transitively.
    /// Throws SpecError if a constraint cancels to an empty support.
    CodeSpec canonical() const {
        validate();
        CodeSpec out = *this;
        std::map<int, std::vector<int>> resolved; // target -> info positions, sorted
        for (const auto& [target, sources] : dyn_constraints) {
            std::vector<int> support;
            for (int s : sources) {
                std::vector<int> add = is_info(s) ? std::vector<int>{s} : resolved.at(s);
                std::vector<int> merged;
                std::set_symmetric_difference(support.begin(), support.end(),
                                              add.begin(), add.end(),
                                              std::back_inserter(merged));
                support = std::move(merged);
            }
            if (support.empty())
                throw SpecError("CodeSpec: constraint at " + std::to_string(target) +
                                " expands to an empty information support");
            resolved[target] = support;
        }
        out.dyn_constraints = std::move(resolved);
        return out;
    }

    bool operator==(const CodeSpec& o) const {
        return n == o.n && k == o.k && info_set == o.info_set && dyn_constraints == o.dyn_constraints;
    }
};

/// In-place butterfly for c = u * K2^{(x)n}; length must be a power of two.
/// The transform is its own inverse over GF(2).
inline BitVector polar_transform(BitVector u) {
    const std::size_t len = u.size();
    if (len == 0 || (len & (len - 1)) != 0)
        throw Error("polar_transform: length " + std::to_string(len) + " is not a power of two");
    for (std::size_t h = len / 2; h >= 1; h /= 2)
        for (std::size_t i = 0; i < len; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j)
                u[j] ^= u[j + h];
    return u;
}

/// Checks the SC-aimed structure: (1) the first 1 of each row is the only
/// nonzero entry in its column, and (2) leading columns do not decrease from
/// one row to the next. If `why` is given, it receives a diagnostic naming
/// the violated property.
inline bool is_sc_aimed(const BitMatrix& p, std::string* why = nullptr) {
    const std::size_t k = p.rows(), N = p.cols();
    std::vector<std::size_t> lead(k);
    for (std::size_t r = 0; r < k; ++r) {
        std::size_t c = 0;
        while (c < N && !p.get(r, c)) ++c;
        if (c == N) {
            if (why) *why = "property 1 violated: row " + std::to_string(r + 1) + " has no nonzero entry";
            return false;
        }
        lead[r] = c;
        if (r > 0 && lead[r] < lead[r - 1]) {
            if (why)
                *why = "property 2 violated: leading column of row " + std::to_string(r + 1) + " (" +
                       std::to_string(lead[r] + 1) + ") precedes that of row " + std::to_string(r) +
                       " (" + std::to_string(lead[r - 1] + 1) + ")";
            return false;
        }
    }
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t r2 = 0; r2 < k; ++r2)
            if (r2 != r && p.get(r2, lead[r])) {
                if (why)
                    *why = "property 1 violated: column " + std::to_string(lead[r] + 1) +
                           " (leading for row " + std::to_string(r + 1) + ") has another nonzero entry in row " +
                           std::to_string(r2 + 1);
                return false;
            }
    return true;
}

/// Reads the information set and dynamic frozen constraints off an SC-aimed
/// precoding matrix. Rejects matrices that violate either SC-aimed property.
inline CodeSpec spec_from_precoding(const BitMatrix& p) {
    std::string why;
    if (!is_sc_aimed(p, &why)) throw SpecError("precoding matrix is not SC-aimed: " + why);

    const std::size_t k = p.rows(), N = p.cols();
    int n = 0;
    while ((std::size_t{1} << n) < N) ++n;
    if ((std::size_t{1} << n) != N)
        throw SpecError("precoding matrix has " + std::to_string(N) + " columns, not a power of two");

    CodeSpec spec;
    spec.n = n;
    spec.k = (int)k;
    std::vector<std::size_t> lead(k);
    for (std::size_t r = 0; r < k; ++r) {
        std::size_t c = 0;
        while (!p.get(r, c)) ++c;
        lead[r] = c;
        spec.info_set.push_back((int)c + 1);
    }
    for (std::size_t c = 0; c < N; ++c) {
        if (std::find(lead.begin(), lead.end(), c) != lead.end()) continue;
        std::vector<int> sources;
        for (std::size_t r = 0; r < k; ++r)
            if (p.get(r, c)) sources.push_back((int)lead[r] + 1);
        if (!sources.empty()) spec.dyn_constraints[(int)c + 1] = std::move(sources);
    }
    spec.validate();
    return spec;
}

/// Builds the SC-aimed precoding matrix realizing a code spec: row j has its
/// leading 1 at info position j, and each dynamic frozen column carries the
/// (transitively expanded) information support of its constraint.
inline BitMatrix precoding_from_spec(const CodeSpec& spec) {
    const CodeSpec canon = spec.canonical();
    BitMatrix p(canon.k, canon.N());
    std::map<int, int> row_of; // info position -> row
    for (int j = 0; j < canon.k; ++j) {
        row_of[canon.info_set[j]] = j;
        p.set(j, canon.info_set[j] - 1, 1);
    }
    for (const auto& [target, sources] : canon.dyn_constraints)
        for (int s : sources) p.set(row_of.at(s), target - 1, 1);
    return p;
}

struct PrecodedPolarCode {
    CodeSpec spec;        ///< canonical form: constraint sources are information positions
    BitMatrix precoding;  ///< k x N, SC-aimed, full rank
    BitMatrix generator;  ///< k x N, precoding * K2^{(x)n}

    int N() const { return spec.N(); }
    int k() const { return spec.k; }

    static PrecodedPolarCode from_spec(const CodeSpec& s) {
        PrecodedPolarCode code;
        code.spec = s.canonical();
        code.precoding = precoding_from_spec(code.spec);
        code.generator = transform_rows(code.precoding);
        return code;
    }

    static PrecodedPolarCode from_precoding(const BitMatrix& p) {
        PrecodedPolarCode code;
        code.spec = spec_from_precoding(p);
        code.precoding = p;
        code.generator = transform_rows(p);
        return code;
    }

private:
    // G = P * K2^{(x)n}: transform each row of P.
    static BitMatrix transform_rows(const BitMatrix& p) {
        BitMatrix g(p.rows(), p.cols());
        for (std::size_t r = 0; r < p.rows(); ++r)
            g.set_row_bits(r, polar_transform(p.row_bits(r)));
        return g;
    }
};

/// Fills the pre-transform vector from a message: information bits at A,
/// zeros at plainly frozen positions, and constraint evaluations (in
/// increasing index order) at dynamic frozen positions.
inline BitVector build_polar_input(const CodeSpec& spec, const BitVector& v) {
    if ((int)v.size() != spec.k)
        throw Error("encode: message length " + std::to_string(v.size()) +
                    " does not match k = " + std::to_string(spec.k));
    BitVector u(spec.N(), 0);
    for (int j = 0; j < spec.k; ++j) u[spec.info_set[j] - 1] = v[j] & 1;
    for (const auto& [target, sources] : spec.dyn_constraints) {
        std::uint8_t x = 0;
        for (int s : sources) x ^= u[s - 1];
        u[target - 1] = x;
    }
    return u;
}

/// Two-stage encoding: constraint fill followed by the polar transform.
/// Equals v * generator.
inline BitVector encode(const PrecodedPolarCode& code, const BitVector& v) {
    return polar_transform(build_polar_input(code.spec, v));
}

/// Membership test via the self-inverse transform: recover u = c * K2^{(x)n}
/// and check every frozen constraint.
inline bool is_member(const PrecodedPolarCode& code, const BitVector& c) {
    if ((int)c.size() != code.N())
        throw Error("is_member: length " + std::to_string(c.size()) +
                    " does not match N = " + std::to_string(code.N()));
    const BitVector u = polar_transform(c);
    const CodeSpec& spec = code.spec;
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

} // namespace pppc
