#pragma once

// Code-spec file format. Line oriented, 1-based indices, two forms.
//
// Constraint form:
//
//     # (16,7) component code
//     n: 4
//     k: 7
//     A: [6, 7, 8, 12, 14, 15, 16]
//     10: [6, 7]
//     11: [6]
//
// `n`, `k` and `A` may appear in any order; a line whose key is an integer
// maps a dynamic frozen index to its constraint source indices.
//
// Matrix form (one `row:` line per precoding-matrix row, 0/1 characters):
//
//     row: 0000010000000000
//     row: 0000001001100000
//     ...
//
// `n` and `k`, if present, are checked against the derived dimensions. Blank
// lines and `#` comments are ignored in both forms. Serialization always
// emits the canonical constraint form, so parse(format(spec)) round-trips
// bit-exactly.

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pppc/errors.hpp"
#include "pppc/polar.hpp"

namespace pppc {

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return s.substr(b, e - b);
}

inline int parse_int(const std::string& tok, int line_no, const std::string& what) {
    const std::string t = strip(tok);
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(t, &pos);
    } catch (const std::exception&) {
        throw SpecError("line " + std::to_string(line_no) + ": expected integer for " + what +
                        ", got '" + t + "'");
    }
    if (pos != t.size())
        throw SpecError("line " + std::to_string(line_no) + ": trailing characters after " + what +
                        " in '" + t + "'");
    return v;
}

inline std::vector<int> parse_index_list(const std::string& body, int line_no, const std::string& what) {
    std::string t = strip(body);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw SpecError("line " + std::to_string(line_no) + ": " + what + " must be a bracketed list");
    t = t.substr(1, t.size() - 2);
    std::vector<int> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(item, line_no, what + " entry"));
    if (out.empty())
        throw SpecError("line " + std::to_string(line_no) + ": " + what + " must not be empty");
    return out;
}

} // namespace detail

/// Raw parse result: exactly one of `spec` (constraint form) or `matrix`
/// (matrix form) is set.
struct ParsedSpecFile {
    std::optional<CodeSpec> spec;
    std::optional<BitMatrix> matrix;
};

/// Parses either grammar form. Errors carry the offending line number.
/// Structural validation of the constraint form (CodeSpec::validate) is left
/// to the caller so diagnostic tools can report on malformed specs.
inline ParsedSpecFile parse_spec_file(const std::string& text) {
    CodeSpec spec;
    bool have_n = false, have_k = false, have_a = false, have_constraints = false;
    std::vector<BitVector> rows;
    std::stringstream lines(text);
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        const std::string t = detail::strip(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw SpecError("line " + std::to_string(line_no) + ": expected 'key: value'");
        const std::string key = detail::strip(t.substr(0, colon));
        const std::string value = t.substr(colon + 1);
        if (key == "n") {
            spec.n = detail::parse_int(value, line_no, "n");
            have_n = true;
        } else if (key == "k") {
            spec.k = detail::parse_int(value, line_no, "k");
            have_k = true;
        } else if (key == "A") {
            spec.info_set = detail::parse_index_list(value, line_no, "A");
            have_a = true;
        } else if (key == "row") {
            const std::string bits = detail::strip(value);
            BitVector row(bits.size());
            for (std::size_t i = 0; i < bits.size(); ++i) {
                if (bits[i] != '0' && bits[i] != '1')
                    throw SpecError("line " + std::to_string(line_no) +
                                    ": matrix rows must contain only 0/1 characters");
                row[i] = bits[i] == '1';
            }
            if (row.empty())
                throw SpecError("line " + std::to_string(line_no) + ": empty matrix row");
            if (!rows.empty() && rows.front().size() != row.size())
                throw SpecError("line " + std::to_string(line_no) + ": matrix row length " +
                                std::to_string(row.size()) + " differs from previous rows (" +
                                std::to_string(rows.front().size()) + ")");
            rows.push_back(std::move(row));
        } else {
            const int target = detail::parse_int(key, line_no, "constraint target");
            if (spec.dyn_constraints.count(target))
                throw SpecError("line " + std::to_string(line_no) + ": duplicate constraint for index " +
                                std::to_string(target));
            spec.dyn_constraints[target] = detail::parse_index_list(value, line_no, "constraint sources");
            have_constraints = true;
        }
    }

    if (!rows.empty()) {
        if (have_a || have_constraints)
            throw SpecError("spec file: matrix form must not mix with 'A' or constraint lines");
        BitMatrix p(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) p.set_row_bits(r, rows[r]);
        if (have_k && spec.k != (int)p.rows())
            throw SpecError("spec file: k = " + std::to_string(spec.k) + " does not match " +
                            std::to_string(p.rows()) + " matrix rows");
        if (have_n && (std::size_t{1} << spec.n) != p.cols())
            throw SpecError("spec file: n = " + std::to_string(spec.n) + " does not match row length " +
                            std::to_string(p.cols()));
        return {.spec = std::nullopt, .matrix = std::move(p)};
    }
    if (!have_n) throw SpecError("spec file: missing field 'n'");
    if (!have_k) throw SpecError("spec file: missing field 'k'");
    if (!have_a) throw SpecError("spec file: missing field 'A'");
    return {.spec = std::move(spec), .matrix = std::nullopt};
}

/// Parses and fully validates a spec in either form into a CodeSpec.
inline CodeSpec parse_spec(const std::string& text) {
    ParsedSpecFile parsed = parse_spec_file(text);
    if (parsed.matrix) return spec_from_precoding(*parsed.matrix);
    parsed.spec->validate();
    return *parsed.spec;
}

/// Canonical serialization (constraint form).
inline std::string format_spec(const CodeSpec& spec) {
    std::ostringstream out;
    auto list = [](const std::vector<int>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(v[i]);
        }
        return s + "]";
    };
    out << "n: " << spec.n << "\n";
    out << "k: " << spec.k << "\n";
    out << "A: " << list(spec.info_set) << "\n";
    for (const auto& [target, sources] : spec.dyn_constraints)
        out << target << ": " << list(sources) << "\n";
    return out.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline CodeSpec load_spec_file(const std::string& path) {
    try {
        return parse_spec(read_text_file(path));
    } catch (const SpecError& e) {
        throw SpecError(path + ": " + e.what());
    }
}

inline void save_spec_file(const std::string& path, const CodeSpec& spec) {
    std::ofstream out(path);
    if (!out) throw SpecError("cannot write spec file: " + path);
    out << format_spec(spec);
}

} // namespace pppc
