#pragma once

// Named component codes.
//
// Two (16,7) codes ship built in, both with weight enumerator
// 1 + 48 x^6 + 30 x^8 + 48 x^10 + x^16 (the eBCH spectrum):
//   ebch16_7 - the eBCH code written as a precoded polar code
//   opt16_7  - same spectrum, information positions chosen for list decoding
//
// The (32,17) and (32,21) entries are loader slots: their precoding matrices
// are not distributed with this library and must be supplied as spec files
// (mv32_17.spec / mv32_21.spec) in the configured spec directory.
//
// All built-in index sets use the natural bit order c = u * K2^{(x)n}; the
// catalog WEFs are verified in that convention by the test suite.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pppc/polar.hpp"
#include "pppc/spec_io.hpp"

namespace pppc {

struct CatalogEntry {
    std::string name;
    bool builtin = false;
    int N = 0, k = 0;              ///< expected parameters
    std::string note;
    CodeSpec spec;                 ///< meaningful only when builtin
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;

        CodeSpec ebch;
        ebch.n = 4;
        ebch.k = 7;
        ebch.info_set = {4, 7, 8, 12, 14, 15, 16};
        ebch.dyn_constraints = {{6, {4}}, {10, {4, 7}}, {11, {4, 7}}, {13, {7}}};
        v.push_back({"ebch16_7", true, 16, 7,
                     "(16,7) eBCH spectrum, d=6; natural bit order", ebch});

        CodeSpec opt;
        opt.n = 4;
        opt.k = 7;
        opt.info_set = {6, 7, 8, 12, 14, 15, 16};
        opt.dyn_constraints = {{10, {6, 7}}, {11, {6}}};
        v.push_back({"opt16_7", true, 16, 7,
                     "(16,7) eBCH spectrum, d=6, list-decoding-friendly positions; natural bit order", opt});

        v.push_back({"mv32_17", false, 32, 17,
                     "(32,17) d=6 external slot; supply mv32_17.spec", {}});
        v.push_back({"mv32_21", false, 32, 21,
                     "(32,21) d=6 external slot; supply mv32_21.spec", {}});
        return v;
    }();
    return entries;
}

inline const CatalogEntry* catalog_find(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return &e;
    return nullptr;
}

/// Resolves a catalog name or a spec-file path to a component code.
///
/// Catalog names resolve to the built-in spec; external slots look for
/// `<name>.spec` under `spec_dir`. A spec file can shadow a built-in name
/// only when `allow_shadow` is set. Anything that is not a catalog name is
/// treated as a file path.
inline PrecodedPolarCode resolve_code(const std::string& name_or_path,
                                      const std::string& spec_dir = ".",
                                      bool allow_shadow = false) {
    namespace fs = std::filesystem;
    if (const CatalogEntry* e = catalog_find(name_or_path)) {
        const fs::path file = fs::path(spec_dir) / (e->name + ".spec");
        if (e->builtin) {
            if (fs::exists(file)) {
                if (!allow_shadow)
                    throw SpecError("spec file " + file.string() + " would shadow catalog code '" +
                                    e->name + "'; pass --allow-shadow to use it");
                return PrecodedPolarCode::from_spec(load_spec_file(file.string()));
            }
            return PrecodedPolarCode::from_spec(e->spec);
        }
        if (!fs::exists(file))
            throw SpecError("external spec required: catalog slot '" + e->name +
                            "' needs " + file.string());
        PrecodedPolarCode code = PrecodedPolarCode::from_spec(load_spec_file(file.string()));
        if (code.N() != e->N || code.k() != e->k)
            throw SpecError("spec file " + file.string() + " has parameters (" +
                            std::to_string(code.N()) + "," + std::to_string(code.k()) +
                            "), catalog slot '" + e->name + "' expects (" +
                            std::to_string(e->N) + "," + std::to_string(e->k) + ")");
        return code;
    }
    if (!fs::exists(name_or_path))
        throw SpecError("unknown code name or missing spec file: " + name_or_path);
    return PrecodedPolarCode::from_spec(load_spec_file(name_or_path));
}

} // namespace pppc
