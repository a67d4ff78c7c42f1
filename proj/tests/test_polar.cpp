#include <catch2/catch.hpp>

#include <set>

#include "pppc/catalog.hpp"
#include "pppc/spec_io.hpp"
#include "test_util.hpp"

using namespace pppc;

TEST_CASE("catalog (16,7) codes carry the documented constraint sets") {
    const CodeSpec& ebch = catalog_find("ebch16_7")->spec;
    CHECK(ebch.info_set == std::vector<int>{4, 7, 8, 12, 14, 15, 16});
    CHECK(ebch.dyn_constraints ==
          std::map<int, std::vector<int>>{{6, {4}}, {10, {4, 7}}, {11, {4, 7}}, {13, {7}}});

    const CodeSpec& opt = catalog_find("opt16_7")->spec;
    CHECK(opt.info_set == std::vector<int>{6, 7, 8, 12, 14, 15, 16});
    CHECK(opt.dyn_constraints == std::map<int, std::vector<int>>{{10, {6, 7}}, {11, {6}}});

    CHECK(catalog_find("opt16_7")->N == 16);
    CHECK(catalog_find("opt16_7")->k == 7);
}

TEST_CASE("spec extraction recovers the constraint sets from the matrices") {
    for (const char* name : {"ebch16_7", "opt16_7"}) {
        const CodeSpec& spec = catalog_find(name)->spec;
        const BitMatrix p = precoding_from_spec(spec);
        CHECK(p.rows() == 7);
        CHECK(p.cols() == 16);
        CHECK(spec_from_precoding(p) == spec);
    }
}

TEST_CASE("plain polar precoding extracts to empty constraints") {
    CodeSpec spec;
    spec.n = 3;
    spec.k = 3;
    spec.info_set = {4, 6, 7};
    const BitMatrix p = precoding_from_spec(spec);
    for (int j = 0; j < 3; ++j) {
        int ones = 0;
        for (int c = 0; c < 8; ++c) ones += p.get(j, c);
        CHECK(ones == 1);
        CHECK(p.get(j, spec.info_set[j] - 1));
    }
    CHECK(spec_from_precoding(p) == spec);
    CHECK(spec_from_precoding(p).dyn_constraints.empty());
}

TEST_CASE("non-SC-aimed matrices are rejected with the violated property named") {
    // extra nonzero in a leading column
    BitMatrix bad1(2, 4);
    bad1.set(0, 0, 1);
    bad1.set(1, 0, 1);
    bad1.set(1, 2, 1);
    CHECK_THROWS_WITH(spec_from_precoding(bad1), Catch::Contains("property 1"));

    // leading columns out of order
    BitMatrix bad2(2, 4);
    bad2.set(0, 2, 1);
    bad2.set(1, 0, 1);
    CHECK_THROWS_WITH(spec_from_precoding(bad2), Catch::Contains("property 2"));

    // all-zero row
    BitMatrix bad3(2, 4);
    bad3.set(0, 0, 1);
    CHECK_THROWS_WITH(spec_from_precoding(bad3), Catch::Contains("property 1"));
}

TEST_CASE("precoding_from_spec round-trips on random SC-aimed specs") {
    Rng rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + (int)(rng.next_u64() % 3);
        const CodeSpec spec = testutil::random_sc_aimed_spec(rng, n);
        const BitMatrix p = precoding_from_spec(spec);
        std::string why;
        CHECK(is_sc_aimed(p, &why));
        CHECK(spec_from_precoding(p) == spec.canonical());
    }
}

TEST_CASE("constraints may reference dynamic frozen bits and expand transitively") {
    CodeSpec spec;
    spec.n = 3;
    spec.k = 2;
    spec.info_set = {2, 3};
    spec.dyn_constraints = {{4, {2, 3}}, {6, {3, 4}}}; // u6 = u3 ^ u4 = u2
    const BitMatrix p = precoding_from_spec(spec);
    const CodeSpec canon = spec_from_precoding(p);
    CHECK(canon.dyn_constraints == std::map<int, std::vector<int>>{{4, {2, 3}}, {6, {2}}});

    CodeSpec bad = spec;
    bad.dyn_constraints = {{4, {2, 3}}, {6, {2, 3, 4}}}; // cancels to nothing
    CHECK_THROWS_WITH(precoding_from_spec(bad), Catch::Contains("empty"));
}

TEST_CASE("polar transform basics") {
    CHECK(polar_transform(BitVector(16, 0)) == BitVector(16, 0));

    BitVector last(16, 0);
    last[15] = 1;
    CHECK(polar_transform(last) == BitVector(16, 1));

    Rng rng(44);
    for (std::size_t len : {8u, 16u, 32u})
        for (int trial = 0; trial < 100; ++trial) {
            const BitVector u = testutil::random_bits(rng, len);
            CHECK(polar_transform(polar_transform(u)) == u);
        }

    CHECK_THROWS_AS(polar_transform(BitVector(12, 0)), Error);
}

TEST_CASE("transform equals the explicit matrix product") {
    Rng rng(45);
    const BitMatrix k16 = hadamard_kernel_power(4);
    for (int trial = 0; trial < 50; ++trial) {
        const BitVector u = testutil::random_bits(rng, 16);
        CHECK(polar_transform(u) == mat_vec_gf2(u, k16));
    }
}

TEST_CASE("encoding: two routes agree and weights match the (16,7) spectrum") {
    const PrecodedPolarCode code = PrecodedPolarCode::from_spec(catalog_find("opt16_7")->spec);

    CHECK(encode(code, BitVector(7, 0)) == BitVector(16, 0));

    for (int j = 0; j < 7; ++j) {
        BitVector v(7, 0);
        v[j] = 1;
        CHECK(encode(code, v) == code.generator.row_bits(j));
    }

    const std::set<int> allowed = {0, 6, 8, 10, 16};
    std::set<BitVector> seen;
    for (int m = 0; m < 128; ++m) {
        BitVector v(7);
        for (int j = 0; j < 7; ++j) v[j] = (m >> j) & 1;
        const BitVector c = encode(code, v);
        int w = 0;
        for (auto b : c) w += b;
        CHECK(allowed.count(w) == 1);
        seen.insert(c);
        CHECK(encode(code, v) == mat_vec_gf2(v, code.generator));
    }
    CHECK(seen.size() == 128); // 2^k distinct codewords
}

TEST_CASE("membership") {
    const PrecodedPolarCode code = PrecodedPolarCode::from_spec(catalog_find("opt16_7")->spec);
    CHECK(is_member(code, BitVector(16, 0)));

    Rng rng(55);
    for (int trial = 0; trial < 1000; ++trial) {
        const BitVector v = testutil::random_bits(rng, 7);
        BitVector c = encode(code, v);
        CHECK(is_member(code, c));
        const std::size_t flip = rng.next_u64() % 16;
        c[flip] ^= 1;
        CHECK_FALSE(is_member(code, c));
    }
}

TEST_CASE("plain polar membership reduces to zero frozen bits") {
    CodeSpec spec;
    spec.n = 3;
    spec.k = 4;
    spec.info_set = {4, 6, 7, 8};
    const PrecodedPolarCode code = PrecodedPolarCode::from_spec(spec);
    Rng rng(56);
    for (int trial = 0; trial < 200; ++trial) {
        const BitVector c = testutil::random_bits(rng, 8);
        const BitVector u = polar_transform(c);
        bool frozen_zero = true;
        for (int pos : {1, 2, 3, 5}) frozen_zero = frozen_zero && u[pos - 1] == 0;
        CHECK(is_member(code, c) == frozen_zero);
    }
}

TEST_CASE("external catalog slots demand a spec file") {
    CHECK_THROWS_WITH(resolve_code("mv32_17", "/nonexistent-dir"),
                      Catch::Contains("external spec required"));
    CHECK_THROWS_WITH(resolve_code("no_such_code", "/nonexistent-dir"),
                      Catch::Contains("unknown code"));
}

TEST_CASE("spec files round-trip bit-exactly") {
    const CodeSpec& opt = catalog_find("opt16_7")->spec;
    const std::string text = format_spec(opt);
    CHECK(parse_spec(text) == opt);
    CHECK(format_spec(parse_spec(text)) == text);

    // matrix form loads to the same spec
    std::string rows;
    const BitMatrix p = precoding_from_spec(opt);
    for (std::size_t r = 0; r < p.rows(); ++r) {
        rows += "row: ";
        for (std::size_t c = 0; c < p.cols(); ++c) rows += p.get(r, c) ? '1' : '0';
        rows += '\n';
    }
    CHECK(parse_spec(rows) == opt);
}

TEST_CASE("spec parse errors carry line numbers") {
    CHECK_THROWS_WITH(parse_spec("n: 4\nk: 7\nA: [6 7]\n"), Catch::Contains("line 3"));
    CHECK_THROWS_WITH(parse_spec("n: 4\nbogus\n"), Catch::Contains("line 2"));
    CHECK_THROWS_WITH(parse_spec("n: 4\nk: 1\n"), Catch::Contains("missing field 'A'"));
    CHECK_THROWS_WITH(parse_spec("n: 2\nk: 1\nA: [2]\n2: [1]\n"),
                      Catch::Contains("information position"));
}
