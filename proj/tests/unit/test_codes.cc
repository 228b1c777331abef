// Copyright 2026 The mzqbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mzqbc/codes.h"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "mzqbc/error.h"

using namespace mzqbc;
using namespace mzqbc::codes;

namespace {

// Minimum distance over all pairs of distinct codewords, independent of the
// library's weight enumeration.
int pairwise_distance(const LinearCode &code) {
    auto words = code.codewords();
    int best = code.n() + 1;
    for (size_t i = 0; i < words.size(); i++) {
        for (size_t j = i + 1; j < words.size(); j++) {
            best = std::min(best, hamming_distance(words[i], words[j]));
        }
    }
    return best;
}

std::map<int, int> weight_distribution(const LinearCode &code) {
    std::map<int, int> out;
    for (const auto &c : code.codewords()) {
        out[c.weight()]++;
    }
    return out;
}

}  // namespace

TEST(BitString, text_round_trip_and_indexing) {
    auto b = BitString::from_string("1011");
    EXPECT_EQ(b.length(), 4);
    EXPECT_EQ(b.bit(0), 1);
    EXPECT_EQ(b.bit(1), 0);
    EXPECT_EQ(b.to_string(), "1011");
    EXPECT_EQ(b.weight(), 3);
    EXPECT_EQ(b.support(), (std::vector<int>{0, 2, 3}));
    EXPECT_EQ(b.flipped(1).to_string(), "1111");
    EXPECT_THROW(BitString::from_string("10a1"), ParameterError);
    EXPECT_THROW(b.bit(4), ParameterError);
}

TEST(BitString, xor_and_distance) {
    auto a = BitString::from_string("1100");
    auto b = BitString::from_string("1010");
    EXPECT_EQ((a ^ b).to_string(), "0110");
    EXPECT_EQ(hamming_distance(a, b), 2);
    EXPECT_EQ(parity(a, b), 1);
    EXPECT_THROW(hamming_distance(a, BitString::from_string("1")), ParameterError);
}

TEST(LinearCode, catalog_parameters) {
    struct Expect {
        const char *name;
        int n, k, d;
    };
    for (auto e : {Expect{"repetition3", 3, 1, 3}, Expect{"hamming7", 7, 4, 3}, Expect{"ext_hamming8", 8, 4, 4},
                   Expect{"golay24", 24, 12, 8}}) {
        auto code = builtin_code(e.name);
        EXPECT_EQ(code.n(), e.n) << e.name;
        EXPECT_EQ(code.k(), e.k) << e.name;
        EXPECT_EQ(code.d(), e.d) << e.name;
    }
}

TEST(LinearCode, distance_matches_pairwise_brute_force) {
    for (const auto &name : {"repetition3", "hamming7", "ext_hamming8"}) {
        auto code = builtin_code(name);
        EXPECT_EQ(code.d(), pairwise_distance(code)) << name;
    }
    Rng rng(9);
    for (int t = 0; t < 20; t++) {
        int n = 4 + static_cast<int>(uniform_below(rng, 8));
        int k = 1 + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(std::min(n - 1, 7))));
        auto code = random_code(n, k, rng);
        EXPECT_EQ(code.d(), pairwise_distance(code));
    }
}

TEST(LinearCode, hamming_codewords_satisfy_parity_checks) {
    // Parity checks of the systematic [I | A] generator: H = [A^T | I].
    auto code = hamming_7_4();
    const int h[3][7] = {{1, 0, 1, 1, 1, 0, 0}, {1, 1, 1, 0, 0, 1, 0}, {0, 1, 1, 1, 0, 0, 1}};
    for (const auto &c : code.codewords()) {
        for (const auto &row : h) {
            int s = 0;
            for (int i = 0; i < 7; i++) {
                s ^= row[i] & c.bit(i);
            }
            EXPECT_EQ(s, 0) << c.to_string();
        }
    }
}

TEST(LinearCode, golay_weight_enumerator) {
    auto dist = weight_distribution(golay_24_12());
    std::map<int, int> expected = {{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
    EXPECT_EQ(dist, expected);
}

TEST(LinearCode, extended_hamming_weight_enumerator) {
    std::map<int, int> expected = {{0, 1}, {4, 14}, {8, 1}};
    EXPECT_EQ(weight_distribution(extended_hamming_8_4()), expected);
}

TEST(LinearCode, linearity_and_membership) {
    auto code = hamming_7_4();
    auto words = code.codewords();
    std::set<std::string> all;
    for (const auto &w : words) {
        all.insert(w.to_string());
    }
    EXPECT_EQ(all.size(), 16u);
    for (const auto &a : words) {
        for (const auto &b : words) {
            EXPECT_TRUE(code.contains(a ^ b));
        }
    }
    int members = 0;
    for (uint64_t w = 0; w < 128; w++) {
        members += code.contains(BitString(7, w)) ? 1 : 0;
    }
    EXPECT_EQ(members, 16);
}

TEST(LinearCode, rejects_bad_generators) {
    EXPECT_THROW(code_from_generator({}), ParameterError);
    EXPECT_THROW(code_from_generator({{1, 0, 1}, {1, 0}}), ParameterError);
    EXPECT_THROW(code_from_generator({{1, 1, 0}, {1, 1, 0}}), ParameterError);
    EXPECT_THROW(code_from_generator({{1, 2, 0}}), ParameterError);
}

TEST(LinearCode, enumeration_guard) {
    std::vector<BitString> rows;
    for (int i = 0; i < 25; i++) {
        BitString r(30);
        r.set(i, 1);
        rows.push_back(r);
    }
    EXPECT_THROW(LinearCode::from_generator(rows), GuardError);
}

TEST(LinearCode, protocol_features_and_threshold) {
    EXPECT_FALSE(repetition_code(3).satisfies_protocol_features());
    auto code = extended_hamming_8_4();
    EXPECT_TRUE(code.satisfies_protocol_features());
    EXPECT_DOUBLE_EQ(code.abort_threshold(), 0.5);
}

TEST(CosetSplit, parity_soundness_and_balance) {
    auto code = hamming_7_4();
    Rng rng(3);
    for (int t = 0; t < 20; t++) {
        auto r = random_nonzero(7, rng);
        auto split = coset_split(code, r);
        EXPECT_EQ(split.parity0.size() + split.parity1.size(), 16u);
        for (int b = 0; b < 2; b++) {
            for (const auto &c : split.of(b)) {
                EXPECT_EQ(parity(c, r), b);
            }
        }
    }
    EXPECT_THROW(coset_split(code, BitString(7)), ParameterError);
}

TEST(CosetSplit, empty_coset_is_reported_on_sampling) {
    auto code = repetition_code(2);
    auto r = BitString::from_string("11");
    Rng rng(1);
    EXPECT_THROW(sample_codeword(code, r, 1, rng), ParameterError);
    EXPECT_NO_THROW(sample_codeword(code, r, 0, rng));
}

TEST(Midpoint, takes_first_half_from_c_a) {
    auto m = midpoint_word(BitString::from_string("0000"), BitString::from_string("1111"));
    EXPECT_EQ(hamming_distance(m, BitString::from_string("0000")), 2);
    EXPECT_EQ(hamming_distance(m, BitString::from_string("1111")), 2);
    EXPECT_EQ(m.to_string(), "0011");
    auto odd = midpoint_word(BitString::from_string("000"), BitString::from_string("111"));
    EXPECT_EQ(odd.to_string(), "001");
    EXPECT_THROW(midpoint_word(BitString::from_string("00"), BitString::from_string("01")), ParameterError);
}

TEST(Midpoint, minimum_distance_pair_crosses_cosets) {
    auto code = extended_hamming_8_4();
    auto r = BitString::from_string("10000000");
    auto [a, b] = minimum_distance_pair(code, &r);
    EXPECT_EQ(hamming_distance(a, b), code.d());
    EXPECT_TRUE(code.contains(a));
    EXPECT_TRUE(code.contains(b));
    EXPECT_NE(parity(a, r), parity(b, r));
}

TEST(Consistent, counts_follow_free_coordinates) {
    auto code = hamming_7_4();
    EXPECT_EQ(consistent_codewords(code, {}, {}).size(), 16u);
    auto c = code.encode(0b1011);
    std::vector<int> all(7);
    std::vector<int> values(7);
    for (int i = 0; i < 7; i++) {
        all[i] = i;
        values[i] = c.bit(i);
    }
    auto exact = consistent_codewords(code, all, values);
    ASSERT_EQ(exact.size(), 1u);
    EXPECT_EQ(exact[0], c);
    // The first 4 coordinates are information positions: each fixed one halves.
    for (int m = 0; m <= 4; m++) {
        std::vector<int> pos(all.begin(), all.begin() + m);
        std::vector<int> val(values.begin(), values.begin() + m);
        EXPECT_EQ(consistent_codewords(code, pos, val).size(), size_t{1} << (4 - m));
    }
    std::vector<int> dup = {1, 1};
    std::vector<int> vals = {0, 0};
    EXPECT_THROW(consistent_codewords(code, dup, vals), ParameterError);
}

TEST(Consistent, bounds_for_any_three_positions) {
    auto code = hamming_7_4();
    for (int a = 0; a < 7; a++) {
        for (int b = a + 1; b < 7; b++) {
            for (int c = b + 1; c < 7; c++) {
                std::vector<int> pos = {a, b, c};
                std::vector<int> val = {0, 0, 0};
                auto n = consistent_codewords(code, pos, val).size();
                EXPECT_GE(n, 2u);
                EXPECT_LE(n, 16u);
            }
        }
    }
}

TEST(Io, generator_text_round_trip) {
    auto code = extended_hamming_8_4();
    auto text = format_generator_text(code);
    auto back = parse_generator_text("# comment\n\n" + text);
    EXPECT_EQ(back.generator(), code.generator());
    EXPECT_EQ(back.d(), 4);
    EXPECT_THROW(parse_generator_text("10 1\n"), ParameterError);
    EXPECT_THROW(read_generator_file("/nonexistent/generator.txt"), ParameterError);
}

TEST(Io, codeword_csv_has_bits_header) {
    auto words = repetition_code(3).codewords();
    std::ostringstream out;
    write_codewords_csv(out, words);
    EXPECT_EQ(out.str(), "bits\n000\n111\n");
}
