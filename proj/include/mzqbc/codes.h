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

#ifndef MZQBC_CODES_H
#define MZQBC_CODES_H

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mzqbc/rng.h"

/// Binary linear (n, k, d) codes over GF(2), sized for brute-force analysis.
namespace mzqbc::codes {

constexpr int kMaxLength = 64;
/// Largest dimension k whose 2^k codewords we are willing to enumerate.
constexpr int kMaxEnumerationDimension = 24;

/// A fixed-length bit string. Position i (0-based) is the i-th character of
/// the textual form, e.g. "0110" has bits 1 and 2 set.
class BitString {
   public:
    BitString() = default;
    explicit BitString(int length, uint64_t word = 0);
    static BitString from_string(std::string_view text);
    static BitString from_bits(std::span<const int> bits);
    static BitString ones(int length);

    int length() const {
        return length_;
    }
    uint64_t word() const {
        return word_;
    }
    int bit(int position) const;
    void set(int position, int value);
    BitString flipped(int position) const;
    int weight() const;
    bool is_zero() const {
        return word_ == 0;
    }
    std::string to_string() const;
    /// Positions whose bit is 1, ascending.
    std::vector<int> support() const;

    BitString operator^(const BitString &other) const;
    bool operator==(const BitString &other) const = default;
    bool operator<(const BitString &other) const;

   private:
    int length_ = 0;
    uint64_t word_ = 0;
};

int hamming_distance(const BitString &a, const BitString &b);

/// c (.) r = XOR_i (c_i AND r_i). Throws ParameterError on length mismatch.
int parity(const BitString &c, const BitString &r);

class LinearCode {
   public:
    /// Validates the generator (non-empty, equal row lengths, full rank) and
    /// computes the minimum distance by enumeration.
    static LinearCode from_generator(std::vector<BitString> rows, std::string name = "");
    /// Empty placeholder (n = 0); not usable for encoding.
    LinearCode() = default;

    int n() const {
        return n_;
    }
    int k() const {
        return static_cast<int>(rows_.size());
    }
    int d() const {
        return d_;
    }
    const std::string &name() const {
        return name_;
    }
    const std::vector<BitString> &generator() const {
        return rows_;
    }

    /// Codeword for a k-bit message word; bit (k-1-i) of `message` selects
    /// generator row i, so ascending messages are lexicographic message words.
    BitString encode(uint64_t message) const;
    uint64_t size() const {
        return uint64_t{1} << k();
    }
    /// All 2^k codewords in ascending message order.
    std::vector<BitString> codewords() const;
    bool contains(const BitString &word) const;

    /// Protocol features: only 2^k of the 2^n strings are codewords (k < n)
    /// and the distance leaves room for bypass positions (d < n).
    bool satisfies_protocol_features() const {
        return k() < n_ && d_ < n_;
    }
    /// Threshold 1 - d/n against which Alice compares her estimate of f.
    double abort_threshold() const {
        return 1.0 - static_cast<double>(d_) / n_;
    }

    std::string description() const;

   private:
    int n_ = 0;
    int d_ = 0;
    std::string name_;
    std::vector<BitString> rows_;
    // Reduced row-echelon basis and pivot positions, for membership tests.
    std::vector<BitString> echelon_;
    std::vector<int> pivots_;
};

/// code_from_generator over a 0/1 matrix.
LinearCode code_from_generator(const std::vector<std::vector<int>> &matrix, std::string name = "");

/// Exact minimum nonzero codeword weight. Throws GuardError when k exceeds
/// kMaxEnumerationDimension.
int min_distance(const LinearCode &code);
int min_distance(std::span<const BitString> generator_rows);

struct CosetSplit {
    std::vector<BitString> parity0;
    std::vector<BitString> parity1;

    const std::vector<BitString> &of(int b) const {
        return b == 0 ? parity0 : parity1;
    }
    bool balanced() const {
        return parity0.size() == parity1.size();
    }
};

/// Partitions the codewords by parity against a nonzero mask r.
CosetSplit coset_split(const LinearCode &code, const BitString &r);

/// Uniform draw from C_(b).
BitString sample_codeword(const LinearCode &code, const BitString &r, int b, Rng &rng);

/// The word agreeing with c_a on the first ceil(h/2) differing positions (in
/// index order) and with c_b on the remaining ones, h = dist(c_a, c_b) >= 2.
BitString midpoint_word(const BitString &c_a, const BitString &c_b);

/// Codewords whose bits at `positions` equal `values`.
std::vector<BitString> consistent_codewords(const LinearCode &code, std::span<const int> positions,
                                            std::span<const int> values);

/// A pair of codewords at distance d. When `r` is given, prefers a pair whose
/// members lie in different cosets of r (so the pair can flip the committed
/// bit); falls back to any minimum-distance pair.
std::pair<BitString, BitString> minimum_distance_pair(const LinearCode &code, const BitString *r = nullptr);

// Catalog.
LinearCode repetition_code(int n);
LinearCode hamming_7_4();
LinearCode extended_hamming_8_4();
LinearCode golay_24_12();
/// A uniformly random full-rank k x n generator.
LinearCode random_code(int n, int k, Rng &rng);
std::vector<std::string> builtin_code_names();
/// Accepts "repetition3", "hamming7", "ext_hamming8", "golay24" and
/// "repetitionN" for any N in [1, 64].
LinearCode builtin_code(std::string_view name);

/// A uniformly random nonzero n-bit string.
BitString random_nonzero(int n, Rng &rng);

// Plain-text generator matrices: one row per line, '0'/'1' characters, no
// separators. Blank lines and lines starting with '#' are skipped.
LinearCode parse_generator_text(std::string_view text, std::string name = "");
LinearCode read_generator_file(const std::string &path);
std::string format_generator_text(const LinearCode &code);

/// CSV with a single `bits` column.
void write_codewords_csv(std::ostream &out, std::span<const BitString> words);

}  // namespace mzqbc::codes

#endif
