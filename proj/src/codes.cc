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

#include <algorithm>
#include <bit>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "mzqbc/error.h"

namespace mzqbc::codes {

namespace {

uint64_t length_mask(int length) {
    return length == 64 ? ~uint64_t{0} : (uint64_t{1} << length) - 1;
}

void require_same_length(const BitString &a, const BitString &b) {
    if (a.length() != b.length()) {
        throw ParameterError("bit string length mismatch: " + std::to_string(a.length()) + " vs " +
                             std::to_string(b.length()));
    }
}

void require_enumerable(int k) {
    if (k > kMaxEnumerationDimension) {
        throw GuardError("enumeration too large: k = " + std::to_string(k) + " exceeds " +
                         std::to_string(kMaxEnumerationDimension));
    }
}

// Visits every codeword in ascending message order.
template <typename Fn>
void for_each_codeword(const LinearCode &code, Fn &&fn) {
    require_enumerable(code.k());
    uint64_t count = code.size();
    for (uint64_t m = 0; m < count; m++) {
        fn(code.encode(m));
    }
}

}  // namespace

BitString::BitString(int length, uint64_t word) : length_(length), word_(word) {
    if (length < 0 || length > kMaxLength) {
        throw ParameterError("bit string length must lie in [0, " + std::to_string(kMaxLength) + "]");
    }
    if ((word & ~length_mask(length)) != 0) {
        throw ParameterError("bit string word has bits beyond its length");
    }
}

BitString BitString::from_string(std::string_view text) {
    BitString out(static_cast<int>(text.size()));
    for (size_t i = 0; i < text.size(); i++) {
        if (text[i] == '1') {
            out.word_ |= uint64_t{1} << i;
        } else if (text[i] != '0') {
            throw ParameterError("bit strings may only contain '0' and '1': \"" + std::string(text) + "\"");
        }
    }
    return out;
}

BitString BitString::from_bits(std::span<const int> bits) {
    BitString out(static_cast<int>(bits.size()));
    for (size_t i = 0; i < bits.size(); i++) {
        out.set(static_cast<int>(i), bits[i]);
    }
    return out;
}

BitString BitString::ones(int length) {
    return BitString(length, length_mask(length));
}

int BitString::bit(int position) const {
    if (position < 0 || position >= length_) {
        throw ParameterError("bit position out of range");
    }
    return static_cast<int>((word_ >> position) & 1);
}

void BitString::set(int position, int value) {
    if (position < 0 || position >= length_) {
        throw ParameterError("bit position out of range");
    }
    if (value != 0 && value != 1) {
        throw ParameterError("bit values must be 0 or 1");
    }
    uint64_t m = uint64_t{1} << position;
    word_ = value ? (word_ | m) : (word_ & ~m);
}

BitString BitString::flipped(int position) const {
    BitString out = *this;
    out.set(position, 1 - bit(position));
    return out;
}

int BitString::weight() const {
    return std::popcount(word_);
}

std::string BitString::to_string() const {
    std::string out(static_cast<size_t>(length_), '0');
    for (int i = 0; i < length_; i++) {
        if ((word_ >> i) & 1) {
            out[static_cast<size_t>(i)] = '1';
        }
    }
    return out;
}

std::vector<int> BitString::support() const {
    std::vector<int> out;
    for (int i = 0; i < length_; i++) {
        if ((word_ >> i) & 1) {
            out.push_back(i);
        }
    }
    return out;
}

BitString BitString::operator^(const BitString &other) const {
    require_same_length(*this, other);
    return BitString(length_, word_ ^ other.word_);
}

bool BitString::operator<(const BitString &other) const {
    if (length_ != other.length_) {
        return length_ < other.length_;
    }
    // Lexicographic on the textual form.
    uint64_t diff = word_ ^ other.word_;
    if (diff == 0) {
        return false;
    }
    int first = std::countr_zero(diff);
    return ((word_ >> first) & 1) == 0;
}

int hamming_distance(const BitString &a, const BitString &b) {
    return (a ^ b).weight();
}

int parity(const BitString &c, const BitString &r) {
    require_same_length(c, r);
    return std::popcount(c.word() & r.word()) & 1;
}

LinearCode LinearCode::from_generator(std::vector<BitString> rows, std::string name) {
    if (rows.empty()) {
        throw ParameterError("generator matrix is empty");
    }
    int n = rows.front().length();
    if (n == 0) {
        throw ParameterError("generator rows are empty");
    }
    for (const auto &row : rows) {
        if (row.length() != n) {
            throw ParameterError("generator rows have different lengths");
        }
    }
    if (static_cast<int>(rows.size()) > n) {
        throw ParameterError("generator not full rank");
    }

    // Fully reduced row-echelon form over GF(2).
    std::vector<uint64_t> basis;
    std::vector<int> pivots;
    for (const auto &row : rows) {
        uint64_t w = row.word();
        for (size_t j = 0; j < basis.size(); j++) {
            if ((w >> pivots[j]) & 1) {
                w ^= basis[j];
            }
        }
        if (w == 0) {
            throw ParameterError("generator not full rank");
        }
        int p = std::countr_zero(w);
        for (auto &b : basis) {
            if ((b >> p) & 1) {
                b ^= w;
            }
        }
        basis.push_back(w);
        pivots.push_back(p);
    }

    LinearCode code;
    code.n_ = n;
    code.name_ = std::move(name);
    code.rows_ = std::move(rows);
    code.pivots_ = pivots;
    for (uint64_t b : basis) {
        code.echelon_.emplace_back(n, b);
    }
    code.d_ = min_distance(code.rows_);
    return code;
}

BitString LinearCode::encode(uint64_t message) const {
    int kk = k();
    if (kk < 64 && (message >> kk) != 0) {
        throw ParameterError("message word longer than k");
    }
    uint64_t w = 0;
    for (int i = 0; i < kk; i++) {
        if ((message >> (kk - 1 - i)) & 1) {
            w ^= rows_[static_cast<size_t>(i)].word();
        }
    }
    return BitString(n_, w);
}

std::vector<BitString> LinearCode::codewords() const {
    std::vector<BitString> out;
    require_enumerable(k());
    out.reserve(size());
    for_each_codeword(*this, [&](const BitString &c) { out.push_back(c); });
    return out;
}

bool LinearCode::contains(const BitString &word) const {
    if (word.length() != n_) {
        throw ParameterError("word length does not match code length");
    }
    uint64_t w = word.word();
    for (size_t j = 0; j < echelon_.size(); j++) {
        if ((w >> pivots_[j]) & 1) {
            w ^= echelon_[j].word();
        }
    }
    return w == 0;
}

std::string LinearCode::description() const {
    std::ostringstream out;
    if (!name_.empty()) {
        out << name_ << " ";
    }
    out << "(" << n_ << "," << k() << "," << d_ << ")";
    return out.str();
}

LinearCode code_from_generator(const std::vector<std::vector<int>> &matrix, std::string name) {
    if (matrix.empty()) {
        throw ParameterError("generator matrix is empty");
    }
    std::vector<BitString> rows;
    for (const auto &row : matrix) {
        if (row.size() != matrix.front().size()) {
            throw ParameterError("generator rows have different lengths");
        }
        for (int v : row) {
            if (v != 0 && v != 1) {
                throw ParameterError("generator entries must be 0 or 1");
            }
        }
        rows.push_back(BitString::from_bits(row));
    }
    return LinearCode::from_generator(std::move(rows), std::move(name));
}

int min_distance(std::span<const BitString> generator_rows) {
    int k = static_cast<int>(generator_rows.size());
    require_enumerable(k);
    if (k == 0) {
        throw ParameterError("generator matrix is empty");
    }
    // Gray-code walk: consecutive messages differ in one row.
    uint64_t w = 0;
    int best = std::numeric_limits<int>::max();
    uint64_t count = uint64_t{1} << k;
    for (uint64_t m = 1; m < count; m++) {
        w ^= generator_rows[static_cast<size_t>(std::countr_zero(m))].word();
        best = std::min(best, std::popcount(w));
    }
    return best;
}

int min_distance(const LinearCode &code) {
    return min_distance(code.generator());
}

CosetSplit coset_split(const LinearCode &code, const BitString &r) {
    if (r.length() != code.n()) {
        throw ParameterError("r length does not match code length");
    }
    if (r.is_zero()) {
        throw ParameterError("r must be nonzero");
    }
    CosetSplit split;
    for_each_codeword(code, [&](const BitString &c) {
        (parity(c, r) == 0 ? split.parity0 : split.parity1).push_back(c);
    });
    return split;
}

BitString sample_codeword(const LinearCode &code, const BitString &r, int b, Rng &rng) {
    if (b != 0 && b != 1) {
        throw ParameterError("committed bit must be 0 or 1");
    }
    auto split = coset_split(code, r);
    const auto &pool = split.of(b);
    if (pool.empty()) {
        throw ParameterError("committed subset empty; choose different r");
    }
    return pool[uniform_below(rng, pool.size())];
}

BitString midpoint_word(const BitString &c_a, const BitString &c_b) {
    BitString diff = c_a ^ c_b;
    int h = diff.weight();
    if (h < 2) {
        throw ParameterError("midpoint needs codewords at distance >= 2");
    }
    int keep = (h + 1) / 2;
    BitString out = c_b;
    for (int pos : diff.support()) {
        if (keep == 0) {
            break;
        }
        out.set(pos, c_a.bit(pos));
        keep--;
    }
    return out;
}

std::vector<BitString> consistent_codewords(const LinearCode &code, std::span<const int> positions,
                                            std::span<const int> values) {
    if (positions.size() != values.size()) {
        throw ParameterError("positions and values differ in length");
    }
    uint64_t mask = 0;
    uint64_t want = 0;
    for (size_t i = 0; i < positions.size(); i++) {
        int p = positions[i];
        if (p < 0 || p >= code.n()) {
            throw ParameterError("position out of range");
        }
        if ((mask >> p) & 1) {
            throw ParameterError("positions must be distinct");
        }
        if (values[i] != 0 && values[i] != 1) {
            throw ParameterError("values must be bits");
        }
        mask |= uint64_t{1} << p;
        want |= static_cast<uint64_t>(values[i]) << p;
    }
    std::vector<BitString> out;
    for_each_codeword(code, [&](const BitString &c) {
        if ((c.word() & mask) == want) {
            out.push_back(c);
        }
    });
    return out;
}

std::pair<BitString, BitString> minimum_distance_pair(const LinearCode &code, const BitString *r) {
    // By linearity every pair at distance d is (c, c ^ w) with w a weight-d
    // codeword; the two lie in different cosets iff parity(w, r) = 1.
    BitString zero(code.n());
    std::optional<BitString> any;
    std::optional<BitString> crossing;
    for_each_codeword(code, [&](const BitString &w) {
        if (w.weight() != code.d() || crossing) {
            return;
        }
        if (!any) {
            any = w;
        }
        if (r != nullptr && parity(w, *r) == 1) {
            crossing = w;
        }
    });
    const BitString &w = crossing ? *crossing : *any;
    return {zero, w};
}

LinearCode repetition_code(int n) {
    if (n < 1 || n > kMaxLength) {
        throw ParameterError("repetition length out of range");
    }
    return LinearCode::from_generator({BitString::ones(n)}, "repetition" + std::to_string(n));
}

LinearCode hamming_7_4() {
    return LinearCode::from_generator(
        {
            BitString::from_string("1000110"),
            BitString::from_string("0100011"),
            BitString::from_string("0010111"),
            BitString::from_string("0001101"),
        },
        "hamming7");
}

LinearCode extended_hamming_8_4() {
    return LinearCode::from_generator(
        {
            BitString::from_string("10001101"),
            BitString::from_string("01000111"),
            BitString::from_string("00101110"),
            BitString::from_string("00011011"),
        },
        "ext_hamming8");
}

LinearCode golay_24_12() {
    // Systematic [I | B] form.
    static constexpr uint32_t kParity[12] = {0x8ed, 0x1db, 0x3b5, 0x769, 0xed1, 0xda3,
                                             0xb47, 0x68f, 0xd1d, 0xa3b, 0x477, 0xffe};
    std::vector<BitString> rows;
    for (int i = 0; i < 12; i++) {
        BitString row(24);
        row.set(i, 1);
        for (int j = 0; j < 12; j++) {
            row.set(12 + j, static_cast<int>((kParity[i] >> (11 - j)) & 1));
        }
        rows.push_back(row);
    }
    return LinearCode::from_generator(std::move(rows), "golay24");
}

LinearCode random_code(int n, int k, Rng &rng) {
    if (k < 1 || k > n || n > kMaxLength) {
        throw ParameterError("random code needs 1 <= k <= n <= 64");
    }
    require_enumerable(k);
    while (true) {
        std::vector<BitString> rows;
        for (int i = 0; i < k; i++) {
            rows.emplace_back(n, rng() & length_mask(n));
        }
        try {
            return LinearCode::from_generator(std::move(rows),
                                              "random" + std::to_string(n) + "_" + std::to_string(k));
        } catch (const ParameterError &) {
            // Rank-deficient draw; try again.
        }
    }
}

std::vector<std::string> builtin_code_names() {
    return {"repetition3", "hamming7", "ext_hamming8", "golay24"};
}

LinearCode builtin_code(std::string_view name) {
    if (name == "hamming7") {
        return hamming_7_4();
    }
    if (name == "ext_hamming8") {
        return extended_hamming_8_4();
    }
    if (name == "golay24") {
        return golay_24_12();
    }
    constexpr std::string_view kRep = "repetition";
    if (name.starts_with(kRep)) {
        std::string digits(name.substr(kRep.size()));
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) && digits.size() <= 2) {
            return repetition_code(std::stoi(digits));
        }
    }
    throw ParameterError("unknown builtin code \"" + std::string(name) + "\"");
}

BitString random_nonzero(int n, Rng &rng) {
    while (true) {
        BitString r(n, rng() & length_mask(n));
        if (!r.is_zero()) {
            return r;
        }
    }
}

LinearCode parse_generator_text(std::string_view text, std::string name) {
    std::vector<BitString> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        rows.push_back(BitString::from_string(line));
    }
    return LinearCode::from_generator(std::move(rows), std::move(name));
}

LinearCode read_generator_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParameterError("cannot open generator file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_generator_text(buf.str(), path);
}

std::string format_generator_text(const LinearCode &code) {
    std::string out;
    for (const auto &row : code.generator()) {
        out += row.to_string();
        out += '\n';
    }
    return out;
}

void write_codewords_csv(std::ostream &out, std::span<const BitString> words) {
    out << "bits\n";
    for (const auto &w : words) {
        out << w.to_string() << "\n";
    }
}

}  // namespace mzqbc::codes
