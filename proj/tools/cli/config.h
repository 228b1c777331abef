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

#ifndef MZQBC_CLI_CONFIG_H
#define MZQBC_CLI_CONFIG_H

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mzqbc::cli {

/// Flat key = value settings. Lines starting with '#' and blank lines are
/// ignored; later keys override earlier ones.
class Config {
   public:
    static Config parse(std::string_view text);
    static Config load(const std::string &path);

    void set(const std::string &key, const std::string &value);
    void erase(const std::string &key);
    bool has(const std::string &key) const;

    std::string get_string(const std::string &key, const std::string &fallback) const;
    std::optional<std::string> get_optional(const std::string &key) const;
    double get_double(const std::string &key, double fallback) const;
    std::optional<double> get_optional_double(const std::string &key) const;
    int64_t get_int(const std::string &key, int64_t fallback) const;
    bool get_bool(const std::string &key, bool fallback) const;
    /// Comma separated. A key that is present but empty yields an empty list.
    std::vector<double> get_double_list(const std::string &key, const std::vector<double> &fallback) const;
    std::vector<std::string> get_string_list(const std::string &key, const std::vector<std::string> &fallback) const;

    /// ParameterError naming the first key outside `known`.
    void require_known(const std::set<std::string> &known) const;

    /// Sorted-key JSON object of every setting except the ones that cannot
    /// change results (threads, out).
    nlohmann::json canonical() const;
    /// FNV-1a 64 of canonical().dump(), as 16 hex digits.
    std::string hash() const;

    const std::map<std::string, std::string> &values() const {
        return values_;
    }

   private:
    std::map<std::string, std::string> values_;
};

/// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace mzqbc::cli

#endif
