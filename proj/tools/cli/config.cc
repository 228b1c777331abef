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

#include "cli/config.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mzqbc/error.h"

namespace mzqbc::cli {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return "";
    }
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string &s) {
    std::vector<std::string> out;
    if (trim(s).empty()) {
        return out;
    }
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_double(const std::string &key, const std::string &text) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParameterError("config key '" + key + "' expects a number, got '" + text + "'");
    }
    return v;
}

}  // namespace

Config Config::parse(std::string_view text) {
    Config c;
    std::stringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(std::string_view(t).substr(0, eq));
        if (key.empty()) {
            throw ParameterError("config line " + std::to_string(line_no) + ": empty key");
        }
        c.set(key, trim(std::string_view(t).substr(eq + 1)));
    }
    return c;
}

Config Config::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParameterError("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void Config::set(const std::string &key, const std::string &value) {
    values_[key] = value;
}

void Config::erase(const std::string &key) {
    values_.erase(key);
}

bool Config::has(const std::string &key) const {
    return values_.count(key) > 0;
}

std::string Config::get_string(const std::string &key, const std::string &fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::optional<std::string> Config::get_optional(const std::string &key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

double Config::get_double(const std::string &key, double fallback) const {
    auto v = get_optional_double(key);
    return v ? *v : fallback;
}

std::optional<double> Config::get_optional_double(const std::string &key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return parse_double(key, it->second);
}

int64_t Config::get_int(const std::string &key, int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    const std::string &text = it->second;
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParameterError("config key '" + key + "' expects an integer, got '" + text + "'");
    }
    return v;
}

bool Config::get_bool(const std::string &key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    const std::string &v = it->second;
    if (v == "true" || v == "1" || v == "on" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "off" || v == "no") {
        return false;
    }
    throw ParameterError("config key '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<double> Config::get_double_list(const std::string &key, const std::vector<double> &fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    std::vector<double> out;
    for (const auto &item : split_commas(it->second)) {
        out.push_back(parse_double(key, item));
    }
    return out;
}

std::vector<std::string> Config::get_string_list(const std::string &key,
                                                 const std::vector<std::string> &fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    return split_commas(it->second);
}

void Config::require_known(const std::set<std::string> &known) const {
    for (const auto &[key, value] : values_) {
        if (!known.count(key)) {
            throw ParameterError("unknown config key '" + key + "'");
        }
    }
}

nlohmann::json Config::canonical() const {
    nlohmann::json out = nlohmann::json::object();
    for (const auto &[key, value] : values_) {
        if (key == "threads" || key == "out") {
            continue;
        }
        out[key] = value;
    }
    return out;
}

std::string Config::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical().dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buf, ptr);
}

}  // namespace mzqbc::cli
