// Copyright 2026 The ijunlearn Authors
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

#include "ijunlearn/config.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ijunlearn/error.h"

namespace ijunlearn {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  if (Trim(value).empty()) return out;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) out.push_back(Trim(item));
  return out;
}

Error BadValue(const std::string& key, const std::string& value,
               const char* expected) {
  return Error(ErrorCode::kConfigError,
               "key '" + key + "': expected " + expected + ", got '" + value + "'");
}

double ParseDouble(const std::string& key, const std::string& text) {
  // strtod accepts the usual spellings (1e-3, inf) that from_chars may not
  // on older standard libraries.
  const std::string t = Trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) throw BadValue(key, text, "a number");
  return v;
}

long long ParseInt(const std::string& key, const std::string& text) {
  const std::string t = Trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw BadValue(key, text, "an integer");
  }
  return v;
}

}  // namespace

KvConfig KvConfig::Parse(const std::string& text, const std::string& source) {
  KvConfig config;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || Trim(line.substr(0, eq)).empty()) {
      throw Error(ErrorCode::kConfigError,
                  source + ":" + std::to_string(line_no) +
                      ": expected 'key = value'");
    }
    config.Set(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return config;
}

KvConfig KvConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path);
}

void KvConfig::Set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool KvConfig::Has(const std::string& key) const {
  return entries_.count(key) > 0;
}

std::string KvConfig::GetString(const std::string& key,
                                const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double KvConfig::GetDouble(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : ParseDouble(key, it->second);
}

long long KvConfig::GetInt(const std::string& key, long long fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : ParseInt(key, it->second);
}

bool KvConfig::GetBool(const std::string& key, bool fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string v = Trim(it->second);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw BadValue(key, v, "a boolean");
}

std::optional<double> KvConfig::GetOptionalDouble(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end() || Trim(it->second).empty()) return std::nullopt;
  return ParseDouble(key, it->second);
}

std::vector<double> KvConfig::GetDoubleList(
    const std::string& key, const std::vector<double>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<double> out;
  for (const auto& item : SplitList(it->second)) out.push_back(ParseDouble(key, item));
  return out;
}

std::vector<long long> KvConfig::GetIntList(
    const std::string& key, const std::vector<long long>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<long long> out;
  for (const auto& item : SplitList(it->second)) out.push_back(ParseInt(key, item));
  return out;
}

std::vector<std::string> KvConfig::GetStringList(
    const std::string& key, const std::vector<std::string>& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : SplitList(it->second);
}

void KvConfig::RequireKnownKeys(const std::vector<std::string>& known) const {
  for (const auto& [key, value] : entries_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::kConfigError, "unknown config key '" + key + "'");
    }
  }
}

}  // namespace ijunlearn
