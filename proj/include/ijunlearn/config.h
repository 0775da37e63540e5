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

#ifndef IJUNLEARN_CONFIG_H_
#define IJUNLEARN_CONFIG_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ijunlearn {

// Flat "key = value" text. '#' starts a comment; blank lines are skipped.
// Later assignments replace earlier ones, so CLI overrides are applied with
// Set after parsing the file.
class KvConfig {
 public:
  static KvConfig Parse(const std::string& text,
                        const std::string& source = "<memory>");
  static KvConfig Load(const std::string& path);

  void Set(const std::string& key, const std::string& value);
  bool Has(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

  // Typed getters throw ConfigError naming the key on malformed values.
  std::string GetString(const std::string& key, const std::string& fallback) const;
  double GetDouble(const std::string& key, double fallback) const;
  long long GetInt(const std::string& key, long long fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;
  std::optional<double> GetOptionalDouble(const std::string& key) const;
  // Comma-separated lists; an empty value gives an empty list.
  std::vector<double> GetDoubleList(const std::string& key,
                                    const std::vector<double>& fallback) const;
  std::vector<long long> GetIntList(const std::string& key,
                                    const std::vector<long long>& fallback) const;
  std::vector<std::string> GetStringList(
      const std::string& key, const std::vector<std::string>& fallback) const;

  // Throws ConfigError for keys outside `known`.
  void RequireKnownKeys(const std::vector<std::string>& known) const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace ijunlearn

#endif  // IJUNLEARN_CONFIG_H_
