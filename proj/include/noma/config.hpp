/*
 * Copyright 2026 The noma-jspa Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef NOMA_CONFIG_HPP
#define NOMA_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noma {

/// Flat `key = value` configuration text. Blank lines and lines starting
/// with `#` are ignored; a trailing `# ...` on a value line is a comment.
/// Keys are unique. Lists are comma separated.
class KeyValueConfig {
public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  std::optional<std::string> get(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback) const;
  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  /// Keys not in `known`, for reporting typos.
  std::vector<std::string> unknown_keys(const std::vector<std::string>& known) const;

private:
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& text, const std::string& key);
int parse_int(const std::string& text, const std::string& key);
std::uint64_t parse_u64(const std::string& text, const std::string& key);
bool parse_bool(const std::string& text, const std::string& key);
std::vector<std::string> split_list(const std::string& text);

} // namespace noma

#endif
