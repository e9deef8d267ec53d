// Copyright 2026 The cavicool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>

namespace cavicool {

// Flat "key = value" text file. Lines starting with '#' and blank lines are
// ignored; keys are case-sensitive. All config surfaces (molecule data,
// cavity/laser parameters, run settings) use this one format.
class KvFile {
 public:
  KvFile() = default;

  static KvFile from_file(const std::string& path);
  static KvFile from_text(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const;
  // Throw ConfigError naming the key when absent or unparsable.
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return entries_; }
  const std::string& origin() const { return origin_; }

 private:
  std::map<std::string, std::string> entries_;
  std::string origin_;
};

}  // namespace cavicool
