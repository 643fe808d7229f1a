// Copyright 2026 The qtransistor Authors
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

// Line-oriented key/value text with [sections], used for experiment configs
// and run manifests:
//
//   # comment
//   [chain]
//   coupling_j = 1e3
//
// "key: value" is accepted too. Keys are unique within a section; sections keep their file order.

#include <string>
#include <string_view>
#include <vector>

#include "qtransistor/error.hpp"

namespace qtransistor::app {

// Collects every problem found, not just the first one.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct KvEntry {
  std::string key;
  std::string value;
  int line = 0;  // 0 when set programmatically
};

struct KvSection {
  std::string name;
  std::vector<KvEntry> entries;
  int line = 0;

  const KvEntry* find(std::string_view key) const;
};

class KvDocument {
 public:
  static KvDocument parse(std::string_view text);

  const std::vector<KvSection>& sections() const noexcept { return sections_; }
  const KvSection* section(std::string_view name) const;
  const KvEntry* find(std::string_view section, std::string_view key) const;

  // Inserts or replaces.
  void set(std::string_view section, std::string_view key, std::string value);
  std::string serialize() const;

 private:
  KvSection& section_or_add(std::string_view name);
  std::vector<KvSection> sections_;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace qtransistor::app
