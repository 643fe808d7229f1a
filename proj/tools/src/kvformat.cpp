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

#include "qtransistor/app/kvformat.hpp"

#include <fstream>
#include <sstream>

namespace qtransistor::app {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "invalid configuration:";
  for (const auto& issue : issues) out += "\n  " + issue;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

const KvEntry* KvSection::find(std::string_view key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

KvDocument KvDocument::parse(std::string_view text) {
  KvDocument doc;
  std::vector<std::string> issues;
  KvSection* current = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    std::ostringstream where;
    where << "line " << line_no << ": ";
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        issues.push_back(where.str() + "malformed section header '" + std::string(line) + "'");
        continue;
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (doc.section(name) != nullptr) {
        issues.push_back(where.str() + "duplicate section [" + name + "]");
      }
      doc.sections_.push_back(KvSection{name, {}, line_no});
      current = &doc.sections_.back();
      continue;
    }
    // "key = value", or "key: value" as an alternative spelling.
    const auto eq = line.find_first_of("=:");
    if (eq == std::string_view::npos) {
      issues.push_back(where.str() + "expected 'key = value', got '" + std::string(line) + "'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      issues.push_back(where.str() + "empty key");
      continue;
    }
    if (current == nullptr) {
      issues.push_back(where.str() + "key '" + key + "' appears before any [section]");
      continue;
    }
    if (current->find(key) != nullptr) {
      issues.push_back(where.str() + "duplicate key '" + current->name + "." + key + "'");
      continue;
    }
    current->entries.push_back(KvEntry{key, value, line_no});
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return doc;
}

const KvSection* KvDocument::section(std::string_view name) const {
  for (const auto& s : sections_)
    if (s.name == name) return &s;
  return nullptr;
}

const KvEntry* KvDocument::find(std::string_view section_name, std::string_view key) const {
  const KvSection* s = section(section_name);
  return s == nullptr ? nullptr : s->find(key);
}

KvSection& KvDocument::section_or_add(std::string_view name) {
  for (auto& s : sections_)
    if (s.name == name) return s;
  sections_.push_back(KvSection{std::string(name), {}, 0});
  return sections_.back();
}

void KvDocument::set(std::string_view section_name, std::string_view key, std::string value) {
  KvSection& s = section_or_add(section_name);
  for (auto& e : s.entries) {
    if (e.key == key) {
      e.value = std::move(value);
      return;
    }
  }
  s.entries.push_back(KvEntry{std::string(key), std::move(value), 0});
}

std::string KvDocument::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    if (i > 0) out += '\n';
    out += '[' + sections_[i].name + "]\n";
    for (const auto& e : sections_[i].entries) out += e.key + " = " + e.value + '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buffer.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace qtransistor::app
