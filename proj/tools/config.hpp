// Copyright 2026 The entwit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTWIT_TOOLS_CONFIG_HPP
#define ENTWIT_TOOLS_CONFIG_HPP

#include <filesystem>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "entwit/errors.hpp"

namespace entwit::cli {

/// Bad configuration. The message is already anchored as "file:line: ...".
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct ConfigSource {
  std::filesystem::path file;
  std::string text;

  /// Line of the last key in `keys`, searched in order; the line of the
  /// opening brace for an empty path.
  int line_of(const std::vector<std::string> &keys) const;
};

/// Read-only view of one JSON object inside a config file.
class ConfigNode {
 public:
  static ConfigNode load(const std::filesystem::path &file);
  static ConfigNode from_text(std::string text, std::filesystem::path file = "<config>");

  bool has(const std::string &key) const;
  ConfigNode child(const std::string &key) const;
  const nlohmann::json &raw(const std::string &key) const;

  double number(const std::string &key) const;
  double number_or(const std::string &key, double fallback) const;
  long long integer(const std::string &key) const;
  long long integer_or(const std::string &key, long long fallback) const;
  std::string string(const std::string &key) const;
  std::string string_or(const std::string &key, std::string fallback) const;
  bool boolean_or(const std::string &key, bool fallback) const;

  /// Rejects keys outside `allowed`.
  void allow_only(std::initializer_list<std::string_view> allowed) const;

  /// Path relative to the config file's directory, made absolute.
  std::filesystem::path path(const std::string &key) const;

  [[noreturn]] void fail(const std::string &key, const std::string &message) const;
  [[noreturn]] void fail_here(const std::string &message) const;

  std::string dotted(const std::string &key) const;

 private:
  ConfigNode(std::shared_ptr<const ConfigSource> src, std::shared_ptr<const nlohmann::json> root,
             const nlohmann::json *node, std::vector<std::string> keys);

  std::shared_ptr<const ConfigSource> src_;
  std::shared_ptr<const nlohmann::json> root_;
  const nlohmann::json *node_;
  std::vector<std::string> keys_;
};

}  // namespace entwit::cli

#endif  // ENTWIT_TOOLS_CONFIG_HPP
