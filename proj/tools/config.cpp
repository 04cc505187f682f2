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

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace entwit::cli {

int ConfigSource::line_of(const std::vector<std::string> &keys) const {
  std::size_t pos = text.find('{');
  if (pos == std::string::npos) pos = 0;
  for (const auto &k : keys) {
    const auto found = text.find("\"" + k + "\"", pos);
    if (found == std::string::npos) break;
    pos = found;
  }
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

ConfigNode::ConfigNode(std::shared_ptr<const ConfigSource> src,
                       std::shared_ptr<const nlohmann::json> root, const nlohmann::json *node,
                       std::vector<std::string> keys)
    : src_(std::move(src)), root_(std::move(root)), node_(node), keys_(std::move(keys)) {}

ConfigNode ConfigNode::from_text(std::string text, std::filesystem::path file) {
  auto src = std::make_shared<ConfigSource>();
  src->file = std::move(file);
  src->text = std::move(text);
  std::shared_ptr<nlohmann::json> root;
  try {
    root = std::make_shared<nlohmann::json>(nlohmann::json::parse(src->text));
  } catch (const nlohmann::json::parse_error &e) {
    // byte offset -> line
    const auto end = std::min(e.byte, src->text.size());
    const int line = 1 + static_cast<int>(std::count(src->text.begin(), src->text.begin() + static_cast<long>(end), '\n'));
    std::ostringstream os;
    os << src->file.string() << ":" << line << ": malformed JSON (" << e.what() << ")";
    throw ConfigError(os.str());
  }
  if (!root->is_object()) {
    throw ConfigError(src->file.string() + ":1: config must be a JSON object");
  }
  const nlohmann::json *node = root.get();
  return {std::move(src), std::move(root), node, {}};
}

ConfigNode ConfigNode::load(const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str(), file);
}

std::string ConfigNode::dotted(const std::string &key) const {
  std::string out;
  for (const auto &k : keys_) out += k + ".";
  return out + key;
}

void ConfigNode::fail(const std::string &key, const std::string &message) const {
  auto keys = keys_;
  keys.push_back(key);
  std::ostringstream os;
  os << src_->file.string() << ":" << src_->line_of(keys) << ": \"" << dotted(key) << "\": " << message;
  throw ConfigError(os.str());
}

void ConfigNode::fail_here(const std::string &message) const {
  std::ostringstream os;
  os << src_->file.string() << ":" << src_->line_of(keys_) << ": ";
  if (!keys_.empty()) {
    std::string here = keys_.front();
    for (std::size_t i = 1; i < keys_.size(); ++i) here += "." + keys_[i];
    os << "\"" << here << "\": ";
  }
  os << message;
  throw ConfigError(os.str());
}

bool ConfigNode::has(const std::string &key) const { return node_->contains(key); }

const nlohmann::json &ConfigNode::raw(const std::string &key) const {
  if (!has(key)) fail_here("missing required key \"" + key + "\"");
  return node_->at(key);
}

ConfigNode ConfigNode::child(const std::string &key) const {
  const auto &j = raw(key);
  if (!j.is_object()) fail(key, "expected an object");
  auto keys = keys_;
  keys.push_back(key);
  return {src_, root_, &j, std::move(keys)};
}

double ConfigNode::number(const std::string &key) const {
  const auto &j = raw(key);
  if (!j.is_number()) fail(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(key, "expected a finite number");
  return v;
}

double ConfigNode::number_or(const std::string &key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long long ConfigNode::integer(const std::string &key) const {
  const auto &j = raw(key);
  if (!j.is_number_integer()) fail(key, "expected an integer");
  return j.get<long long>();
}

long long ConfigNode::integer_or(const std::string &key, long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string ConfigNode::string(const std::string &key) const {
  const auto &j = raw(key);
  if (!j.is_string()) fail(key, "expected a string");
  return j.get<std::string>();
}

std::string ConfigNode::string_or(const std::string &key, std::string fallback) const {
  return has(key) ? string(key) : std::move(fallback);
}

bool ConfigNode::boolean_or(const std::string &key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto &j = raw(key);
  if (!j.is_boolean()) fail(key, "expected true or false");
  return j.get<bool>();
}

void ConfigNode::allow_only(std::initializer_list<std::string_view> allowed) const {
  for (const auto &[k, v] : node_->items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      std::string list;
      for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
      fail(k, "unknown key (allowed: " + list + ")");
    }
  }
}

std::filesystem::path ConfigNode::path(const std::string &key) const {
  std::filesystem::path p = string(key);
  if (p.is_relative()) p = src_->file.parent_path() / p;
  return std::filesystem::absolute(p).lexically_normal();
}

}  // namespace entwit::cli
