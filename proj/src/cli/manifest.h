// src/cli/manifest.h

// Copyright 2026  The phonefuse Authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PHONEFUSE_CLI_MANIFEST_H_
#define PHONEFUSE_CLI_MANIFEST_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace phonefuse {

constexpr const char *kToolkitVersion = "0.1.0";

/// Lower-case hex SHA-256 of a file's bytes.
std::string Sha256File(const std::string &path);

/// One per command run: what ran, with which flags and inputs.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  nlohmann::ordered_json &config() { return config_; }
  void AddInput(const std::string &path);
  void AddOutput(const std::string &path) { outputs_.push_back(path); }
  void SetSeed(std::uint64_t seed) { seed_ = seed; }

  /// Stamps the wall-clock duration so far and writes the JSON.
  void Write(const std::string &path) const;

 private:
  std::string command_;
  nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> outputs_;
  std::optional<std::uint64_t> seed_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace phonefuse

#endif  // PHONEFUSE_CLI_MANIFEST_H_
