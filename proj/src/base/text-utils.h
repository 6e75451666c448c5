// src/base/text-utils.h

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

#ifndef PHONEFUSE_BASE_TEXT_UTILS_H_
#define PHONEFUSE_BASE_TEXT_UTILS_H_

#include <string>
#include <string_view>
#include <vector>

namespace phonefuse {

// Splits on runs of spaces/tabs; empty fields are dropped.
std::vector<std::string> SplitFields(std::string_view line);

std::string Join(const std::vector<std::string> &parts, std::string_view sep = " ");

std::string_view Trim(std::string_view s);

bool ParseInt(std::string_view s, long *out);
// Accepts "inf", "-inf", "Infinity" in addition to ordinary decimals.
bool ParseDouble(std::string_view s, double *out);

// Shortest representation that parses back to the same double.
std::string FormatDouble(double v);

std::string ReadFileToString(const std::string &path);

}  // namespace phonefuse

#endif  // PHONEFUSE_BASE_TEXT_UTILS_H_
