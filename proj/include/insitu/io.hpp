// Copyright 2026 The insitu developers
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

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace insitu {

// Header block shared by every artifact. The timestamp is the only
// nondeterministic byte region and can be suppressed for byte-identity
// checks.
struct ArtifactMeta {
  std::string artifact_version = "1";
  std::vector<std::pair<std::string, std::string>> spec_echo;
  std::uint64_t master_seed = 0;
  bool include_timestamp = true;
};

std::string format_double(double v);

// Writes via a temporary file in the same directory plus an atomic rename.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string csv_artifact(const ArtifactMeta& meta,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows);

// {artifact_version, spec, master_seed[, timestamp]} ready for payload keys.
nlohmann::ordered_json json_envelope(const ArtifactMeta& meta);

void write_json_atomic(const std::filesystem::path& path,
                       const nlohmann::ordered_json& doc);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Reads one of our own artifacts back (comment lines skipped).
CsvTable read_artifact_csv(const std::filesystem::path& path);

// Renders the numeric columns of an artifact CSV against its first column as
// an SVG line chart. Pure post-processing: no values are recomputed.
void plot_csv_to_svg(const std::filesystem::path& csv_path,
                     const std::filesystem::path& svg_path);

}  // namespace insitu
