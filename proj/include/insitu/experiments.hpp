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

#include <optional>
#include <string>

#include "insitu/io.hpp"
#include "insitu/spec_config.hpp"

namespace insitu {

struct RunOptions {
  std::string out_dir;  // empty = spec's output.dir
  std::optional<std::uint64_t> seed;
  int workers = 0;  // 0 = spec value, then INSITU_WORKERS, then hardware
  bool include_timestamp = true;
  std::string format = "csv";  // preferred summary format: csv | json
};

struct RunArtifacts {
  std::vector<std::string> paths;
  bool run_failed = false;       // experiment completed but reported failure
  std::string failure_reason;
};

// Dispatches one parsed spec to the matching experiment, writes its CSV/JSON
// artifacts and returns their paths. All randomness flows from the master
// seed, so identical spec + seed gives byte-identical artifacts (up to the
// timestamp header, which include_timestamp = false suppresses).
RunArtifacts run_experiment(const ExperimentSpec& spec, const RunOptions& opt);

}  // namespace insitu
