// SPDX-License-Identifier: Apache-2.0
//
// mcrb - misspecified Cramer-Rao bounds for MIMO radar DOA under multipath
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MCRB_REPORT_HPP
#define MCRB_REPORT_HPP

#include "mcrb/experiments.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mcrb
{

// Shortest round-trip decimal, '.' separator, independent of the C locale.
std::string format_number(double x);

// RFC 4180: CRLF line ends, fields quoted only when they contain , " CR or LF.
std::string to_csv(const Table &t);
std::string csv_escape(const std::string &field);

// Standalone SVG; lines skip empty cells, heatmaps draw the iso-contour.
std::string to_svg(const Figure &f, const Table &t);

std::string library_version();

struct WrittenFile
{
    std::string name;
    std::uint64_t fnv1a = 0;
};

// Writes every table as <name>.csv (and figures as <name>.svg when svg is set)
// into out_dir, then manifest.json describing the run. Returns the files
// written, manifest last.
std::vector<WrittenFile> write_outputs(const ExperimentResult &result, const ExperimentConfig &cfg,
                                       const std::filesystem::path &out_dir, bool svg);

// manifest.json text: config, config_hash, seed, trials, versions, outputs.
// Holds nothing run-specific (no time stamps, no worker count), so a re-run
// reproduces it byte for byte.
std::string manifest_json(const ExperimentConfig &cfg, const std::vector<WrittenFile> &outputs);

} // namespace mcrb

#endif
