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


#ifndef MCRB_CLI_PRESETS_HPP
#define MCRB_CLI_PRESETS_HPP

#include <string_view>
#include <vector>

namespace mcrb::cli
{

struct Preset
{
    std::string_view name; // file stem under configs/
    std::string_view json;
};

// Every configs/*.json, embedded at build time, sorted by name.
const std::vector<Preset> &presets();

} // namespace mcrb::cli

#endif
