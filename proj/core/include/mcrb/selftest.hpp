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

#ifndef MCRB_SELFTEST_HPP
#define MCRB_SELFTEST_HPP

#include "mcrb/bounds.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcrb
{

struct SelftestCheck
{
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestReport
{
    std::vector<SelftestCheck> checks;
    std::vector<std::string> info; // logged comparisons that are not pass/fail

    bool all_passed() const;
    std::string to_text() const;
};

struct SelftestOptions
{
    // Adds a small perturbation to ddA_d before the curvature identity check.
    bool inject_ddad_fault = false;
    int random_scenes = 1000;
    std::uint64_t seed = 7;
};

SelftestReport run_selftest(const SelftestOptions &opts = {});

// Closed-form M_thetatheta against the (5,5) sandwich element on random scenes
// of the 3x4 virtual ULA: SMR uniform in [-10, 30] dB, delta theta uniform
// within +/- 2 beamwidths, delta phi uniform, theta uniform in [-20, 20] deg.
struct OracleComparison
{
    int scenes = 0;
    int skipped = 0; // degenerate or ill-conditioned draws
    double max_rel = 0.0;
    double mean_rel = 0.0;
    MultipathScene worst;
    double max_rel_zeta4_dropped = 0.0; // sandwich with zeta4 = 0 against the full sandwich
    // Closed form against s|zeta5|^2 + J_thth over (s zeta3)^2, i.e. the sandwich
    // element with the Schur complement zeta3 - |zeta5|^2 replaced by zeta3.
    double max_rel_without_schur = 0.0;
};

OracleComparison compare_closed_vs_sandwich(int scenes, std::uint64_t seed);

// Max |x - numeric derivative| / |x| of the steering derivative for one
// geometry and angle, central differences with step h.
double steering_fd_error(const ArrayGeometry &geom, double theta, double h = 1e-6);

} // namespace mcrb

#endif
