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


#ifndef MCRB_CONFIG_HPP
#define MCRB_CONFIG_HPP

#include "mcrb/auto_scenario.hpp"
#include "mcrb/estimation.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mcrb
{

enum class ExperimentKind
{
    kBounds,
    kFig2,
    kFig3,
    kFig4,
    kFig5,
    kScenario,
    kMonteCarlo,
    kBeampattern,
};

std::string_view kind_name(ExperimentKind k);
std::optional<ExperimentKind> kind_from_name(std::string_view name);

// Inclusive arithmetic axis; values are start + i * step, never accumulated.
struct AxisSpec
{
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
};

// Either (m_t, m_r) for the standard virtual ULA or explicit positions in wavelengths.
struct GeometrySpec
{
    int m_t = 3;
    int m_r = 4;
    std::vector<double> tx_positions;
    std::vector<double> rx_positions;

    bool explicit_positions() const { return !tx_positions.empty(); }
    ArrayGeometry build() const;
    std::string label() const; // "3x4" or "custom<i>"
};

struct SceneSpec
{
    double theta_deg = 0.0;
    double psi_deg = 0.0;
    double snr_db = 10.0;
    double smr_db = 0.0;
    double delta_phi_deg = 0.0;
    int k_pulses = 1;
    double e_p = 1.0;
    bool multipath = true; // false forces alpha_i = 0

    MultipathScene build(const ArrayGeometry &geom) const;
};

struct EstimatorSpec
{
    double span_deg = 60.0;
    double coarse_step_deg = 0.0; // 0: half the virtual beamwidth / 10
    double refine_tol_rad = 1e-6;

    EstimatorConfig build(const ArrayGeometry &geom) const;
};

struct MonteCarloSpec
{
    int trials = 0; // 0 disables Monte-Carlo columns
    std::uint64_t seed = 1;
};

struct ScenarioSpec
{
    GroundScenario ground = GroundScenario::dry_asphalt();
    AxisSpec range{2.0, 100.0, 0.01};
    std::vector<GeometrySpec> arrays;
};

struct BeamSpec
{
    double steer_deg = 0.0;
    AxisSpec grid{-89.0, 89.0, 0.1};
};

struct ExperimentConfig
{
    ExperimentKind kind = ExperimentKind::kBounds;
    std::string title;
    GeometrySpec geometry;
    SceneSpec scene;
    AxisSpec sweep{0.0, 0.0, 1.0};   // snr_db (fig2), delta_theta_deg (fig3), smr_db (fig4)
    std::string sweep_param;          // montecarlo: snr_db | smr_db | delta_theta_deg | delta_phi_deg
    std::vector<double> delta_theta_deg; // fig4 curves
    double destructive_phase_deg = 120.0;
    AxisSpec delta_phi_axis{-180.0, 180.0, 3.0};  // fig5
    AxisSpec delta_theta_axis{0.0, 40.0, 0.5};    // fig5
    EstimatorSpec estimator;
    MonteCarloSpec montecarlo;
    ScenarioSpec scenario;
    BeamSpec beam;
};

// Parses an experiment config or a run manifest (its "config" member). Unknown
// keys and out-of-range values throw ConfigError naming the JSON field path.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path &path);

// Fully resolved config, sorted keys, every default spelled out.
std::string to_canonical_json(const ExperimentConfig &cfg);

void apply_overrides(ExperimentConfig &cfg, std::optional<int> trials,
                     std::optional<std::uint64_t> seed);

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace mcrb

#endif
