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


#include "mcrb/experiments.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <variant>

using namespace mcrb;

namespace
{
bool empty_cell(const Cell &c) { return std::holds_alternative<std::monostate>(c); }
} // namespace

TEST_CASE("bounds: coherent scene gives one third of the root CRB")
{
    const ExperimentResult r = run_experiment(parse_config(
        R"({"experiment":"bounds","scene":{"theta_deg":0,"psi_deg":0,"smr_db":0,"delta_phi_deg":0}})"));
    const Table &t = r.table("bounds");
    REQUIRE(t.rows.size() == 1);
    const double rcrb = t.numbers("rcrb_deg")[0];
    CHECK(t.numbers("rmcrb_deg")[0] == doctest::Approx(rcrb / 3.0).epsilon(1e-9));
    CHECK(t.numbers("closed_vs_sandwich_rel")[0] < 1e-9);
}

TEST_CASE("bounds: a single degenerate point throws")
{
    const ExperimentConfig c = parse_config(
        R"({"experiment":"bounds","scene":{"theta_deg":0,"psi_deg":0,"smr_db":6.020599913279624,"delta_phi_deg":180}})");
    CHECK_THROWS_AS(run_experiment(c), DegenerateBound);
}

TEST_CASE("fig2 columns and the multipath-free switch")
{
    const ExperimentConfig c = parse_config(R"({"experiment":"fig2",
        "scene":{"psi_deg":0.5,"multipath":false},
        "sweep":{"start":-10,"stop":40,"step":5}})");
    const Table t = run_experiment(c).table("fig2");
    CHECK(t.columns == std::vector<std::string>{"snr_db", "rcrb_deg", "rmcrb_deg", "rmse_mml_deg", "rmse_ml_deg"});
    CHECK(t.rows.size() == 11);
    const auto rcrb = t.numbers("rcrb_deg");
    const auto rmcrb = t.numbers("rmcrb_deg");
    for (std::size_t i = 0; i < rcrb.size(); ++i)
    {
        CHECK(std::abs(rmcrb[i] - rcrb[i]) <= 1e-10 * rcrb[i]);
        CHECK(empty_cell(t.rows[i][3])); // trials = 0
    }
}

TEST_CASE("fig2 Monte-Carlo columns are filled and thread independent")
{
    ExperimentConfig c = parse_config(R"({"experiment":"fig2","scene":{"psi_deg":0.5},
        "sweep":{"start":0,"stop":30,"step":15},"montecarlo":{"trials":100,"seed":4}})");
    const Table a = run_experiment(c, {1}).table("fig2");
    const Table b = run_experiment(c, {4}).table("fig2");
    CHECK(a.rows == b.rows);
    for (const auto &row : a.rows)
    {
        CHECK(!empty_cell(row[3]));
        CHECK(!empty_cell(row[4]));
    }
}

TEST_CASE("fig3 sweep and beampattern table")
{
    const ExperimentConfig c = parse_config(R"({"experiment":"fig3",
        "sweep":{"start":-5,"stop":5,"step":0.5},
        "beam":{"grid_deg":{"start":-60,"stop":60,"step":0.5}}})");
    const ExperimentResult r = run_experiment(c);
    const Table &t = r.table("fig3");
    const auto dth = t.numbers("delta_theta_deg");
    const auto i0 = std::size_t(std::find(dth.begin(), dth.end(), 0.0) - dth.begin());
    REQUIRE(i0 < dth.size());
    CHECK(t.numbers("rmcrb_deg")[i0] == doctest::Approx(t.numbers("rcrb_deg")[i0] / 3.0).epsilon(1e-9));

    const Table &bp = r.table("fig3_beampattern");
    const auto grid = bp.numbers("angle_deg");
    std::vector<double> rad(grid.size());
    std::transform(grid.begin(), grid.end(), rad.begin(), [](double d) { return deg2rad(d); });
    const auto gains = beampattern(standard_virtual_ula(3, 4), 0.0, rad);
    const auto rx = bp.numbers("rx_gain_db");
    for (std::size_t i = 0; i < gains.size(); ++i)
        CHECK(rx[i] == gains[i].rx_db);
    CHECK(r.figures.size() == 2);
}

TEST_CASE("fig4 columns follow the configured separations")
{
    const ExperimentConfig c = parse_config(R"({"experiment":"fig4",
        "sweep":{"start":-10,"stop":40,"step":10},"delta_theta_deg":[2.5]})");
    const Table t = run_experiment(c).table("fig4");
    CHECK(t.columns == std::vector<std::string>{"smr_db", "rmcrb_dphi0_dtheta2p5_deg", "rmcrb_dphi120_dtheta2p5_deg", "rcrb_deg"});
    const std::size_t last = t.rows.size() - 1;
    const double rcrb = t.numbers("rcrb_deg")[last];
    CHECK(t.numbers("rmcrb_dphi0_dtheta2p5_deg")[last] == doctest::Approx(rcrb).epsilon(0.05));
}

TEST_CASE("fig5 is a long-format grid with gaps for degenerate points")
{
    const ExperimentConfig c = parse_config(R"({"experiment":"fig5",
        "scene":{"smr_db":6.020599913279624},
        "delta_phi_axis":{"start":-180,"stop":180,"step":45},
        "delta_theta_axis":{"start":0,"stop":10,"step":5}})");
    const ExperimentResult r = run_experiment(c);
    const Table &t = r.table("fig5");
    CHECK(t.rows.size() == 9 * 3);
    // delta theta 0 makes A_i = 2 A_d; SMR 4 at delta phi = +/-180 cancels exactly
    int gaps = 0;
    for (const auto &row : t.rows)
        gaps += empty_cell(row[2]) ? 1 : 0;
    CHECK(gaps == 2);
    CHECK(r.degenerate_points == 2);
    CHECK(r.figures.front().kind == Figure::Kind::kHeatmap);
}

TEST_CASE("scenario without arrays is geometry only")
{
    const ExperimentConfig c = parse_config(R"({"experiment":"scenario",
        "scenario":{"range_m":{"start":2,"stop":10,"step":1}}})");
    const ExperimentResult r = run_experiment(c);
    const Table &t = r.table("scenario");
    CHECK(t.columns.size() == 11);
    CHECK(t.rows.size() == 9);
    CHECK(r.figures.size() == 1);
    for (const auto &row : t.rows)
        CHECK(std::holds_alternative<std::int64_t>(row[10]));
    const auto ratio = t.numbers("path_ratio_db");
    const auto smr = t.numbers("smr_db");
    for (std::size_t i = 0; i < ratio.size(); ++i)
        CHECK(ratio[i] == -smr[i]);
}

TEST_CASE("scenario bounds are empty outside the resolution cell")
{
    const ExperimentConfig c = parse_config(R"({"experiment":"scenario",
        "scenario":{"range_m":{"start":2,"stop":12,"step":0.5},"arrays":[{"m_t":3,"m_r":8}]}})");
    const Table t = run_experiment(c).table("scenario");
    CHECK(t.column("rmcrb_deg_3x8") == 12);
    for (const auto &row : t.rows)
    {
        const bool in_cell = std::get<std::int64_t>(row[10]) == 1;
        if (!in_cell)
            CHECK(empty_cell(row[12]));
        CHECK(!empty_cell(row[11]));
    }
}

TEST_CASE("montecarlo experiment requires trials")
{
    const ExperimentConfig c = parse_config(R"({"experiment":"montecarlo","scene":{"psi_deg":2},
        "sweep_param":"smr_db","sweep":{"start":0,"stop":10,"step":10}})");
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("montecarlo sweep over delta theta")
{
    const ExperimentConfig c = parse_config(R"({"experiment":"montecarlo","scene":{"snr_db":30},
        "sweep_param":"delta_theta_deg","sweep":{"start":1,"stop":3,"step":1},
        "montecarlo":{"trials":200,"seed":5}})");
    const Table t = run_experiment(c).table("montecarlo");
    CHECK(t.columns.front() == "delta_theta_deg");
    const auto bias = t.numbers("bias_mml_deg");
    const auto bound = t.numbers("abs_bias_bound_deg");
    for (std::size_t i = 0; i < bias.size(); ++i)
        CHECK(std::abs(bias[i]) == doctest::Approx(bound[i]).epsilon(0.05));
}
