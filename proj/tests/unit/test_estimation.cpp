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


#include "mcrb/bounds.hpp"
#include "mcrb/estimation.hpp"
#include "mcrb/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace mcrb;

namespace
{
const ArrayGeometry &g34()
{
    static const ArrayGeometry g = standard_virtual_ula(3, 4);
    return g;
}
} // namespace

TEST_CASE("default estimator search")
{
    const EstimatorConfig c = EstimatorConfig::defaults_for(g34());
    CHECK(rad2deg(c.search.hi) == doctest::Approx(60.0));
    CHECK(rad2deg(c.search.lo) == doctest::Approx(-60.0));
    CHECK(c.search.coarse_step == doctest::Approx(g34().beamwidth() / 20.0));
    CHECK(c.search.refine_tol == 1e-6);
}

TEST_CASE("MML objective is the direct-model projection")
{
    const MultipathScene s = scene_from_ratios(g34(), 0.1, -0.05, 10.0, 2.0, 0.7);
    const MmlEstimator est(g34(), EstimatorConfig::defaults_for(g34()));
    const CMatrix y = compressed_mean(s);
    for (double x : {-0.3, 0.0, 0.08, 0.2})
        CHECK(est.objective(y, x) == doctest::Approx(oracle::projection(s, x)).epsilon(1e-12));
}

TEST_CASE("noise-free MML lands on the pseudo-true angle")
{
    std::mt19937_64 eng(derive_seed(21, {0}));
    std::uniform_real_distribution<double> th(-0.3, 0.3), d(-0.1, 0.1), smr(0.0, 20.0), ph(-1.0, 1.0);
    const EstimatorConfig cfg = EstimatorConfig::defaults_for(g34());
    for (int n = 0; n < 25; ++n)
    {
        const double t = th(eng);
        const MultipathScene s = scene_from_ratios(g34(), t, t + d(eng), 10.0, smr(eng), ph(eng));
        CHECK(std::abs(mml_doa(compressed_mean(s), g34(), cfg) - theta_a(s)) < 1e-5);
    }
}

TEST_CASE("noise-free MML recovers the true DOA without multipath")
{
    const EstimatorConfig cfg = EstimatorConfig::defaults_for(g34());
    for (double deg : {-50.0, -3.3, 0.0, 17.0})
    {
        const MultipathScene s = direct_only_scene(g34(), deg2rad(deg), 20.0);
        CHECK(std::abs(mml_doa(compressed_mean(s), g34(), cfg) - s.theta) < 1e-5);
    }
}

TEST_CASE("MML rejects a statistic of the wrong shape")
{
    const CMatrix y = CMatrix::Zero(3, 4);
    CHECK_THROWS_AS(mml_doa(y, g34(), EstimatorConfig::defaults_for(g34())), InvalidArgument);
}

TEST_CASE("Monte-Carlo aggregates do not depend on the worker count")
{
    std::vector<MultipathScene> scenes;
    for (double snr : {0.0, 10.0, 20.0})
        scenes.push_back(scene_from_ratios(g34(), 0.0, deg2rad(0.5), snr, 0.0, 0.0));
    const EstimatorConfig cfg = EstimatorConfig::defaults_for(g34());
    const RmseCurve a = monte_carlo_rmse(scenes, cfg, {300, 5, 1});
    const RmseCurve b = monte_carlo_rmse(scenes, cfg, {300, 5, 3});
    const RmseCurve c = monte_carlo_rmse(scenes, cfg, {300, 5, 7});
    CHECK(a.rmse_rad == b.rmse_rad);
    CHECK(a.rmse_rad == c.rmse_rad);
    CHECK(a.bias_rad == b.bias_rad);
    CHECK(a.bias_rad == c.bias_rad);
    const RmseCurve d = monte_carlo_rmse(scenes, cfg, {300, 6, 1});
    CHECK(a.rmse_rad != d.rmse_rad);
}

TEST_CASE("Monte-Carlo trial t of scene s uses the derived seed")
{
    // one scene, one trial: replay the noise by hand
    const MultipathScene s = scene_from_ratios(g34(), 0.0, deg2rad(3.0), 5.0, 3.0, 0.2);
    const EstimatorConfig cfg = EstimatorConfig::defaults_for(g34());
    const RmseCurve c = monte_carlo_rmse(std::span(&s, 1), cfg, {1, 77, 1});
    CMatrix y = compressed_mean(s);
    add_compressed_noise(y, s, derive_seed(77, {0, 0}));
    const double err = mml_doa(y, g34(), cfg) - s.theta;
    CHECK(c.bias_rad[0] == err);
    CHECK(c.rmse_rad[0] == std::abs(err));
}

TEST_CASE("MML error at high SNR concentrates around the pseudo-true bias")
{
    const MultipathScene s = scene_from_ratios(g34(), 0.0, deg2rad(0.5), 40.0, 0.0, 0.0);
    const BoundBreakdown b = mcrb_theta_closed(s);
    const RmseCurve c =
        monte_carlo_rmse(std::span(&s, 1), EstimatorConfig::defaults_for(g34()), {2000, 3, 1});
    CHECK(c.bias_rad[0] == doctest::Approx(b.theta_a - s.theta).epsilon(0.01));
    CHECK(c.rmse_rad[0] == doctest::Approx(std::sqrt(b.mcrb_theta)).epsilon(0.01));
}

TEST_CASE("correctly specified estimator approaches the CRB")
{
    const MultipathScene s = scene_from_ratios(g34(), deg2rad(5.0), deg2rad(-5.0), 25.0, 0.0, 0.0);
    const RmsePoint p = ml_reference_doa(s, EstimatorConfig::defaults_for(g34()), 4000, 9, 2);
    const double rcrb = std::sqrt(crb_theta(s));
    CHECK(p.rmse_rad == doctest::Approx(rcrb).epsilon(0.06));
    CHECK(std::abs(p.bias_rad) < 0.1 * rcrb);
}

TEST_CASE("Monte-Carlo needs at least one trial")
{
    const MultipathScene s = direct_only_scene(g34(), 0.0, 10.0);
    CHECK_THROWS_AS(monte_carlo_rmse(std::span(&s, 1), EstimatorConfig::defaults_for(g34()), {0, 1, 1}),
                    InvalidArgument);
}
