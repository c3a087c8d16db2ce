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

#ifndef MCRB_ESTIMATION_HPP
#define MCRB_ESTIMATION_HPP

#include "mcrb/multipath_model.hpp"
#include "mcrb/search.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mcrb
{

struct EstimatorConfig
{
    AngleSearch search;

    // span +/-60 deg, coarse step = half the virtual beamwidth / 10, tol 1e-6 rad
    static EstimatorConfig defaults_for(const ArrayGeometry &geom);
};

// Direct-only (assumed model) maximum-likelihood DOA estimator working on the
// compressed statistic. With the amplitude concentrated out and white noise
// the likelihood reduces to |tr(A^H(theta') Y)|^2, since ||A||_F = 1.
class MmlEstimator
{
public:
    MmlEstimator(ArrayGeometry geom, EstimatorConfig cfg);

    double estimate(const CMatrix &y) const;
    double objective(const CMatrix &y, double theta) const;

    const ArrayGeometry &geometry() const { return geom_; }
    const EstimatorConfig &config() const { return cfg_; }

private:
    ArrayGeometry geom_;
    EstimatorConfig cfg_;
    std::vector<double> grid_;
    CMatrix rx_conj_; // rows: a_r(grid)^H
    CMatrix tx_conj_; // cols: a_t(grid)^*
};

double mml_doa(const CMatrix &y, const ArrayGeometry &geom, const EstimatorConfig &cfg);

struct RmsePoint
{
    double rmse_rad = 0.0;
    double bias_rad = 0.0; // mean(theta_hat - theta)
    int trials = 0;
};

struct RmseCurve
{
    std::string sweep_name;
    std::vector<double> sweep_values;
    std::vector<double> rmse_rad;
    std::vector<double> bias_rad;
    int trials = 0;
    std::uint64_t base_seed = 0;
};

struct MonteCarloOptions
{
    int trials = 1000;
    std::uint64_t base_seed = 1;
    // 0 picks std::thread::hardware_concurrency(). Output never depends on it.
    int threads = 1;
};

// Trial t of scene s draws its noise from derive_seed(base_seed, {s, t}).
// Squared errors are reduced in trial order with compensated summation, so
// the aggregates are bit-identical for every thread count.
RmseCurve monte_carlo_rmse(std::span<const MultipathScene> scenes, const EstimatorConfig &cfg,
                           const MonteCarloOptions &opts, std::string sweep_name = {},
                           std::vector<double> sweep_values = {});

// Same estimator on correctly specified (alpha_i = 0) data.
RmsePoint ml_reference_doa(const MultipathScene &scene, const EstimatorConfig &cfg, int trials,
                           std::uint64_t seed, int threads = 1);

} // namespace mcrb

#endif
