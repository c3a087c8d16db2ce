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

#include "mcrb/estimation.hpp"

#include "mcrb/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace mcrb
{
namespace
{
// Neumaier compensated sum over v in index order.
double compensated_sum(std::span<const double> v)
{
    double sum = 0.0, comp = 0.0;
    for (double x : v)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

int resolve_threads(int requested, std::size_t work)
{
    int n = requested > 0 ? requested : int(std::max(1u, std::thread::hardware_concurrency()));
    return int(std::min<std::size_t>(std::size_t(n), std::max<std::size_t>(work, 1)));
}

// Runs body(i) for i in [0, count) on `threads` workers.
template <class Body>
void parallel_for(std::size_t count, int threads, Body &&body)
{
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    constexpr std::size_t chunk = 64;
    auto worker = [&] {
        for (;;)
        {
            const std::size_t start = next.fetch_add(chunk);
            if (start >= count)
                return;
            const std::size_t stop = std::min(count, start + chunk);
            for (std::size_t i = start; i < stop; ++i)
                body(i);
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(std::size_t(threads - 1));
    for (int t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
}
} // namespace

EstimatorConfig EstimatorConfig::defaults_for(const ArrayGeometry &geom)
{
    EstimatorConfig c;
    c.search.lo = -deg2rad(60.0);
    c.search.hi = deg2rad(60.0);
    c.search.coarse_step = 0.5 * geom.beamwidth() / 10.0;
    c.search.refine_tol = 1e-6;
    return c;
}

MmlEstimator::MmlEstimator(ArrayGeometry geom, EstimatorConfig cfg)
    : geom_(std::move(geom)), cfg_(cfg)
{
    cfg_.search.validate();
    grid_ = cfg_.search.grid();
    const auto n = Eigen::Index(grid_.size());
    rx_conj_.resize(n, Eigen::Index(geom_.num_rx()));
    tx_conj_.resize(Eigen::Index(geom_.num_tx()), n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const SteeringSet s = steering(geom_, grid_[std::size_t(i)]);
        rx_conj_.row(i) = s.a_r.adjoint();
        tx_conj_.col(i) = s.a_t.conjugate();
    }
}

double MmlEstimator::objective(const CMatrix &y, double theta) const
{
    const SteeringSet s = steering(geom_, theta);
    return std::norm(s.a_r.dot(y * s.a_t.conjugate()));
}

double MmlEstimator::estimate(const CMatrix &y) const
{
    if (y.rows() != Eigen::Index(geom_.num_rx()) || y.cols() != Eigen::Index(geom_.num_tx()))
        throw InvalidArgument("mml_doa: statistic dimensions do not match the geometry");
    // (a_r^H Y) row-wise for every grid angle, then dotted with a_t^*
    const CMatrix ry = rx_conj_ * y;
    std::vector<double> values(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i)
    {
        const auto k = Eigen::Index(i);
        values[i] = std::norm((ry.row(k) * tx_conj_.col(k)).value());
    }
    auto f = [&](double x) { return objective(y, x); };
    return refine_argmax(f, grid_, values, cfg_.search.refine_tol, 0.0);
}

double mml_doa(const CMatrix &y, const ArrayGeometry &geom, const EstimatorConfig &cfg)
{
    return MmlEstimator(geom, cfg).estimate(y);
}

RmseCurve monte_carlo_rmse(std::span<const MultipathScene> scenes, const EstimatorConfig &cfg,
                           const MonteCarloOptions &opts, std::string sweep_name,
                           std::vector<double> sweep_values)
{
    if (opts.trials < 1)
        throw InvalidArgument("monte_carlo_rmse: trials must be >= 1");
    RmseCurve curve;
    curve.sweep_name = std::move(sweep_name);
    curve.sweep_values = std::move(sweep_values);
    curve.trials = opts.trials;
    curve.base_seed = opts.base_seed;
    if (scenes.empty())
        return curve;

    std::vector<MmlEstimator> estimators;
    std::vector<CMatrix> means;
    estimators.reserve(scenes.size());
    means.reserve(scenes.size());
    for (const auto &s : scenes)
    {
        s.validate();
        if (!estimators.empty() && estimators.front().geometry() == s.geom)
            estimators.push_back(estimators.front());
        else
            estimators.emplace_back(s.geom, cfg);
        means.push_back(compressed_mean(s));
    }

    const auto trials = std::size_t(opts.trials);
    const std::size_t total = scenes.size() * trials;
    std::vector<double> err(total);
    parallel_for(total, resolve_threads(opts.threads, total), [&](std::size_t idx) {
        const std::size_t s = idx / trials, t = idx % trials;
        CMatrix y = means[s];
        add_compressed_noise(y, scenes[s], derive_seed(opts.base_seed, {s, t}));
        err[idx] = estimators[s].estimate(y) - scenes[s].theta;
    });

    std::vector<double> sq(trials);
    for (std::size_t s = 0; s < scenes.size(); ++s)
    {
        const std::span<const double> e(err.data() + s * trials, trials);
        for (std::size_t t = 0; t < trials; ++t)
            sq[t] = e[t] * e[t];
        curve.rmse_rad.push_back(std::sqrt(compensated_sum(sq) / double(trials)));
        curve.bias_rad.push_back(compensated_sum(e) / double(trials));
    }
    return curve;
}

RmsePoint ml_reference_doa(const MultipathScene &scene, const EstimatorConfig &cfg, int trials,
                           std::uint64_t seed, int threads)
{
    MultipathScene clean = scene;
    clean.alpha_i = 0.0;
    const RmseCurve c = monte_carlo_rmse(std::span(&clean, 1), cfg, {trials, seed, threads});
    return {c.rmse_rad[0], c.bias_rad[0], trials};
}

} // namespace mcrb
