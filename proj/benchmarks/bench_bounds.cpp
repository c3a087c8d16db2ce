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

#include "mcrb/auto_scenario.hpp"
#include "mcrb/bounds.hpp"
#include "mcrb/estimation.hpp"

#include <benchmark/benchmark.h>

using namespace mcrb;

namespace
{

MultipathScene bench_scene(int m_r)
{
    return scene_from_ratios(standard_virtual_ula(3, m_r), 0.0, deg2rad(3.0), 20.0, 3.0, 0.7);
}

void BM_ClosedForm(benchmark::State &st)
{
    const MultipathScene s = bench_scene(int(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(mcrb_theta_closed(s));
}
BENCHMARK(BM_ClosedForm)->Arg(4)->Arg(8)->Arg(16);

void BM_Sandwich(benchmark::State &st)
{
    const MultipathScene s = bench_scene(int(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(mcrb_sandwich(s));
}
BENCHMARK(BM_Sandwich)->Arg(4)->Arg(8)->Arg(16);

void BM_ThetaA(benchmark::State &st)
{
    const MultipathScene s = bench_scene(int(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(theta_a(s));
}
BENCHMARK(BM_ThetaA)->Arg(4)->Arg(16);

void BM_MmlEstimate(benchmark::State &st)
{
    const MultipathScene s = bench_scene(int(st.range(0)));
    const MmlEstimator est(s.geom, EstimatorConfig::defaults_for(s.geom));
    const CMatrix y = synthesize_compressed(s, 42);
    for (auto _ : st)
        benchmark::DoNotOptimize(est.estimate(y));
}
BENCHMARK(BM_MmlEstimate)->Arg(4)->Arg(16);

// one range sample of the ground-reflection scene, 3x8 array
void BM_RangePoint(benchmark::State &st)
{
    const GroundScenario g;
    double r = 10.0;
    for (auto _ : st)
    {
        benchmark::DoNotOptimize(range_point(g, r));
        r = r < 100.0 ? r + 0.37 : 10.0;
    }
}
BENCHMARK(BM_RangePoint);

void BM_MonteCarloPoint(benchmark::State &st)
{
    const MultipathScene s = bench_scene(4);
    const EstimatorConfig cfg = EstimatorConfig::defaults_for(s.geom);
    for (auto _ : st)
        benchmark::DoNotOptimize(monte_carlo_rmse({&s, 1}, cfg, {int(st.range(0)), 5, 1}));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_MonteCarloPoint)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
