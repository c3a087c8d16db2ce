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

#include <cmath>

namespace mcrb
{

void GroundScenario::validate() const
{
    if (!(h_r > 0.0))
        throw InvalidArgument("scenario: h_r must be positive");
    if (!(lambda > 0.0))
        throw InvalidArgument("scenario: lambda must be positive");
    if (!(eps_r >= 1.0))
        throw InvalidArgument("scenario: eps_r must be >= 1");
    if (!(gamma_cond >= 0.0))
        throw InvalidArgument("scenario: gamma_cond must be >= 0");
    if (!(std::abs(theta) < kPi / 2))
        throw InvalidArgument("scenario: theta must lie inside (-pi/2, pi/2)");
    if (!(r_res > 0.0) || !(v_res > 0.0) || !(v >= 0.0))
        throw InvalidArgument("scenario: resolutions must be positive and v non-negative");
    if (!(r_ref > 0.0) || !std::isfinite(snr_ref_db))
        throw InvalidArgument("scenario: r_ref must be positive and snr_ref_db finite");
    if (k_pulses < 1 || !(e_p > 0.0))
        throw InvalidArgument("scenario: k_pulses >= 1 and e_p > 0 required");
    for (std::size_t k = 0; k < range_grid.size(); ++k)
    {
        if (!(range_grid[k] > 0.0) || !std::isfinite(range_grid[k]))
            throw InvalidArgument("scenario: ranges must be positive and finite");
        if (k > 0 && !(range_grid[k] > range_grid[k - 1]))
            throw InvalidArgument("scenario: range_grid must be strictly increasing");
    }
}

GroundScenario GroundScenario::dry_asphalt()
{
    GroundScenario s;
    s.lambda = 3.8e-3;
    s.eps_r = 4.0;
    s.gamma_cond = 0.005;
    return s;
}

IndirectGeometry indirect_geometry(double r_d, double theta, double h_r)
{
    if (!(r_d > 0.0) || !(h_r > 0.0))
        throw InvalidArgument("indirect_geometry: need r_d > 0 and h_r > 0");
    const double x = r_d * std::cos(theta);
    const double z = r_d * std::sin(theta) + 2.0 * h_r;
    IndirectGeometry g;
    g.r_i = std::hypot(x, z);
    g.psi = std::atan2(std::abs(z), x);
    return g;
}

cplx reflection_coefficient(double psi, double eps_r, double gamma_cond, double lambda)
{
    if (!(psi > 0.0) || !(psi <= kPi / 2))
        throw InvalidArgument("reflection_coefficient: psi must lie in (0, pi/2]");
    const cplx eps(eps_r, -60.0 * lambda * gamma_cond);
    const double s = std::sin(psi), c = std::cos(psi);
    const cplx root = std::sqrt(eps - c * c);
    return (eps * s - root) / (eps * s + root);
}

double far_field_delta_phi(double r_d, double r_i, double lambda)
{
    return wrap_phase(2.0 * kPi * (r_d - r_i) / lambda + kPi);
}

MultipathScene scenario_scene(const GroundScenario &scn, const ArrayGeometry &geom, double r_d)
{
    const IndirectGeometry ig = indirect_geometry(r_d, scn.theta, scn.h_r);
    PathGeometryInputs in;
    in.gamma_t = scn.gamma_t;
    in.gamma_r = reflection_coefficient(ig.psi, scn.eps_r, scn.gamma_cond, scn.lambda);
    in.alpha_0d = (scn.r_ref * scn.r_ref) / (r_d * r_d);
    in.alpha_0i = (scn.r_ref * scn.r_ref) / (ig.r_i * ig.r_i);
    in.r_d = r_d;
    in.r_i = ig.r_i;
    in.lambda = scn.lambda;
    const PathCoefficients pc = path_coefficients(in);

    MultipathScene s{geom};
    s.theta = scn.theta;
    s.psi = -ig.psi;
    s.alpha_d = pc.alpha_d;
    s.alpha_i = pc.alpha_i;
    s.k_pulses = scn.k_pulses;
    s.e_p = scn.e_p;
    s.sigma_w2 = std::norm(scn.gamma_t) / from_db(scn.snr_ref_db);
    return s;
}

RangePoint range_point(const GroundScenario &scn, const ArrayGeometry &geom, double r_d)
{
    scn.validate();
    const MultipathScene s = scenario_scene(scn, geom, r_d);
    RangePoint p;
    p.r_d = r_d;
    p.r_i = indirect_geometry(r_d, scn.theta, scn.h_r).r_i;
    p.psi = -s.psi;
    p.gamma_r = reflection_coefficient(p.psi, scn.eps_r, scn.gamma_cond, scn.lambda);
    p.smr_db = to_db(smr(s));
    p.delta_phi = delta_phi(s);
    p.snr_db = to_db(snr(s));
    p.same_cell = (p.r_i - r_d) < scn.r_res && scn.v * (1.0 - std::cos(p.psi)) < scn.v_res;
    p.crb_theta = crb_theta(s);
    if (!p.same_cell)
    {
        p.status = PointStatus::kOutOfCell;
        return p;
    }
    try
    {
        p.bound = mcrb_theta_closed(s);
    }
    catch (const DegenerateBound &)
    {
        p.status = PointStatus::kDegenerate;
    }
    return p;
}

RangePoint range_point(const GroundScenario &scn, double r_d)
{
    return range_point(scn, scn.geom, r_d);
}

std::vector<std::vector<RangePoint>> range_sweep(const GroundScenario &scn,
                                                 std::span<const ArrayGeometry> geoms)
{
    scn.validate();
    std::vector<std::vector<RangePoint>> out;
    out.reserve(geoms.size());
    for (const auto &g : geoms)
    {
        std::vector<RangePoint> row;
        row.reserve(scn.range_grid.size());
        for (double r : scn.range_grid)
            row.push_back(range_point(scn, g, r));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace mcrb
