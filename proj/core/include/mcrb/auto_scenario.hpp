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


#ifndef MCRB_AUTO_SCENARIO_HPP
#define MCRB_AUTO_SCENARIO_HPP

#include "mcrb/bounds.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace mcrb
{

// Vertical array above a flat road, target at elevation `theta`.
struct GroundScenario
{
    double h_r = 1.0;          // radar height [m]
    double theta = 0.0;        // target elevation [rad]
    double lambda = 3.8e-3;    // [m]
    double eps_r = 4.0;
    double gamma_cond = 0.005; // [S/m]
    cplx gamma_t{1.0, 0.0};
    std::vector<double> range_grid; // [m], strictly increasing
    double v = 1.0;            // radial velocity [m/s]
    double r_res = 0.5;        // [m]
    double v_res = 0.05;       // [m/s]
    double r_ref = 10.0;       // range at which snr_ref_db holds [m]
    double snr_ref_db = 20.0;
    int k_pulses = 1;
    double e_p = 1.0;
    ArrayGeometry geom = standard_virtual_ula(3, 8);

    void validate() const;

    // eps_r = 4, gamma = 0.005 S/m, lambda = 3.8 mm
    static GroundScenario dry_asphalt();
};

struct IndirectGeometry
{
    double r_i = 0.0; // [m]
    double psi = 0.0; // grazing angle, positive [rad]
};

// r_i = sqrt(r_d^2 cos^2 theta + (r_d sin theta + 2 h_r)^2), psi = acos(r_d cos theta / r_i)
IndirectGeometry indirect_geometry(double r_d, double theta, double h_r);

// Vertical-polarisation Fresnel coefficient for complex permittivity
// eps = eps_r - j 60 lambda gamma, principal square root.
cplx reflection_coefficient(double psi, double eps_r, double gamma_cond, double lambda);

// wrap(2 pi (r_d - r_i) / lambda + pi)
double far_field_delta_phi(double r_d, double r_i, double lambda);

enum class PointStatus
{
    kOk,
    kOutOfCell,  // paths resolved in range or Doppler; closed form does not apply
    kDegenerate, // destructive cancellation, bound undefined
};

struct RangePoint
{
    double r_d = 0.0;
    double r_i = 0.0;
    double psi = 0.0; // grazing angle; the array sees the image at -psi
    cplx gamma_r;
    double smr_db = 0.0;
    double delta_phi = 0.0;
    double snr_db = 0.0;
    bool same_cell = false;
    double crb_theta = 0.0; // defined at every range
    PointStatus status = PointStatus::kOk;
    std::optional<BoundBreakdown> bound;

    // |alpha_i / alpha_d|
    double path_ratio() const { return std::pow(10.0, -smr_db / 20.0); }
};

// Scene the array sees at range r_d, with free-space r^-2 amplitude loss per
// path normalised so that SNR = snr_ref_db at r_ref.
MultipathScene scenario_scene(const GroundScenario &scn, const ArrayGeometry &geom, double r_d);

RangePoint range_point(const GroundScenario &scn, const ArrayGeometry &geom, double r_d);
RangePoint range_point(const GroundScenario &scn, double r_d);

// result[g][k] is range_grid[k] evaluated with geoms[g].
std::vector<std::vector<RangePoint>> range_sweep(const GroundScenario &scn,
                                                 std::span<const ArrayGeometry> geoms);

} // namespace mcrb

#endif
