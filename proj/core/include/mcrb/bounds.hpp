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

#ifndef MCRB_BOUNDS_HPP
#define MCRB_BOUNDS_HPP

#include "mcrb/multipath_model.hpp"
#include "mcrb/search.hpp"

#include <array>

namespace mcrb
{
using Matrix5 = Eigen::Matrix<double, 5, 5>;

// Parameter ordering of every 5x5 matrix in this module.
struct XiVector
{
    enum Index : int
    {
        kAlphaRe = 0,
        kAlphaIm = 1,
        kTauD = 2,
        kOmegaD = 3,
        kTheta = 4,
    };

    double alpha_re = 0.0;
    double alpha_im = 0.0;
    double tau_d = 0.0;    // [s]
    double omega_dd = 0.0; // [rad/s]
    double theta = 0.0;    // [rad]

    std::array<double, 5> values() const { return {alpha_re, alpha_im, tau_d, omega_dd, theta}; }
};

// Delay / Doppler information scalars F_tau, F_omega. They never reach the
// theta element of the closed form, so by default they are chosen to make
// zeta1 = zeta2 = 1.
struct DelayDopplerInfo
{
    double f_tau = 0.0;
    double f_omega = 0.0;

    static DelayDopplerInfo unit_zetas(const MultipathScene &scene);
};

// Compressed representation of the error-score matrix: C_D = (2 K E_p / s^2) Re{Z(zeta)}.
struct ZetaSet
{
    double zeta1 = 1.0; // |alpha_d|^2 F_tau / E_p
    double zeta2 = 1.0; // |alpha_d|^2 F_omega / E_p
    double zeta3 = 0.0; // |alpha_d|^2 E_Adot - Re{alpha_d^* alpha_i tr(ddA_d^H A_i)}
    cplx zeta4;         // alpha_i tr(A_d^H A_i), slow-time scale folded to 1
    cplx zeta5;         // alpha_i tr(dA_d^H A_i)
};

struct BoundBreakdown
{
    double crb_theta = 0.0;      // [rad^2]
    double m_theta_theta = 0.0;  // [rad^2]
    double theta_a = 0.0;        // [rad]
    double b_theta_theta = 0.0;  // [rad^2]
    double mcrb_theta = 0.0;     // [rad^2]
};

// Traces that every bound in this module is built from.
struct SceneTraces
{
    double e_adot = 0.0; // tr(dA_d dA_d^H)
    cplx tr_ad_ai;       // tr(A_d^H A_i)
    cplx tr_dad_ai;      // tr(dA_d^H A_i)
    cplx tr_ddad_ai;     // tr(ddA_d^H A_i)
};

SceneTraces scene_traces(const MultipathScene &scene);

// 2 K E_p / sigma_w^2
double information_scale(const MultipathScene &scene);

// Fisher information of the direct-only model, diagonal under orthogonal
// waveforms and centered arrays. Throws SingularInformation when E_Adot = 0.
Matrix5 fim(const MultipathScene &scene, const DelayDopplerInfo &info);
Matrix5 fim(const MultipathScene &scene);

// 1 / (2 SNR K E_p E_Adot)
double crb_theta(const MultipathScene &scene);

ZetaSet zeta_set(const MultipathScene &scene, const DelayDopplerInfo &info);
ZetaSet zeta_set(const MultipathScene &scene);

// Re{Z}, rows and columns ordered as XiVector.
Matrix5 z_matrix(const ZetaSet &z);
// scale * Re{Z}
Matrix5 cd_matrix(const ZetaSet &z, double scale);

// Default pseudo-true search: +/-60 degrees, coarse step = virtual-array
// beamwidth / 20, refinement to 1e-7 rad.
AngleSearch default_theta_search(const ArrayGeometry &geom);

// Projection objective |tr(A^H(theta') (alpha_d A_d + alpha_i A_i))|^2.
double pseudo_true_objective(const MultipathScene &scene, double theta_prime);

// KL-divergence minimiser of the direct-only model (amplitude concentrated out).
double theta_a(const MultipathScene &scene, const AngleSearch &search);
double theta_a(const MultipathScene &scene);

// Alternative weighting |tr(A^H A_d) + alpha_i / (alpha_d + alpha_i) tr(A^H A_i)|^2,
// kept for comparison against theta_a().
double theta_a_weighted_form(const MultipathScene &scene, const AngleSearch &search);

struct ClosedFormOptions
{
    // A point is degenerate when den^2 < eps_den_rel * SMR * E_Adot^2.
    double eps_den_rel = 1e-9;
};

// Closed-form M_thetatheta plus squared pseudo-true bias.
//   M = CRB * E (|tr(dA_d^H A_i)|^2 + SMR E) / (Re{tr(ddA_d^H A_i) e^{-j dphi}} - sqrt(SMR) E)^2
// alpha_i == 0 returns the analytic limit M = CRB, B = 0.
BoundBreakdown mcrb_theta_closed(const MultipathScene &scene, const AngleSearch &search,
                                 const ClosedFormOptions &opts = {});
BoundBreakdown mcrb_theta_closed(const MultipathScene &scene);

struct SandwichResult
{
    Matrix5 m;          // C_D^-1 J C_D^-1
    Matrix5 cd;
    Matrix5 j;
    double condition = 0.0; // 2-norm condition of Re{Z}
    BoundBreakdown breakdown;
};

// Full 5x5 sandwich; M_thetatheta = m(4, 4). Throws IllConditioned when the
// condition number of Re{Z} exceeds max_condition.
SandwichResult mcrb_sandwich(const MultipathScene &scene, const DelayDopplerInfo &info,
                             const AngleSearch &search, double max_condition = 1e12);
SandwichResult mcrb_sandwich(const MultipathScene &scene);

} // namespace mcrb

#endif
