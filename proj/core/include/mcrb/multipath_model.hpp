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

#ifndef MCRB_MULTIPATH_MODEL_HPP
#define MCRB_MULTIPATH_MODEL_HPP

#include "mcrb/array_geometry.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace mcrb
{

// True data model: one direct path plus a single-bounce ground/wall path that
// reaches the array through both the transmit and the receive side.
struct MultipathScene
{
    ArrayGeometry geom;
    double theta = 0.0;     // target DOA [rad]
    double psi = 0.0;       // reflector DOA [rad]
    cplx alpha_d{1.0, 0.0}; // direct path coefficient
    cplx alpha_i{0.0, 0.0}; // indirect path coefficient
    int k_pulses = 1;
    double e_p = 1.0;       // chirp energy
    double sigma_w2 = 1.0;  // white noise power after spatial whitening

    // Throws InvalidArgument when an invariant is broken.
    void validate() const;
};

struct PathGeometryInputs
{
    cplx gamma_t{1.0, 0.0}; // target reflection coefficient
    cplx gamma_r{0.0, 0.0}; // surface reflection coefficient
    double alpha_0d = 1.0;  // propagation loss magnitude, direct
    double alpha_0i = 1.0;  // propagation loss magnitude, indirect
    double r_d = 1.0;       // [m]
    double r_i = 1.0;       // [m]
    double lambda = 1.0;    // [m]
};

struct PathCoefficients
{
    cplx alpha_d;
    cplx alpha_i;
};

PathCoefficients path_coefficients(const PathGeometryInputs &p);

// Wrap an angle to (-pi, pi].
double wrap_phase(double phase);

// |alpha_d|^2 / |alpha_i|^2; +infinity when alpha_i == 0.
double smr(const MultipathScene &scene);
// |alpha_d|^2 / sigma_w^2
double snr(const MultipathScene &scene);
// wrap(arg alpha_d - arg alpha_i)
double delta_phi(const MultipathScene &scene);

inline double to_db(double ratio) { return 10.0 * std::log10(ratio); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

// alpha_d = 1, sigma_w^2 = 10^(-snr_db/10), alpha_i = 10^(-smr_db/20) e^{-j dphi}.
MultipathScene scene_from_ratios(const ArrayGeometry &geom, double theta, double psi,
                                 double snr_db, double smr_db, double delta_phi,
                                 int k_pulses = 1, double e_p = 1.0);

// Same as above with the indirect path switched off (alpha_i = 0).
MultipathScene direct_only_scene(const ArrayGeometry &geom, double theta, double snr_db,
                                 int k_pulses = 1, double e_p = 1.0);

// Noise-free compressed statistic K E_p (alpha_d A_d + alpha_i A_i), M_r x M_t.
CMatrix compressed_mean(const MultipathScene &scene);

// Compressed-domain sufficient statistic after fast-time matched filtering,
// coherent slow-time integration over K pulses, and whitening:
//   Y = K E_p (alpha_d A_d + alpha_i A_i) + W,  W_ij ~ CN(0, K E_p sigma_w^2).
// The same seed always yields the same W.
CMatrix synthesize_compressed(const MultipathScene &scene, std::uint64_t noise_seed);

// Adds circular Gaussian noise of the scene's compressed-domain variance to
// `mean` in place; exposed so Monte-Carlo loops can reuse one mean matrix.
void add_compressed_noise(CMatrix &mean, const MultipathScene &scene, std::uint64_t noise_seed);

} // namespace mcrb

#endif
