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

#include "mcrb/multipath_model.hpp"

#include <cmath>
#include <random>

namespace mcrb
{

void MultipathScene::validate() const
{
    if (!(sigma_w2 > 0.0) || !std::isfinite(sigma_w2))
        throw InvalidArgument("scene: sigma_w2 must be a positive finite number");
    if (!(e_p > 0.0) || !std::isfinite(e_p))
        throw InvalidArgument("scene: e_p must be a positive finite number");
    if (k_pulses < 1)
        throw InvalidArgument("scene: k_pulses must be >= 1");
    if (!(std::abs(theta) < kPi / 2) || !(std::abs(psi) < kPi / 2))
        throw InvalidArgument("scene: theta and psi must lie inside (-pi/2, pi/2)");
    if (!std::isfinite(alpha_d.real()) || !std::isfinite(alpha_d.imag())
        || !std::isfinite(alpha_i.real()) || !std::isfinite(alpha_i.imag()))
        throw InvalidArgument("scene: path coefficients must be finite");
}

PathCoefficients path_coefficients(const PathGeometryInputs &p)
{
    if (!(p.lambda > 0.0))
        throw InvalidArgument("path_coefficients: lambda must be positive");
    if (!(p.r_d > 0.0) || !(p.r_i >= p.r_d))
        throw InvalidArgument("path_coefficients: need r_i >= r_d > 0");
    if (!(p.alpha_0d >= 0.0) || !(p.alpha_0i >= 0.0))
        throw InvalidArgument("path_coefficients: loss magnitudes must be non-negative");

    const double phi_rd = 2.0 * kPi * p.r_d / p.lambda;
    const double phi_ri = 2.0 * kPi * p.r_i / p.lambda;
    const double gt = std::abs(p.gamma_t);
    const double gr = std::abs(p.gamma_r);
    const double arg_t = gt > 0.0 ? std::arg(p.gamma_t) : 0.0;
    const double arg_r = gr > 0.0 ? std::arg(p.gamma_r) : 0.0;
    return {std::polar(p.alpha_0d * gt, arg_t + phi_rd),
            std::polar(p.alpha_0i * gt * gr, arg_t + arg_r + phi_ri)};
}

double wrap_phase(double phase)
{
    double w = std::remainder(phase, 2.0 * kPi);
    if (w <= -kPi)
        w += 2.0 * kPi;
    return w;
}

double smr(const MultipathScene &scene)
{
    const double pi = std::norm(scene.alpha_i);
    if (pi == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::norm(scene.alpha_d) / pi;
}

double snr(const MultipathScene &scene)
{
    return std::norm(scene.alpha_d) / scene.sigma_w2;
}

double delta_phi(const MultipathScene &scene)
{
    return wrap_phase(std::arg(scene.alpha_d) - std::arg(scene.alpha_i));
}

MultipathScene scene_from_ratios(const ArrayGeometry &geom, double theta, double psi,
                                 double snr_db, double smr_db, double delta_phi,
                                 int k_pulses, double e_p)
{
    MultipathScene s{geom};
    s.theta = theta;
    s.psi = psi;
    s.alpha_d = 1.0;
    s.alpha_i = std::polar(std::pow(10.0, -smr_db / 20.0), -delta_phi);
    s.k_pulses = k_pulses;
    s.e_p = e_p;
    s.sigma_w2 = std::pow(10.0, -snr_db / 10.0);
    s.validate();
    return s;
}

MultipathScene direct_only_scene(const ArrayGeometry &geom, double theta, double snr_db,
                                 int k_pulses, double e_p)
{
    MultipathScene s = scene_from_ratios(geom, theta, theta, snr_db, 0.0, 0.0, k_pulses, e_p);
    s.alpha_i = 0.0;
    return s;
}

CMatrix compressed_mean(const MultipathScene &scene)
{
    const SteeringSet st = steering(scene.geom, scene.theta);
    const SteeringSet sr = steering(scene.geom, scene.psi);
    const CMatrix a_d = st.a_r * st.a_t.transpose();
    const CMatrix a_i = sr.a_r * st.a_t.transpose() + st.a_r * sr.a_t.transpose();
    const double gain = double(scene.k_pulses) * scene.e_p;
    return gain * (scene.alpha_d * a_d + scene.alpha_i * a_i);
}

void add_compressed_noise(CMatrix &y, const MultipathScene &scene, std::uint64_t noise_seed)
{
    const double var = double(scene.k_pulses) * scene.e_p * scene.sigma_w2;
    std::mt19937_64 eng(noise_seed);
    std::normal_distribution<double> n01(0.0, 1.0);
    const double sd = std::sqrt(0.5 * var);
    // column-major fill order is part of the reproducibility contract
    for (Eigen::Index c = 0; c < y.cols(); ++c)
        for (Eigen::Index r = 0; r < y.rows(); ++r)
        {
            const double re = n01(eng);
            const double im = n01(eng);
            y(r, c) += cplx(sd * re, sd * im);
        }
}

CMatrix synthesize_compressed(const MultipathScene &scene, std::uint64_t noise_seed)
{
    scene.validate();
    CMatrix y = compressed_mean(scene);
    add_compressed_noise(y, scene, noise_seed);
    return y;
}

} // namespace mcrb
