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

#include <cmath>

namespace mcrb
{
namespace
{
double require_e_adot(double e)
{
    if (!(e > 0.0))
        throw SingularInformation("E_Adot is zero: the array carries no angle information");
    return e;
}

// a_r(x)^H S a_t(x)^*, i.e. tr(A^H(x) S)
cplx project(const ArrayGeometry &geom, const CMatrix &s, double x)
{
    const SteeringSet st = steering(geom, x);
    return st.a_r.dot(s * st.a_t.conjugate());
}

void require_span_covers(const AngleSearch &search, double theta)
{
    if (!(theta >= search.lo && theta <= search.hi))
        throw InvalidArgument("pseudo-true search span must contain the true DOA");
}
} // namespace

DelayDopplerInfo DelayDopplerInfo::unit_zetas(const MultipathScene &scene)
{
    const double a2 = std::norm(scene.alpha_d);
    if (a2 == 0.0)
        throw SingularInformation("direct path coefficient is zero");
    return {scene.e_p / a2, scene.e_p / a2};
}

SceneTraces scene_traces(const MultipathScene &scene)
{
    const SteeringSet st = steering(scene.geom, scene.theta);
    const SteeringSet sr = steering(scene.geom, scene.psi);
    const MimoMatrices m = mimo_matrices(st, sr);
    return {e_adot(st), trace_inner(m.a_d, m.a_i), trace_inner(m.da_d, m.a_i),
            trace_inner(m.dda_d, m.a_i)};
}

double information_scale(const MultipathScene &scene)
{
    return 2.0 * double(scene.k_pulses) * scene.e_p / scene.sigma_w2;
}

Matrix5 fim(const MultipathScene &scene, const DelayDopplerInfo &info)
{
    scene.validate();
    if (!(info.f_tau > 0.0) || !(info.f_omega > 0.0))
        throw InvalidArgument("fim: F_tau and F_omega must be positive");
    const double e = require_e_adot(e_adot(steering(scene.geom, scene.theta)));
    const double c = 2.0 * double(scene.k_pulses) / scene.sigma_w2;
    const double a2 = std::norm(scene.alpha_d);
    Matrix5 j = Matrix5::Zero();
    j(0, 0) = c * scene.e_p;
    j(1, 1) = c * scene.e_p;
    j(2, 2) = c * a2 * info.f_tau;
    j(3, 3) = c * a2 * info.f_omega;
    j(4, 4) = c * scene.e_p * a2 * e;
    return j;
}

Matrix5 fim(const MultipathScene &scene)
{
    return fim(scene, DelayDopplerInfo::unit_zetas(scene));
}

double crb_theta(const MultipathScene &scene)
{
    scene.validate();
    const double e = require_e_adot(e_adot(steering(scene.geom, scene.theta)));
    return 1.0 / (2.0 * snr(scene) * double(scene.k_pulses) * scene.e_p * e);
}

ZetaSet zeta_set(const MultipathScene &scene, const DelayDopplerInfo &info)
{
    scene.validate();
    const SceneTraces t = scene_traces(scene);
    const double a2 = std::norm(scene.alpha_d);
    ZetaSet z;
    z.zeta1 = a2 * info.f_tau / scene.e_p;
    z.zeta2 = a2 * info.f_omega / scene.e_p;
    z.zeta3 = a2 * t.e_adot - std::real(std::conj(scene.alpha_d) * scene.alpha_i * t.tr_ddad_ai);
    z.zeta4 = scene.alpha_i * t.tr_ad_ai;
    z.zeta5 = scene.alpha_i * t.tr_dad_ai;
    return z;
}

ZetaSet zeta_set(const MultipathScene &scene)
{
    return zeta_set(scene, DelayDopplerInfo::unit_zetas(scene));
}

Matrix5 z_matrix(const ZetaSet &z)
{
    Matrix5 m = Matrix5::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = z.zeta1;
    m(3, 3) = z.zeta2;
    m(4, 4) = z.zeta3;
    // Re{-j zeta4}, Re{-zeta4}
    m(0, 3) = m(3, 0) = z.zeta4.imag();
    m(1, 3) = m(3, 1) = -z.zeta4.real();
    // Re{-zeta5}, Re{j zeta5}
    m(0, 4) = m(4, 0) = -z.zeta5.real();
    m(1, 4) = m(4, 1) = -z.zeta5.imag();
    return m;
}

Matrix5 cd_matrix(const ZetaSet &z, double scale)
{
    return scale * z_matrix(z);
}

AngleSearch default_theta_search(const ArrayGeometry &geom)
{
    AngleSearch s;
    s.lo = -deg2rad(60.0);
    s.hi = deg2rad(60.0);
    s.coarse_step = geom.beamwidth() / 20.0;
    s.refine_tol = 1e-7;
    return s;
}

double pseudo_true_objective(const MultipathScene &scene, double theta_prime)
{
    const CMatrix s = compressed_mean(scene);
    return std::norm(project(scene.geom, s, theta_prime));
}

double theta_a(const MultipathScene &scene, const AngleSearch &search)
{
    scene.validate();
    require_span_covers(search, scene.theta);
    if (scene.alpha_i == cplx(0.0))
        return scene.theta;
    const CMatrix s = compressed_mean(scene);
    auto objective = [&](double x) { return std::norm(project(scene.geom, s, x)); };
    return grid_golden_argmax(objective, search, scene.theta);
}

double theta_a(const MultipathScene &scene)
{
    return theta_a(scene, default_theta_search(scene.geom));
}

double theta_a_weighted_form(const MultipathScene &scene, const AngleSearch &search)
{
    scene.validate();
    require_span_covers(search, scene.theta);
    const cplx total = scene.alpha_d + scene.alpha_i;
    if (std::abs(total) == 0.0)
        throw InvalidArgument("theta_a_weighted_form: alpha_d + alpha_i vanishes");
    const SteeringSet st = steering(scene.geom, scene.theta);
    const SteeringSet sr = steering(scene.geom, scene.psi);
    const MimoMatrices m = mimo_matrices(st, sr);
    const CMatrix s = m.a_d + (scene.alpha_i / total) * m.a_i;
    auto objective = [&](double x) { return std::norm(project(scene.geom, s, x)); };
    return grid_golden_argmax(objective, search, scene.theta);
}

BoundBreakdown mcrb_theta_closed(const MultipathScene &scene, const AngleSearch &search,
                                 const ClosedFormOptions &opts)
{
    BoundBreakdown b;
    b.crb_theta = crb_theta(scene);
    if (scene.alpha_i == cplx(0.0))
    {
        require_span_covers(search, scene.theta);
        b.m_theta_theta = b.crb_theta;
        b.theta_a = scene.theta;
        b.b_theta_theta = 0.0;
        b.mcrb_theta = b.crb_theta;
        return b;
    }

    const SceneTraces t = scene_traces(scene);
    const double e = t.e_adot;
    const double ratio = smr(scene);
    const double dphi = delta_phi(scene);
    const double den = std::real(t.tr_ddad_ai * std::polar(1.0, -dphi)) - std::sqrt(ratio) * e;
    if (!(den * den >= opts.eps_den_rel * ratio * e * e))
        throw DegenerateBound("closed-form MCRB denominator vanishes (destructive paths)", den);

    b.m_theta_theta = b.crb_theta * e * (std::norm(t.tr_dad_ai) + ratio * e) / (den * den);
    b.theta_a = theta_a(scene, search);
    b.b_theta_theta = (scene.theta - b.theta_a) * (scene.theta - b.theta_a);
    b.mcrb_theta = b.m_theta_theta + b.b_theta_theta;
    return b;
}

BoundBreakdown mcrb_theta_closed(const MultipathScene &scene)
{
    return mcrb_theta_closed(scene, default_theta_search(scene.geom));
}

SandwichResult mcrb_sandwich(const MultipathScene &scene, const DelayDopplerInfo &info,
                             const AngleSearch &search, double max_condition)
{
    SandwichResult r;
    r.j = fim(scene, info);
    const ZetaSet zs = zeta_set(scene, info);
    const Matrix5 z = z_matrix(zs);
    const double scale = information_scale(scene);
    r.cd = scale * z;

    Eigen::JacobiSVD<Matrix5> svd(z);
    const auto sv = svd.singularValues();
    r.condition = sv(4) > 0.0 ? sv(0) / sv(4) : std::numeric_limits<double>::infinity();
    if (!(r.condition <= max_condition))
        throw IllConditioned("error-score matrix is ill-conditioned", r.condition);

    const Matrix5 cd_inv = r.cd.fullPivLu().inverse();
    r.m = cd_inv * r.j * cd_inv;

    BoundBreakdown &b = r.breakdown;
    b.crb_theta = 1.0 / r.j(4, 4);
    b.m_theta_theta = r.m(XiVector::kTheta, XiVector::kTheta);
    b.theta_a = theta_a(scene, search);
    b.b_theta_theta = (scene.theta - b.theta_a) * (scene.theta - b.theta_a);
    b.mcrb_theta = b.m_theta_theta + b.b_theta_theta;
    return r;
}

SandwichResult mcrb_sandwich(const MultipathScene &scene)
{
    return mcrb_sandwich(scene, DelayDopplerInfo::unit_zetas(scene),
                         default_theta_search(scene.geom));
}

} // namespace mcrb
