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
#include "mcrb/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mcrb;

namespace
{
const ArrayGeometry &g34()
{
    static const ArrayGeometry g = standard_virtual_ula(3, 4);
    return g;
}

MultipathScene fig2_scene(double snr_db = 10.0, int k = 1)
{
    return scene_from_ratios(g34(), 0.0, deg2rad(0.5), snr_db, 0.0, 0.0, k);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Random scene over the ranges used by the closed-form oracle comparison.
MultipathScene random_scene(std::mt19937_64 &eng)
{
    const double bw = g34().beamwidth();
    std::uniform_real_distribution<double> smr_db(-10.0, 30.0), dth(-2.0 * bw, 2.0 * bw),
        dphi(-kPi, kPi), th(deg2rad(-20.0), deg2rad(20.0));
    const double t = th(eng);
    const double d = dth(eng);
    const double s = smr_db(eng);
    return scene_from_ratios(g34(), t, t - d, 10.0, s, dphi(eng));
}
} // namespace

TEST_CASE("CRB of the 3x4 preset")
{
    // J_thth = 2 SNR K E_p E_Adot
    const MultipathScene s = fig2_scene(10.0, 64);
    const double j = 2.0 * 10.0 * 64.0 * 117.612786;
    CHECK(fim(s)(4, 4) == doctest::Approx(j).epsilon(1e-8));
    CHECK(crb_theta(s) == doctest::Approx(1.0 / j).epsilon(1e-8));
    CHECK(crb_theta(s) == doctest::Approx(oracle::crb(s)).epsilon(1e-13));
    CHECK(fim(s)(4, 4) * crb_theta(s) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("CRB needs angle information")
{
    const ArrayGeometry single({0.0}, {0.0});
    const MultipathScene s = direct_only_scene(single, 0.0, 10.0);
    CHECK_THROWS_AS(crb_theta(s), SingularInformation);
}

TEST_CASE("scene traces match the raw-loop oracle")
{
    std::mt19937_64 eng(derive_seed(11, {1}));
    for (int n = 0; n < 50; ++n)
    {
        const MultipathScene s = random_scene(eng);
        const SceneTraces t = scene_traces(s);
        const oracle::Traces o = oracle::traces(s.geom, s.theta, s.psi);
        CHECK(t.e_adot == doctest::Approx(o.e_adot).epsilon(1e-12));
        CHECK(std::abs(t.tr_ad_ai - o.ad_ai) < 1e-12);
        CHECK(std::abs(t.tr_dad_ai - o.dad_ai) < 1e-10);
        CHECK(std::abs(t.tr_ddad_ai - o.ddad_ai) < 1e-8);
    }
}

TEST_CASE("zeta set limits")
{
    const MultipathScene free = direct_only_scene(g34(), 0.1, 10.0);
    const ZetaSet z0 = zeta_set(free);
    CHECK(z0.zeta4 == cplx(0.0));
    CHECK(z0.zeta5 == cplx(0.0));
    CHECK(z0.zeta3 == doctest::Approx(e_adot(steering(g34(), 0.1))));

    // psi = theta, alpha_i = alpha_d = 1: zeta3 = E + 2E
    const MultipathScene coh = scene_from_ratios(g34(), 0.0, 0.0, 10.0, 0.0, 0.0);
    const double e = e_adot(steering(g34(), 0.0));
    CHECK(zeta_set(coh).zeta3 == doctest::Approx(3.0 * e).epsilon(1e-12));
}

TEST_CASE("Re{Z} layout")
{
    ZetaSet z;
    z.zeta1 = 2.0;
    z.zeta2 = 3.0;
    z.zeta3 = 4.0;
    z.zeta4 = cplx(0.5, -0.25);
    z.zeta5 = cplx(-0.75, 0.125);
    const Matrix5 m = z_matrix(z);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(1, 1) == 1.0);
    CHECK(m(2, 2) == 2.0);
    CHECK(m(3, 3) == 3.0);
    CHECK(m(4, 4) == 4.0);
    CHECK(m(0, 3) == -0.25);  // Im zeta4
    CHECK(m(1, 3) == -0.5);   // -Re zeta4
    CHECK(m(0, 4) == 0.75);   // -Re zeta5
    CHECK(m(1, 4) == -0.125); // -Im zeta5
    CHECK(m(0, 1) == 0.0);
    CHECK(m(2, 4) == 0.0);
    CHECK(m == m.transpose());
    CHECK(cd_matrix(z, 3.0) == 3.0 * m);

    ZetaSet d;
    d.zeta3 = 5.0;
    const Matrix5 diag = z_matrix(d);
    CHECK(diag.isDiagonal());
}

TEST_CASE("coherent limit: MCRB = CRB / 9")
{
    const MultipathScene s = scene_from_ratios(g34(), 0.0, 0.0, 10.0, 0.0, 0.0);
    const BoundBreakdown b = mcrb_theta_closed(s);
    CHECK(b.theta_a == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(rel(b.mcrb_theta, b.crb_theta / 9.0) < 1e-10);
    CHECK(rel(mcrb_sandwich(s).breakdown.mcrb_theta, b.crb_theta / 9.0) < 1e-10);
}

TEST_CASE("multipath-free limit")
{
    const MultipathScene s = direct_only_scene(g34(), deg2rad(12.0), 3.0);
    const BoundBreakdown b = mcrb_theta_closed(s);
    CHECK(b.mcrb_theta == b.crb_theta);
    CHECK(b.theta_a == s.theta);
    CHECK(b.b_theta_theta == 0.0);
    const SandwichResult sw = mcrb_sandwich(s);
    CHECK(sw.cd.isDiagonal());
    CHECK(rel(sw.breakdown.m_theta_theta, b.crb_theta) < 1e-12);
    const Matrix5 diag_inv = sw.j.diagonal().cwiseInverse().asDiagonal();
    CHECK((sw.m - diag_inv).cwiseAbs().maxCoeff() <= 1e-12 * diag_inv.cwiseAbs().maxCoeff());
}

TEST_CASE("pseudo-true angle of the fig2 preset")
{
    const MultipathScene s = fig2_scene();
    const double ta = theta_a(s);
    CHECK(ta > 0.0);
    CHECK(ta < deg2rad(0.5));
    // dense grid at 1e-4 deg over the gap between the two paths
    const double dense = oracle::theta_a_dense(s, 0.0, deg2rad(0.5), deg2rad(1e-4));
    CHECK(std::abs(rad2deg(ta - dense)) <= 1e-4);
    // frozen from the dense-grid oracle above
    CHECK(rad2deg(ta) == doctest::Approx(0.1666129).epsilon(1e-6));

    const double weighted = theta_a_weighted_form(s, default_theta_search(g34()));
    CHECK(weighted > 0.0);
    CHECK(weighted < ta);
}

TEST_CASE("pseudo-true angle is invariant to a common amplitude scale")
{
    MultipathScene s = scene_from_ratios(g34(), 0.05, -0.02, 10.0, 4.0, 0.9);
    const double a = theta_a(s);
    s.alpha_d *= cplx(2.0, -1.0);
    s.alpha_i *= cplx(2.0, -1.0);
    CHECK(theta_a(s) == doctest::Approx(a).epsilon(1e-9));
    CHECK(pseudo_true_objective(s, 0.01) == doctest::Approx(oracle::projection(s, 0.01)).epsilon(1e-12));
}

TEST_CASE("pseudo-true search must contain the DOA")
{
    const MultipathScene s = scene_from_ratios(g34(), deg2rad(70.0), deg2rad(69.0), 10.0, 0.0, 0.0);
    CHECK_THROWS_AS(theta_a(s), InvalidArgument);
}

TEST_CASE("closed form agrees with the raw-trace oracle")
{
    std::mt19937_64 eng(derive_seed(12, {2}));
    for (int n = 0; n < 100; ++n)
    {
        const MultipathScene s = random_scene(eng);
        const double want = oracle::closed_m(s);
        try
        {
            CHECK(rel(mcrb_theta_closed(s).m_theta_theta, want) < 1e-9);
        }
        catch (const DegenerateBound &)
        {
        }
    }
}

TEST_CASE("sandwich element equals the block-elimination oracle")
{
    std::mt19937_64 eng(derive_seed(13, {2}));
    for (int n = 0; n < 100; ++n)
    {
        const MultipathScene s = random_scene(eng);
        CHECK(rel(mcrb_sandwich(s).breakdown.m_theta_theta, oracle::sandwich_m(s)) < 1e-9);
    }
}

TEST_CASE("closed form is the sandwich without the alpha-theta Schur term")
{
    std::mt19937_64 eng(derive_seed(14, {2}));
    for (int n = 0; n < 100; ++n)
    {
        const MultipathScene s = random_scene(eng);
        try
        {
            CHECK(rel(mcrb_theta_closed(s).m_theta_theta, oracle::sandwich_m(s, false)) < 1e-9);
        }
        catch (const DegenerateBound &)
        {
        }
    }
    // the two only coincide when zeta5 vanishes, e.g. psi = theta
    const MultipathScene s = scene_from_ratios(g34(), 0.0, 0.0, 10.0, 6.0, 0.4);
    CHECK(rel(mcrb_theta_closed(s).m_theta_theta, mcrb_sandwich(s).breakdown.m_theta_theta) < 1e-10);
}

TEST_CASE("theta element is blind to zeta4 and the slow-time scale")
{
    std::mt19937_64 eng(derive_seed(15, {2}));
    for (int n = 0; n < 50; ++n)
    {
        const MultipathScene s = random_scene(eng);
        const SandwichResult sw = mcrb_sandwich(s);
        ZetaSet z = zeta_set(s);
        z.zeta4 = 0.0;
        const Matrix5 inv = cd_matrix(z, information_scale(s)).inverse();
        CHECK(rel((inv * sw.j * inv)(4, 4), sw.breakdown.m_theta_theta) < 1e-10);

        // Doppler row and column rescaled by a slow-time T
        Matrix5 t = Matrix5::Identity();
        t(3, 3) = 37.0;
        const Matrix5 cd = t * sw.cd * t;
        const Matrix5 j = t * sw.j * t;
        const Matrix5 cinv = cd.inverse();
        CHECK(rel((cinv * j * cinv)(4, 4), sw.breakdown.m_theta_theta) < 1e-10);
    }
}

TEST_CASE("destructive coherent paths are degenerate")
{
    // at psi = 0, A_i = 2 A_d, so alpha_i = -alpha_d / 2 cancels the echo exactly
    const double smr_db = to_db(4.0);
    const MultipathScene s = scene_from_ratios(g34(), 0.0, 0.0, 10.0, smr_db, kPi);
    CHECK_THROWS_AS(mcrb_theta_closed(s), DegenerateBound);
    // a small phase offset moves away from the singularity
    CHECK_NOTHROW(mcrb_theta_closed(scene_from_ratios(g34(), 0.0, 0.0, 10.0, smr_db, kPi - 0.1)));
    CHECK_NOTHROW(mcrb_theta_closed(scene_from_ratios(g34(), 0.0, 0.0, 10.0, 0.0, kPi)));
}

TEST_CASE("sandwich refuses ill-conditioned error-score matrices")
{
    const MultipathScene s = fig2_scene();
    CHECK_THROWS_AS(mcrb_sandwich(s, DelayDopplerInfo::unit_zetas(s), default_theta_search(g34()), 2.0),
                    IllConditioned);
}

TEST_CASE("bound invariances")
{
    std::mt19937_64 eng(derive_seed(16, {2}));
    for (int n = 0; n < 30; ++n)
    {
        MultipathScene s = random_scene(eng);
        BoundBreakdown b0;
        try
        {
            b0 = mcrb_theta_closed(s);
        }
        catch (const DegenerateBound &)
        {
            continue;
        }
        // joint phase rotation
        MultipathScene r = s;
        r.alpha_d *= std::polar(1.0, 2.1);
        r.alpha_i *= std::polar(1.0, 2.1);
        CHECK(rel(mcrb_theta_closed(r).mcrb_theta, b0.mcrb_theta) < 1e-9);
        // 2 pi in delta phi
        MultipathScene p = s;
        p.alpha_i = std::polar(std::abs(s.alpha_i), std::arg(s.alpha_i) - 2.0 * kPi);
        CHECK(rel(mcrb_theta_closed(p).m_theta_theta, b0.m_theta_theta) < 1e-9);
        // MCRB = M + B
        CHECK(b0.mcrb_theta == doctest::Approx(b0.m_theta_theta + b0.b_theta_theta));
        // M scales as 1 / SNR at fixed SMR and phase
        MultipathScene q = s;
        q.sigma_w2 *= 10.0;
        CHECK(rel(mcrb_theta_closed(q).m_theta_theta, 10.0 * b0.m_theta_theta) < 1e-12);
    }
}
