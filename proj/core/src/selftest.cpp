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

#include "mcrb/selftest.hpp"

#include "mcrb/auto_scenario.hpp"
#include "mcrb/estimation.hpp"
#include "mcrb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mcrb
{
namespace
{
std::string sci(double v)
{
    std::ostringstream o;
    o.precision(3);
    o << std::scientific << v;
    return o.str();
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ArrayGeometry random_geometry(std::mt19937_64 &eng)
{
    std::uniform_int_distribution<int> nt(1, 6), nr(2, 10);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    std::vector<double> tx(std::size_t(nt(eng))), rx(std::size_t(nr(eng)));
    for (auto &p : tx)
        p = pos(eng);
    for (auto &p : rx)
        p = pos(eng);
    return ArrayGeometry(tx, rx);
}

double vec_fd_error(const CVector &analytic, const CVector &plus, const CVector &minus, double h)
{
    const CVector fd = (plus - minus) / (2.0 * h);
    const double scale = analytic.norm();
    return scale > 0.0 ? (analytic - fd).norm() / scale : (analytic - fd).norm();
}

struct Recorder
{
    SelftestReport &rep;
    void operator()(std::string name, bool ok, std::string detail)
    {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    }
};

} // namespace

bool SelftestReport::all_passed() const
{
    for (const auto &c : checks)
        if (!c.passed)
            return false;
    return true;
}

std::string SelftestReport::to_text() const
{
    std::ostringstream o;
    for (const auto &c : checks)
        o << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    for (const auto &i : info)
        o << "INFO " << i << "\n";
    std::size_t failed = 0;
    for (const auto &c : checks)
        failed += c.passed ? 0 : 1;
    o << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
    return o.str();
}

double steering_fd_error(const ArrayGeometry &geom, double theta, double h)
{
    const SteeringSet s = steering(geom, theta);
    const SteeringSet p = steering(geom, theta + h);
    const SteeringSet m = steering(geom, theta - h);
    double e = 0.0;
    e = std::max(e, vec_fd_error(s.da_r, p.a_r, m.a_r, h));
    e = std::max(e, vec_fd_error(s.da_t, p.a_t, m.a_t, h));
    e = std::max(e, vec_fd_error(s.dda_r, p.da_r, m.da_r, h));
    e = std::max(e, vec_fd_error(s.dda_t, p.da_t, m.da_t, h));
    return e;
}

OracleComparison compare_closed_vs_sandwich(int scenes, std::uint64_t seed)
{
    const ArrayGeometry geom = standard_virtual_ula(3, 4);
    const double bw = geom.beamwidth();
    std::mt19937_64 eng(derive_seed(seed, {0}));
    std::uniform_real_distribution<double> smr_db(-10.0, 30.0), dth(-2.0 * bw, 2.0 * bw),
        dphi(-kPi, kPi), theta(deg2rad(-20.0), deg2rad(20.0));

    OracleComparison out{0, 0, 0.0, 0.0, direct_only_scene(geom, 0.0, 10.0), 0.0, 0.0};
    double sum = 0.0;
    for (int n = 0; n < scenes; ++n)
    {
        const double th = theta(eng);
        const double d = dth(eng);
        const double s_db = smr_db(eng);
        const double ph = dphi(eng);
        const MultipathScene s = scene_from_ratios(geom, th, th - d, 10.0, s_db, ph);
        try
        {
            const BoundBreakdown closed = mcrb_theta_closed(s);
            const SandwichResult sw = mcrb_sandwich(s);
            const double rel = rel_err(closed.m_theta_theta, sw.breakdown.m_theta_theta);

            ZetaSet z = zeta_set(s);
            z.zeta4 = 0.0;
            const Matrix5 cd = cd_matrix(z, information_scale(s));
            const Matrix5 inv = cd.fullPivLu().inverse();
            const Matrix5 m = inv * fim(s) * inv;
            const double rel4 = rel_err(m(4, 4), sw.breakdown.m_theta_theta);
            const double scale = information_scale(s);
            const double no_schur = (scale * std::norm(z.zeta5) + sw.j(4, 4))
                                    / (scale * scale * z.zeta3 * z.zeta3);
            out.max_rel_without_schur =
                std::max(out.max_rel_without_schur, rel_err(closed.m_theta_theta, no_schur));

            ++out.scenes;
            sum += rel;
            out.max_rel_zeta4_dropped = std::max(out.max_rel_zeta4_dropped, rel4);
            if (rel > out.max_rel)
            {
                out.max_rel = rel;
                out.worst = s;
            }
        }
        catch (const DegenerateBound &)
        {
            ++out.skipped;
        }
        catch (const IllConditioned &)
        {
            ++out.skipped;
        }
    }
    out.mean_rel = out.scenes > 0 ? sum / out.scenes : 0.0;
    return out;
}

SelftestReport run_selftest(const SelftestOptions &opts)
{
    SelftestReport rep;
    Recorder check{rep};
    std::mt19937_64 eng(derive_seed(opts.seed, {1}));
    std::uniform_real_distribution<double> ang(-1.4, 1.4);

    // array identities over random centered geometries
    {
        double norm_err = 0.0, center_err = 0.0, i2 = 0.0, i3 = 0.0, i4 = 0.0, fd = 0.0, swap = 0.0;
        for (int n = 0; n < 200; ++n)
        {
            const ArrayGeometry g = random_geometry(eng);
            const double th = ang(eng);
            const SteeringSet s = steering(g, th);
            MimoMatrices m = mimo_matrices(s, steering(g, ang(eng)));
            if (opts.inject_ddad_fault)
                m.dda_d(0, 0) += 1e-3 * (1.0 + std::abs(m.dda_d(0, 0)));
            const double e = e_adot(s);
            norm_err = std::max({norm_err, std::abs(s.a_r.norm() - 1.0), std::abs(s.a_t.norm() - 1.0)});
            center_err = std::max({center_err, std::abs(s.a_r.dot(s.da_r)), std::abs(s.a_t.dot(s.da_t))});
            i2 = std::max(i2, std::abs(trace_inner(m.a_d, m.a_d) - 1.0));
            i3 = std::max(i3, std::abs(trace_inner(m.a_d, m.da_d)));
            if (e > 0.0)
                i4 = std::max(i4, std::abs(trace_inner(m.dda_d, m.a_d) + e) / e);
            fd = std::max(fd, steering_fd_error(g, th));
            const std::vector<double> tx(g.tx_positions().begin(), g.tx_positions().end());
            const std::vector<double> rx(g.rx_positions().begin(), g.rx_positions().end());
            swap = std::max(swap, rel_err(e_adot(steering(ArrayGeometry(rx, tx), th)), e));
        }
        check("steering_unit_norm", norm_err < 1e-12, "max | ||a|| - 1 | = " + sci(norm_err));
        check("steering_centered", center_err < 1e-12, "max |a^H da| = " + sci(center_err));
        check("trace_ad_ad_is_one", i2 < 1e-12, "max |tr(A_d A_d^H) - 1| = " + sci(i2));
        check("trace_dad_ad_is_zero", i3 < 1e-12, "max |tr(dA_d A_d^H)| = " + sci(i3));
        check("curvature_identity", i4 < 1e-10,
              "max |tr(ddA_d^H A_d) + E_Adot| / E_Adot = " + sci(i4)
                  + (opts.inject_ddad_fault ? " (ddA_d perturbed)" : ""));
        check("steering_derivatives_vs_central_differences", fd < 1e-6,
              "max relative error = " + sci(fd));
        check("e_adot_tx_rx_swap", swap < 1e-12, "max relative change = " + sci(swap));
    }

    const ArrayGeometry g34 = standard_virtual_ula(3, 4);
    {
        const auto v = g34.virtual_positions();
        double spacing = 0.0;
        std::vector<double> sorted(v.begin(), v.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < sorted.size(); ++i)
            spacing = std::max(spacing, std::abs(sorted[i] - sorted[i - 1] - 0.5));
        check("virtual_array_half_wavelength_ula", sorted.size() == 12 && spacing < 1e-12,
              "12 elements, max spacing error " + sci(spacing));
    }
    {
        const MultipathScene s = scene_from_ratios(g34, 0.0, 0.0, 10.0, 0.0, 0.0);
        const double r_closed = mcrb_theta_closed(s).mcrb_theta / crb_theta(s);
        const double r_sw = mcrb_sandwich(s).breakdown.mcrb_theta / crb_theta(s);
        check("coherent_limit_one_ninth",
              rel_err(r_closed, 1.0 / 9.0) < 1e-10 && rel_err(r_sw, 1.0 / 9.0) < 1e-10,
              "closed " + sci(rel_err(r_closed, 1.0 / 9.0)) + ", sandwich "
                  + sci(rel_err(r_sw, 1.0 / 9.0)));
    }
    {
        const MultipathScene s = direct_only_scene(g34, deg2rad(7.0), 5.0);
        const BoundBreakdown b = mcrb_theta_closed(s);
        const SandwichResult sw = mcrb_sandwich(s);
        const Matrix5 diag_inv = sw.j.diagonal().cwiseInverse().asDiagonal();
        check("multipath_free_limit",
              b.mcrb_theta == b.crb_theta && b.theta_a == s.theta
                  && (sw.m - diag_inv).cwiseAbs().maxCoeff() <= 1e-12 * diag_inv.cwiseAbs().maxCoeff(),
              "MCRB = CRB, theta_A = theta, sandwich = diag(J)^-1");
        check("fim_times_crb_is_one", rel_err(fim(s)(4, 4) * crb_theta(s), 1.0) < 1e-14,
              "J_thth * CRB - 1 = " + sci(fim(s)(4, 4) * crb_theta(s) - 1.0));
    }
    {
        MultipathScene s = scene_from_ratios(g34, 0.0, deg2rad(3.0), 10.0, 5.0, 0.7);
        const BoundBreakdown b0 = mcrb_theta_closed(s);
        const cplx rot = std::polar(1.0, 1.234);
        s.alpha_d *= rot;
        s.alpha_i *= rot;
        const BoundBreakdown b1 = mcrb_theta_closed(s);
        check("joint_phase_rotation_invariance", rel_err(b1.mcrb_theta, b0.mcrb_theta) < 1e-10,
              "relative change " + sci(rel_err(b1.mcrb_theta, b0.mcrb_theta)));
        const double m_a = mcrb_theta_closed(scene_from_ratios(g34, 0.0, deg2rad(3.0), 10.0, 5.0, 0.7)).m_theta_theta;
        const double m_b = mcrb_theta_closed(scene_from_ratios(g34, 0.0, deg2rad(3.0), 10.0, 5.0, 0.7 + 2.0 * kPi)).m_theta_theta;
        check("delta_phi_periodicity", rel_err(m_b, m_a) < 1e-10,
              "relative change " + sci(rel_err(m_b, m_a)));
        MultipathScene scaled = scene_from_ratios(g34, 0.0, deg2rad(3.0), 10.0, 5.0, 0.7);
        const double ta0 = theta_a(scaled);
        scaled.alpha_d *= 3.7;
        scaled.alpha_i *= 3.7;
        check("theta_a_scale_invariance", std::abs(theta_a(scaled) - ta0) < 1e-9,
              "|change| = " + sci(std::abs(theta_a(scaled) - ta0)) + " rad");
    }
    {
        const MultipathScene s = scene_from_ratios(g34, 0.0, deg2rad(0.5), 10.0, 0.0, 0.0);
        const EstimatorConfig cfg = EstimatorConfig::defaults_for(g34);
        const double est = mml_doa(compressed_mean(s), g34, cfg);
        const double ta = theta_a(s);
        check("noise_free_mml_equals_theta_a", std::abs(est - ta) < 10.0 * cfg.search.refine_tol,
              "|mml - theta_A| = " + sci(std::abs(est - ta)) + " rad");
    }
    {
        const IndirectGeometry ig = indirect_geometry(std::sqrt(3.0), 0.0, 0.5);
        check("indirect_geometry_right_triangle",
              std::abs(ig.r_i - 2.0) < 1e-12 && std::abs(rad2deg(ig.psi) - 30.0) < 1e-9,
              "r_i = " + sci(ig.r_i) + ", psi = " + sci(rad2deg(ig.psi)) + " deg");
        const double g90 = std::abs(reflection_coefficient(kPi / 2, 4.0, 0.0, 3.8e-3));
        check("normal_incidence_reflection", std::abs(g90 - 1.0 / 3.0) < 1e-12,
              "|Gamma(90 deg)| - 1/3 = " + sci(g90 - 1.0 / 3.0));
        double worst = 0.0;
        for (int i = 1; i <= 9000; ++i)
            worst = std::max(worst, std::abs(reflection_coefficient(deg2rad(0.01 * i), 4.0, 0.005, 3.8e-3)));
        const double graze = std::abs(reflection_coefficient(deg2rad(0.1), 4.0, 0.005, 3.8e-3) + 1.0);
        check("reflection_passive_and_grazing_mirror", worst <= 1.0 && graze < 0.01,
              "max |Gamma| = " + sci(worst) + ", |Gamma(0.1 deg) + 1| = " + sci(graze));
    }

    const OracleComparison oc = compare_closed_vs_sandwich(opts.random_scenes, opts.seed);
    rep.info.push_back("closed form vs 5x5 sandwich over " + std::to_string(oc.scenes)
                       + " random scenes (" + std::to_string(oc.skipped)
                       + " degenerate skipped): max rel " + sci(oc.max_rel) + ", mean rel "
                       + sci(oc.mean_rel) + "; sandwich with zeta4 = 0 vs full sandwich: max rel "
                       + sci(oc.max_rel_zeta4_dropped) + "; closed form vs sandwich without the"
                       + " alpha-theta Schur term: max rel " + sci(oc.max_rel_without_schur));
    {
        const MultipathScene s = scene_from_ratios(g34, 0.0, deg2rad(0.5), 10.0, 0.0, 0.0);
        const double ta = theta_a(s);
        const double tp = theta_a_weighted_form(s, default_theta_search(g34));
        rep.info.push_back("pseudo-true angle on the 3x4 / psi = 0.5 deg / SMR 0 dB scene: KLD "
                           + sci(rad2deg(ta)) + " deg, weighted form " + sci(rad2deg(tp)) + " deg");
    }
    return rep;
}

} // namespace mcrb
