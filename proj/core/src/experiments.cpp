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

#include "mcrb/experiments.hpp"

#include <cmath>
#include <limits>

namespace mcrb
{
namespace
{
Cell num(double x) { return std::isfinite(x) ? Cell{x} : Cell{}; }

double root_deg(double rad2) { return rad2deg(std::sqrt(rad2)); }

// Formats a label value for a column name: 1 -> "1", 2.5 -> "2p5", -3 -> "m3".
std::string tag(double v)
{
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.')
        s.pop_back();
    for (auto &ch : s)
        if (ch == '.')
            ch = 'p';
    if (!s.empty() && s.front() == '-')
        s.front() = 'm';
    return s;
}

MultipathScene scene_with(const ExperimentConfig &cfg, const ArrayGeometry &geom,
                          const std::string &param, double value)
{
    SceneSpec s = cfg.scene;
    if (param == "snr_db")
        s.snr_db = value;
    else if (param == "smr_db")
        s.smr_db = value;
    else if (param == "delta_theta_deg")
        s.psi_deg = s.theta_deg - value;
    else if (param == "delta_phi_deg")
        s.delta_phi_deg = value;
    else
        throw InvalidArgument("unknown sweep parameter: " + param);
    return s.build(geom);
}

Table beampattern_table(const std::string &name, const ArrayGeometry &geom, const BeamSpec &b)
{
    std::vector<double> grid_deg = b.grid.values();
    std::vector<double> grid(grid_deg.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = deg2rad(grid_deg[i]);
    const auto gains = beampattern(geom, deg2rad(b.steer_deg), grid);
    Table t{name, {"angle_deg", "tx_gain_db", "rx_gain_db"}, {}};
    for (std::size_t i = 0; i < gains.size(); ++i)
        t.rows.push_back({grid_deg[i], gains[i].tx_db, gains[i].rx_db});
    return t;
}

Figure beampattern_figure(const std::string &table)
{
    Figure f;
    f.name = table;
    f.table = table;
    f.title = "Transmit and receive beampatterns";
    f.x = "angle_deg";
    f.y = {"tx_gain_db", "rx_gain_db"};
    f.x_label = "angle [deg]";
    f.y_label = "gain [dB]";
    f.y_floor = -60.0;
    return f;
}
} // namespace

std::size_t Table::column(const std::string &col) const
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == col)
            return i;
    throw InvalidArgument("table '" + name + "' has no column '" + col + "'");
}

std::vector<double> Table::numbers(const std::string &col) const
{
    const std::size_t c = column(col);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &row : rows)
    {
        const Cell &cell = row[c];
        if (const double *d = std::get_if<double>(&cell))
            out.push_back(*d);
        else if (const auto *i = std::get_if<std::int64_t>(&cell))
            out.push_back(double(*i));
        else
            out.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

const Table &ExperimentResult::table(const std::string &name) const
{
    for (const auto &t : tables)
        if (t.name == name)
            return t;
    throw InvalidArgument("no table named '" + name + "'");
}

Cell rmcrb_deg_cell(const MultipathScene &scene, int *degenerate_counter)
{
    try
    {
        return num(root_deg(mcrb_theta_closed(scene).mcrb_theta));
    }
    catch (const DegenerateBound &)
    {
        if (degenerate_counter)
            ++*degenerate_counter;
        return {};
    }
}

ExperimentResult run_bounds(const ExperimentConfig &cfg)
{
    const ArrayGeometry geom = cfg.geometry.build();
    const MultipathScene scene = cfg.scene.build(geom);
    const BoundBreakdown b = mcrb_theta_closed(scene);
    const SandwichResult sw = mcrb_sandwich(scene);
    const double rel = std::abs(sw.breakdown.m_theta_theta - b.m_theta_theta) / b.m_theta_theta;
    const double theta_a_weighted =
        scene.alpha_i == cplx(0.0) ? scene.theta
                                   : theta_a_weighted_form(scene, default_theta_search(geom));

    Table t{"bounds",
            {"theta_deg", "psi_deg", "snr_db", "smr_db", "delta_phi_deg", "rcrb_deg", "rmcrb_deg",
             "sqrt_m_deg", "bias_deg", "theta_a_deg", "theta_a_weighted_deg",
             "rmcrb_sandwich_deg", "closed_vs_sandwich_rel", "cd_condition"},
            {}};
    const double smr_db = scene.alpha_i == cplx(0.0) ? std::numeric_limits<double>::infinity()
                                                     : to_db(smr(scene));
    t.rows.push_back({cfg.scene.theta_deg, cfg.scene.psi_deg, cfg.scene.snr_db, num(smr_db),
                      rad2deg(delta_phi(scene)), root_deg(b.crb_theta), root_deg(b.mcrb_theta),
                      root_deg(b.m_theta_theta), rad2deg(b.theta_a - scene.theta),
                      rad2deg(b.theta_a), rad2deg(theta_a_weighted),
                      root_deg(sw.breakdown.mcrb_theta), rel, sw.condition});
    ExperimentResult r;
    r.tables.push_back(std::move(t));
    return r;
}

ExperimentResult run_fig2(const ExperimentConfig &cfg, const RunOptions &opts)
{
    const ArrayGeometry geom = cfg.geometry.build();
    const std::vector<double> snrs = cfg.sweep.values();
    ExperimentResult r;
    Table t{"fig2", {"snr_db", "rcrb_deg", "rmcrb_deg", "rmse_mml_deg", "rmse_ml_deg"}, {}};

    std::vector<MultipathScene> scenes, clean;
    for (double snr_db : snrs)
    {
        scenes.push_back(scene_with(cfg, geom, "snr_db", snr_db));
        clean.push_back(scenes.back());
        clean.back().alpha_i = 0.0;
    }
    RmseCurve mml, ml;
    if (cfg.montecarlo.trials > 0)
    {
        const EstimatorConfig est = cfg.estimator.build(geom);
        // Same base seed for both curves: ML and MML see identical noise draws.
        const MonteCarloOptions mc{cfg.montecarlo.trials, cfg.montecarlo.seed, opts.threads};
        mml = monte_carlo_rmse(scenes, est, mc, "snr_db", snrs);
        ml = monte_carlo_rmse(clean, est, mc, "snr_db", snrs);
    }
    for (std::size_t i = 0; i < snrs.size(); ++i)
    {
        const bool mc = cfg.montecarlo.trials > 0;
        t.rows.push_back({snrs[i], root_deg(crb_theta(scenes[i])),
                          rmcrb_deg_cell(scenes[i], &r.degenerate_points),
                          mc ? num(rad2deg(mml.rmse_rad[i])) : Cell{},
                          mc ? num(rad2deg(ml.rmse_rad[i])) : Cell{}});
    }
    r.tables.push_back(std::move(t));

    Figure f;
    f.name = "fig2";
    f.table = "fig2";
    f.title = "DOA RMSE and root bounds versus SNR";
    f.x = "snr_db";
    f.y = {"rcrb_deg", "rmcrb_deg", "rmse_mml_deg", "rmse_ml_deg"};
    f.x_label = "SNR [dB]";
    f.y_label = "RMSE [deg]";
    f.log_y = true;
    r.figures.push_back(f);
    return r;
}

ExperimentResult run_fig3(const ExperimentConfig &cfg)
{
    const ArrayGeometry geom = cfg.geometry.build();
    ExperimentResult r;
    Table t{"fig3", {"delta_theta_deg", "rcrb_deg", "rmcrb_deg"}, {}};
    for (double dth : cfg.sweep.values())
    {
        const MultipathScene s = scene_with(cfg, geom, "delta_theta_deg", dth);
        t.rows.push_back({dth, root_deg(crb_theta(s)), rmcrb_deg_cell(s, &r.degenerate_points)});
    }
    r.tables.push_back(std::move(t));
    r.tables.push_back(beampattern_table("fig3_beampattern", geom, cfg.beam));

    Figure f;
    f.name = "fig3";
    f.table = "fig3";
    f.title = "Root bounds versus direct/indirect DOA difference";
    f.x = "delta_theta_deg";
    f.y = {"rcrb_deg", "rmcrb_deg"};
    f.x_label = "delta theta [deg]";
    f.y_label = "RMSE [deg]";
    f.log_y = true;
    r.figures.push_back(f);
    r.figures.push_back(beampattern_figure("fig3_beampattern"));
    return r;
}

ExperimentResult run_fig4(const ExperimentConfig &cfg)
{
    const ArrayGeometry geom = cfg.geometry.build();
    ExperimentResult r;
    Table t{"fig4", {"smr_db"}, {}};
    const std::string dtag = tag(cfg.destructive_phase_deg);
    for (double dth : cfg.delta_theta_deg)
    {
        t.columns.push_back("rmcrb_dphi0_dtheta" + tag(dth) + "_deg");
        t.columns.push_back("rmcrb_dphi" + dtag + "_dtheta" + tag(dth) + "_deg");
    }
    t.columns.push_back("rcrb_deg");

    for (double smr_db : cfg.sweep.values())
    {
        std::vector<Cell> row{smr_db};
        double crb = 0.0;
        for (double dth : cfg.delta_theta_deg)
        {
            SceneSpec s = cfg.scene;
            s.smr_db = smr_db;
            s.psi_deg = s.theta_deg - dth;
            s.delta_phi_deg = 0.0;
            const MultipathScene constructive = s.build(geom);
            s.delta_phi_deg = cfg.destructive_phase_deg;
            const MultipathScene destructive = s.build(geom);
            row.push_back(rmcrb_deg_cell(constructive, &r.degenerate_points));
            row.push_back(rmcrb_deg_cell(destructive, &r.degenerate_points));
            crb = crb_theta(constructive);
        }
        row.push_back(root_deg(crb));
        t.rows.push_back(std::move(row));
    }

    Figure f;
    f.name = "fig4";
    f.table = "fig4";
    f.title = "Root bounds versus SMR";
    f.x = "smr_db";
    for (std::size_t c = 1; c < t.columns.size(); ++c)
        f.y.push_back(t.columns[c]);
    f.x_label = "SMR [dB]";
    f.y_label = "RMSE [deg]";
    f.log_y = true;
    r.tables.push_back(std::move(t));
    r.figures.push_back(f);
    return r;
}

ExperimentResult run_fig5(const ExperimentConfig &cfg)
{
    const ArrayGeometry geom = cfg.geometry.build();
    ExperimentResult r;
    Table t{"fig5", {"delta_phi_deg", "delta_theta_deg", "rmcrb_over_rcrb"}, {}};
    const std::vector<double> phis = cfg.delta_phi_axis.values();
    for (double dth : cfg.delta_theta_axis.values())
        for (double dphi : phis)
        {
            SceneSpec s = cfg.scene;
            s.psi_deg = s.theta_deg - dth;
            s.delta_phi_deg = dphi;
            const MultipathScene scene = s.build(geom);
            Cell ratio;
            try
            {
                const BoundBreakdown b = mcrb_theta_closed(scene);
                ratio = num(std::sqrt(b.mcrb_theta / b.crb_theta));
            }
            catch (const DegenerateBound &)
            {
                ++r.degenerate_points;
            }
            t.rows.push_back({dphi, dth, ratio});
        }
    r.tables.push_back(std::move(t));

    Figure f;
    f.kind = Figure::Kind::kHeatmap;
    f.name = "fig5";
    f.table = "fig5";
    f.title = "RMCRB / RCRB (contour at 1)";
    f.x = "delta_phi_deg";
    f.y = {"delta_theta_deg", "rmcrb_over_rcrb"};
    f.x_label = "delta phi [deg]";
    f.y_label = "delta theta [deg]";
    f.contour = 1.0;
    r.figures.push_back(f);
    return r;
}

ExperimentResult run_scenario(const ExperimentConfig &cfg)
{
    const ScenarioSpec &sc = cfg.scenario;
    GroundScenario g = sc.ground;
    g.range_grid = sc.range.values();
    g.validate();

    std::vector<ArrayGeometry> geoms;
    std::vector<std::string> labels;
    for (const auto &a : sc.arrays)
    {
        geoms.push_back(a.build());
        labels.push_back(a.label());
    }

    ExperimentResult r;
    Table t{"scenario",
            {"r_d", "r_i", "psi_deg", "gamma_r_abs", "gamma_r_phase_deg", "path_ratio_db", "smr_db",
             "delta_phi_deg", "delta_phi_asymptote_deg", "snr_db", "same_cell"},
            {}};
    for (const auto &l : labels)
    {
        t.columns.push_back("rcrb_deg_" + l);
        t.columns.push_back("rmcrb_deg_" + l);
        t.columns.push_back("ratio_" + l);
    }

    std::vector<std::vector<RangePoint>> sweep;
    if (!geoms.empty())
        sweep = range_sweep(g, geoms);
    for (std::size_t k = 0; k < g.range_grid.size(); ++k)
    {
        const double r_d = g.range_grid[k];
        const RangePoint p = geoms.empty() ? range_point(g, r_d) : sweep[0][k];
        t.rows.push_back({r_d, p.r_i, rad2deg(p.psi), std::abs(p.gamma_r),
                          rad2deg(std::arg(p.gamma_r)), -p.smr_db, p.smr_db, rad2deg(p.delta_phi),
                          rad2deg(far_field_delta_phi(r_d, p.r_i, g.lambda)), p.snr_db,
                          std::int64_t(p.same_cell ? 1 : 0)});
        auto &row = t.rows.back();
        for (std::size_t gi = 0; gi < geoms.size(); ++gi)
        {
            const RangePoint &q = sweep[gi][k];
            row.push_back(root_deg(q.crb_theta));
            if (q.bound)
            {
                row.push_back(num(root_deg(q.bound->mcrb_theta)));
                row.push_back(num(std::sqrt(q.bound->mcrb_theta / q.crb_theta)));
            }
            else
            {
                if (q.status == PointStatus::kDegenerate)
                    ++r.degenerate_points;
                row.emplace_back();
                row.emplace_back();
            }
        }
    }
    r.tables.push_back(std::move(t));

    Figure fr;
    fr.name = "scenario_paths";
    fr.table = "scenario";
    fr.title = "Indirect/direct amplitude ratio versus range";
    fr.x = "r_d";
    fr.y = {"path_ratio_db"};
    fr.x_label = "range [m]";
    fr.y_label = "|alpha_i / alpha_d| [dB]";
    r.figures.push_back(fr);
    if (!labels.empty())
    {
        Figure fb;
        fb.name = "scenario_bounds";
        fb.table = "scenario";
        fb.title = "Root bounds versus range";
        fb.x = "r_d";
        for (const auto &l : labels)
        {
            fb.y.push_back("rcrb_deg_" + l);
            fb.y.push_back("rmcrb_deg_" + l);
        }
        fb.x_label = "range [m]";
        fb.y_label = "RMSE [deg]";
        fb.log_y = true;
        r.figures.push_back(fb);
    }
    return r;
}

ExperimentResult run_montecarlo(const ExperimentConfig &cfg, const RunOptions &opts)
{
    if (cfg.montecarlo.trials < 1)
        throw ConfigError("montecarlo.trials: must be >= 1 for the montecarlo experiment");
    const ArrayGeometry geom = cfg.geometry.build();
    const std::vector<double> values = cfg.sweep.values();
    std::vector<MultipathScene> scenes;
    for (double v : values)
        scenes.push_back(scene_with(cfg, geom, cfg.sweep_param, v));
    const MonteCarloOptions mc{cfg.montecarlo.trials, cfg.montecarlo.seed, opts.threads};
    const RmseCurve curve =
        monte_carlo_rmse(scenes, cfg.estimator.build(geom), mc, cfg.sweep_param, values);

    ExperimentResult r;
    Table t{"montecarlo",
            {cfg.sweep_param, "rcrb_deg", "rmcrb_deg", "abs_bias_bound_deg", "rmse_mml_deg",
             "bias_mml_deg"},
            {}};
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        Cell rm = rmcrb_deg_cell(scenes[i], &r.degenerate_points);
        Cell bias;
        if (!std::holds_alternative<std::monostate>(rm))
            bias = num(rad2deg(std::abs(theta_a(scenes[i]) - scenes[i].theta)));
        t.rows.push_back({values[i], root_deg(crb_theta(scenes[i])), rm, bias,
                          num(rad2deg(curve.rmse_rad[i])), num(rad2deg(curve.bias_rad[i]))});
    }
    r.tables.push_back(std::move(t));

    Figure f;
    f.name = "montecarlo";
    f.table = "montecarlo";
    f.title = "MML RMSE and root bounds";
    f.x = cfg.sweep_param;
    f.y = {"rcrb_deg", "rmcrb_deg", "rmse_mml_deg"};
    f.x_label = cfg.sweep_param;
    f.y_label = "RMSE [deg]";
    f.log_y = true;
    r.figures.push_back(f);
    return r;
}

ExperimentResult run_beampattern(const ExperimentConfig &cfg)
{
    ExperimentResult r;
    r.tables.push_back(beampattern_table("beampattern", cfg.geometry.build(), cfg.beam));
    r.figures.push_back(beampattern_figure("beampattern"));
    return r;
}

ExperimentResult run_experiment(const ExperimentConfig &cfg, const RunOptions &opts)
{
    switch (cfg.kind)
    {
    case ExperimentKind::kBounds: return run_bounds(cfg);
    case ExperimentKind::kFig2: return run_fig2(cfg, opts);
    case ExperimentKind::kFig3: return run_fig3(cfg);
    case ExperimentKind::kFig4: return run_fig4(cfg);
    case ExperimentKind::kFig5: return run_fig5(cfg);
    case ExperimentKind::kScenario: return run_scenario(cfg);
    case ExperimentKind::kMonteCarlo: return run_montecarlo(cfg, opts);
    case ExperimentKind::kBeampattern: return run_beampattern(cfg);
    }
    throw InvalidArgument("unknown experiment kind");
}

} // namespace mcrb
