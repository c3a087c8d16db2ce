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

#include "mcrb/config.hpp"

#include "json.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mcrb
{
namespace
{
using json = nlohmann::json;

constexpr double kMaxAxisPoints = 2e6;

[[noreturn]] void fail(const std::string &path, const std::string &msg)
{
    throw ConfigError(path + ": " + msg);
}

void require(bool ok, const std::string &path, const std::string &msg)
{
    if (!ok)
        fail(path, msg);
}

// Walks one JSON object and remembers which keys were consumed so that
// leftovers can be reported as unknown fields.
class Reader
{
public:
    Reader(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            fail(path_.empty() ? "<root>" : path_, "expected an object");
    }

    bool has(const std::string &key) const { return j_.contains(key); }

    std::string at(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    double number(const std::string &key, double def)
    {
        const json *v = take(key);
        if (!v)
            return def;
        if (!v->is_number())
            fail(at(key), "expected a number");
        const double x = v->get<double>();
        if (!std::isfinite(x))
            fail(at(key), "must be finite");
        return x;
    }

    long long integer(const std::string &key, long long def)
    {
        const json *v = take(key);
        if (!v)
            return def;
        if (!v->is_number_integer())
            fail(at(key), "expected an integer");
        return v->get<long long>();
    }

    std::uint64_t unsigned_integer(const std::string &key, std::uint64_t def)
    {
        const json *v = take(key);
        if (!v)
            return def;
        if (!v->is_number_unsigned())
            fail(at(key), "expected a non-negative integer");
        return v->get<std::uint64_t>();
    }

    bool boolean(const std::string &key, bool def)
    {
        const json *v = take(key);
        if (!v)
            return def;
        if (!v->is_boolean())
            fail(at(key), "expected true or false");
        return v->get<bool>();
    }

    std::string string(const std::string &key, std::string def)
    {
        const json *v = take(key);
        if (!v)
            return def;
        if (!v->is_string())
            fail(at(key), "expected a string");
        return v->get<std::string>();
    }

    std::vector<double> numbers(const std::string &key, std::vector<double> def)
    {
        const json *v = take(key);
        if (!v)
            return def;
        if (!v->is_array())
            fail(at(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v->size(); ++i)
        {
            const json &e = (*v)[i];
            if (!e.is_number() || !std::isfinite(e.get<double>()))
                fail(at(key) + "[" + std::to_string(i) + "]", "expected a finite number");
            out.push_back(e.get<double>());
        }
        return out;
    }

    const json *object(const std::string &key)
    {
        const json *v = take(key);
        if (v && !v->is_object())
            fail(at(key), "expected an object");
        return v;
    }

    const json *array(const std::string &key)
    {
        const json *v = take(key);
        if (v && !v->is_array())
            fail(at(key), "expected an array");
        return v;
    }

    void finish() const
    {
        for (const auto &item : j_.items())
            if (!seen_.count(item.key()))
                fail(at(item.key()), "unknown field");
    }

private:
    const json *take(const std::string &key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

AxisSpec read_axis(Reader &parent, const std::string &key, AxisSpec def)
{
    const json *v = parent.object(key);
    if (!v)
        return def;
    Reader r(*v, parent.at(key));
    AxisSpec a;
    a.start = r.number("start", def.start);
    a.stop = r.number("stop", def.stop);
    a.step = r.number("step", def.step);
    r.finish();
    require(a.step > 0.0, r.at("step"), "must be positive");
    require(a.stop >= a.start, r.at("stop"), "must be >= start");
    require((a.stop - a.start) / a.step < kMaxAxisPoints, parent.at(key), "too many points");
    return a;
}

GeometrySpec read_geometry(const json &j, const std::string &path)
{
    Reader r(j, path);
    GeometrySpec g;
    const bool has_pos = r.has("tx_positions") || r.has("rx_positions");
    const bool has_counts = r.has("m_t") || r.has("m_r");
    require(!(has_pos && has_counts), path, "give either m_t/m_r or explicit positions, not both");
    if (has_pos)
    {
        g.tx_positions = r.numbers("tx_positions", {});
        g.rx_positions = r.numbers("rx_positions", {});
        require(!g.tx_positions.empty(), r.at("tx_positions"), "needs at least one element");
        require(!g.rx_positions.empty(), r.at("rx_positions"), "needs at least one element");
    }
    else
    {
        const long long mt = r.integer("m_t", g.m_t);
        const long long mr = r.integer("m_r", g.m_r);
        require(mt >= 1 && mt <= 4096, r.at("m_t"), "must be in [1, 4096]");
        require(mr >= 1 && mr <= 4096, r.at("m_r"), "must be in [1, 4096]");
        g.m_t = int(mt);
        g.m_r = int(mr);
    }
    r.finish();
    return g;
}

SceneSpec read_scene(Reader &parent)
{
    SceneSpec s;
    const json *v = parent.object("scene");
    if (!v)
        return s;
    Reader r(*v, "scene");
    s.theta_deg = r.number("theta_deg", s.theta_deg);
    s.psi_deg = r.number("psi_deg", s.psi_deg);
    s.snr_db = r.number("snr_db", s.snr_db);
    s.smr_db = r.number("smr_db", s.smr_db);
    s.delta_phi_deg = r.number("delta_phi_deg", s.delta_phi_deg);
    const long long k = r.integer("k_pulses", s.k_pulses);
    s.e_p = r.number("e_p", s.e_p);
    s.multipath = r.boolean("multipath", s.multipath);
    r.finish();
    require(std::abs(s.theta_deg) < 90.0, r.at("theta_deg"), "must lie inside (-90, 90)");
    require(std::abs(s.psi_deg) < 90.0, r.at("psi_deg"), "must lie inside (-90, 90)");
    require(k >= 1 && k <= 1'000'000'000, r.at("k_pulses"), "must be >= 1");
    require(s.e_p > 0.0, r.at("e_p"), "must be positive");
    s.k_pulses = int(k);
    return s;
}

EstimatorSpec read_estimator(Reader &parent)
{
    EstimatorSpec e;
    const json *v = parent.object("estimator");
    if (!v)
        return e;
    Reader r(*v, "estimator");
    e.span_deg = r.number("span_deg", e.span_deg);
    e.coarse_step_deg = r.number("coarse_step_deg", e.coarse_step_deg);
    e.refine_tol_rad = r.number("refine_tol_rad", e.refine_tol_rad);
    r.finish();
    require(e.span_deg > 0.0 && e.span_deg < 90.0, r.at("span_deg"), "must lie in (0, 90)");
    require(e.coarse_step_deg >= 0.0, r.at("coarse_step_deg"), "must be >= 0");
    require(e.refine_tol_rad > 0.0, r.at("refine_tol_rad"), "must be positive");
    require(e.coarse_step_deg == 0.0 || deg2rad(e.coarse_step_deg) > e.refine_tol_rad,
            r.at("coarse_step_deg"), "must exceed refine_tol_rad");
    return e;
}

MonteCarloSpec read_montecarlo(Reader &parent)
{
    MonteCarloSpec m;
    const json *v = parent.object("montecarlo");
    if (!v)
        return m;
    Reader r(*v, "montecarlo");
    const long long t = r.integer("trials", m.trials);
    m.seed = r.unsigned_integer("seed", m.seed);
    r.finish();
    require(t >= 0 && t <= 100'000'000, r.at("trials"), "must be in [0, 1e8]");
    m.trials = int(t);
    return m;
}

ScenarioSpec read_scenario(Reader &parent)
{
    ScenarioSpec s;
    const json *v = parent.object("scenario");
    if (!v)
        fail("scenario", "required for experiment 'scenario'");
    Reader r(*v, "scenario");
    GroundScenario &g = s.ground;
    g.h_r = r.number("h_r_m", g.h_r);
    g.theta = deg2rad(r.number("theta_deg", rad2deg(g.theta)));
    g.lambda = r.number("lambda_m", g.lambda);
    g.eps_r = r.number("eps_r", g.eps_r);
    g.gamma_cond = r.number("gamma_cond", g.gamma_cond);
    const double gt_re = r.number("gamma_t_re", g.gamma_t.real());
    const double gt_im = r.number("gamma_t_im", g.gamma_t.imag());
    g.gamma_t = cplx(gt_re, gt_im);
    g.v = r.number("v_mps", g.v);
    g.r_res = r.number("r_res_m", g.r_res);
    g.v_res = r.number("v_res_mps", g.v_res);
    g.r_ref = r.number("r_ref_m", g.r_ref);
    g.snr_ref_db = r.number("snr_ref_db", g.snr_ref_db);
    const long long k = r.integer("k_pulses", g.k_pulses);
    g.e_p = r.number("e_p", g.e_p);
    s.range = read_axis(r, "range_m", s.range);
    if (const json *arr = r.array("arrays"))
        for (std::size_t i = 0; i < arr->size(); ++i)
            s.arrays.push_back(
                read_geometry((*arr)[i], r.at("arrays") + "[" + std::to_string(i) + "]"));
    r.finish();
    require(g.h_r > 0.0, r.at("h_r_m"), "must be positive");
    require(std::abs(g.theta) < kPi / 2, r.at("theta_deg"), "must lie inside (-90, 90)");
    require(g.lambda > 0.0, r.at("lambda_m"), "must be positive");
    require(g.eps_r >= 1.0, r.at("eps_r"), "must be >= 1");
    require(g.gamma_cond >= 0.0, r.at("gamma_cond"), "must be >= 0");
    require(std::abs(g.gamma_t) > 0.0, r.at("gamma_t_re"),
            "target reflection coefficient must be nonzero");
    require(g.v >= 0.0, r.at("v_mps"), "must be >= 0");
    require(g.r_res > 0.0, r.at("r_res_m"), "must be positive");
    require(g.v_res > 0.0, r.at("v_res_mps"), "must be positive");
    require(g.r_ref > 0.0, r.at("r_ref_m"), "must be positive");
    require(k >= 1 && k <= 1'000'000'000, r.at("k_pulses"), "must be >= 1");
    require(g.e_p > 0.0, r.at("e_p"), "must be positive");
    require(s.range.start > 0.0, r.at("range_m") + ".start", "must be positive");
    g.k_pulses = int(k);
    return s;
}

BeamSpec read_beam(Reader &parent)
{
    BeamSpec b;
    const json *v = parent.object("beam");
    if (!v)
        return b;
    Reader r(*v, "beam");
    b.steer_deg = r.number("steer_deg", b.steer_deg);
    b.grid = read_axis(r, "grid_deg", b.grid);
    r.finish();
    require(std::abs(b.steer_deg) < 90.0, r.at("steer_deg"), "must lie inside (-90, 90)");
    require(b.grid.start > -90.0 && b.grid.stop < 90.0, r.at("grid_deg"),
            "must lie inside (-90, 90)");
    return b;
}

bool uses_geometry(ExperimentKind k) { return k != ExperimentKind::kScenario; }
bool uses_scene(ExperimentKind k)
{
    return k != ExperimentKind::kScenario && k != ExperimentKind::kBeampattern;
}
bool uses_sweep(ExperimentKind k)
{
    return k == ExperimentKind::kFig2 || k == ExperimentKind::kFig3 || k == ExperimentKind::kFig4
           || k == ExperimentKind::kMonteCarlo;
}
bool uses_estimator(ExperimentKind k)
{
    return k == ExperimentKind::kFig2 || k == ExperimentKind::kMonteCarlo;
}
bool uses_beam(ExperimentKind k)
{
    return k == ExperimentKind::kFig3 || k == ExperimentKind::kBeampattern;
}

const std::set<std::string> kMonteCarloParams{"snr_db", "smr_db", "delta_theta_deg",
                                              "delta_phi_deg"};

// psi = theta - delta_theta must stay inside (-90, 90) over [lo, hi].
void require_delta_theta(double theta_deg, double lo, double hi, const std::string &path)
{
    require(std::abs(theta_deg - lo) < 90.0 && std::abs(theta_deg - hi) < 90.0, path,
            "delta_theta range puts psi outside (-90, 90)");
}

ExperimentConfig parse_object(const json &root)
{
    Reader r(root, "");
    ExperimentConfig c;
    const std::string kind = r.string("experiment", "");
    const auto k = kind_from_name(kind);
    if (!k)
        fail("experiment",
             "expected one of bounds, fig2, fig3, fig4, fig5, scenario, montecarlo, beampattern");
    c.kind = *k;
    c.title = r.string("title", "");

    auto forbid = [&](const char *key, bool allowed) {
        if (!allowed && r.has(key))
            fail(key, "not used by experiment '" + kind + "'");
    };
    forbid("geometry", uses_geometry(c.kind));
    forbid("scene", uses_scene(c.kind));
    forbid("sweep", uses_sweep(c.kind));
    forbid("sweep_param", c.kind == ExperimentKind::kMonteCarlo);
    forbid("delta_theta_deg", c.kind == ExperimentKind::kFig4);
    forbid("destructive_phase_deg", c.kind == ExperimentKind::kFig4);
    forbid("delta_phi_axis", c.kind == ExperimentKind::kFig5);
    forbid("delta_theta_axis", c.kind == ExperimentKind::kFig5);
    forbid("estimator", uses_estimator(c.kind));
    forbid("montecarlo", uses_estimator(c.kind));
    forbid("scenario", c.kind == ExperimentKind::kScenario);
    forbid("beam", uses_beam(c.kind));

    if (const json *g = r.object("geometry"))
        c.geometry = read_geometry(*g, "geometry");
    c.scene = read_scene(r);
    if (uses_sweep(c.kind))
    {
        if (!r.has("sweep"))
            fail("sweep", "required for experiment '" + kind + "'");
        c.sweep = read_axis(r, "sweep", c.sweep);
    }
    if (c.kind == ExperimentKind::kMonteCarlo)
    {
        c.sweep_param = r.string("sweep_param", "snr_db");
        if (!kMonteCarloParams.count(c.sweep_param))
            fail("sweep_param", "expected snr_db, smr_db, delta_theta_deg or delta_phi_deg");
    }
    if (c.kind == ExperimentKind::kFig4)
    {
        c.delta_theta_deg = r.numbers("delta_theta_deg", {1.0, 3.0, 5.0});
        if (c.delta_theta_deg.empty())
            fail("delta_theta_deg", "needs at least one value");
        for (std::size_t i = 0; i < c.delta_theta_deg.size(); ++i)
            require_delta_theta(c.scene.theta_deg, c.delta_theta_deg[i], c.delta_theta_deg[i],
                                "delta_theta_deg[" + std::to_string(i) + "]");
        c.destructive_phase_deg = r.number("destructive_phase_deg", c.destructive_phase_deg);
    }
    if (c.kind == ExperimentKind::kFig5)
    {
        c.delta_phi_axis = read_axis(r, "delta_phi_axis", c.delta_phi_axis);
        c.delta_theta_axis = read_axis(r, "delta_theta_axis", c.delta_theta_axis);
        require_delta_theta(c.scene.theta_deg, c.delta_theta_axis.start, c.delta_theta_axis.stop,
                            "delta_theta_axis");
    }
    if (uses_estimator(c.kind))
    {
        c.estimator = read_estimator(r);
        c.montecarlo = read_montecarlo(r);
    }
    if (c.kind == ExperimentKind::kScenario)
        c.scenario = read_scenario(r);
    if (uses_beam(c.kind))
        c.beam = read_beam(r);
    r.finish();

    if (c.kind == ExperimentKind::kFig3
        || (c.kind == ExperimentKind::kMonteCarlo && c.sweep_param == "delta_theta_deg"))
        require_delta_theta(c.scene.theta_deg, c.sweep.start, c.sweep.stop, "sweep");
    if (uses_geometry(c.kind))
    {
        try
        {
            (void)c.geometry.build();
        }
        catch (const InvalidArgument &e)
        {
            fail("geometry", e.what());
        }
    }
    return c;
}

json axis_json(const AxisSpec &a)
{
    return json{{"start", a.start}, {"stop", a.stop}, {"step", a.step}};
}

json geometry_json(const GeometrySpec &g)
{
    if (g.explicit_positions())
        return json{{"tx_positions", g.tx_positions}, {"rx_positions", g.rx_positions}};
    return json{{"m_t", g.m_t}, {"m_r", g.m_r}};
}

} // namespace

std::string_view kind_name(ExperimentKind k)
{
    switch (k)
    {
    case ExperimentKind::kBounds: return "bounds";
    case ExperimentKind::kFig2: return "fig2";
    case ExperimentKind::kFig3: return "fig3";
    case ExperimentKind::kFig4: return "fig4";
    case ExperimentKind::kFig5: return "fig5";
    case ExperimentKind::kScenario: return "scenario";
    case ExperimentKind::kMonteCarlo: return "montecarlo";
    case ExperimentKind::kBeampattern: return "beampattern";
    }
    return "unknown";
}

std::optional<ExperimentKind> kind_from_name(std::string_view name)
{
    for (auto k : {ExperimentKind::kBounds, ExperimentKind::kFig2, ExperimentKind::kFig3,
                   ExperimentKind::kFig4, ExperimentKind::kFig5, ExperimentKind::kScenario,
                   ExperimentKind::kMonteCarlo, ExperimentKind::kBeampattern})
        if (kind_name(k) == name)
            return k;
    return std::nullopt;
}

std::vector<double> AxisSpec::values() const
{
    if (!(step > 0.0) || !(stop >= start))
        throw InvalidArgument("axis: need step > 0 and stop >= start");
    const auto n = std::size_t(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        // snap to 12 significant digits so -60 + 1069 * 0.1 reads back as 46.9
        std::array<char, 32> buf{};
        const double raw = start + double(i) * step;
        auto res = std::to_chars(buf.data(), buf.data() + buf.size(), raw, std::chars_format::general, 12);
        std::from_chars(buf.data(), res.ptr, v[i]);
    }
    return v;
}

ArrayGeometry GeometrySpec::build() const
{
    if (explicit_positions())
        return ArrayGeometry(tx_positions, rx_positions);
    return standard_virtual_ula(m_t, m_r);
}

std::string GeometrySpec::label() const
{
    if (explicit_positions())
        return "custom" + std::to_string(tx_positions.size()) + "x"
               + std::to_string(rx_positions.size());
    return std::to_string(m_t) + "x" + std::to_string(m_r);
}

MultipathScene SceneSpec::build(const ArrayGeometry &geom) const
{
    MultipathScene s = scene_from_ratios(geom, deg2rad(theta_deg), deg2rad(psi_deg), snr_db,
                                         smr_db, deg2rad(delta_phi_deg), k_pulses, e_p);
    if (!multipath)
        s.alpha_i = 0.0;
    return s;
}

EstimatorConfig EstimatorSpec::build(const ArrayGeometry &geom) const
{
    EstimatorConfig c = EstimatorConfig::defaults_for(geom);
    c.search.lo = -deg2rad(span_deg);
    c.search.hi = deg2rad(span_deg);
    if (coarse_step_deg > 0.0)
        c.search.coarse_step = deg2rad(coarse_step_deg);
    c.search.refine_tol = refine_tol_rad;
    c.search.validate();
    return c;
}

ExperimentConfig parse_config(std::string_view json_text)
{
    json root;
    try
    {
        root = json::parse(json_text.begin(), json_text.end());
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
    }
    if (root.is_object() && root.contains("config") && root.contains("config_hash"))
    {
        const json &inner = root["config"];
        if (!inner.is_object())
            fail("config", "expected an object");
        return parse_object(inner);
    }
    return parse_object(root);
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_canonical_json(const ExperimentConfig &c)
{
    json j;
    j["experiment"] = std::string(kind_name(c.kind));
    if (!c.title.empty())
        j["title"] = c.title;
    if (uses_geometry(c.kind))
        j["geometry"] = geometry_json(c.geometry);
    if (uses_scene(c.kind))
        j["scene"] = json{{"theta_deg", c.scene.theta_deg},
                          {"psi_deg", c.scene.psi_deg},
                          {"snr_db", c.scene.snr_db},
                          {"smr_db", c.scene.smr_db},
                          {"delta_phi_deg", c.scene.delta_phi_deg},
                          {"k_pulses", c.scene.k_pulses},
                          {"e_p", c.scene.e_p},
                          {"multipath", c.scene.multipath}};
    if (uses_sweep(c.kind))
        j["sweep"] = axis_json(c.sweep);
    if (c.kind == ExperimentKind::kMonteCarlo)
        j["sweep_param"] = c.sweep_param;
    if (c.kind == ExperimentKind::kFig4)
    {
        j["delta_theta_deg"] = c.delta_theta_deg;
        j["destructive_phase_deg"] = c.destructive_phase_deg;
    }
    if (c.kind == ExperimentKind::kFig5)
    {
        j["delta_phi_axis"] = axis_json(c.delta_phi_axis);
        j["delta_theta_axis"] = axis_json(c.delta_theta_axis);
    }
    if (uses_estimator(c.kind))
    {
        j["estimator"] = json{{"span_deg", c.estimator.span_deg},
                              {"coarse_step_deg", c.estimator.coarse_step_deg},
                              {"refine_tol_rad", c.estimator.refine_tol_rad}};
        j["montecarlo"] = json{{"trials", c.montecarlo.trials}, {"seed", c.montecarlo.seed}};
    }
    if (c.kind == ExperimentKind::kScenario)
    {
        const GroundScenario &g = c.scenario.ground;
        json arrays = json::array();
        for (const auto &a : c.scenario.arrays)
            arrays.push_back(geometry_json(a));
        j["scenario"] = json{{"h_r_m", g.h_r},
                             {"theta_deg", rad2deg(g.theta)},
                             {"lambda_m", g.lambda},
                             {"eps_r", g.eps_r},
                             {"gamma_cond", g.gamma_cond},
                             {"gamma_t_re", g.gamma_t.real()},
                             {"gamma_t_im", g.gamma_t.imag()},
                             {"v_mps", g.v},
                             {"r_res_m", g.r_res},
                             {"v_res_mps", g.v_res},
                             {"r_ref_m", g.r_ref},
                             {"snr_ref_db", g.snr_ref_db},
                             {"k_pulses", g.k_pulses},
                             {"e_p", g.e_p},
                             {"range_m", axis_json(c.scenario.range)},
                             {"arrays", arrays}};
    }
    if (uses_beam(c.kind))
        j["beam"] = json{{"steer_deg", c.beam.steer_deg}, {"grid_deg", axis_json(c.beam.grid)}};
    return j.dump(2);
}

void apply_overrides(ExperimentConfig &cfg, std::optional<int> trials,
                     std::optional<std::uint64_t> seed)
{
    if (trials)
    {
        if (*trials < 0)
            throw ConfigError("--trials: must be >= 0");
        cfg.montecarlo.trials = *trials;
    }
    if (seed)
        cfg.montecarlo.seed = *seed;
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace mcrb
