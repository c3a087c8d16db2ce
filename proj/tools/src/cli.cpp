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


#include "cli.hpp"

#include "presets.hpp"

#include "mcrb/errors.hpp"
#include "mcrb/experiments.hpp"
#include "mcrb/report.hpp"
#include "mcrb/selftest.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <thread>

namespace mcrb::cli
{
namespace
{

struct RunArgs
{
    std::string config;
    std::string out;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    bool svg = false;
    int threads = 0; // 0: hardware concurrency
};

struct SelftestArgs
{
    bool inject_fault = false;
    int scenes = 1000;
    std::uint64_t seed = 7;
};

std::optional<std::string_view> find_preset(std::string name)
{
    if (name.size() > 5 && name.compare(name.size() - 5, 5, ".json") == 0)
        name.resize(name.size() - 5);
    for (const auto &p : presets())
        if (p.name == name)
            return p.json;
    return std::nullopt;
}

// A path that exists wins over a preset of the same name.
ExperimentConfig resolve_config(const std::string &ref)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(ref, ec))
        return load_config(ref);
    if (auto text = find_preset(ref))
        return parse_config(*text);
    std::string names;
    for (const auto &p : presets())
        names += (names.empty() ? "" : ", ") + std::string(p.name);
    throw ConfigError("--config: no file or preset named '" + ref + "' (presets: " + names + ")");
}

void print_bounds(const ExperimentResult &r, std::ostream &out)
{
    const Table &t = r.tables.front();
    for (std::size_t c = 0; c < t.columns.size(); ++c)
    {
        const Cell &v = t.rows.front()[c];
        out << t.columns[c] << " = ";
        if (const double *d = std::get_if<double>(&v))
            out << format_number(*d);
        out << "\n";
    }
}

int run_experiment_cmd(std::string_view sub, const RunArgs &a, std::ostream &out)
{
    ExperimentConfig cfg = resolve_config(a.config);
    const bool scenario_cmd = sub == "scenario";
    if (kind_name(cfg.kind) != sub && !(scenario_cmd && cfg.kind == ExperimentKind::kScenario))
        throw ConfigError("experiment: config is '" + std::string(kind_name(cfg.kind))
                          + "' but the subcommand is '" + std::string(sub) + "'");
    apply_overrides(cfg, a.trials, a.seed);

    RunOptions opts;
    opts.threads = a.threads > 0 ? a.threads
                                 : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    const ExperimentResult result = run_experiment(cfg, opts);
    const auto files = write_outputs(result, cfg, a.out, a.svg);

    if (cfg.kind == ExperimentKind::kBounds)
        print_bounds(result, out);
    for (const auto &f : files)
        out << "wrote " << (std::filesystem::path(a.out) / f.name).string() << "\n";
    if (result.degenerate_points > 0)
        out << result.degenerate_points << " degenerate point(s) left as empty cells\n";
    return kExitOk;
}

} // namespace

int run(int argc, char **argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"MCRB / CRB bounds for MIMO radar DOA under multipath", "mcrb"};
    app.set_version_flag("--version", library_version());
    app.require_subcommand(1);

    struct Sub
    {
        const char *name;
        const char *preset;
        const char *help;
        bool monte_carlo;
    };
    static constexpr Sub kSubs[] = {
        {"bounds", "bounds", "single-point CRB and MCRB", false},
        {"fig2", "fig2", "SNR sweep with Monte-Carlo RMSE", true},
        {"fig3", "fig3", "DOA separation sweep and beampatterns", false},
        {"fig4", "fig4", "SMR sweep, constructive and destructive phase", false},
        {"fig5", "fig5", "RMCRB / RCRB map over phase and separation", false},
        {"scenario", "fig8", "automotive ground multipath over range", false},
        {"montecarlo", "montecarlo", "MML bias and RMSE against the bound", true},
        {"beampattern", "beampattern", "transmit and receive beampatterns", false},
    };

    RunArgs args;
    std::vector<CLI::App *> run_cmds;
    for (const auto &s : kSubs)
    {
        CLI::App *c = app.add_subcommand(s.name, s.help);
        c->add_option("--config", args.config, "config file or preset name")
            ->default_str(s.preset);
        c->add_option("--out", args.out, "output directory")->default_str(std::string("out/") + s.name);
        c->add_flag("--svg", args.svg, "also write SVG figures");
        if (s.monte_carlo)
        {
            c->add_option("--trials", args.trials, "Monte-Carlo trials per point");
            c->add_option("--seed", args.seed, "base seed");
            c->add_option("--threads", args.threads, "worker threads (results do not depend on it)")
                ->check(CLI::NonNegativeNumber);
        }
        run_cmds.push_back(c);
    }

    SelftestArgs st;
    CLI::App *self = app.add_subcommand("selftest", "analytic invariants and oracle comparisons");
    self->add_flag("--inject-fault", st.inject_fault, "perturb ddA_d before the curvature check");
    self->add_option("--scenes", st.scenes, "random scenes for the closed-form oracle")
        ->check(CLI::Range(1, 1'000'000));
    self->add_option("--seed", st.seed, "seed for the random checks");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try
    {
        if (self->parsed())
        {
            const SelftestReport rep = run_selftest({st.inject_fault, st.scenes, st.seed});
            out << rep.to_text();
            return rep.all_passed() ? kExitOk : kExitInvalid;
        }
        for (std::size_t i = 0; i < run_cmds.size(); ++i)
        {
            if (!run_cmds[i]->parsed())
                continue;
            if (args.config.empty())
                args.config = kSubs[i].preset;
            if (args.out.empty())
                args.out = std::string("out/") + kSubs[i].name;
            return run_experiment_cmd(kSubs[i].name, args, out);
        }
    }
    catch (const ConfigError &e)
    {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    catch (const InvalidArgument &e)
    {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    catch (const DegenerateBound &e)
    {
        err << "degenerate: " << e.what() << "\n";
        return kExitDegenerate;
    }
    catch (const IllConditioned &e)
    {
        err << "degenerate: " << e.what() << "\n";
        return kExitDegenerate;
    }
    catch (const SingularInformation &e)
    {
        err << "degenerate: " << e.what() << "\n";
        return kExitDegenerate;
    }
    return kExitInvalid;
}

} // namespace mcrb::cli
