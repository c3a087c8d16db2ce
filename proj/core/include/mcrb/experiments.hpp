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

#ifndef MCRB_EXPERIMENTS_HPP
#define MCRB_EXPERIMENTS_HPP

#include "mcrb/config.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace mcrb
{

// Empty cell (degenerate or out-of-model point), number, integer or text.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table
{
    std::string name; // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column(const std::string &name) const; // throws InvalidArgument
    // Numeric view of one column; empty cells become NaN.
    std::vector<double> numbers(const std::string &name) const;
};

struct Figure
{
    enum class Kind
    {
        kLine,
        kHeatmap,
    };
    Kind kind = Kind::kLine;
    std::string name;  // file stem
    std::string table; // source table name
    std::string title;
    std::string x;              // column
    std::vector<std::string> y; // line: one column per series; heatmap: {y, z}
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    double y_floor = -std::numeric_limits<double>::infinity(); // line plots clip below this
    double contour = 1.0; // heatmap iso-level
};

struct ExperimentResult
{
    std::vector<Table> tables;
    std::vector<Figure> figures;
    int degenerate_points = 0;

    const Table &table(const std::string &name) const;
};

struct RunOptions
{
    // Worker count for Monte-Carlo trials; results never depend on it.
    int threads = 1;
};

ExperimentResult run_bounds(const ExperimentConfig &cfg);
ExperimentResult run_fig2(const ExperimentConfig &cfg, const RunOptions &opts = {});
ExperimentResult run_fig3(const ExperimentConfig &cfg);
ExperimentResult run_fig4(const ExperimentConfig &cfg);
ExperimentResult run_fig5(const ExperimentConfig &cfg);
ExperimentResult run_scenario(const ExperimentConfig &cfg);
ExperimentResult run_montecarlo(const ExperimentConfig &cfg, const RunOptions &opts = {});
ExperimentResult run_beampattern(const ExperimentConfig &cfg);

// Dispatches on cfg.kind. run_bounds throws DegenerateBound / IllConditioned
// for a degenerate single point; sweeps leave such cells empty instead.
ExperimentResult run_experiment(const ExperimentConfig &cfg, const RunOptions &opts = {});

// Root bound in degrees, or an empty cell when the closed form is degenerate.
Cell rmcrb_deg_cell(const MultipathScene &scene, int *degenerate_counter = nullptr);

} // namespace mcrb

#endif
