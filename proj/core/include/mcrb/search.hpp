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

#ifndef MCRB_SEARCH_HPP
#define MCRB_SEARCH_HPP

#include "mcrb/errors.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace mcrb
{

// Closed angular interval plus the two step sizes of a grid-then-golden search.
struct AngleSearch
{
    double lo = -kPi / 3;
    double hi = kPi / 3;
    double coarse_step = 1e-2;
    double refine_tol = 1e-7;

    void validate() const
    {
        if (!(lo < hi))
            throw InvalidArgument("search span is empty");
        if (!(lo > -kPi / 2 && hi < kPi / 2))
            throw InvalidArgument("search span must lie inside (-pi/2, pi/2)");
        if (!(coarse_step > refine_tol && refine_tol > 0.0))
            throw InvalidArgument("search needs coarse_step > refine_tol > 0");
    }

    // Grid nodes lo, lo + step, ..., always ending exactly at hi.
    std::vector<double> grid() const
    {
        const auto n = std::size_t(std::ceil((hi - lo) / coarse_step - 1e-9));
        std::vector<double> g(n + 1);
        for (std::size_t i = 0; i < n; ++i)
            g[i] = lo + double(i) * coarse_step;
        g[n] = hi;
        return g;
    }
};

// Golden-section maximisation of f on [a, b] until the bracket is below tol.
template <class F>
double golden_max(F &&f, double a, double b, double tol)
{
    constexpr double inv_phi = 0.6180339887498948482;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol)
    {
        if (fc >= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Global argmax of f over values[i] = f(grid[i]), refined by golden section in
// the two cells adjacent to the winning node. Exact ties on the grid go to the
// node nearest `prefer`.
template <class F>
double refine_argmax(F &&f, const std::vector<double> &grid,
                     const std::vector<double> &values, double refine_tol, double prefer)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
    {
        if (values[i] > values[best]
            || (values[i] == values[best]
                && std::abs(grid[i] - prefer) < std::abs(grid[best] - prefer)))
            best = i;
    }
    const double a = grid[best == 0 ? 0 : best - 1];
    const double b = grid[best + 1 == grid.size() ? best : best + 1];
    if (b - a <= refine_tol)
        return grid[best];
    const double x = golden_max(f, a, b, refine_tol);
    return f(x) >= values[best] ? x : grid[best];
}

template <class F>
double grid_golden_argmax(F &&f, const AngleSearch &s, double prefer)
{
    s.validate();
    const auto grid = s.grid();
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = f(grid[i]);
    return refine_argmax(f, grid, values, s.refine_tol, prefer);
}

} // namespace mcrb

#endif
