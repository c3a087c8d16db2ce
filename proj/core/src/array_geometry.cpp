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

#include "mcrb/array_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mcrb
{
namespace
{
std::vector<double> centered(std::vector<double> p, const char *which)
{
    if (p.empty())
        throw InvalidArgument(std::string(which) + " array needs at least one element");
    for (double v : p)
        if (!std::isfinite(v))
            throw InvalidArgument(std::string(which) + " array has a non-finite position");
    const double mean = std::accumulate(p.begin(), p.end(), 0.0) / double(p.size());
    for (double &v : p)
        v -= mean;
    return p;
}

void fill_steering(std::span<const double> pos, double theta,
                   CVector &a, CVector &da, CVector &dda)
{
    const auto m = Eigen::Index(pos.size());
    const double norm = 1.0 / std::sqrt(double(m));
    const double s = std::sin(theta), c = std::cos(theta);
    a.resize(m);
    da.resize(m);
    dda.resize(m);
    for (Eigen::Index i = 0; i < m; ++i)
    {
        const double k = 2.0 * kPi * pos[std::size_t(i)];
        const cplx v = std::polar(norm, k * s);
        const cplx jkc(0.0, k * c);
        a[i] = v;
        da[i] = jkc * v;
        dda[i] = (jkc * jkc - cplx(0.0, k * s)) * v;
    }
}
} // namespace

ArrayGeometry::ArrayGeometry(std::vector<double> tx_positions, std::vector<double> rx_positions)
    : tx_(centered(std::move(tx_positions), "transmit")),
      rx_(centered(std::move(rx_positions), "receive"))
{
}

std::vector<double> ArrayGeometry::virtual_positions() const
{
    std::vector<double> v;
    v.reserve(tx_.size() * rx_.size());
    for (double t : tx_)
        for (double r : rx_)
            v.push_back(t + r);
    return v;
}

double ArrayGeometry::beamwidth() const
{
    auto v = virtual_positions();
    if (v.size() < 2)
        return kPi;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double span = *hi - *lo;
    if (span <= 0.0)
        return kPi;
    const double n = double(v.size());
    return 1.0 / (span * n / (n - 1.0));
}

ArrayGeometry standard_virtual_ula(int m_t, int m_r)
{
    if (m_t < 1 || m_r < 1)
        throw InvalidArgument("standard_virtual_ula: element counts must be >= 1");
    std::vector<double> rx(static_cast<std::size_t>(m_r)), tx(static_cast<std::size_t>(m_t));
    for (int i = 0; i < m_r; ++i)
        rx[std::size_t(i)] = 0.5 * i;
    const double tx_spacing = 0.5 * m_r;
    for (int i = 0; i < m_t; ++i)
        tx[std::size_t(i)] = tx_spacing * i;
    return ArrayGeometry(std::move(tx), std::move(rx));
}

SteeringSet steering(const ArrayGeometry &geom, double theta)
{
    if (!(std::abs(theta) <= kPi / 2))
        throw InvalidArgument("steering: angle must lie within [-pi/2, pi/2]");
    SteeringSet s;
    fill_steering(geom.rx_positions(), theta, s.a_r, s.da_r, s.dda_r);
    fill_steering(geom.tx_positions(), theta, s.a_t, s.da_t, s.dda_t);
    return s;
}

MimoMatrices mimo_matrices(const SteeringSet &target, const SteeringSet &reflect)
{
    if (target.a_r.size() != reflect.a_r.size() || target.a_t.size() != reflect.a_t.size())
        throw InvalidArgument("mimo_matrices: steering sets come from different geometries");
    MimoMatrices m;
    m.a_d = target.a_r * target.a_t.transpose();
    m.a_i = reflect.a_r * target.a_t.transpose() + target.a_r * reflect.a_t.transpose();
    m.da_d = target.da_r * target.a_t.transpose() + target.a_r * target.da_t.transpose();
    m.dda_d = target.dda_r * target.a_t.transpose()
              + 2.0 * target.da_r * target.da_t.transpose()
              + target.a_r * target.dda_t.transpose();
    return m;
}

CMatrix mimo_steering(const ArrayGeometry &geom, double theta)
{
    const SteeringSet s = steering(geom, theta);
    return s.a_r * s.a_t.transpose();
}

double e_adot(const SteeringSet &s)
{
    return s.da_r.squaredNorm() + s.da_t.squaredNorm();
}

std::vector<BeamGain> beampattern(const ArrayGeometry &geom, double steer,
                                  std::span<const double> grid)
{
    const SteeringSet ref = steering(geom, steer);
    auto to_db = [](cplx g) {
        const double mag = std::min(std::abs(g), 1.0);
        return mag > 1e-15 ? 20.0 * std::log10(mag) : kBeamFloorDb;
    };
    std::vector<BeamGain> out;
    out.reserve(grid.size());
    for (double phi : grid)
    {
        const SteeringSet s = steering(geom, phi);
        out.push_back({phi,
                       to_db(ref.a_t.dot(s.a_t)),
                       to_db(ref.a_r.dot(s.a_r))});
    }
    return out;
}

} // namespace mcrb
