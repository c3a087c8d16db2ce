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

#ifndef MCRB_ARRAY_GEOMETRY_HPP
#define MCRB_ARRAY_GEOMETRY_HPP

#include "mcrb/errors.hpp"

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace mcrb
{
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Colocated transmit / receive linear arrays.
// Element positions are in wavelengths along the array axis. Both arrays are
// re-centered (mean subtracted) on construction, so a^H * da = 0 holds for
// every steering vector produced from this geometry.
class ArrayGeometry
{
public:
    ArrayGeometry(std::vector<double> tx_positions, std::vector<double> rx_positions);

    std::span<const double> tx_positions() const { return tx_; }
    std::span<const double> rx_positions() const { return rx_; }
    std::size_t num_tx() const { return tx_.size(); }
    std::size_t num_rx() const { return rx_.size(); }

    // All pairwise sums tx[t] + rx[r], ordered with rx index fastest.
    std::vector<double> virtual_positions() const;

    // Rayleigh width (radians) of the virtual array at broadside, 1 / L_eff
    // with L_eff the virtual aperture extended by one mean element spacing.
    // A single virtual element has no resolution; pi is returned.
    double beamwidth() const;

    bool operator==(const ArrayGeometry &) const = default;

private:
    std::vector<double> tx_;
    std::vector<double> rx_;
};

// Sparse-transmit / dense-receive MIMO layout: rx is a half-wavelength ULA of
// m_r elements and tx is a ULA of m_t elements spaced by the rx aperture
// (m_r / 2 wavelengths), so the virtual array is a filled half-wavelength ULA.
ArrayGeometry standard_virtual_ula(int m_t, int m_r);

// Normalized steering vectors and their first two angular derivatives.
struct SteeringSet
{
    CVector a_r, a_t;
    CVector da_r, da_t;
    CVector dda_r, dda_t;
};

// Element m: exp(j 2 pi p_m sin(theta)) / sqrt(M). Requires |theta| <= pi/2.
SteeringSet steering(const ArrayGeometry &geom, double theta);

struct MimoMatrices
{
    CMatrix a_d;   // a_r(theta) a_t^T(theta)
    CMatrix a_i;   // a_r(psi) a_t^T(theta) + a_r(theta) a_t^T(psi)
    CMatrix da_d;  // d/dtheta of a_d
    CMatrix dda_d; // d2/dtheta2 of a_d
};

MimoMatrices mimo_matrices(const SteeringSet &target, const SteeringSet &reflect);

// MIMO steering matrix a_r(theta) a_t^T(theta) only.
CMatrix mimo_steering(const ArrayGeometry &geom, double theta);

// tr(dA_d dA_d^H) = ||da_r||^2 + ||da_t||^2 for centered arrays.
double e_adot(const SteeringSet &s);

struct BeamGain
{
    double angle;   // radians
    double tx_db;
    double rx_db;
};

// 20 log10 |a^H(steer) a(phi)| per grid angle, separately for tx and rx.
// Exact nulls are floored at kBeamFloorDb.
inline constexpr double kBeamFloorDb = -300.0;
std::vector<BeamGain> beampattern(const ArrayGeometry &geom, double steer,
                                  std::span<const double> grid);

// Frobenius inner product tr(X^H Y).
inline cplx trace_inner(const CMatrix &x, const CMatrix &y)
{
    return (x.conjugate().cwiseProduct(y)).sum();
}

} // namespace mcrb

#endif
