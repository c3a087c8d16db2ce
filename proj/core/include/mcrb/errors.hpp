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

#ifndef MCRB_ERRORS_HPP
#define MCRB_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace mcrb
{
using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegPerRad = 180.0 / kPi;

inline constexpr double deg2rad(double deg) { return deg / kDegPerRad; }
inline constexpr double rad2deg(double rad) { return rad * kDegPerRad; }

// Bad inputs: empty arrays, angles outside (-pi/2, pi/2), empty search spans.
class InvalidArgument : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Information about theta is identically zero (E_Adot == 0).
class SingularInformation : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// The closed-form bound denominator vanishes (three coherent cancelling paths).
class DegenerateBound : public std::runtime_error
{
public:
    DegenerateBound(const std::string &what, double denominator)
        : std::runtime_error(what), denominator_(denominator) {}
    double denominator() const noexcept { return denominator_; }

private:
    double denominator_;
};

// The error-score matrix is too ill-conditioned to invert reliably.
class IllConditioned : public std::runtime_error
{
public:
    IllConditioned(const std::string &what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

// Experiment configuration problems; the message carries the JSON field path.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace mcrb

#endif
