// SPDX-License-Identifier: Apache-2.0
//
// iacsi: interference alignment performance analysis under quantized CSI
// Copyright (C) 2026 The iacsi authors
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

#ifndef IACSI_QUADRATURE_HPP
#define IACSI_QUADRATURE_HPP

#include "error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace iacsi
{

struct QuadratureTolerance
{
    double absolute = 1.0e-10;
    double relative = 1.0e-8;
    unsigned max_depth = 20;
};

// Adaptive 15-point Gauss-Kronrod over [lo, hi]. Throws QuadratureError when the
// error estimate exceeds max(absolute, relative * |result|).
template <typename F>
double integrate(F &&f, double lo, double hi, const QuadratureTolerance &tol = {})
{
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, lo, hi, tol.max_depth, std::min(tol.absolute, tol.relative) * 1.0e-2, &error, &l1);
    if (!std::isfinite(value) || error > std::max(tol.absolute, tol.relative * std::abs(value)))
        throw QuadratureError("adaptive Gauss-Kronrod did not converge", error);
    return value;
}

} // namespace iacsi

#endif
