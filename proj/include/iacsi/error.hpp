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

#ifndef IACSI_ERROR_HPP
#define IACSI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace iacsi
{

// Invalid system, feedback or scenario parameters.
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// The antenna/stream configuration fails the IA feasibility check.
class InfeasibleError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Two mixture sources share a scale and were not merged before weight computation.
class DuplicateScaleError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// An adaptive quadrature did not reach its tolerance.
class QuadratureError : public std::runtime_error
{
  public:
    QuadratureError(const std::string &what, double achieved_error)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
          achieved_error_(achieved_error)
    {
    }
    double achieved_error() const noexcept { return achieved_error_; }

  private:
    double achieved_error_;
};

} // namespace iacsi

#endif
