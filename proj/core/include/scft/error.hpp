// SPDX-License-Identifier: Apache-2.0
//
// scft: sparse coding Fourier transform swarm spectrum acquisition
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

#ifndef SCFT_ERROR_HPP_
#define SCFT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace scft
{

// Arguments that violate an operation's preconditions.
class ValidationError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// Bad or inconsistent configuration (unknown node, non-integral FFT size, ...).
class ConfigError : public ValidationError
{
public:
  using ValidationError::ValidationError;
};

class FusionError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A metric that has no defined value for the given input (e.g. RMSE over zero pairs).
class MetricError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

enum class WireErrorKind
{
  bad_magic,
  unsupported_version,
  truncated,
  non_increasing_bins,
  bin_out_of_range,
  trailing_data,
};

const char * to_string(WireErrorKind kind) noexcept;

class WireError : public std::runtime_error
{
public:
  WireError(WireErrorKind kind, const std::string & what)
  : std::runtime_error(what), kind_(kind) {}

  WireErrorKind kind() const noexcept { return kind_; }

private:
  WireErrorKind kind_;
};

}  // namespace scft

#endif  // SCFT_ERROR_HPP_
