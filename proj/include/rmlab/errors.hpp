// Copyright 2026 The rmlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace rmlab {

/// Malformed or inconsistent experiment configuration. The message carries
/// the offending field path.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad input data: unparsable Hamiltonians or circuits, dimension mismatches,
/// out-of-range indices.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine could not produce a meaningful result (degenerate
/// Fisher matrix, singular solve where full rank is required, ...).
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace rmlab
