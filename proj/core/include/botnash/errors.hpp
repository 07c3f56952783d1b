// Copyright 2026 The botnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOTNASH_ERRORS_HPP
#define BOTNASH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace botnash {

// Base class of every recoverable error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance description is structurally broken (length mismatch, bad JSON,
// unknown keys, ...).
struct MalformedInstance : Error {
  using Error::Error;
};

// A task size, computation amount, bandwidth or power is <= 0 or not finite.
struct NonPositiveParameter : Error {
  using Error::Error;
};

// An allocation matrix does not have the N x K shape of its system.
struct ShapeMismatch : Error {
  using Error::Error;
};

// The saturation-partition scan found no (or several) valid split points.
// Cannot fire on valid input; signals a violated precondition or a
// numerical pathology.
struct PartitionNotFound : Error {
  using Error::Error;
};

// Rates handed to a canonical-representation routine exceed the worker
// capacity beyond tolerance.
struct InfeasibleRates : Error {
  using Error::Error;
};

// The simplex hit a pivot too small to trust after scaling.
struct NumericalBreakdown : Error {
  using Error::Error;
};

// An application is forced to zero throughput, so log-utilities are
// undefined.
struct DegenerateInstance : Error {
  using Error::Error;
};

// A Pareto comparison against a baseline with a non-positive component.
struct ZeroBaseline : Error {
  using Error::Error;
};

// The equivalent-subsystem construction failed one of its own assertions.
// Indicates an implementation bug, not bad input.
struct SubsystemViolation : Error {
  using Error::Error;
};

// The "augmented" system of a Braess check decreases some capacity or is
// not the same game.
struct NotAnAugmentation : Error {
  using Error::Error;
};

// A simulation trace has no measurement window to evaluate.
struct EmptyWindow : Error {
  using Error::Error;
};

}  // namespace botnash

#endif  // BOTNASH_ERRORS_HPP
