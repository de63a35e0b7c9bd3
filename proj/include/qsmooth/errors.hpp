// Copyright 2026 The qsmooth Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qsmooth {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix handed in as a density operator violates the state invariants.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Measurement or dual-monitor parameters are out of range.
class InvalidModel : public Error {
 public:
  using Error::Error;
};

/// The post-measurement normalization fell below the underflow guard.
class DegenerateUpdate : public Error {
 public:
  using Error::Error;
};

/// A future effect lost all of its weight while being accumulated backwards.
class EffectUnderflow : public Error {
 public:
  using Error::Error;
};

/// Past state and future effect are (numerically) orthogonal.
class AnomalousOverlap : public Error {
 public:
  using Error::Error;
};

/// The smoothed-estimate denominator vanished.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// The alternative estimate fits the readout exactly, so a relative error is undefined.
class DegenerateFit : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsmooth
