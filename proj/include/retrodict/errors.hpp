/*
Copyright (c) 2026 the retrodict developers.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef RETRODICT_ERRORS_HPP
#define RETRODICT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace retrodict {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The unread probe mixture is numerically singular (det ~ 0); no Cholesky
/// factor and hence no proposition operators exist.
class SingularMixture : public Error {
public:
  using Error::Error;
};

/// Tr(element) is below the trace floor; the normalized pre-measurement
/// state is undefined.
class ZeroTraceElement : public Error {
public:
  using Error::Error;
};

/// The ensemble mixture deviates from 1/D beyond tolerance, so the direct
/// proposition construction does not apply.
class NotMaximallyMixed : public Error {
public:
  using Error::Error;
};

/// An outcome has zero probability under every candidate preparation.
class UnreachableOutcome : public Error {
public:
  using Error::Error;
};

/// Heralding probability is below the trace floor.
class ZeroSuccessProbability : public Error {
public:
  using Error::Error;
};

/// Requested construction leaks more amplitude past the Fock cutoff than
/// the stated bound permits.
class TruncationLeakage : public Error {
public:
  using Error::Error;
};

/// POVM elements do not resolve the identity within tolerance.
class IncompletePovm : public Error {
public:
  using Error::Error;
};

/// Gauss-Hermite node doubling failed to stabilize the top-corner matrix
/// element.
class QuadratureUnderresolved : public Error {
public:
  using Error::Error;
};

/// Requested term count leaves a geometric remainder above the bound.
class SeriesNotConverged : public Error {
public:
  using Error::Error;
};

/// An iterative estimation hit its iteration cap before reaching the
/// stopping tolerance.
class NoConvergence : public Error {
public:
  using Error::Error;
};

}  // namespace retrodict

#endif  // RETRODICT_ERRORS_HPP
