/*
 * pmseg: physically modeled active contours
 *
 * Copyright 2026 The pmseg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PMSEG_ERROR_HPP
#define PMSEG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pmseg {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A parameter block or input violates its documented invariants.
class ValidationError : public Error
{
public:
  using Error::Error;
};

/// File could not be read, decoded, or written.
class IoError : public Error
{
public:
  using Error::Error;
};

/// A contour or zero level set disappeared during evolution.
class ContourVanished : public Error
{
public:
  using Error::Error;
};

/// Explicit time step violates the CFL guard.
class CflViolation : public Error
{
public:
  CflViolation(const std::string &what, double required_dt)
    : Error(what), required_dt_(required_dt)
  {}

  /// Largest time step that satisfies the guard.
  double required_dt() const { return required_dt_; }

private:
  double required_dt_;
};

/// Stage-two burning did not join the burned region into one component.
class ReleaseIncomplete : public Error
{
public:
  ReleaseIncomplete(const std::string &what, int components)
    : Error(what), components_(components)
  {}

  int components() const { return components_; }

private:
  int components_;
};

} // namespace pmseg

#endif // PMSEG_ERROR_HPP
