/*
 * Copyright 2026 The noma-jspa Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef NOMA_ERRORS_HPP
#define NOMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace noma {

/// An input violates a problem constraint or a type invariant.
class ConstraintViolation : public std::invalid_argument {
public:
  explicit ConstraintViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// An object was used before it was set up.
class UsageError : public std::logic_error {
public:
  explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

/// A request exceeds a solver's size guard.
class SizeGuardError : public std::length_error {
public:
  explicit SizeGuardError(const std::string& what) : std::length_error(what) {}
};

/// Malformed configuration text or an out-of-range configuration value.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace noma

#endif
