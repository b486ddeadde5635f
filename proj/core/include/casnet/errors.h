// Copyright 2026 The CASNET Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CASNET_ERRORS_H_
#define CASNET_ERRORS_H_

#include <stdexcept>
#include <string>

namespace casnet {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes or widths do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid hyperparameter or operation parameter (e.g. clip with lo >= hi).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Non-finite value produced where a finite one is required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Call sequence violates an object's protocol (step after done, ...).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Name lookup failed (unknown environment, missing tensor, ...).
class LookupError : public Error {
 public:
  using Error::Error;
};

// A derived quantity cannot be computed (degenerate denominator, ...).
class ComputationError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration file or option.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File system failure; the message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed binary or text artifact (checkpoint, metrics CSV).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace casnet

#endif  // CASNET_ERRORS_H_
