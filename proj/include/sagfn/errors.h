// Copyright 2026 The sagfn Authors
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

#ifndef SAGFN_ERRORS_H_
#define SAGFN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sagfn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPermutationError : public Error {
 public:
  using Error::Error;
};

class InvalidTargetError : public Error {
 public:
  using Error::Error;
};

class IllegalActionError : public Error {
 public:
  using Error::Error;
};

class EnumerationOverflowError : public Error {
 public:
  using Error::Error;
};

class UnsupportedModeError : public Error {
 public:
  using Error::Error;
};

// Bad user input: unknown keys, malformed files, out-of-range settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace sagfn

#endif  // SAGFN_ERRORS_H_
