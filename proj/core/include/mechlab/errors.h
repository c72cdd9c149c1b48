// Copyright 2026 The Mechlab Authors.
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

#ifndef MECHLAB_ERRORS_H_
#define MECHLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mechlab {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the queried object, e.g. an item
// index >= m.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid construction or generator parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation would exceed its enumeration budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic left the representable range.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input. `path` locates the offending JSON node.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A mechanism was asked to handle a valuation class it does not support.
class UnsupportedValuationError : public Error {
 public:
  using Error::Error;
};

// A supposedly truthful mechanism offered one bundle at two prices.
class TruthfulnessViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace mechlab

#endif  // MECHLAB_ERRORS_H_
