// Copyright 2026 The ldpol Authors
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

#ifndef LDPOL_ERROR_HPP_
#define LDPOL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace ldpol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class TopologyError : public Error {
 public:
  using Error::Error;
};

// Raised when a weight matrix would have delta_N <= -1.
class ScalingError : public Error {
 public:
  ScalingError(const std::string& what, double suggested_scale)
      : Error(what), suggested_scale_(suggested_scale) {}
  double suggested_scale() const { return suggested_scale_; }

 private:
  double suggested_scale_;
};

// Carries the list of violated clauses.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> clauses)
      : Error(what), clauses_(std::move(clauses)) {}
  const std::vector<std::string>& clauses() const { return clauses_; }

 private:
  std::vector<std::string> clauses_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line) : Error(what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// A replicate produced a non-finite parameter.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, long round, int learner)
      : Error(what), round_(round), learner_(learner) {}
  long round() const { return round_; }
  int learner() const { return learner_; }

 private:
  long round_;
  int learner_;
};

}  // namespace ldpol

#endif  // LDPOL_ERROR_HPP_
