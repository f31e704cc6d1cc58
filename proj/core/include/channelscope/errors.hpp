// Copyright 2026 The channelscope Authors
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

#ifndef CHANNELSCOPE_ERRORS_HPP_
#define CHANNELSCOPE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace channelscope {

// Argument outside the mathematical domain of an operation (|lambda| > 1,
// c outside [0, 1], eta <= 1/2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An input violates a documented precondition of a representation, e.g. a
// Choi matrix that is not trace preserving.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IncompleteDataError : public std::runtime_error {
 public:
  IncompleteDataError(const std::string& what, std::vector<std::string> missing)
      : std::runtime_error(what), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

// A data matrix that cannot have come from frequencies in [0, 1].
class InfeasibleDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double condition_number)
      : std::runtime_error(what), condition_number_(condition_number) {}
  double condition_number() const { return condition_number_; }

 private:
  double condition_number_;
};

// Malformed external input (files, configuration).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace channelscope

#endif  // CHANNELSCOPE_ERRORS_HPP_
