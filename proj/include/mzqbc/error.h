// Copyright 2026 The mzqbc Authors
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

#ifndef MZQBC_ERROR_H
#define MZQBC_ERROR_H

#include <stdexcept>
#include <string>

namespace mzqbc {

// Bad inputs: malformed parameters, violated preconditions. The CLI maps
// these to exit code 2.
class ParameterError : public std::invalid_argument {
   public:
    explicit ParameterError(const std::string &what) : std::invalid_argument(what) {
    }
};

// Refusals to compute because a size guard would be exceeded (enumeration,
// composite dimension, tracked time bins). The CLI maps these to exit code 3.
class GuardError : public std::length_error {
   public:
    explicit GuardError(const std::string &what) : std::length_error(what) {
    }
};

}  // namespace mzqbc

#endif
