// Copyright 2026 The QCA Authors
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

#ifndef QCA_ERRORS_H
#define QCA_ERRORS_H

#include <stdexcept>
#include <string>

namespace qca {

enum class ErrorKind {
    Structural,   // dimension mismatch, empty lists, infinite branch trees
    Parameter,    // out-of-range builder parameters (k < 1, ...)
    Input,        // input string outside the alphabet, malformed counts
    Specification,// missing transitions, head leaving the tape, counter underflow
    Degenerate,   // zero-norm branch
    NonHalting,   // no halting probability mass
    Family,       // malformed language family
    Parse,        // machine files, rational strings
    Io,
    Budget,       // exact result too large to compute
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {
    }
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace qca

#endif
