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

#include "qca/analysis.h"

#include "qca/errors.h"

namespace qca {

RestartSolution solve_restart(const Rat &p_accept, const Rat &p_reject) {
    if (p_accept.sign() < 0 || p_reject.sign() < 0) {
        fail(ErrorKind::Structural, "negative round probability");
    }
    const Rat halting = p_accept + p_reject;
    if (halting.is_zero()) {
        fail(ErrorKind::NonHalting, "round never halts: accept and reject probabilities are both zero");
    }
    return RestartSolution{p_accept / halting, p_reject / halting, Rat(1) / halting};
}

RoundAnalysis RoundAnalysis::from_round(Rat p_accept, Rat p_reject, Rat p_restart) {
    RoundAnalysis r;
    r.p_accept = std::move(p_accept);
    r.p_reject = std::move(p_reject);
    r.p_restart = std::move(p_restart);
    if (!(r.p_accept + r.p_reject).is_zero()) {
        r.overall = solve_restart(r.p_accept, r.p_reject);
    }
    return r;
}

}  // namespace qca
