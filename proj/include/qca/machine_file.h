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

#ifndef QCA_MACHINE_FILE_H
#define QCA_MACHINE_FILE_H

#include <string>
#include <string_view>

#include "qca/machine.h"

namespace qca {

/// Canonical JSON text of a machine. States, then symbols, then counter
/// status, then outcome labels are listed in lexicographic order, so
/// machine_to_json(machine_from_json(text)) == text for canonical text.
/// Operation elements keep their order, which fixes the sampling order.
std::string machine_to_json(const MachineSpec &spec);

/// Parses a machine file. Structural problems raise Parse errors; the
/// result is not validated (see validate_machine).
MachineSpec machine_from_json(std::string_view text);

MachineSpec load_machine(const std::string &path);
void save_machine(const MachineSpec &spec, const std::string &path);

}  // namespace qca

#endif
