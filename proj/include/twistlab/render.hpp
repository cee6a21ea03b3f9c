// Copyright 2026 The twistlab developers
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

#ifndef TWISTLAB_RENDER_HPP
#define TWISTLAB_RENDER_HPP

#include <optional>
#include <string>

#include "twistlab/lattice.hpp"

namespace twistlab {

/// Fixed-width grid view: face colouring, boundary pads, holes, defect lines,
/// twists, and optionally one logical representative overlaid as letters.
std::string render_ascii(const CompiledCode &code, std::optional<PauliOperator> logical = {});

/// Static SVG with the same content.
std::string render_svg(const CompiledCode &code, std::optional<PauliOperator> logical = {});

}  // namespace twistlab

#endif
