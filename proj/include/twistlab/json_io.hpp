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

#ifndef TWISTLAB_JSON_IO_HPP
#define TWISTLAB_JSON_IO_HPP

#include <string>

#include "twistlab/lattice.hpp"
#include "twistlab/tableau.hpp"

namespace twistlab {

struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lattice spec schema:
/// {"rows":R,"cols":C,
///  "boundary":[{"side":"top|bottom|left|right",
///               "segments":[{"from":a,"to":b,"type":"rough|smooth"}]}],
///  "holes":[{"region":[[r,c],...],"boundary_type":"rough|smooth"}],
///  "defect_lines":[{"path":[[r,c],...],"sign":1|-1}],
///  "mask":"full" | "rotated"}
/// or the shorthand {"preset":"planar|all_rough|all_smooth|rotated","L":n}.
LatticeLayout layout_from_json(const std::string &text);
std::string layout_to_json(const LatticeLayout &layout);

}  // namespace twistlab

#endif
