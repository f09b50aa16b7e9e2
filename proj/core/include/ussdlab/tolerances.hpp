// Copyright 2026 The ussdlab Authors
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

#pragma once

namespace ussdlab {

/// Numerical tolerances used when validating values and checking results.
/// Every threshold in the library is read from one of these fields.
struct Tolerances {
    double normalization = 1e-12;  // |<psi|psi> - 1|, |tr rho - 1|
    double hermiticity = 1e-12;    // max |rho - rho^H|
    double positivity = 1e-12;     // smallest admissible eigenvalue is -positivity
    double unitarity = 1e-10;      // max |U^H U - I|
    double isometry = 1e-10;       // Gram mismatch accepted by complete_unitary
    double basis = 1e-12;          // orthonormality of measurement bases
    double overlap = 1e-12;        // embedding overlaps vs. instance data
    double gram_schmidt_skip = 1e-8;  // residual norm below which a seed vector is dropped
    double rank_cutoff = 64 * 2.220446049250313e-16;  // relative eigenvalue floor for rank decisions

    /// Uniformly scales every comparison threshold (not the rank cutoff).
    constexpr Tolerances scaled(double factor) const {
        Tolerances t = *this;
        t.normalization *= factor;
        t.hermiticity *= factor;
        t.positivity *= factor;
        t.unitarity *= factor;
        t.isometry *= factor;
        t.basis *= factor;
        t.overlap *= factor;
        return t;
    }
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace ussdlab
