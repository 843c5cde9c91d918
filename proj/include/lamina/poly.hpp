#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamina/core.hpp"

namespace lamina {

// Collection of degree-d critical leaves of total multiplicity d-1.
struct Major {
    int degree = 2;
    std::vector<GapClass> criticalClasses;
};

enum class MajorError { None, BadDegree, NotCritical, WrongMultiplicity, NotDisjoint, Linked };

struct MajorValidation {
    MajorError error = MajorError::None;
    std::string message;
    std::optional<Major> major;
    bool ok() const { return error == MajorError::None; }
};

MajorValidation validate_major(int degree, const std::vector<GapClass>& classes);

struct OrbitSummary {
    std::vector<Angle> points;  // x, h(x), ..., up to the first repeat
    size_t preperiod = 0;
    size_t period = 0;
};

// Iterates x -> d x mod 1 until the first repeat (guaranteed for rationals).
OrbitSummary forward_orbit(const Angle& x, int degree, size_t maxSteps);

struct InvariantLamination {
    FiniteLamination lamination;
    // set when an endpoint of the major is an iterated image of an endpoint, so the
    // pullback needs the leftmost tie-breaking rule and uniqueness is not guaranteed
    bool ambiguityWarning = false;
};

// Cactus pullback: level 0 is the major, level k+1 holds the d preimage classes of
// each level-k class, ties resolved by the leftmost rule.
InvariantLamination generate_invariant_lamination(const Major& major, size_t depth);

}  // namespace lamina
