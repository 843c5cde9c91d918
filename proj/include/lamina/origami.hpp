#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamina/core.hpp"

namespace lamina {

// Piecewise-linear expanding circle map with slopes +-lambda. Values are taken
// mod 1; offsets are stored mod 1 as well.
struct PLCircleMap {
    std::vector<Angle> breakpoints;   // sorted; interval i = [b_i, b_{i+1}) wrapping
    std::vector<Rational> slopes;     // +-lambda per interval
    std::vector<Rational> offsets;    // f(x) = slope*x + offset (mod 1) on interval i
    std::string id;

    size_t intervals() const { return breakpoints.size(); }
    Rational lambda() const { return slopes.at(0).abs(); }

    // throws if discontinuous mod 1, slope magnitudes differ, or only one sign occurs
    void validate() const;

    // built-in degree-3 families, parametrized by theta in [0,1/3)
    static PLCircleMap ordinary(const Rational& theta);
    static PLCircleMap folded(const Rational& theta);
};

Angle evaluate_pl(const PLCircleMap& map, const Angle& x);

struct PLPreimage {
    Angle x;
    int slopeSign;  // sign of the local slope at x
};

// All exact solutions of map(x) = y, tagged with the local slope sign. At
// breakpoint images both adjacent branch solutions are reported; callers dedup.
std::vector<PLPreimage> preimages(const PLCircleMap& map, const Angle& y);

// Geometric degree at a non-breakpoint-image point, or nullopt if the count is
// not constant over sampled generic points.
std::optional<int> geometric_degree(const PLCircleMap& map);

struct Seed {
    std::vector<GapClass> classes;
};

// How preimage leaves pair up. The built-in families derive the rule from the
// seed's interval decomposition: an interval either maps once onto the whole
// circle (one ordinary preimage there) or folds onto a half (two ordinary
// preimages when both endpoints lie in that half, one folded otherwise).
enum class FoldRule { SeedIntervals };

struct SeedLamination {
    FiniteLamination lamination;
};

// Level 0 is the seed; level k+1 collects the preimage leaves of the level-k
// leaves. Throws std::runtime_error("FoldRuleInconsistent...") if a generated
// level fails the unlinkedness check.
SeedLamination generate_seed_lamination(const PLCircleMap& map, const Seed& seed,
                                        FoldRule rule, size_t depth);

}  // namespace lamina
