#pragma once

#include <optional>
#include <vector>

#include "lamina/core.hpp"

namespace lamina {

enum class Side { Plus, Minus };

// Connected component of the bipartite leaf-endpoint incidence graph: chains of
// leaves alternating sides, consecutive ones sharing an endpoint.
struct RayClass {
    std::vector<std::pair<Side, Leaf>> leaves;
    size_t diameter = 0;  // graph diameter of the leaf-adjacency graph
};

std::vector<RayClass> ray_classes(const FiniteLamination& plus, const FiniteLamination& minus,
                                  size_t depth);

struct FitCertificate {
    std::optional<Angle> fit;      // a shared endpoint, if any
    std::optional<Rational> minGap;  // exact minimum angular gap otherwise
    // heuristic per-depth statistic; not a proof for the infinite lamination
};

FitCertificate no_perfect_fits_certificate(const FiniteLamination& plus,
                                           const FiniteLamination& minus, size_t depth);

}  // namespace lamina
