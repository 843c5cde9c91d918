#pragma once

#include <vector>

namespace lamina {

struct Pt2 {
    double x = 0, y = 0;
};

struct Polyline2D {
    std::vector<Pt2> points;  // >= 2, consecutive points distinct
    bool closed = false;
};

double polyline_length(const Polyline2D& p);
double polyline_diameter(const Polyline2D& p);
double min_edge_length(const Polyline2D& p);

// Greedy walk: keep the first point, then every next vertex at distance >= eps
// from the last kept one; the final point is always kept.
Polyline2D coarsen_polyline(const Polyline2D& p, double eps);

struct DimensionEstimate {
    double d = 0;
    double stderrSlope = 0;
    std::vector<double> scales;
};

// geometric schedule, 8 scales per decade, clipped to [2*minEdge, diameter/4]
std::vector<double> default_scales(const Polyline2D& p);
// same shape with an explicit clip window
std::vector<double> geometric_scales(double lo, double hi, int perDecade = 8);

// least squares of log(coarsened length) against -log(eps); D = 1 + slope.
// Throws std::runtime_error("DegenerateScales") with < 3 usable scales.
DimensionEstimate estimate_dimension_length_regression(const Polyline2D& p,
                                                       const std::vector<double>& scales);

// regression of log(occupied cells) against -log(cell size); needs >= 100 points
DimensionEstimate box_count_dimension(const std::vector<Pt2>& points,
                                      const std::vector<double>& scales);

}  // namespace lamina
