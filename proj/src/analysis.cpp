#include "lamina/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lamina {

namespace {

double dist(const Pt2& a, const Pt2& b) { return std::hypot(b.x - a.x, b.y - a.y); }

struct Fit {
    double slope, intercept, stderrSlope;
};

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    size_t n = xs.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    Fit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (size_t i = 0; i < n; ++i) {
        double r = ys[i] - (f.intercept + f.slope * xs[i]);
        sse += r * r;
    }
    f.stderrSlope = n > 2 ? std::sqrt(sse / double(n - 2) / sxx) : 0.0;
    return f;
}

}  // namespace

double polyline_length(const Polyline2D& p) {
    double len = 0;
    for (size_t i = 0; i + 1 < p.points.size(); ++i) len += dist(p.points[i], p.points[i + 1]);
    if (p.closed && p.points.size() > 2) len += dist(p.points.back(), p.points.front());
    return len;
}

double polyline_diameter(const Polyline2D& p) {
    double best = 0;
    size_t n = p.points.size();
    size_t stride = std::max<size_t>(1, n / 512);
    for (size_t i = 0; i < n; i += stride)
        for (size_t j = i + 1; j < n; j += stride) best = std::max(best, dist(p.points[i], p.points[j]));
    return best;
}

double min_edge_length(const Polyline2D& p) {
    double best = 1e300;
    for (size_t i = 0; i + 1 < p.points.size(); ++i)
        best = std::min(best, dist(p.points[i], p.points[i + 1]));
    return best;
}

Polyline2D coarsen_polyline(const Polyline2D& p, double eps) {
    if (eps <= 0) throw std::invalid_argument("coarsen_polyline: eps must be > 0");
    Polyline2D out;
    out.closed = false;
    out.points.push_back(p.points.front());
    for (size_t i = 1; i + 1 < p.points.size(); ++i)
        if (dist(out.points.back(), p.points[i]) >= eps) out.points.push_back(p.points[i]);
    out.points.push_back(p.points.back());
    return out;
}

std::vector<double> geometric_scales(double lo, double hi, int perDecade) {
    if (!(lo > 0) || !(hi > lo)) return {};
    int n = int(std::floor(std::log10(hi / lo) * perDecade)) + 1;
    std::vector<double> out;
    if (n < 2) return {lo};
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, double(i) / double(n - 1)));
    return out;
}

std::vector<double> default_scales(const Polyline2D& p) {
    return geometric_scales(2.0 * min_edge_length(p), polyline_diameter(p) / 4.0);
}

DimensionEstimate estimate_dimension_length_regression(const Polyline2D& p,
                                                       const std::vector<double>& scales) {
    std::vector<double> xs, ys, used;
    for (double e : scales) {
        Polyline2D c = coarsen_polyline(p, e);
        if (c.points.size() < 3) continue;
        double len = polyline_length(c);
        if (!(len > 0)) continue;
        xs.push_back(-std::log(e));
        ys.push_back(std::log(len));
        used.push_back(e);
    }
    if (xs.size() < 3) throw std::runtime_error("DegenerateScales: fewer than 3 usable scales");
    Fit f = least_squares(xs, ys);
    return {1.0 + f.slope, f.stderrSlope, used};
}

DimensionEstimate box_count_dimension(const std::vector<Pt2>& points,
                                      const std::vector<double>& scales) {
    if (points.size() < 100)
        throw std::invalid_argument("box_count_dimension: needs >= 100 points");
    std::vector<double> xs, ys, used;
    for (double s : scales) {
        std::set<std::pair<long long, long long>> cells;
        for (const Pt2& p : points)
            cells.insert({(long long)std::floor(p.x / s), (long long)std::floor(p.y / s)});
        if (cells.size() < 2) continue;
        xs.push_back(-std::log(s));
        ys.push_back(std::log(double(cells.size())));
        used.push_back(s);
    }
    if (xs.size() < 3) throw std::runtime_error("DegenerateScales: fewer than 3 usable scales");
    Fit f = least_squares(xs, ys);
    return {f.slope, f.stderrSlope, used};
}

}  // namespace lamina
