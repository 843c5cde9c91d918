#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lamina/rational.hpp"

namespace lamina {

// ---------------------------------------------------------------------------
// Torus C/<1, eta> with eta = (1 + i sqrt(7))/2. Points are coordinate pairs
// (u, v) for z = u + v*eta, reduced mod Z^2. Multiplication by eta acts as the
// integer matrix [[0,-2],[1,1]] (from eta^2 = eta - 2). The squared length of
// u + v*eta is the integer quadratic form u^2 + uv + 2v^2.
// ---------------------------------------------------------------------------

struct TorusPoint {
    Rational u, v;  // reduced to [0,1)

    TorusPoint() = default;
    TorusPoint(const Rational& uu, const Rational& vv) : u(uu.frac()), v(vv.frac()) {}

    friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
        return a.u == b.u && a.v == b.v;
    }
    friend bool operator<(const TorusPoint& a, const TorusPoint& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    }
};

// exact squared length of the displacement (du, dv) in the eta-embedding
Rational eta_norm2(const Rational& du, const Rational& dv);

// squared torus distance (minimum over nearby lattice translates)
Rational torus_dist2(const TorusPoint& a, const TorusPoint& b);

TorusPoint eta_multiplication(const TorusPoint& p);
std::array<TorusPoint, 2> eta_preimages(const TorusPoint& p);

// embedding to C for rendering/analysis: x = u + v/2, y = v*sqrt(7)/2
std::pair<double, double> eta_embed(const TorusPoint& p);

// Closed polyline on the torus; edge i runs from verts[i] by the exact short
// displacement disp[i] (so edges are well-defined segments on the torus).
struct TorusPolyline {
    std::vector<TorusPoint> verts;
    std::vector<std::pair<Rational, Rational>> disp;  // size = verts.size() for closed,
                                                      // verts.size()-1 for open
    bool closed = true;
};

// One curve-lift stage: doubles the sample count; f_{k+1}(x) is the eta-preimage
// of f_k(2x) nearest the previously placed neighbor. Throws on ContinuityBreak
// (no branch within half the fundamental domain).
std::vector<TorusPoint> lift_curve_stage(const std::vector<TorusPoint>& prev);

// seed loop through the fixed point (0,0) in direction (1,1), 16 dyadic samples
std::vector<TorusPoint> curve_seed();

// polyline from parameter-ordered torus samples (closed)
TorusPolyline samples_to_polyline(const std::vector<TorusPoint>& samples);

// ---------------------------------------------------------------------------
// Hubbard tree of the conjugate mating on the torus: a tripod with branch point
// at the lift of the fixed class, subdividable by exact affine preimage maps.
// Edges refine under  e1 -> e2,  e2 -> e3 e4,  e3 -> e1,  e4 -> rev(e1) e2,
// with contraction |eta|^-1 per eta-stage; one mesh halving = two eta-stages.
// ---------------------------------------------------------------------------

struct TreeStage {
    // vertex chains of the four oriented edges, in lifted (non-reduced) coordinates
    std::array<std::vector<std::pair<Rational, Rational>>, 4> edges;
    int etaStage = 0;
};

enum class TreeSide { Plus, Minus };

TreeStage hubbard_tree_stage(TreeSide side, int etaStages);

struct HubbardArc {
    TorusPolyline polyline;               // the spine arc through the critical point
    std::vector<size_t> segmentCounts;    // maximal straight runs, one per depth
    std::vector<double> growthRatios;     // counts[d]/counts[d-1] (per mesh halving)
};

// depth counts mesh halvings (two eta-stages each)
HubbardArc hubbard_arc(TreeSide side, int depth);

// bounded-turning statistic: max over sampled subarcs of diameter/endpoint distance
double bounded_turning_statistic(const TorusPolyline& arc, int scales);

struct TorusSegment {
    // lifted endpoints; the segment is drawn between them and read mod Z^2
    Rational ax, ay, bx, by;
};

// trimmed tree (tip segments removed) at the given eta-stage, as exact segments
std::vector<TorusSegment> trimmed_tree_segments(TreeSide side, int etaStages);

// all eta^-depth preimages of the trimmed tree segments (2^depth branches)
std::vector<TorusSegment> zipper_forest(TreeSide side, int treeEtaStages, int depth);

// exact count of transverse interior crossings between two segment families,
// compared mod Z^2 translates
size_t count_transverse_crossings(const std::vector<TorusSegment>& a,
                                  const std::vector<TorusSegment>& b);

// ---------------------------------------------------------------------------
// Lattes origami on C/Z[i]: H~(x+iy) = G(x) + i G(y) where G is the slope +-3
// zigzag with G(x+1) = G(x)+1, G(1-x) = 1-G(x). The curve stages satisfy
// H~ f_{k+1} = f_k h for the folded degree-3 circle origami h, and close up on
// the sphere C/(Z[i] x {+-1}) (possibly through the involution).
// ---------------------------------------------------------------------------

struct SquareCurve {
    // parameter breakpoints in [0,1] with exact lifted coordinates; twisted means
    // f(1) = -f(0) mod Z^2 (sheet-twisted closure on the sphere)
    std::vector<Rational> ts;
    std::vector<Rational> xs, ys;
    bool twisted = false;

    size_t segments() const { return ts.size() - 1; }
};

SquareCurve origami_seed();

// applies one subdivision stage; choice indexes the canonically ordered closed
// lifts (throws ChoiceOutOfRange as std::out_of_range when too large)
SquareCurve origami_curve_stage(const SquareCurve& prev, int choice);

// number of available closed lifts at the next stage
size_t origami_stage_choices(const SquareCurve& prev);

// exact pairwise test for self-intersections mod the sphere group Z[i] x {+-1}
bool origami_curve_is_simple(const SquareCurve& c);

// max segment length (embedded) of a stage curve
double origami_mesh(const SquareCurve& c);

// Hausdorff distance between two stage curves, mod the sphere group (sampled)
double origami_hausdorff(const SquareCurve& a, const SquareCurve& b);

}  // namespace lamina
