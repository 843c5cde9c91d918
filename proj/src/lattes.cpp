#include "lamina/lattes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lamina {

namespace {

using Vec = std::pair<Rational, Rational>;

Vec eta_mul_vec(const Vec& p) { return {Rational(-2) * p.second, p.first + p.second}; }
Vec eta_inv_vec(const Vec& p) {
    return {(p.first + Rational(2) * p.second) / Rational(2), -p.first / Rational(2)};
}
Vec add(const Vec& a, const Vec& b) { return {a.first + b.first, a.second + b.second}; }
Vec sub(const Vec& a, const Vec& b) { return {a.first - b.first, a.second - b.second}; }

}  // namespace

Rational eta_norm2(const Rational& du, const Rational& dv) {
    return du * du + du * dv + Rational(2) * dv * dv;
}

Rational torus_dist2(const TorusPoint& a, const TorusPoint& b) {
    std::optional<Rational> best;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            Rational du = b.u - a.u + Rational(i);
            Rational dv = b.v - a.v + Rational(j);
            Rational q = eta_norm2(du, dv);
            if (!best || q < *best) best = q;
        }
    return *best;
}

TorusPoint eta_multiplication(const TorusPoint& p) {
    Vec w = eta_mul_vec({p.u, p.v});
    return TorusPoint(w.first, w.second);
}

std::array<TorusPoint, 2> eta_preimages(const TorusPoint& p) {
    Vec w = eta_inv_vec({p.u, p.v});
    TorusPoint a(w.first, w.second);
    TorusPoint b(w.first + Rational(1, 2), w.second + Rational(1, 2));
    return {a, b};
}

std::pair<double, double> eta_embed(const TorusPoint& p) {
    double u = p.u.toDouble(), v = p.v.toDouble();
    return {u + v / 2.0, v * std::sqrt(7.0) / 2.0};
}

std::vector<TorusPoint> curve_seed() {
    std::vector<TorusPoint> seed;
    for (int j = 0; j < 16; ++j) seed.emplace_back(Rational(j, 16), Rational(j, 16));
    return seed;
}

std::vector<TorusPoint> lift_curve_stage(const std::vector<TorusPoint>& prev) {
    size_t n = prev.size();
    std::vector<TorusPoint> out;
    out.reserve(2 * n);
    const Rational quarter(1, 4);  // (1/2)^2: half the shortest lattice vector, squared
    for (size_t j = 0; j < 2 * n; ++j) {
        const TorusPoint& target = prev[j % n];  // f_k(2 x_j), x_j = j/(2n)
        auto cands = eta_preimages(target);
        const TorusPoint& ref = out.empty() ? TorusPoint(Rational(0), Rational(0)) : out.back();
        Rational d0 = torus_dist2(ref, cands[0]);
        Rational d1 = torus_dist2(ref, cands[1]);
        const TorusPoint& pick = d0 <= d1 ? cands[0] : cands[1];
        Rational dmin = d0 <= d1 ? d0 : d1;
        if (!out.empty() && !(dmin < quarter))
            throw std::runtime_error("ContinuityBreak: sampling too coarse for the curve lift");
        out.push_back(pick);
    }
    return out;
}

TorusPolyline samples_to_polyline(const std::vector<TorusPoint>& samples) {
    TorusPolyline p;
    p.verts = samples;
    p.closed = true;
    size_t n = samples.size();
    for (size_t i = 0; i < n; ++i) {
        const TorusPoint& a = samples[i];
        const TorusPoint& b = samples[(i + 1) % n];
        std::optional<Rational> best;
        Vec bestD;
        for (int x = -1; x <= 1; ++x)
            for (int y = -1; y <= 1; ++y) {
                Rational du = b.u - a.u + Rational(x);
                Rational dv = b.v - a.v + Rational(y);
                Rational q = eta_norm2(du, dv);
                if (!best || q < *best) {
                    best = q;
                    bestD = {du, dv};
                }
            }
        p.disp.push_back(bestD);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Hubbard tree subdivision. Exact vertex lifts (verified against the affine
// closure equations at startup):
//   plus side:  alpha a=(1/4,1/8), tip c=(0,1/4), tip p1=(1/2,1/4),
//               crit p0=(1/4,0), tip p2=(1/2,-1/4)
//               phi123(w) = eta^-1(-w + (0,1/2)),  phi4(w) = eta^-1(w)
//   minus side: a=(1/4,5/8), c=(0,3/4), p1=(1/2,3/4), p0=(1/4,1/2), p2=(1/2,1/4)
//               phi123(w) = eta^-1(-w + (-1,3/2)), phi4(w) = eta^-1(w + (-1,0))
// ---------------------------------------------------------------------------

namespace {

struct TreeData {
    Vec a, c, p1, p0, p2;
    Vec tNeg;   // phi123 translation
    Vec t4;     // phi4 translation
};

TreeData tree_data(TreeSide side) {
    if (side == TreeSide::Plus)
        return {{Rational(1, 4), Rational(1, 8)},
                {Rational(0), Rational(1, 4)},
                {Rational(1, 2), Rational(1, 4)},
                {Rational(1, 4), Rational(0)},
                {Rational(1, 2), Rational(-1, 4)},
                {Rational(0), Rational(1, 2)},
                {Rational(0), Rational(0)}};
    return {{Rational(1, 4), Rational(5, 8)},
            {Rational(0), Rational(3, 4)},
            {Rational(1, 2), Rational(3, 4)},
            {Rational(1, 4), Rational(1, 2)},
            {Rational(1, 2), Rational(1, 4)},
            {Rational(-1), Rational(3, 2)},
            {Rational(-1), Rational(0)}};
}

using Path = std::vector<Vec>;

Path apply_phi_neg(const TreeData& td, const Path& p) {
    Path out;
    out.reserve(p.size());
    for (const Vec& w : p)
        out.push_back(eta_inv_vec({td.tNeg.first - w.first, td.tNeg.second - w.second}));
    return out;
}
Path apply_phi4(const TreeData& td, const Path& p) {
    Path out;
    out.reserve(p.size());
    for (const Vec& w : p)
        out.push_back(eta_inv_vec({w.first + td.t4.first, w.second + td.t4.second}));
    return out;
}
Path reversed(Path p) {
    std::reverse(p.begin(), p.end());
    return p;
}
Path concat(const Path& x, const Path& y) {
    if (x.back() != y.front()) throw std::logic_error("tree subdivision: endpoint mismatch");
    Path out = x;
    out.insert(out.end(), y.begin() + 1, y.end());
    return out;
}

std::array<Path, 4> tree_edges(const TreeData& td, int etaStages) {
    std::array<Path, 4> e = {Path{td.a, td.c}, Path{td.a, td.p1}, Path{td.a, td.p0},
                             Path{td.p0, td.p2}};
    for (int k = 0; k < etaStages; ++k) {
        std::array<Path, 4> n;
        n[0] = apply_phi_neg(td, e[1]);
        n[1] = apply_phi_neg(td, concat(e[2], e[3]));
        n[2] = apply_phi_neg(td, e[0]);
        n[3] = apply_phi4(td, concat(reversed(e[0]), e[1]));
        if (n[0].front() != td.a || n[0].back() != td.c || n[1].front() != td.a ||
            n[1].back() != td.p1 || n[2].front() != td.a || n[2].back() != td.p0 ||
            n[3].front() != td.p0 || n[3].back() != td.p2)
            throw std::logic_error("tree subdivision: closure equations failed");
        e = std::move(n);
    }
    return e;
}

size_t count_straight_runs(const Path& p) {
    size_t runs = 0;
    std::optional<Vec> prevDir;
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        Vec d = sub(p[i + 1], p[i]);
        if (d.first == Rational(0) && d.second == Rational(0)) continue;
        // normalize the direction (keep orientation: a doubling-back starts a new run)
        Rational scale = d.first != Rational(0) ? d.first.abs() : d.second.abs();
        Vec dir = {d.first / scale, d.second / scale};
        if (!prevDir || !(dir == *prevDir)) ++runs;
        prevDir = dir;
    }
    return runs;
}

TorusPolyline path_to_polyline(const Path& p) {
    TorusPolyline out;
    out.closed = false;
    for (const Vec& w : p) out.verts.emplace_back(w.first, w.second);
    for (size_t i = 0; i + 1 < p.size(); ++i) out.disp.push_back(sub(p[i + 1], p[i]));
    return out;
}

}  // namespace

TreeStage hubbard_tree_stage(TreeSide side, int etaStages) {
    TreeData td = tree_data(side);
    TreeStage st;
    st.etaStage = etaStages;
    auto e = tree_edges(td, etaStages);
    for (int i = 0; i < 4; ++i) st.edges[i] = e[i];
    return st;
}

HubbardArc hubbard_arc(TreeSide side, int depth) {
    TreeData td = tree_data(side);
    HubbardArc out;
    std::array<Path, 4> e = {Path{td.a, td.c}, Path{td.a, td.p1}, Path{td.a, td.p0},
                             Path{td.p0, td.p2}};
    Path arc;
    for (int d = 0; d <= depth; ++d) {
        if (d > 0) {
            // one depth = one mesh halving = two eta-stages
            for (int rep = 0; rep < 2; ++rep) {
                std::array<Path, 4> n;
                n[0] = apply_phi_neg(td, e[1]);
                n[1] = apply_phi_neg(td, concat(e[2], e[3]));
                n[2] = apply_phi_neg(td, e[0]);
                n[3] = apply_phi4(td, concat(reversed(e[0]), e[1]));
                e = std::move(n);
            }
        }
        arc = concat(concat(reversed(e[0]), e[2]), e[3]);  // c -> a -> p0 -> p2
        out.segmentCounts.push_back(count_straight_runs(arc));
        if (d > 0)
            out.growthRatios.push_back(double(out.segmentCounts[d]) /
                                       double(out.segmentCounts[d - 1]));
    }
    out.polyline = path_to_polyline(arc);
    return out;
}

double bounded_turning_statistic(const TorusPolyline& arc, int scales) {
    // max over sampled subarcs of (subarc diameter) / (endpoint distance),
    // measured on a consistent lift accumulated from the exact displacements
    std::vector<std::pair<double, double>> lift;
    double x = 0, y = 0;
    lift.push_back({0, 0});
    for (const auto& d : arc.disp) {
        double du = d.first.toDouble(), dv = d.second.toDouble();
        x += du + dv / 2.0;
        y += dv * std::sqrt(7.0) / 2.0;
        lift.push_back({x, y});
    }
    size_t n = lift.size();
    double worst = 0;
    for (int s = 0; s < scales; ++s) {
        size_t span = n >> (s + 1);
        if (span < 2) break;
        for (size_t i = 0; i + span < n; i += std::max<size_t>(1, span / 4)) {
            double ex = lift[i + span].first - lift[i].first;
            double ey = lift[i + span].second - lift[i].second;
            double endd = std::hypot(ex, ey);
            if (endd == 0) continue;
            double diam = 0;
            for (size_t k = i; k <= i + span; ++k)
                diam = std::max(diam, std::hypot(lift[k].first - lift[i].first,
                                                 lift[k].second - lift[i].second));
            worst = std::max(worst, diam / endd);
        }
    }
    return worst;
}

std::vector<TorusSegment> trimmed_tree_segments(TreeSide side, int etaStages) {
    auto e = tree_edges(tree_data(side), etaStages);
    std::vector<TorusSegment> segs;
    auto addEdge = [&](const Path& p, bool dropFirst, bool dropLast) {
        size_t m = p.size() - 1;
        for (size_t i = 0; i < m; ++i) {
            if (dropFirst && i == 0) continue;
            if (dropLast && i == m - 1) continue;
            segs.push_back({p[i].first, p[i].second, p[i + 1].first, p[i + 1].second});
        }
    };
    // tips (1-valent vertices) sit at the ends of e1 (c), e2 (p1) and e4 (p2)
    addEdge(e[0], false, true);
    addEdge(e[1], false, true);
    addEdge(e[2], false, false);
    addEdge(e[3], false, true);
    return segs;
}

std::vector<TorusSegment> zipper_forest(TreeSide side, int treeEtaStages, int depth) {
    std::vector<TorusSegment> cur = trimmed_tree_segments(side, treeEtaStages);
    for (int d = 0; d < depth; ++d) {
        std::vector<TorusSegment> next;
        next.reserve(cur.size() * 2);
        for (const TorusSegment& s : cur) {
            for (int coset = 0; coset < 2; ++coset) {
                Rational off(coset);  // cosets of eta Z^2 in Z^2: delta in {(0,0),(1,0)}
                Vec a = eta_inv_vec({s.ax + off, s.ay});
                Vec b = eta_inv_vec({s.bx + off, s.by});
                next.push_back({a.first, a.second, b.first, b.second});
            }
        }
        cur = std::move(next);
    }
    return cur;
}

namespace {

int orient_sign(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by,
                const Rational& cx, const Rational& cy) {
    Rational det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return det.sign();
}

bool proper_cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by,
                  const Rational& cx, const Rational& cy, const Rational& dx, const Rational& dy) {
    int o1 = orient_sign(ax, ay, bx, by, cx, cy);
    int o2 = orient_sign(ax, ay, bx, by, dx, dy);
    int o3 = orient_sign(cx, cy, dx, dy, ax, ay);
    int o4 = orient_sign(cx, cy, dx, dy, bx, by);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace

size_t count_transverse_crossings(const std::vector<TorusSegment>& A,
                                  const std::vector<TorusSegment>& B) {
    // normalize each segment so its first endpoint is in [0,1)^2; bucket by cell
    struct Norm { Rational ax, ay, bx, by; double cx, cy, r; };
    auto normalize = [](const TorusSegment& s) {
        Rational fu = s.ax - s.ax.frac();
        Rational fv = s.ay - s.ay.frac();
        Norm n{s.ax - fu, s.ay - fv, s.bx - fu, s.by - fv, 0, 0, 0};
        double x0 = n.ax.toDouble(), y0 = n.ay.toDouble();
        double x1 = n.bx.toDouble(), y1 = n.by.toDouble();
        n.cx = (x0 + x1) / 2;
        n.cy = (y0 + y1) / 2;
        n.r = std::hypot(x1 - x0, y1 - y0) / 2;
        return n;
    };
    std::vector<Norm> na, nb;
    na.reserve(A.size());
    nb.reserve(B.size());
    for (const auto& s : A) na.push_back(normalize(s));
    for (const auto& s : B) nb.push_back(normalize(s));

    // coarse uniform grid over [0,1)^2 on B
    const int G = 32;
    std::vector<std::vector<size_t>> grid(G * G);
    auto cellsOf = [&](const Norm& n, auto&& fn) {
        int lo_x = int(std::floor((n.cx - n.r - 0.51) * G));
        int hi_x = int(std::floor((n.cx + n.r + 0.51) * G));
        int lo_y = int(std::floor((n.cy - n.r - 0.51) * G));
        int hi_y = int(std::floor((n.cy + n.r + 0.51) * G));
        for (int x = lo_x; x <= hi_x; ++x)
            for (int y = lo_y; y <= hi_y; ++y) fn(((x % G + G) % G) * G + ((y % G + G) % G));
    };
    for (size_t j = 0; j < nb.size(); ++j)
        cellsOf(nb[j], [&](int cell) { grid[cell].push_back(j); });

    size_t count = 0;
    std::vector<size_t> stamp(nb.size(), SIZE_MAX);
    for (size_t i = 0; i < na.size(); ++i) {
        std::vector<size_t> cand;
        cellsOf(na[i], [&](int cell) {
            for (size_t j : grid[cell])
                if (stamp[j] != i) {
                    stamp[j] = i;
                    cand.push_back(j);
                }
        });
        for (size_t j : cand) {
            // try lattice translates aligning the two unit-cell representatives
            for (int tx = -1; tx <= 1; ++tx)
                for (int ty = -1; ty <= 1; ++ty) {
                    double dx = nb[j].cx + tx - na[i].cx;
                    double dy = nb[j].cy + ty - na[i].cy;
                    if (std::hypot(dx, dy) > na[i].r + nb[j].r + 1e-12) continue;
                    if (proper_cross(na[i].ax, na[i].ay, na[i].bx, na[i].by,
                                     nb[j].ax + Rational(tx), nb[j].ay + Rational(ty),
                                     nb[j].bx + Rational(tx), nb[j].by + Rational(ty)))
                        ++count;
                }
        }
    }
    return count;
}

}  // namespace lamina
