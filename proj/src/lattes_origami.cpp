#include <algorithm>
#include <functional>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "lamina/lattes.hpp"

namespace lamina {

namespace {

// G: degree-1 zigzag circle map, slopes +3,-3,+3 on [0,1/3],[1/3,2/3],[2/3,1].
Rational gmod(const Rational& w) {
    Rational wm = w.frac();
    if (wm <= Rational(1, 3)) return (Rational(3) * wm).frac();
    if (wm <= Rational(2, 3)) return (Rational(2) - Rational(3) * wm).frac();
    return (Rational(3) * wm - Rational(2)).frac();
}

bool at_fold(const Rational& u) {
    Rational um = u.frac();
    return um == Rational(1, 3) || um == Rational(2, 3);
}

// sign of G' on the side of u in direction du
int g_side_slope(const Rational& u, int du) {
    Rational um = u.frac();
    if (um == Rational(1, 3)) return du > 0 ? -1 : 1;
    if (um == Rational(2, 3)) return du > 0 ? 1 : -1;
    if (um < Rational(1, 3)) return 1;
    if (um < Rational(2, 3)) return -1;
    return 1;
}

// h: the folded degree-3 circle origami driving the subdivision
struct HLap { Rational a, b, slope, offset; };
const std::vector<HLap>& h_laps() {
    static const std::vector<HLap> laps = {
        {Rational(0), Rational(1, 6), Rational(3), Rational(0)},
        {Rational(1, 6), Rational(1, 3), Rational(-3), Rational(1)},
        {Rational(1, 3), Rational(2, 3), Rational(3), Rational(-1)},
        {Rational(2, 3), Rational(5, 6), Rational(-3), Rational(3)},
        {Rational(5, 6), Rational(1), Rational(3), Rational(-2)}};
    return laps;
}

Rational h_eval(const Rational& t) {
    for (const HLap& l : h_laps())
        if (l.a <= t && t <= l.b) return l.slope * t + l.offset;
    throw std::logic_error("h_eval: out of range");
}

struct CurveEval {
    const SquareCurve* c;
    Rational windX, windY;  // untwisted winding
    Rational twX, twY;      // twisted closure constants F(1) + F(0)

    explicit CurveEval(const SquareCurve& cc) : c(&cc) {
        windX = cc.xs.back() - cc.xs.front();
        windY = cc.ys.back() - cc.ys.front();
        twX = cc.xs.back() + cc.xs.front();
        twY = cc.ys.back() + cc.ys.front();
    }
    std::pair<Rational, Rational> at01(const Rational& t) const {
        const auto& ts = c->ts;
        size_t i = std::upper_bound(ts.begin(), ts.end(), t) - ts.begin();
        if (i == 0) i = 1;
        if (i >= ts.size()) i = ts.size() - 1;
        size_t k = i - 1;
        Rational span = ts[i] - ts[k];
        Rational w = (t - ts[k]) / span;
        return {c->xs[k] + (c->xs[i] - c->xs[k]) * w, c->ys[k] + (c->ys[i] - c->ys[k]) * w};
    }
    // evaluate at any real parameter via the closure extension
    std::pair<Rational, Rational> at(const Rational& t) const {
        Rational t0 = t.frac();
        std::int64_t k = (t - t0).floor();
        auto [x, y] = at01(t0);
        if (!c->twisted) return {x + Rational(k) * windX, y + Rational(k) * windY};
        if (k % 2 == 0) return {x, y};
        return {twX - x, twY - y};
    }
};

struct State {
    Rational u, v;
    int du, dv, eps;
    friend bool operator<(const State& a, const State& b) {
        return std::tie(a.u, a.v, a.du, a.dv, a.eps) < std::tie(b.u, b.v, b.du, b.dv, b.eps);
    }
    friend bool operator==(const State& a, const State& b) {
        return a.u == b.u && a.v == b.v && a.du == b.du && a.dv == b.dv && a.eps == b.eps;
    }
};

struct StageData {
    std::vector<Rational> ts;                          // event times, ts.front()=0, ts.back()=1
    std::vector<std::pair<Rational, Rational>> rvals;  // R at each event
    std::vector<std::pair<int, int>> slopes;           // R slope signs per gap
};

StageData stage_data(const SquareCurve& prev) {
    CurveEval ev(prev);
    std::set<Rational> times{Rational(0)};
    for (const HLap& l : h_laps()) {
        times.insert(l.a);
        for (const Rational& tb : prev.ts) {
            // solve slope*t + offset = tb (h stays within [0,1])
            Rational t = (tb - l.offset) / l.slope;
            if (l.a < t && t < l.b) times.insert(t);
        }
    }
    times.insert(Rational(1));
    StageData sd;
    sd.ts.assign(times.begin(), times.end());
    sd.rvals.reserve(sd.ts.size());
    for (const Rational& t : sd.ts) sd.rvals.push_back(ev.at(h_eval(t)));
    for (size_t i = 0; i + 1 < sd.ts.size(); ++i) {
        int sx = (sd.rvals[i + 1].first - sd.rvals[i].first).sign();
        int sy = (sd.rvals[i + 1].second - sd.rvals[i].second).sign();
        if (sx == 0 || sy == 0) throw std::logic_error("origami stage: flat image segment");
        sd.slopes.push_back({sx, sy});
    }
    return sd;
}

std::vector<int> dir_options(const Rational& u, int sR, int eps) {
    std::vector<int> out;
    for (int d : {1, -1})
        if (g_side_slope(u, d) * d == eps * sR) out.push_back(d);
    return out;
}

// options at event i for a state arriving with (uu, vv, du, dv, eps)
std::vector<State> event_options(const StageData& sd, size_t i, const Rational& uu,
                                 const Rational& vv, int du, int dv, int eps) {
    const auto& [X, Y] = sd.rvals[i];
    auto [sX0, sY0] = sd.slopes[i - 1];
    auto [sX1, sY1] = sd.slopes[i];
    if (gmod(uu) != (Rational(eps) * X).frac() || gmod(vv) != (Rational(eps) * Y).frac())
        return {};
    bool genuine = (sX1 != sX0) || (sY1 != sY0);
    std::vector<State> opts;
    for (int eps2 : {eps, -eps}) {
        if (eps2 != eps) {
            if (!genuine) continue;
            // sheet flips need the image at a cone point of the pillowcase
            if ((Rational(2) * X).frac() != Rational(0) || (Rational(2) * Y).frac() != Rational(0))
                continue;
            if (gmod(uu) != (Rational(eps2) * X).frac() ||
                gmod(vv) != (Rational(eps2) * Y).frac())
                continue;
        }
        for (int a : dir_options(uu, sX1, eps2))
            for (int b : dir_options(vv, sY1, eps2)) {
                if (!genuine && (a != du || b != dv)) continue;
                opts.push_back({uu, vv, a, b, eps2});
            }
    }
    // canonical order: keep sheet, then keep directions
    std::sort(opts.begin(), opts.end(), [&](const State& p, const State& q) {
        auto key = [&](const State& s) {
            return std::make_tuple(s.eps != eps, s.du != du, s.dv != dv);
        };
        return key(p) < key(q);
    });
    return opts;
}

std::vector<Rational> g_preimages(const Rational& c) {
    Rational cm = c.frac();
    std::set<Rational> out;
    for (int k = 0; k <= 2; ++k) {
        Rational t = (cm + Rational(k)) / Rational(3);
        if (t <= Rational(1, 3)) out.insert(t.frac());
        t = (Rational(2) - cm - Rational(k)) / Rational(3);
        if (Rational(1, 3) <= t && t <= Rational(2, 3)) out.insert(t.frac());
        t = (Rational(2) + cm + Rational(k)) / Rational(3);
        if (Rational(2, 3) <= t && t <= Rational(1)) out.insert(t.frac());
    }
    return {out.begin(), out.end()};
}

struct Solution {
    std::vector<std::tuple<Rational, Rational, Rational>> verts;  // (t, x, y) lifted
    bool twisted;
};

// enumerate closed lifts in canonical search order, pruned to states that can
// still reach closure (forward-reachability x backward-aliveness per start)
std::vector<Solution> enumerate_closed_lifts(const SquareCurve& prev, size_t maxSolutions) {
    StageData sd = stage_data(prev);
    size_t m = sd.ts.size();

    struct Start { Rational u, v; int du, dv, eps; };
    std::vector<Start> starts;
    const auto& [X0, Y0] = sd.rvals[0];
    auto [sX0, sY0] = sd.slopes[0];
    for (int eps0 : {1, -1}) {
        for (const Rational& u0 : g_preimages(Rational(eps0) * X0)) {
            if (gmod(u0) != (Rational(eps0) * X0).frac()) continue;
            for (const Rational& v0 : g_preimages(Rational(eps0) * Y0)) {
                if (gmod(v0) != (Rational(eps0) * Y0).frac()) continue;
                for (int a : dir_options(u0, sX0, eps0))
                    for (int b : dir_options(v0, sY0, eps0))
                        starts.push_back({u0, v0, a, b, eps0});
            }
        }
    }
    std::sort(starts.begin(), starts.end(), [](const Start& p, const Start& q) {
        auto anchored = [](const Start& s) { return !(s.u == Rational(0) && s.v == Rational(0)); };
        return std::make_tuple(anchored(p), p.u, p.v, -p.eps, -p.du, -p.dv) <
               std::make_tuple(anchored(q), q.u, q.v, -q.eps, -q.du, -q.dv);
    });

    std::vector<Solution> sols;
    for (const Start& st : starts) {
        if (sols.size() >= maxSolutions) break;
        // forward reachable state sets per layer
        std::vector<std::set<State>> reach(m);
        reach[0].insert({st.u, st.v, st.du, st.dv, st.eps});
        for (size_t i = 0; i + 1 < m; ++i) {
            Rational dt = sd.ts[i + 1] - sd.ts[i];
            for (const State& s : reach[i]) {
                Rational uu = s.u + Rational(s.du) * dt;
                Rational vv = s.v + Rational(s.dv) * dt;
                if (i + 1 == m - 1) {
                    reach[i + 1].insert({uu, vv, s.du, s.dv, s.eps});
                } else {
                    for (const State& nx : event_options(sd, i + 1, uu, vv, s.du, s.dv, s.eps))
                        reach[i + 1].insert(nx);
                }
            }
        }
        // accepted end states: position equals +-start mod 1
        auto accepts = [&](const State& s) {
            Rational um = s.u.frac(), vm = s.v.frac();
            Rational u0 = st.u.frac(), v0 = st.v.frac();
            return (um == u0 && vm == v0) || ((-s.u).frac() == u0 && (-s.v).frac() == v0);
        };
        bool anyAccept = false;
        for (const State& s : reach[m - 1])
            if (accepts(s)) { anyAccept = true; break; }
        if (!anyAccept) continue;
        // backward alive sets
        std::vector<std::set<State>> alive(m);
        for (const State& s : reach[m - 1])
            if (accepts(s)) alive[m - 1].insert(s);
        for (size_t i = m - 1; i-- > 0;) {
            Rational dt = sd.ts[i + 1] - sd.ts[i];
            for (const State& s : reach[i]) {
                Rational uu = s.u + Rational(s.du) * dt;
                Rational vv = s.v + Rational(s.dv) * dt;
                if (i + 1 == m - 1) {
                    if (alive[i + 1].count({uu, vv, s.du, s.dv, s.eps})) alive[i].insert(s);
                } else {
                    for (const State& nx : event_options(sd, i + 1, uu, vv, s.du, s.dv, s.eps))
                        if (alive[i + 1].count(nx)) { alive[i].insert(s); break; }
                }
            }
        }
        if (alive[0].empty()) continue;
        // canonical DFS through alive states, collecting closed solutions
        std::vector<std::tuple<Rational, Rational, Rational>> verts;
        std::function<void(size_t, const State&)> dfs = [&](size_t i, const State& s) {
            if (sols.size() >= maxSolutions) return;
            if (i == 0) verts.assign(1, {Rational(0), s.u, s.v});
            if (i + 1 == m) return;  // handled by caller when reaching the last layer
            Rational dt = sd.ts[i + 1] - sd.ts[i];
            Rational uu = s.u + Rational(s.du) * dt;
            Rational vv = s.v + Rational(s.dv) * dt;
            if (i + 1 == m - 1) {
                State end{uu, vv, s.du, s.dv, s.eps};
                if (alive[m - 1].count(end)) {
                    Solution sol;
                    sol.verts = verts;
                    sol.verts.push_back({Rational(1), uu, vv});
                    Rational wx = uu - std::get<1>(sol.verts[0]);
                    Rational wy = vv - std::get<2>(sol.verts[0]);
                    sol.twisted = !(wx.frac() == Rational(0) && wy.frac() == Rational(0));
                    sols.push_back(std::move(sol));
                }
                return;
            }
            size_t keep = verts.size();
            for (const State& nx : event_options(sd, i + 1, uu, vv, s.du, s.dv, s.eps)) {
                if (!alive[i + 1].count(nx)) continue;
                verts.resize(keep);
                if (nx.du != s.du || nx.dv != s.dv)
                    verts.push_back({sd.ts[i + 1], uu, vv});
                dfs(i + 1, nx);
                if (sols.size() >= maxSolutions) return;
            }
            verts.resize(keep);
        };
        State s0{st.u, st.v, st.du, st.dv, st.eps};
        if (alive[0].count(s0)) dfs(0, s0);
    }
    return sols;
}

SquareCurve solution_to_curve(const Solution& sol) {
    SquareCurve c;
    c.twisted = sol.twisted;
    // drop collinear middle vertices so later stages see only genuine corners
    std::vector<std::tuple<Rational, Rational, Rational>> vs;
    vs.push_back(sol.verts.front());
    for (size_t i = 1; i + 1 < sol.verts.size(); ++i) {
        auto& [t0, x0, y0] = vs.back();
        auto& [t1, x1, y1] = sol.verts[i];
        auto& [t2, x2, y2] = sol.verts[i + 1];
        Rational dx1 = (x1 - x0) / (t1 - t0), dy1 = (y1 - y0) / (t1 - t0);
        Rational dx2 = (x2 - x1) / (t2 - t1), dy2 = (y2 - y1) / (t2 - t1);
        if (dx1 == dx2 && dy1 == dy2) continue;
        vs.push_back(sol.verts[i]);
    }
    vs.push_back(sol.verts.back());
    for (auto& [t, x, y] : vs) {
        c.ts.push_back(t);
        c.xs.push_back(x);
        c.ys.push_back(y);
    }
    return c;
}

// canonical preference: untwisted first, anchored at (0,0) first, more segments
// first, then lexicographic on the reduced vertex list
std::vector<Solution> canonical_sort_dedupe(std::vector<Solution> sols) {
    auto reducedVerts = [](const Solution& s, bool mirror) {
        std::vector<std::tuple<Rational, Rational, Rational>> out;
        out.reserve(s.verts.size());
        for (auto& [t, x, y] : s.verts) {
            Rational xm = mirror ? (-x).frac() : x.frac();
            Rational ym = mirror ? (-y).frac() : y.frac();
            out.push_back({t, xm, ym});
        }
        return out;
    };
    // dedupe mod the sphere involution
    std::map<std::vector<std::tuple<Rational, Rational, Rational>>, size_t> seen;
    std::vector<Solution> uniq;
    for (auto& s : sols) {
        auto k1 = reducedVerts(s, false);
        auto k2 = reducedVerts(s, true);
        auto key = std::min(k1, k2);
        if (seen.emplace(std::move(key), uniq.size()).second) uniq.push_back(std::move(s));
    }
    std::stable_sort(uniq.begin(), uniq.end(), [&](const Solution& a, const Solution& b) {
        auto anchored = [](const Solution& s) {
            return !(std::get<1>(s.verts[0]).frac() == Rational(0) &&
                     std::get<2>(s.verts[0]).frac() == Rational(0));
        };
        auto ka = std::make_tuple(a.twisted, anchored(a), -(std::int64_t)a.verts.size(),
                                  reducedVerts(a, false));
        auto kb = std::make_tuple(b.twisted, anchored(b), -(std::int64_t)b.verts.size(),
                                  reducedVerts(b, false));
        return ka < kb;
    });
    return uniq;
}

std::pair<double, double> embed(const Rational& x, const Rational& y) {
    return {x.toDouble(), y.toDouble()};
}

}  // namespace

SquareCurve origami_seed() {
    SquareCurve c;
    c.ts = {Rational(0), Rational(1, 2), Rational(1)};
    c.xs = {Rational(0), Rational(1, 2), Rational(0)};
    c.ys = {Rational(0), Rational(1, 2), Rational(1)};
    c.twisted = false;
    return c;
}

size_t origami_stage_choices(const SquareCurve& prev) {
    return canonical_sort_dedupe(enumerate_closed_lifts(prev, 64)).size();
}

SquareCurve origami_curve_stage(const SquareCurve& prev, int choice) {
    if (choice < 0 || choice > 3) throw std::out_of_range("ChoiceOutOfRange: must be 0..3");
    auto sols = canonical_sort_dedupe(enumerate_closed_lifts(prev, 64));
    if (sols.empty()) throw std::runtime_error("origami stage: no closed lift found");
    if (size_t(choice) >= sols.size())
        throw std::out_of_range("ChoiceOutOfRange: only " + std::to_string(sols.size()) +
                                " closed lifts at this stage");
    return solution_to_curve(sols[choice]);
}

bool origami_curve_is_simple(const SquareCurve& c) {
    size_t n = c.segments();
    struct Seg { Rational ax, ay, bx, by; };
    std::vector<Seg> segs;
    for (size_t i = 0; i < n; ++i) segs.push_back({c.xs[i], c.ys[i], c.xs[i + 1], c.ys[i + 1]});

    auto orient = [](const Rational& ax, const Rational& ay, const Rational& bx,
                     const Rational& by, const Rational& cx, const Rational& cy) {
        return ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)).sign();
    };
    auto proper = [&](const Seg& s, const Seg& t) {
        int o1 = orient(s.ax, s.ay, s.bx, s.by, t.ax, t.ay);
        int o2 = orient(s.ax, s.ay, s.bx, s.by, t.bx, t.by);
        int o3 = orient(t.ax, t.ay, t.bx, t.by, s.ax, s.ay);
        int o4 = orient(t.ax, t.ay, t.bx, t.by, s.bx, s.by);
        return o1 * o2 < 0 && o3 * o4 < 0;
    };
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            for (int sign : {1, -1}) {
                // map segment j by w -> sign*w + k and test against segment i
                Rational cx = Rational(sign) * segs[j].ax;
                Rational cy = Rational(sign) * segs[j].ay;
                Rational dx = Rational(sign) * segs[j].bx;
                Rational dy = Rational(sign) * segs[j].by;
                // base translate aligning to segment i's cell
                Rational bx = segs[i].ax - segs[i].ax.frac() - (cx - cx.frac());
                Rational byy = segs[i].ay - segs[i].ay.frac() - (cy - cy.frac());
                for (int tx = -1; tx <= 1; ++tx)
                    for (int ty = -1; ty <= 1; ++ty) {
                        Seg t{cx + bx + Rational(tx), cy + byy + Rational(ty),
                              dx + bx + Rational(tx), dy + byy + Rational(ty)};
                        if (proper(segs[i], t)) return false;
                    }
            }
        }
    }
    // vertices pairwise distinct mod the sphere group (closure endpoints aside)
    std::set<std::pair<Rational, Rational>> seen;
    for (size_t i = 0; i < n; ++i) {  // skip the duplicate closing vertex
        Rational xm = c.xs[i].frac(), ym = c.ys[i].frac();
        std::pair<Rational, Rational> k1{xm, ym}, k2{(-c.xs[i]).frac(), (-c.ys[i]).frac()};
        auto key = std::min(k1, k2);
        if (!seen.insert(key).second) return false;
    }
    return true;
}

double origami_mesh(const SquareCurve& c) {
    double worst = 0;
    for (size_t i = 0; i + 1 < c.ts.size(); ++i) {
        auto [x0, y0] = embed(c.xs[i], c.ys[i]);
        auto [x1, y1] = embed(c.xs[i + 1], c.ys[i + 1]);
        worst = std::max(worst, std::hypot(x1 - x0, y1 - y0));
    }
    return worst;
}

double origami_hausdorff(const SquareCurve& a, const SquareCurve& b) {
    auto samples = [](const SquareCurve& c) {
        std::vector<std::pair<double, double>> out;
        for (size_t i = 0; i + 1 < c.ts.size(); ++i) {
            auto [x0, y0] = embed(c.xs[i], c.ys[i]);
            auto [x1, y1] = embed(c.xs[i + 1], c.ys[i + 1]);
            for (int k = 0; k < 4; ++k) {
                double w = k / 4.0;
                out.push_back({x0 + (x1 - x0) * w, y0 + (y1 - y0) * w});
            }
        }
        return out;
    };
    auto sa = samples(a), sb = samples(b);
    auto dist = [](std::pair<double, double> p, std::pair<double, double> q) {
        double best = 1e100;
        for (int sign : {1, -1})
            for (int tx = -2; tx <= 2; ++tx)
                for (int ty = -2; ty <= 2; ++ty) {
                    double qx = sign * q.first + tx, qy = sign * q.second + ty;
                    // compare within one period: reduce p too
                    double dx = qx - (p.first - std::floor(p.first));
                    double dy = qy - (p.second - std::floor(p.second));
                    best = std::min(best, std::hypot(dx, dy));
                }
        return best;
    };
    double dAB = 0, dBA = 0;
    for (auto& p : sa) {
        double best = 1e100;
        for (auto& q : sb) best = std::min(best, dist(p, q));
        dAB = std::max(dAB, best);
    }
    for (auto& q : sb) {
        double best = 1e100;
        for (auto& p : sa) best = std::min(best, dist(q, p));
        dBA = std::max(dBA, best);
    }
    return std::max(dAB, dBA);
}

}  // namespace lamina
