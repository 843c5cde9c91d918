#include "lamina/origami.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lamina {

namespace {

Rational mod1(const Rational& r) { return r.frac(); }

}  // namespace

void PLCircleMap::validate() const {
    size_t n = breakpoints.size();
    if (n < 2 || slopes.size() != n || offsets.size() != n)
        throw std::invalid_argument("PLCircleMap: inconsistent sizes");
    for (size_t i = 0; i + 1 < n; ++i)
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw std::invalid_argument("PLCircleMap: breakpoints not strictly sorted");
    Rational lam = slopes[0].abs();
    if (!(Rational(1) < lam)) throw std::invalid_argument("PLCircleMap: |slope| must be > 1");
    bool pos = false, neg = false;
    for (const Rational& s : slopes) {
        if (s.abs() != lam) throw std::invalid_argument("PLCircleMap: |slope| not constant");
        (s.sign() > 0 ? pos : neg) = true;
    }
    if (!pos || !neg)
        throw std::invalid_argument("PLCircleMap: both slope signs required (else covering)");
    for (size_t j = 0; j < n; ++j) {
        // junction at breakpoint j between interval j-1 (possibly wrapping) and j
        size_t i = (j + n - 1) % n;
        Rational bx = breakpoints[j].value();
        if (j == 0) bx += Rational(1);  // interval n-1 wraps; evaluate at the lifted point
        Angle left = Angle(slopes[i] * bx + offsets[i]);
        Angle right = Angle(slopes[j] * breakpoints[j].value() + offsets[j]);
        if (left != right)
            throw std::invalid_argument("PLCircleMap: discontinuous at " + breakpoints[j].str());
    }
}

namespace {

PLCircleMap from_pieces(std::vector<std::tuple<Angle, Rational, Rational>> pieces,
                        std::string id) {
    std::sort(pieces.begin(), pieces.end(),
              [](auto& a, auto& b) { return std::get<0>(a) < std::get<0>(b); });
    PLCircleMap m;
    for (auto& [b, s, o] : pieces) {
        m.breakpoints.push_back(b);
        m.slopes.push_back(s);
        m.offsets.push_back(o);
    }
    m.id = std::move(id);
    m.validate();
    return m;
}

}  // namespace

PLCircleMap PLCircleMap::ordinary(const Rational& theta) {
    // xi(x) = 3x on [0,1/3] u [2/3,1], -3x elsewhere; h(x) = xi(x - theta)
    return from_pieces({{Angle(theta), Rational(3), mod1(Rational(-3) * theta)},
                        {Angle(theta + Rational(1, 3)), Rational(-3), mod1(Rational(3) * theta)},
                        {Angle(theta + Rational(2, 3)), Rational(3), mod1(Rational(-3) * theta)}},
                       "ordinary:" + theta.str());
}

PLCircleMap PLCircleMap::folded(const Rational& theta) {
    // xi(x) = 3x on [-1/6,1/6] u [1/3,2/3], -3x elsewhere; h(x) = xi(x - theta)
    return from_pieces(
        {{Angle(theta + Rational(1, 6)), Rational(-3), mod1(Rational(3) * theta)},
         {Angle(theta + Rational(1, 3)), Rational(3), mod1(Rational(-3) * theta)},
         {Angle(theta + Rational(2, 3)), Rational(-3), mod1(Rational(3) * theta)},
         {Angle(theta + Rational(5, 6)), Rational(3), mod1(Rational(-3) * theta)}},
        "folded:" + theta.str());
}

Angle evaluate_pl(const PLCircleMap& map, const Angle& x) {
    const auto& bs = map.breakpoints;
    size_t n = bs.size();
    size_t i = std::upper_bound(bs.begin(), bs.end(), x) - bs.begin();
    size_t idx = (i == 0 || i == n) ? n - 1 : i - 1;
    Rational xr = x.value();
    if (x < bs[idx]) xr += Rational(1);  // wrap interval
    return Angle(map.slopes[idx] * xr + map.offsets[idx]);
}

std::vector<PLPreimage> preimages(const PLCircleMap& map, const Angle& y) {
    std::vector<PLPreimage> out;
    size_t n = map.breakpoints.size();
    for (size_t i = 0; i < n; ++i) {
        Rational lo = map.breakpoints[i].value();
        Rational hi =
            (i + 1 < n ? map.breakpoints[i + 1].value() : map.breakpoints[0].value() + Rational(1));
        const Rational& s = map.slopes[i];
        Rational base = (y.value() - map.offsets[i]) / s;
        Rational step = Rational(1) / s;  // x moves by this when y moves by 1
        Rational kLoR = (lo - base) / step;
        Rational kHiR = (hi - base) / step;
        std::int64_t kMin = std::min(kLoR.floor(), kHiR.floor()) - 1;
        std::int64_t kMax = std::max(kLoR.floor(), kHiR.floor()) + 1;
        for (std::int64_t k = kMin; k <= kMax; ++k) {
            Rational x = base + Rational(k) * step;
            if (lo <= x && x <= hi) out.push_back({Angle(x), s.sign()});
        }
    }
    std::sort(out.begin(), out.end(), [](const PLPreimage& a, const PLPreimage& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.slopeSign < b.slopeSign;
    });
    return out;
}

std::optional<int> geometric_degree(const PLCircleMap& map) {
    std::optional<int> deg;
    for (int num = 1; num <= 7; num += 2) {
        Angle y(Rational(num, 7919));
        auto pre = preimages(map, y);
        std::set<Angle> uniq;
        for (const auto& p : pre) uniq.insert(p.x);
        int d = int(uniq.size());
        if (!deg) deg = d;
        else if (*deg != d) return std::nullopt;
    }
    return deg;
}

namespace {

struct SeedInterval {
    Angle lo, hi;
    bool full = false;
    Angle arcLo, arcHi;                         // folded image arc, ccw
    std::vector<std::pair<Angle, Angle>> laps;  // monotone pieces of [lo, hi]
};

std::optional<Angle> preimage_in(const PLCircleMap& map, const Angle& y, const Angle& a,
                                 const Angle& b) {
    for (const auto& p : preimages(map, y)) {
        if (p.x == a || p.x == b) return p.x;
        if (p.x.strictlyInside(a, b)) return p.x;
    }
    return std::nullopt;
}

int slope_sign_at_mid(const PLCircleMap& map, const Angle& a, const Angle& b) {
    Angle mid = Angle(a.value() + a.ccwTo(b) / Rational(2));
    const auto& bs = map.breakpoints;
    size_t n = bs.size();
    size_t i = std::upper_bound(bs.begin(), bs.end(), mid) - bs.begin();
    size_t idx = (i == 0 || i == n) ? n - 1 : i - 1;
    return map.slopes[idx].sign();
}

std::vector<SeedInterval> analyze_seed(const PLCircleMap& map, const Seed& seed) {
    std::vector<Angle> pts;
    for (const GapClass& c : seed.classes)
        for (const Angle& x : c.angles) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) throw std::invalid_argument("seed needs >= 2 angles");

    std::vector<SeedInterval> out;
    size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        SeedInterval si;
        si.lo = pts[i];
        si.hi = pts[(i + 1) % n];
        Rational len = si.lo.ccwTo(si.hi);
        std::vector<std::pair<Rational, Angle>> inner;
        for (const Angle& b : map.breakpoints) {
            Rational off = si.lo.ccwTo(b);
            if (Rational(0) < off && off < len) inner.push_back({off, b});
        }
        std::sort(inner.begin(), inner.end(), [](auto& a, auto& b) { return a.first < b.first; });
        std::vector<Angle> cuts{si.lo};
        for (auto& [off, b] : inner) cuts.push_back(b);
        cuts.push_back(si.hi);
        for (size_t k = 0; k + 1 < cuts.size(); ++k) si.laps.emplace_back(cuts[k], cuts[k + 1]);

        if (si.laps.size() == 1) {
            if (len * map.lambda() != Rational(1))
                throw std::runtime_error(
                    "FoldRuleInconsistent: single-lap seed interval does not cover the circle");
            si.full = true;
        } else if (si.laps.size() == 2) {
            Angle i0 = evaluate_pl(map, si.lo);
            Angle im = evaluate_pl(map, si.laps[0].second);
            Angle i1 = evaluate_pl(map, si.hi);
            if (i0 != i1)
                throw std::runtime_error(
                    "FoldRuleInconsistent: folded interval endpoints map to different points");
            if (slope_sign_at_mid(map, si.laps[0].first, si.laps[0].second) > 0) {
                si.arcLo = i0;
                si.arcHi = im;
            } else {
                si.arcLo = im;
                si.arcHi = i0;
            }
        } else {
            throw std::runtime_error("FoldRuleInconsistent: seed interval has " +
                                     std::to_string(si.laps.size()) + " laps");
        }
        out.push_back(std::move(si));
    }
    return out;
}

bool in_closed_arc(const Angle& x, const Angle& lo, const Angle& hi) {
    if (x == lo || x == hi) return true;
    return x.strictlyInside(lo, hi);
}

}  // namespace

SeedLamination generate_seed_lamination(const PLCircleMap& map, const Seed& seed, FoldRule rule,
                                        size_t depth) {
    if (rule != FoldRule::SeedIntervals) throw std::invalid_argument("unknown fold rule");
    std::vector<SeedInterval> intervals = analyze_seed(map, seed);

    SeedLamination out;
    out.lamination.mapId = map.id;
    out.lamination.levels.push_back(seed.classes);
    std::sort(out.lamination.levels[0].begin(), out.lamination.levels[0].end());

    std::vector<Leaf> level = boundary_lamination(seed.classes);
    for (size_t k = 0; k < depth; ++k) {
        std::vector<Leaf> next;
        for (const Leaf& l : level) {
            for (const SeedInterval& si : intervals) {
                if (si.full) {
                    auto px = preimage_in(map, l.a, si.lo, si.hi);
                    auto py = preimage_in(map, l.b, si.lo, si.hi);
                    if (px && py && *px != *py) next.emplace_back(*px, *py);
                    continue;
                }
                bool aIn = in_closed_arc(l.a, si.arcLo, si.arcHi);
                bool bIn = in_closed_arc(l.b, si.arcLo, si.arcHi);
                if (aIn && bIn) {
                    for (const auto& lap : si.laps) {
                        auto px = preimage_in(map, l.a, lap.first, lap.second);
                        auto py = preimage_in(map, l.b, lap.first, lap.second);
                        if (px && py && *px != *py) next.emplace_back(*px, *py);
                    }
                } else if (aIn || bIn) {
                    const Angle& x = aIn ? l.a : l.b;
                    auto p0 = preimage_in(map, x, si.laps[0].first, si.laps[0].second);
                    auto p1 = preimage_in(map, x, si.laps[1].first, si.laps[1].second);
                    if (p0 && p1 && *p0 != *p1) next.emplace_back(*p0, *p1);
                }
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        std::vector<GapClass> lvl;
        lvl.reserve(next.size());
        for (const Leaf& l : next) lvl.push_back(GapClass({l.a, l.b}));
        CheckReport rep = check_pairwise_unlinked(lvl);
        if (!rep.ok)
            throw std::runtime_error("FoldRuleInconsistent: linked preimage leaves " +
                                     rep.violation->first.str() + " / " +
                                     rep.violation->second.str());
        out.lamination.levels.push_back(lvl);
        level = next;
    }
    return out;
}

}  // namespace lamina
