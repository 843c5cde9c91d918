#include "lamina/core.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace lamina {

GapClass::GapClass(std::vector<Angle> as) : angles(std::move(as)) {
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
    if (angles.size() < 2) throw std::invalid_argument("GapClass: needs >= 2 distinct angles");
}

bool GapClass::contains(const Angle& x) const {
    return std::binary_search(angles.begin(), angles.end(), x);
}

std::string GapClass::str() const {
    std::string s = "{";
    for (size_t i = 0; i < angles.size(); ++i) {
        if (i) s += ",";
        s += angles[i].str();
    }
    return s + "}";
}

LinkResult leaves_link(const Leaf& l1, const Leaf& l2) {
    if (l1.a == l2.a || l1.a == l2.b) return {LinkKind::SharedEndpoint, l1.a};
    if (l1.b == l2.a || l1.b == l2.b) return {LinkKind::SharedEndpoint, l1.b};
    bool inA = l2.a.strictlyInside(l1.a, l1.b);
    bool inB = l2.b.strictlyInside(l1.a, l1.b);
    if (inA != inB) return {LinkKind::Linked, std::nullopt};
    return {LinkKind::Unlinked, std::nullopt};
}

std::vector<GapClass> close_transitively(const std::vector<Leaf>& leaves) {
    std::map<Angle, size_t> index;
    std::vector<Angle> pts;
    auto id = [&](const Angle& x) {
        auto it = index.find(x);
        if (it != index.end()) return it->second;
        size_t k = pts.size();
        index.emplace(x, k);
        pts.push_back(x);
        return k;
    };
    std::vector<size_t> parent;
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    };
    for (const Leaf& l : leaves) { id(l.a); id(l.b); }
    parent.resize(pts.size());
    std::iota(parent.begin(), parent.end(), size_t{0});
    for (const Leaf& l : leaves) {
        size_t ra = find(index[l.a]), rb = find(index[l.b]);
        if (ra != rb) parent[ra] = rb;
    }
    std::map<size_t, std::vector<Angle>> groups;
    for (size_t i = 0; i < pts.size(); ++i) groups[find(i)].push_back(pts[i]);
    std::vector<GapClass> out;
    for (auto& [root, as] : groups)
        if (as.size() >= 2) out.emplace_back(std::move(as));
    std::sort(out.begin(), out.end());
    return out;
}

bool classes_unlinked(const GapClass& a, const GapClass& b) {
    // every angle of b must sit in the closure of one complementary arc of a
    const auto& as = a.angles;
    size_t n = as.size();
    int arc = -1;  // index of the open arc (as[i], as[i+1]) holding b's interior points
    for (const Angle& x : b.angles) {
        if (std::binary_search(as.begin(), as.end(), x)) continue;  // on the closure boundary
        // locate the arc containing x
        size_t i = std::upper_bound(as.begin(), as.end(), x) - as.begin();
        int here = int(i == 0 || i == n ? n - 1 : i - 1);
        if (arc == -1) arc = here;
        else if (arc != here) return false;
    }
    if (arc != -1) return true;
    // all of b lies on a's angle set; b is inside the closure of any arc only if
    // it has at most 2 points that are circularly consecutive in a
    if (b.size() > 2) return false;
    if (b.size() == 2) {
        // the two shared points must be consecutive in a
        auto it0 = std::lower_bound(as.begin(), as.end(), b.angles[0]);
        auto it1 = std::lower_bound(as.begin(), as.end(), b.angles[1]);
        size_t i0 = it0 - as.begin(), i1 = it1 - as.begin();
        size_t d = (i1 + n - i0) % n;
        return d == 1 || d == n - 1;
    }
    return true;
}

CheckReport check_pairwise_unlinked(const std::vector<GapClass>& classes) {
    std::vector<GapClass> sorted = classes;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = i + 1; j < sorted.size(); ++j) {
            if (sorted[i] == sorted[j]) continue;
            if (!classes_unlinked(sorted[i], sorted[j]) || !classes_unlinked(sorted[j], sorted[i]))
                return {false, std::make_pair(sorted[i], sorted[j])};
        }
    return {};
}

std::vector<Leaf> boundary_lamination(const std::vector<GapClass>& classes) {
    CheckReport rep = check_pairwise_unlinked(classes);
    if (!rep.ok)
        throw std::invalid_argument("boundary_lamination: linked classes " +
                                    rep.violation->first.str() + " and " +
                                    rep.violation->second.str());
    std::vector<Leaf> out;
    for (const GapClass& c : classes) {
        size_t n = c.angles.size();
        if (n == 2) {
            out.emplace_back(c.angles[0], c.angles[1]);
            continue;
        }
        for (size_t i = 0; i < n; ++i)
            out.emplace_back(c.angles[i], c.angles[(i + 1) % n]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<PerfectFit> find_perfect_fits(const std::vector<GapClass>& plus,
                                          const std::vector<GapClass>& minus) {
    std::map<Angle, std::vector<size_t>> minusIndex;
    for (size_t j = 0; j < minus.size(); ++j)
        for (const Angle& x : minus[j].angles) minusIndex[x].push_back(j);
    std::vector<PerfectFit> out;
    std::vector<GapClass> sortedPlus = plus;
    std::sort(sortedPlus.begin(), sortedPlus.end());
    for (const GapClass& p : sortedPlus)
        for (const Angle& x : p.angles) {
            auto it = minusIndex.find(x);
            if (it == minusIndex.end()) continue;
            for (size_t j : it->second) out.push_back({x, p, minus[j]});
        }
    return out;
}

std::vector<GapClass> FiniteLamination::classesUpTo(size_t maxDepth) const {
    std::vector<GapClass> out;
    for (size_t k = 0; k < levels.size() && k <= maxDepth; ++k)
        out.insert(out.end(), levels[k].begin(), levels[k].end());
    return out;
}

std::vector<Leaf> FiniteLamination::leavesUpTo(size_t maxDepth) const {
    std::vector<Leaf> out;
    for (size_t k = 0; k < levels.size() && k <= maxDepth; ++k)
        for (const GapClass& c : levels[k]) {
            size_t n = c.angles.size();
            if (n == 2) {
                out.emplace_back(c.angles[0], c.angles[1]);
            } else {
                for (size_t i = 0; i < n; ++i)
                    out.emplace_back(c.angles[i], c.angles[(i + 1) % n]);
            }
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void FiniteLamination::sortCanonically() {
    for (auto& lvl : levels) std::sort(lvl.begin(), lvl.end());
}

std::vector<Leaf> rainbow_search(const Angle& p, const FiniteLamination& L, size_t depth) {
    std::vector<Leaf> leaves = L.leavesUpTo(depth);
    // for each leaf not containing p, the ccw arc (lo, hi) holding p and its length
    struct Span { Leaf leaf; Angle lo, hi; Rational len; };
    std::vector<Span> spans;
    for (const Leaf& l : leaves) {
        if (l.a == p || l.b == p) continue;
        if (p.strictlyInside(l.a, l.b))
            spans.push_back({l, l.a, l.b, l.a.ccwTo(l.b)});
        else
            spans.push_back({l, l.b, l.a, l.b.ccwTo(l.a)});
    }
    std::sort(spans.begin(), spans.end(), [](const Span& x, const Span& y) {
        if (x.len != y.len) return y.len < x.len;  // widest first
        return x.leaf < y.leaf;
    });
    // longest strictly-nested chain (quadratic; inputs are small)
    size_t n = spans.size();
    std::vector<size_t> best(n, 1), pred(n, n);
    auto nested = [&](size_t outer, size_t inner) {
        // inner arc strictly inside outer arc
        const Span& o = spans[outer];
        const Span& i = spans[inner];
        if (!(i.len < o.len)) return false;
        Rational lo = o.lo.ccwTo(i.lo);
        Rational hi = o.lo.ccwTo(i.hi);
        return Rational(0) < lo && lo < hi && hi < o.len;
    };
    size_t argmax = n;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < i; ++j)
            if (nested(j, i) && best[j] + 1 > best[i]) { best[i] = best[j] + 1; pred[i] = j; }
        if (argmax == n || best[i] > best[argmax]) argmax = i;
    }
    if (argmax == n || best[argmax] < 2) return {};
    std::vector<Leaf> chain;
    for (size_t i = argmax; i != n; i = pred[i]) chain.push_back(spans[i].leaf);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

std::vector<IsolatedSideFlag> isolated_side_report(const FiniteLamination& L, size_t depth,
                                                   const Rational& eps) {
    std::vector<Leaf> leaves = L.leavesUpTo(depth);
    std::vector<IsolatedSideFlag> out;
    for (const Leaf& l : leaves) {
        IsolatedSideFlag f{l, false, false};
        for (const Leaf& m : leaves) {
            if (m == l) continue;
            // a nearby leaf approaches l on the side where both its endpoints lie
            Rational da = l.a.circularDistance(m.a) < l.a.circularDistance(m.b)
                              ? l.a.circularDistance(m.a)
                              : l.a.circularDistance(m.b);
            Rational db = l.b.circularDistance(m.a) < l.b.circularDistance(m.b)
                              ? l.b.circularDistance(m.a)
                              : l.b.circularDistance(m.b);
            if (!(da < eps) || !(db < eps)) continue;
            bool inside = m.a.strictlyInside(l.a, l.b) || m.b.strictlyInside(l.a, l.b);
            if (inside) f.leftApproached = true;
            else f.rightApproached = true;
        }
        if (!f.leftApproached || !f.rightApproached) out.push_back(f);
    }
    return out;
}

}  // namespace lamina
