#include "lamina/poly.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lamina {

MajorValidation validate_major(int degree, const std::vector<GapClass>& classes) {
    MajorValidation v;
    if (degree < 2) {
        v.error = MajorError::BadDegree;
        v.message = "degree must be >= 2";
        return v;
    }
    size_t multiplicity = 0;
    for (const GapClass& c : classes) {
        for (size_t i = 0; i < c.angles.size(); ++i)
            for (size_t j = i + 1; j < c.angles.size(); ++j) {
                Rational diff = (c.angles[i].value() - c.angles[j].value()) * Rational(degree);
                if (diff.frac() != Rational(0)) {
                    v.error = MajorError::NotCritical;
                    v.message = "class " + c.str() + ": " + std::to_string(degree) + "*(" +
                                c.angles[i].str() + " - " + c.angles[j].str() +
                                ") is not 0 mod 1";
                    return v;
                }
            }
        multiplicity += c.size() - 1;
    }
    if (multiplicity != size_t(degree - 1)) {
        v.error = MajorError::WrongMultiplicity;
        v.message = "total multiplicity " + std::to_string(multiplicity) + " != degree-1 = " +
                    std::to_string(degree - 1);
        return v;
    }
    std::set<Angle> seen;
    for (const GapClass& c : classes)
        for (const Angle& x : c.angles)
            if (!seen.insert(x).second) {
                v.error = MajorError::NotDisjoint;
                v.message = "classes share the angle " + x.str();
                return v;
            }
    CheckReport rep = check_pairwise_unlinked(classes);
    if (!rep.ok) {
        v.error = MajorError::Linked;
        v.message = "classes " + rep.violation->first.str() + " and " +
                    rep.violation->second.str() + " are linked";
        return v;
    }
    v.major = Major{degree, classes};
    return v;
}

OrbitSummary forward_orbit(const Angle& x, int degree, size_t maxSteps) {
    OrbitSummary s;
    std::map<Angle, size_t> seen;
    Angle cur = x;
    for (size_t step = 0; step <= maxSteps; ++step) {
        auto it = seen.find(cur);
        if (it != seen.end()) {
            s.preperiod = it->second;
            s.period = step - it->second;
            return s;
        }
        seen.emplace(cur, step);
        s.points.push_back(cur);
        cur = cur.times(degree);
    }
    throw std::runtime_error("forward_orbit: no repeat within maxSteps");
}

namespace {

// The quotient of the circle by the major is a tree of d circles, each of
// perimeter 1/d. A circle is a cyclic list of complementary arcs; the arc ending
// at endpoint e continues into the arc starting at e's predecessor within its class.
struct CactusCircle {
    std::vector<std::pair<Angle, Angle>> arcs;  // (start, end), ccw
    std::vector<Rational> cumLen;               // cumulative arc length, cumLen[0] = 0
    Rational total;                             // = 1/d
    Angle imageOfStart;                         // d * arcs[0].first
};

struct Cactus {
    std::vector<CactusCircle> circles;
    int degree;
};

Cactus build_cactus(const Major& major) {
    std::vector<Angle> endpoints;
    std::map<Angle, const GapClass*> classOf;
    for (const GapClass& c : major.criticalClasses)
        for (const Angle& x : c.angles) {
            endpoints.push_back(x);
            classOf[x] = &c;
        }
    std::sort(endpoints.begin(), endpoints.end());
    size_t n = endpoints.size();

    // arcs[i] runs ccw from endpoints[i] to endpoints[(i+1)%n]
    std::map<Angle, size_t> arcStartingAt;
    for (size_t i = 0; i < n; ++i) arcStartingAt[endpoints[i]] = i;

    auto predInClass = [&](const Angle& e) {
        const GapClass* c = classOf.at(e);
        auto it = std::lower_bound(c->angles.begin(), c->angles.end(), e);
        size_t i = it - c->angles.begin();
        return c->angles[(i + c->angles.size() - 1) % c->angles.size()];
    };

    Cactus cactus;
    cactus.degree = major.degree;
    std::vector<bool> used(n, false);
    for (size_t start = 0; start < n; ++start) {
        if (used[start]) continue;
        CactusCircle circ;
        size_t i = start;
        do {
            used[i] = true;
            Angle a = endpoints[i];
            Angle b = endpoints[(i + 1) % n];
            circ.arcs.emplace_back(a, b);
            i = arcStartingAt.at(predInClass(b));
        } while (i != start);
        // canonical start: arc whose start angle is least
        size_t lo = 0;
        for (size_t k = 1; k < circ.arcs.size(); ++k)
            if (circ.arcs[k].first < circ.arcs[lo].first) lo = k;
        std::rotate(circ.arcs.begin(), circ.arcs.begin() + lo, circ.arcs.end());
        circ.cumLen.assign(circ.arcs.size() + 1, Rational(0));
        for (size_t k = 0; k < circ.arcs.size(); ++k)
            circ.cumLen[k + 1] = circ.cumLen[k] + circ.arcs[k].first.ccwTo(circ.arcs[k].second);
        circ.total = circ.cumLen.back();
        circ.imageOfStart = circ.arcs[0].first.times(major.degree);
        cactus.circles.push_back(std::move(circ));
    }
    if (cactus.circles.size() != size_t(major.degree))
        throw std::logic_error("cactus: expected d circles");
    for (const CactusCircle& c : cactus.circles)
        if (!(c.total * Rational(major.degree) == Rational(1)))
            throw std::logic_error("cactus: circle perimeter != 1/d");
    return cactus;
}

// Preimage of x within the circle; with half-open arcs [start, end) a node hit
// resolves to the start of the outgoing arc (the leftmost rule). nodeHit is set
// when the preimage lands exactly on a cactus node.
Angle preimage_in_circle(const CactusCircle& circ, const Angle& x, int degree, bool* nodeHit) {
    Rational s = circ.imageOfStart.ccwTo(x) / Rational(degree);  // in [0, 1/d)
    size_t lo = 0, hi = circ.arcs.size();
    while (lo + 1 < hi) {
        size_t mid = (lo + hi) / 2;
        if (circ.cumLen[mid] <= s) lo = mid;
        else hi = mid;
    }
    if (nodeHit && s == circ.cumLen[lo]) *nodeHit = true;
    return circ.arcs[lo].first.plus(s - circ.cumLen[lo]);
}

}  // namespace

InvariantLamination generate_invariant_lamination(const Major& major, size_t depth) {
    Cactus cactus = build_cactus(major);

    InvariantLamination out;
    out.lamination.degree = major.degree;
    out.lamination.levels.push_back(major.criticalClasses);
    std::sort(out.lamination.levels[0].begin(), out.lamination.levels[0].end());

    // a-priori ambiguity test: some endpoint of the major is an iterated image of one
    {
        std::set<Angle> eps;
        for (const GapClass& c : major.criticalClasses)
            for (const Angle& x : c.angles) eps.insert(x);
        for (const Angle& x : eps) {
            Angle cur = x;
            for (int step = 0; step < 256 && !out.ambiguityWarning; ++step) {
                cur = cur.times(major.degree);
                if (eps.count(cur)) out.ambiguityWarning = true;
                if (cur == x) break;
            }
        }
    }

    for (size_t k = 0; k < depth; ++k) {
        std::vector<GapClass> next;
        for (const GapClass& cls : out.lamination.levels.back()) {
            for (const CactusCircle& circ : cactus.circles) {
                std::vector<Angle> pre;
                pre.reserve(cls.size());
                bool nodeHit = false;
                for (const Angle& x : cls.angles)
                    pre.push_back(preimage_in_circle(circ, x, major.degree, &nodeHit));
                if (nodeHit) out.ambiguityWarning = true;
                next.emplace_back(std::move(pre));
            }
        }
        std::sort(next.begin(), next.end());
        out.lamination.levels.push_back(std::move(next));
    }
    return out;
}

}  // namespace lamina
