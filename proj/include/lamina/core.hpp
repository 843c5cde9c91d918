#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamina/rational.hpp"

namespace lamina {

// Unordered pair of distinct circle points, stored with a < b.
struct Leaf {
    Angle a, b;

    Leaf(Angle x, Angle y) {
        if (x == y) throw std::invalid_argument("Leaf: endpoints must be distinct");
        if (y < x) std::swap(x, y);
        a = x; b = y;
    }
    // arc length of the shorter side
    Rational length() const {
        Rational d = a.ccwTo(b);
        Rational e = Rational(1) - d;
        return d < e ? d : e;
    }
    friend bool operator==(const Leaf& l, const Leaf& r) { return l.a == r.a && l.b == r.b; }
    friend bool operator<(const Leaf& l, const Leaf& r) {
        if (l.a != r.a) return l.a < r.a;
        return l.b < r.b;
    }
    std::string str() const { return "{" + a.str() + "," + b.str() + "}"; }
};

// Sorted set of >= 2 distinct angles (an equivalence class, or a critical leaf).
struct GapClass {
    std::vector<Angle> angles;  // sorted ascending, no duplicates

    GapClass() = default;
    explicit GapClass(std::vector<Angle> as);

    size_t size() const { return angles.size(); }
    bool contains(const Angle& x) const;
    friend bool operator==(const GapClass& l, const GapClass& r) { return l.angles == r.angles; }
    friend bool operator<(const GapClass& l, const GapClass& r) { return l.angles < r.angles; }
    std::string str() const;
};

enum class LinkKind { Linked, Unlinked, SharedEndpoint };

struct LinkResult {
    LinkKind kind;
    std::optional<Angle> shared;  // set iff kind == SharedEndpoint
};

// Linked iff exactly one endpoint of l2 lies strictly inside the open arc (l1.a, l1.b);
// a shared endpoint is reported separately (it is the perfect-fit signal).
LinkResult leaves_link(const Leaf& l1, const Leaf& l2);

// Union-find closure of a set of leaves into equivalence classes (>= 2 angles each).
std::vector<GapClass> close_transitively(const std::vector<Leaf>& leaves);

struct CheckReport {
    bool ok = true;
    std::optional<std::pair<GapClass, GapClass>> violation;
};

// ok iff the convex hulls of all classes are pairwise non-crossing. Classes are
// scanned in lexicographic order; the first violating pair is reported.
CheckReport check_pairwise_unlinked(const std::vector<GapClass>& classes);

// true iff every angle of b lies in the closure of a single complementary arc of a
bool classes_unlinked(const GapClass& a, const GapClass& b);

// Hull sides of each class: leaves joining consecutive angles in circular order.
// A 2-element class contributes its single leaf. Throws on linked input.
std::vector<Leaf> boundary_lamination(const std::vector<GapClass>& classes);

struct PerfectFit {
    Angle angle;
    GapClass plusClass, minusClass;
};

// Every angle that appears in a class on both sides, with witnessing classes.
std::vector<PerfectFit> find_perfect_fits(const std::vector<GapClass>& plus,
                                          const std::vector<GapClass>& minus);

// Leveled finite approximation of an invariant lamination. Level k classes pull
// back level k-1 classes under the associated circle map.
struct FiniteLamination {
    std::vector<std::vector<GapClass>> levels;
    int degree = 0;          // 0 when the map is not x -> d x
    std::string mapId;       // set for origami maps

    size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
    std::vector<GapClass> classesUpTo(size_t maxDepth) const;
    std::vector<Leaf> leavesUpTo(size_t maxDepth) const;
    void sortCanonically();
};

// Maximal nested chain of boundary leaves strictly separating p, outermost first.
// A single straddling leaf is not a chain; the empty list is returned then.
std::vector<Leaf> rainbow_search(const Angle& p, const FiniteLamination& L, size_t depth);

struct IsolatedSideFlag {
    Leaf leaf;
    bool leftApproached = false;
    bool rightApproached = false;
};

// Advisory finite-depth surrogate for the "no isolated sides" hypothesis: a
// boundary leaf is flagged if no distinct leaf lies within angular distance eps
// on a given side. Finite data cannot certify the limit property.
std::vector<IsolatedSideFlag> isolated_side_report(const FiniteLamination& L, size_t depth,
                                                   const Rational& eps);

}  // namespace lamina
