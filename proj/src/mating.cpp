#include "lamina/mating.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace lamina {

std::vector<RayClass> ray_classes(const FiniteLamination& plus, const FiniteLamination& minus,
                                  size_t depth) {
    std::vector<std::pair<Side, Leaf>> nodes;
    for (const Leaf& l : plus.leavesUpTo(depth)) nodes.push_back({Side::Plus, l});
    for (const Leaf& l : minus.leavesUpTo(depth)) nodes.push_back({Side::Minus, l});

    // adjacency: opposite sides sharing an endpoint (chains alternate sides)
    std::map<Angle, std::vector<size_t>> byAngle;
    for (size_t i = 0; i < nodes.size(); ++i) {
        byAngle[nodes[i].second.a].push_back(i);
        byAngle[nodes[i].second.b].push_back(i);
    }
    std::vector<std::vector<size_t>> adj(nodes.size());
    for (const auto& [angle, ids] : byAngle)
        for (size_t i : ids)
            for (size_t j : ids)
                if (i != j && nodes[i].first != nodes[j].first) adj[i].push_back(j);

    std::vector<int> comp(nodes.size(), -1);
    std::vector<RayClass> out;
    auto bfsFarthest = [&](size_t src, const std::vector<size_t>& members) {
        std::map<size_t, size_t> dist;
        dist[src] = 0;
        std::queue<size_t> q;
        q.push(src);
        size_t far = src, farDist = 0;
        while (!q.empty()) {
            size_t u = q.front();
            q.pop();
            for (size_t v : adj[u])
                if (!dist.count(v)) {
                    dist[v] = dist[u] + 1;
                    if (dist[v] > farDist) { farDist = dist[v]; far = v; }
                    q.push(v);
                }
        }
        (void)members;
        return std::make_pair(far, farDist);
    };

    for (size_t s = 0; s < nodes.size(); ++s) {
        if (comp[s] != -1) continue;
        RayClass rc;
        std::vector<size_t> members;
        std::queue<size_t> q;
        q.push(s);
        comp[s] = int(out.size());
        while (!q.empty()) {
            size_t u = q.front();
            q.pop();
            members.push_back(u);
            for (size_t v : adj[u])
                if (comp[v] == -1) {
                    comp[v] = comp[s];
                    q.push(v);
                }
        }
        std::sort(members.begin(), members.end());
        for (size_t m : members) rc.leaves.push_back(nodes[m]);
        // graph diameter: double BFS (components here are trees or near-trees)
        auto [far, d1] = bfsFarthest(members.front(), members);
        auto [far2, d2] = bfsFarthest(far, members);
        (void)far2;
        rc.diameter = std::max(d1, d2);
        out.push_back(std::move(rc));
    }
    return out;
}

FitCertificate no_perfect_fits_certificate(const FiniteLamination& plus,
                                           const FiniteLamination& minus, size_t depth) {
    std::vector<Angle> ep, em;
    for (const GapClass& c : plus.classesUpTo(depth))
        ep.insert(ep.end(), c.angles.begin(), c.angles.end());
    for (const GapClass& c : minus.classesUpTo(depth))
        em.insert(em.end(), c.angles.begin(), c.angles.end());
    std::sort(ep.begin(), ep.end());
    ep.erase(std::unique(ep.begin(), ep.end()), ep.end());
    std::sort(em.begin(), em.end());
    em.erase(std::unique(em.begin(), em.end()), em.end());

    FitCertificate cert;
    if (ep.empty() || em.empty()) return cert;

    // shared endpoint?
    {
        auto fits = std::vector<Angle>{};
        std::set_intersection(ep.begin(), ep.end(), em.begin(), em.end(),
                              std::back_inserter(fits));
        if (!fits.empty()) {
            cert.fit = fits.front();
            return cert;
        }
    }
    // exact min circular gap via a sorted sweep over the merged endpoint list
    struct Tagged { Angle x; bool isPlus; };
    std::vector<Tagged> all;
    for (const Angle& x : ep) all.push_back({x, true});
    for (const Angle& x : em) all.push_back({x, false});
    std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) { return a.x < b.x; });
    std::optional<Rational> best;
    size_t n = all.size();
    // nearest opposite-side neighbor is not necessarily adjacent in the merged order,
    // but the minimum over all opposite-side pairs is attained between some pair with
    // no opposite-side point strictly between them; scanning each point's next few
    // neighbors of the other side covers it exactly.
    for (size_t i = 0; i < n; ++i) {
        for (size_t step = 1; step < n; ++step) {
            const Tagged& other = all[(i + step) % n];
            if (other.isPlus == all[i].isPlus) continue;
            Rational d = all[i].x.circularDistance(other.x);
            if (!best || d < *best) best = d;
            break;  // first opposite-side point ccw; closer ones cannot be skipped
        }
    }
    cert.minGap = best;
    return cert;
}

}  // namespace lamina
