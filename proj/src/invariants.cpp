#include "knotfactor/invariants.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace knotfactor {

namespace {

constexpr size_t kStateLimit = 4'000'000;

// A frontier state: perfect matching on the open edge labels, stored as
// a flat sorted list of (min,max) pairs for use as a map key.
using StateKey = std::vector<int>;

StateKey key_of(const std::map<int, int>& partner) {
    StateKey k;
    for (const auto& [x, y] : partner)
        if (x < y) {
            k.push_back(x);
            k.push_back(y);
        }
    return k;
}

std::map<int, int> partner_of(const StateKey& k) {
    std::map<int, int> p;
    for (size_t i = 0; i + 1 < k.size(); i += 2) {
        p[k[i]] = k[i + 1];
        p[k[i + 1]] = k[i];
    }
    return p;
}

// Deterministic contraction order: repeatedly take the crossing sharing
// the most edges with the already-absorbed part (ties to the smallest
// index), falling back to the smallest unprocessed crossing when the
// absorbed part has no neighbour left.
std::vector<int> contraction_order(const KnotDiagram& d) {
    int n = d.crossing_count();
    std::vector<bool> done(n, false);
    std::set<int> open;
    std::vector<int> order;
    for (int step = 0; step < n; ++step) {
        int best = -1, best_overlap = -1;
        for (int c = 0; c < n; ++c) {
            if (done[c]) continue;
            int overlap = 0;
            for (int s = 0; s < 4; ++s)
                if (open.count(d.crossings[c].e[s])) ++overlap;
            if (overlap > best_overlap) {
                best = c;
                best_overlap = overlap;
            }
        }
        order.push_back(best);
        done[best] = true;
        for (int s = 0; s < 4; ++s) {
            int e = d.crossings[best].e[s];
            if (!open.insert(e).second) open.erase(e);
        }
    }
    return order;
}

}  // namespace

Laurent bracket_loop_factor() {
    return Laurent::monomial(2, -1) + Laurent::monomial(-2, -1);
}

Laurent kauffman_bracket(const KnotDiagram& d, int max_crossings) {
    validate(d);
    if (d.crossing_count() > max_crossings)
        fail(ErrorKind::TooLarge,
             "diagram has " + std::to_string(d.crossing_count()) +
                 " crossings, limit " + std::to_string(max_crossings));
    const Laurent delta = bracket_loop_factor();
    int circles = 0;
    for (const auto& comp : d.components)
        if (comp.empty()) ++circles;
    if (d.crossing_count() == 0) {
        if (circles == 0) return Laurent(1);
        Laurent out(1);
        for (int i = 1; i < circles; ++i) out *= delta;
        return out;
    }

    std::map<StateKey, Laurent> states;
    states[{}] = Laurent(1);
    std::set<int> open;

    for (int c : contraction_order(d)) {
        const auto& legs = d.crossings[c].e;
        // Which legs close an open edge, which pair up within this very
        // crossing, which become newly open.
        std::map<StateKey, Laurent> next;
        for (const auto& [key, coeff] : states) {
            std::map<int, int> m = partner_of(key);
            for (int smoothing = 0; smoothing < 2; ++smoothing) {
                // A-smoothing joins (slot0,slot1),(slot2,slot3);
                // B-smoothing joins (slot0,slot3),(slot1,slot2).
                int mate[4];
                if (smoothing == 0) {
                    mate[0] = 1; mate[1] = 0; mate[2] = 3; mate[3] = 2;
                } else {
                    mate[0] = 3; mate[3] = 0; mate[1] = 2; mate[2] = 1;
                }
                // Build the combined graph on frontier points (edge
                // labels) and slot points (encoded as -1-slot); every
                // point has at most one matching edge and at most one
                // fusion edge, so components are paths and cycles.
                auto slot_id = [](int s) { return -1 - s; };
                std::map<int, int> match_edge;  // matching partner
                std::map<int, int> fuse_edge;   // identification partner
                for (const auto& [x, y] : m) match_edge[x] = y;
                for (int s = 0; s < 4; ++s)
                    match_edge[slot_id(s)] = slot_id(mate[s]);
                for (int s = 0; s < 4; ++s) {
                    int e = legs[s];
                    int twin = -1;
                    for (int s2 = 0; s2 < 4; ++s2)
                        if (s2 != s && legs[s2] == e) twin = s2;
                    if (twin >= 0) {
                        fuse_edge[slot_id(s)] = slot_id(twin);
                    } else if (open.count(e)) {
                        fuse_edge[slot_id(s)] = e;
                        fuse_edge[e] = slot_id(s);
                    }
                }
                // Walk paths from the degree-1 points, then count the
                // leftover alternating cycles as closed loops.
                std::set<int> visited;
                std::map<int, int> result;
                int loops = 0;
                std::vector<int> points;
                for (const auto& [p, q] : match_edge) {
                    (void)q;
                    points.push_back(p);
                }
                for (int p : points) {
                    if (visited.count(p) || fuse_edge.count(p)) continue;
                    // p is a path endpoint: it has a matching edge only.
                    int cur = p;
                    bool via_match = true;
                    visited.insert(cur);
                    while (true) {
                        int nxt = via_match ? match_edge.at(cur)
                                            : fuse_edge.at(cur);
                        visited.insert(nxt);
                        if (via_match && !fuse_edge.count(nxt)) {
                            result[p] = nxt;
                            result[nxt] = p;
                            break;
                        }
                        cur = nxt;
                        via_match = !via_match;
                    }
                }
                for (int p : points) {
                    if (visited.count(p)) continue;
                    // alternating cycle: a closed loop
                    int cur = p;
                    bool via_match = true;
                    while (!visited.count(cur)) {
                        visited.insert(cur);
                        cur = via_match ? match_edge.at(cur)
                                        : fuse_edge.at(cur);
                        via_match = !via_match;
                    }
                    ++loops;
                }
                // Relabel surviving slot points by their edge labels.
                std::map<int, int> final_pairs;
                for (const auto& [x, y] : result) {
                    int xx = x < 0 ? legs[-1 - x] : x;
                    int yy = y < 0 ? legs[-1 - y] : y;
                    final_pairs[xx] = yy;
                }
                Laurent term =
                    coeff * Laurent::monomial(smoothing == 0 ? 1 : -1);
                for (int i = 0; i < loops; ++i) term *= delta;
                StateKey nk = key_of(final_pairs);
                auto it = next.find(nk);
                if (it == next.end())
                    next.emplace(std::move(nk), std::move(term));
                else
                    it->second += term;
            }
        }
        states = std::move(next);
        if (states.size() > kStateLimit)
            fail(ErrorKind::TooLarge, "bracket frontier state explosion");
        for (int s = 0; s < 4; ++s) {
            int e = legs[s];
            if (!open.insert(e).second) open.erase(e);
        }
    }

    Laurent total;
    for (const auto& [key, coeff] : states) {
        check(key.empty(), "bracket frontier not fully consumed");
        total += coeff;
    }
    for (int i = 0; i < circles; ++i) total *= delta;
    // Normalize so the unknot evaluates to 1: the accumulated sum counts
    // every loop including the last one.
    return total.divide_exact(delta);
}

Laurent jones(const KnotDiagram& d, int max_crossings) {
    Laurent br = kauffman_bracket(d, max_crossings);
    int w = writhe(d);
    // multiply by (-A^3)^(-w)
    Laurent f = br * Laurent::monomial(-3 * w, (w % 2 == 0) ? 1 : -1);
    Laurent out;
    for (const auto& [e, c] : f.terms()) {
        if (e % 4 != 0)
            throw std::domain_error(
                "jones exponent not divisible by 4 (half-integral link case)");
        out += Laurent::monomial(-e / 4, c);
    }
    return out;
}

}  // namespace knotfactor
