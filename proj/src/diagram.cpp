#include "knotfactor/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace knotfactor {

namespace {

using OrderedJson = nlohmann::ordered_json;

// Edge label -> its (exactly two) ends.
std::map<int, std::vector<EdgeEnd>> collect_ends(
    const std::vector<Crossing>& crossings) {
    std::map<int, std::vector<EdgeEnd>> ends;
    for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
        for (int s = 0; s < 4; ++s) {
            int label = crossings[c].e[s];
            if (label < 0)
                fail(ErrorKind::InvalidIncidence,
                     "negative edge label at crossing " + std::to_string(c));
            ends[label].push_back(EdgeEnd{c, s});
        }
    }
    for (const auto& [label, occ] : ends) {
        if (occ.size() != 2)
            fail(ErrorKind::InvalidIncidence,
                 "edge label " + std::to_string(label) + " occurs " +
                     std::to_string(occ.size()) + " times, expected 2");
    }
    return ends;
}

// Walks one prescribed component cycle, filling tail/head assignments.
// Returns false when the cycle cannot be realized as a strand walk.
bool walk_cycle(const std::vector<Crossing>& crossings,
                const std::map<int, std::vector<EdgeEnd>>& ends,
                const std::vector<int>& cycle, EdgeEnd first_head,
                std::map<int, EdgeEnd>* tail, std::map<int, EdgeEnd>* head) {
    std::map<int, EdgeEnd> local_tail, local_head;
    EdgeEnd h = first_head;
    int m = static_cast<int>(cycle.size());
    for (int k = 0; k < m; ++k) {
        int e = cycle[k];
        int enext = cycle[(k + 1) % m];
        if (crossings[h.crossing].e[h.slot] != e) return false;
        if (local_head.count(e)) return false;
        local_head[e] = h;
        EdgeEnd out{h.crossing, (h.slot + 2) % 4};
        if (crossings[out.crossing].e[out.slot] != enext) return false;
        if (local_tail.count(enext)) return false;
        local_tail[enext] = out;
        // The next head is the other end of enext.
        const auto& occ = ends.at(enext);
        EdgeEnd other = (occ[0] == out) ? occ[1] : occ[0];
        if (occ[0] == occ[1]) return false;
        h = other;
    }
    if (!(h == first_head)) return false;
    // Both traversal directions of a cycle can be consistent walks (a
    // one-crossing summand's two edges read the same either way), so
    // commit only the direction obeying the under-strand convention.
    for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
        auto hit = local_head.find(crossings[c].e[0]);
        if (hit != local_head.end() && !(hit->second == EdgeEnd{c, 0}))
            return false;
        auto tit = local_tail.find(crossings[c].e[2]);
        if (tit != local_tail.end() && !(tit->second == EdgeEnd{c, 2}))
            return false;
    }
    for (const auto& [e, t] : local_tail) {
        if (tail->count(e)) return false;
        (*tail)[e] = t;
    }
    for (const auto& [e, hd] : local_head) {
        if (head->count(e)) return false;
        (*head)[e] = hd;
    }
    return true;
}

// Sphere-embeddability: traces the complementary regions from the
// rotation system and checks V - E + F = 2 on each connected piece of
// the 4-valent graph (each piece sits in its own ball of the distant
// arrangement, so each must satisfy the sphere Euler count on its own).
void check_embeddable(const std::vector<Crossing>& crossings,
                      const std::map<int, std::vector<EdgeEnd>>& ends) {
    int n = static_cast<int>(crossings.size());
    if (n == 0) return;
    // union-find over crossings
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [label, occ] : ends) {
        int a = find(occ[0].crossing), b = find(occ[1].crossing);
        if (a != b) parent[a] = b;
    }
    // face tracing: phi(end) = rotate(other end of same edge)
    std::set<EdgeEnd> seen;
    std::map<int, int> faces_of, verts_of, edges_of;
    for (int c = 0; c < n; ++c) verts_of[find(c)] += 1;
    for (const auto& [label, occ] : ends) edges_of[find(occ[0].crossing)] += 1;
    for (int c = 0; c < n; ++c) {
        for (int s = 0; s < 4; ++s) {
            EdgeEnd start{c, s};
            if (seen.count(start)) continue;
            EdgeEnd cur = start;
            do {
                seen.insert(cur);
                int label = crossings[cur.crossing].e[cur.slot];
                const auto& occ = ends.at(label);
                EdgeEnd other = (occ[0] == cur) ? occ[1] : occ[0];
                cur = EdgeEnd{other.crossing, (other.slot + 1) % 4};
            } while (!(cur == start));
            faces_of[find(c)] += 1;
        }
    }
    for (const auto& [root, v] : verts_of) {
        int e = edges_of[root];
        int f = faces_of[root];
        if (v - e + f != 2)
            fail(ErrorKind::InvalidIncidence,
                 "crossing data is not realizable in the plane (V-E+F = " +
                     std::to_string(v - e + f) + " on a connected piece)");
    }
}

std::string join_names(const std::vector<KnotDiagram>& parts,
                       const std::string& sep) {
    std::string out;
    for (const auto& p : parts) {
        if (p.name.empty()) return "";
        if (!out.empty()) out += sep;
        out += p.name;
    }
    return out;
}

}  // namespace

void validate(const KnotDiagram& d) {
    auto ends = collect_ends(d.crossings);
    // Components must partition the labels.
    std::set<int> covered;
    for (const auto& cycle : d.components) {
        for (int e : cycle) {
            if (!ends.count(e))
                fail(ErrorKind::InvalidIncidence,
                     "component edge " + std::to_string(e) +
                         " missing from crossings");
            if (!covered.insert(e).second)
                fail(ErrorKind::InvalidIncidence,
                     "edge " + std::to_string(e) +
                         " listed in more than one component position");
        }
    }
    if (covered.size() != ends.size())
        fail(ErrorKind::InvalidIncidence,
             "components do not cover all edges");
    // Walk every cycle; the starting head has two candidate ends.
    std::map<int, EdgeEnd> tail, head;
    for (const auto& cycle : d.components) {
        if (cycle.empty()) continue;
        const auto& occ = ends.at(cycle[0]);
        if (!walk_cycle(d.crossings, ends, cycle, occ[0], &tail, &head) &&
            !walk_cycle(d.crossings, ends, cycle, occ[1], &tail, &head))
            fail(ErrorKind::InvalidIncidence,
                 "component cycle is not a strand walk");
    }
    // Under-strand convention: slot 0 is an entry, slot 2 an exit.
    for (int c = 0; c < d.crossing_count(); ++c) {
        int in_label = d.crossings[c].e[0];
        int out_label = d.crossings[c].e[2];
        if (!(head.at(in_label) == EdgeEnd{c, 0}))
            fail(ErrorKind::InvalidIncidence,
                 "strand does not enter crossing " + std::to_string(c) +
                     " at the incoming under slot");
        if (!(tail.at(out_label) == EdgeEnd{c, 2}))
            fail(ErrorKind::InvalidIncidence,
                 "strand does not leave crossing " + std::to_string(c) +
                     " at the outgoing under slot");
    }
    check_embeddable(d.crossings, ends);
}

void validate(const MarkedCompositeDiagram& m) {
    validate(m.diagram);
    if (m.summands.empty())
        fail(ErrorKind::InvalidIncidence, "marked diagram without summands");
    // The composite must be a knot: one component and no round circles,
    // otherwise arc families along the strand are not defined.
    if (m.diagram.component_count() != 1)
        fail(ErrorKind::MultiComponentSummand,
             "marked diagram must have exactly one component");
    if (m.diagram.components[0].empty())
        fail(ErrorKind::TrivialSummand,
             "marked diagram must not be a round circle");
    auto ends = collect_ends(m.diagram.crossings);
    int expected_begin = 0;
    for (size_t i = 0; i < m.summands.size(); ++i) {
        const auto& s = m.summands[i];
        if (s.crossing_begin != expected_begin || s.crossing_end < s.crossing_begin)
            fail(ErrorKind::InvalidIncidence,
                 "summand spans must be contiguous and ordered");
        if (s.crossing_end == s.crossing_begin)
            fail(ErrorKind::TrivialSummand,
                 "summand " + std::to_string(i) + " spans no crossings");
        expected_begin = s.crossing_end;
        if (!ends.count(s.entry_edge) || !ends.count(s.exit_edge))
            fail(ErrorKind::InvalidIncidence,
                 "summand marker references a missing edge");
    }
    if (expected_begin != m.diagram.crossing_count())
        fail(ErrorKind::InvalidIncidence,
             "summand spans do not cover all crossings");
    // Exit of summand i must be the entry of summand i+1 (cyclically).
    for (size_t i = 0; i < m.summands.size(); ++i) {
        const auto& next = m.summands[(i + 1) % m.summands.size()];
        if (m.summands[i].exit_edge != next.entry_edge)
            fail(ErrorKind::InvalidIncidence,
                 "summand markers do not chain entry/exit edges");
    }
}

DiagramAnalysis analyze(const KnotDiagram& d) {
    auto ends = collect_ends(d.crossings);
    DiagramAnalysis a;
    a.entry.assign(d.crossing_count(), {false, false, false, false});
    // Recover tails/heads from the stored component orientations.
    for (int ci = 0; ci < d.component_count(); ++ci) {
        const auto& cycle = d.components[ci];
        if (cycle.empty()) continue;
        const auto& occ = ends.at(cycle[0]);
        std::map<int, EdgeEnd> tail, head;
        bool ok = walk_cycle(d.crossings, ends, cycle, occ[0], &tail, &head) ||
                  walk_cycle(d.crossings, ends, cycle, occ[1], &tail, &head);
        if (!ok)
            fail(ErrorKind::InvalidIncidence,
                 "component cycle is not a strand walk");
        for (const auto& [e, t] : tail) a.edge_tail[e] = t;
        for (const auto& [e, h] : head) {
            a.edge_head[e] = h;
            a.entry[h.crossing][h.slot] = true;
        }
        for (int e : cycle) a.edge_component[e] = ci;
    }
    a.sign.resize(d.crossing_count());
    for (int c = 0; c < d.crossing_count(); ++c)
        a.sign[c] = a.entry[c][3] ? 1 : -1;
    // Region tracing.  phi(end) = rotate(other end); the orbit step
    // through an edge claims the corner at the arrival crossing between
    // the arrival slot and the next slot counterclockwise.
    a.corner_region.assign(d.crossing_count(), {-1, -1, -1, -1});
    std::set<EdgeEnd> seen;
    for (int c = 0; c < d.crossing_count(); ++c) {
        for (int s = 0; s < 4; ++s) {
            EdgeEnd start{c, s};
            if (seen.count(start)) continue;
            int region_id = static_cast<int>(a.regions.size());
            std::vector<DiagramAnalysis::Corner> corners;
            EdgeEnd cur = start;
            do {
                seen.insert(cur);
                int label = d.crossings[cur.crossing].e[cur.slot];
                const auto& occ = ends.at(label);
                EdgeEnd other = (occ[0] == cur) ? occ[1] : occ[0];
                corners.push_back({other.crossing, other.slot});
                a.corner_region[other.crossing][other.slot] = region_id;
                cur = EdgeEnd{other.crossing, (other.slot + 1) % 4};
            } while (!(cur == start));
            a.regions.push_back(std::move(corners));
        }
    }
    // Flanking regions per edge: traveling tail -> head, the region right
    // of the edge is claimed at the head corner, the left one at the tail
    // corner (by the counterclockwise slot convention).
    for (const auto& [label, occ] : ends) {
        (void)occ;
        const EdgeEnd& t = a.edge_tail.at(label);
        const EdgeEnd& h = a.edge_head.at(label);
        int right = a.corner_region[h.crossing][h.slot];
        int left = a.corner_region[t.crossing][t.slot];
        a.edge_regions[label] = {left, right};
    }
    return a;
}

KnotDiagram assemble_diagram(std::vector<Crossing> crossings,
                             int round_circles, std::string name) {
    auto ends = collect_ends(crossings);
    int n = static_cast<int>(crossings.size());
    // Infer strand directions: 2-coloring of ends where opposite slots
    // and the two ends of an edge get opposite entry flags.  Under slots
    // are forced; components that never pass under get a deterministic
    // choice at their smallest end.
    std::map<EdgeEnd, int> entry;  // -1 unknown, 0 exit, 1 entry
    auto propagate = [&](EdgeEnd seed, int value) {
        std::vector<std::pair<EdgeEnd, int>> stack{{seed, value}};
        while (!stack.empty()) {
            auto [o, v] = stack.back();
            stack.pop_back();
            auto it = entry.find(o);
            if (it != entry.end()) {
                if (it->second != v)
                    fail(ErrorKind::InvalidIncidence,
                         "inconsistent strand orientation");
                continue;
            }
            entry[o] = v;
            stack.push_back({EdgeEnd{o.crossing, (o.slot + 2) % 4}, 1 - v});
            int label = crossings[o.crossing].e[o.slot];
            const auto& occ = ends.at(label);
            EdgeEnd other = (occ[0] == o) ? occ[1] : occ[0];
            stack.push_back({other, 1 - v});
        }
    };
    for (int c = 0; c < n; ++c) propagate(EdgeEnd{c, 0}, 1);
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s)
            if (!entry.count(EdgeEnd{c, s})) propagate(EdgeEnd{c, s}, 1);
    // Walk components in increasing order of smallest edge label.
    std::set<int> visited;
    std::vector<std::vector<int>> components;
    for (const auto& [label, occ] : ends) {
        if (visited.count(label)) continue;
        std::vector<int> cycle;
        EdgeEnd h = entry.at(occ[0]) == 1 ? occ[0] : occ[1];
        int e = label;
        do {
            cycle.push_back(e);
            visited.insert(e);
            EdgeEnd out{h.crossing, (h.slot + 2) % 4};
            e = crossings[out.crossing].e[out.slot];
            const auto& occ2 = ends.at(e);
            h = (occ2[0] == out) ? occ2[1] : occ2[0];
        } while (e != label);
        components.push_back(std::move(cycle));
    }
    for (int i = 0; i < round_circles; ++i) components.emplace_back();
    KnotDiagram d{std::move(crossings), std::move(components), std::move(name)};
    validate(d);
    return d;
}

KnotDiagram parse_pd(const std::string& text) {
    std::vector<Crossing> crossings;
    int circles = 0;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        if (token == "O") {
            ++circles;
            continue;
        }
        if (token.size() < 4 || token.substr(0, 2) != "X(" ||
            token.back() != ')')
            fail(ErrorKind::MalformedToken, "bad token '" + token + "'");
        std::string body = token.substr(2, token.size() - 3);
        std::array<int, 4> vals{};
        int idx = 0;
        size_t pos = 0;
        while (idx < 4) {
            size_t comma = body.find(',', pos);
            std::string piece = comma == std::string::npos
                                    ? body.substr(pos)
                                    : body.substr(pos, comma - pos);
            if (piece.empty() ||
                !std::all_of(piece.begin(), piece.end(),
                             [](unsigned char ch) { return std::isdigit(ch); }))
                fail(ErrorKind::MalformedToken, "bad token '" + token + "'");
            vals[idx++] = std::stoi(piece);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (idx != 4 || body.find(',', pos) != std::string::npos)
            fail(ErrorKind::MalformedToken, "bad token '" + token + "'");
        crossings.push_back(Crossing{vals});
    }
    return assemble_diagram(std::move(crossings), circles);
}

std::string serialize_pd(const KnotDiagram& d) {
    std::string out;
    for (const auto& cr : d.crossings) {
        if (!out.empty()) out += " ";
        out += "X(" + std::to_string(cr.e[0]) + "," + std::to_string(cr.e[1]) +
               "," + std::to_string(cr.e[2]) + "," + std::to_string(cr.e[3]) +
               ")";
    }
    for (const auto& comp : d.components) {
        if (!comp.empty()) continue;
        if (!out.empty()) out += " ";
        out += "O";
    }
    return out;
}

KnotDiagram canonical_form(const KnotDiagram& d, std::map<int, int>* label_map) {
    DiagramAnalysis a = analyze(d);
    // Order components by the smallest end their edges leave from, and
    // rotate each cycle to start at the edge leaving that end.
    struct Keyed {
        EdgeEnd key;
        std::vector<int> cycle;
    };
    std::vector<Keyed> keyed;
    std::vector<std::vector<int>> circles;
    for (const auto& cycle : d.components) {
        if (cycle.empty()) {
            circles.emplace_back();
            continue;
        }
        EdgeEnd best{std::numeric_limits<int>::max(),
                     std::numeric_limits<int>::max()};
        size_t best_at = 0;
        for (size_t k = 0; k < cycle.size(); ++k) {
            EdgeEnd t = a.edge_tail.at(cycle[k]);
            if (t < best) {
                best = t;
                best_at = k;
            }
        }
        std::vector<int> rotated;
        for (size_t k = 0; k < cycle.size(); ++k)
            rotated.push_back(cycle[(best_at + k) % cycle.size()]);
        keyed.push_back({best, std::move(rotated)});
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const Keyed& x, const Keyed& y) { return x.key < y.key; });
    std::map<int, int> remap;
    int next = 0;
    for (const auto& k : keyed)
        for (int e : k.cycle) remap[e] = next++;
    KnotDiagram out;
    out.name = d.name;
    out.crossings = d.crossings;
    for (auto& cr : out.crossings)
        for (int s = 0; s < 4; ++s) cr.e[s] = remap.at(cr.e[s]);
    for (auto& k : keyed) {
        for (int& e : k.cycle) e = remap.at(e);
        out.components.push_back(std::move(k.cycle));
    }
    for (auto& circ : circles) out.components.push_back(std::move(circ));
    if (label_map) *label_map = std::move(remap);
    return out;
}

bool equal_up_to_labels(const KnotDiagram& a, const KnotDiagram& b) {
    KnotDiagram ca = canonical_form(a);
    KnotDiagram cb = canonical_form(b);
    return ca.crossings == cb.crossings && ca.components == cb.components;
}

KnotDiagram mirror(const KnotDiagram& d) {
    KnotDiagram out = d;
    for (auto& cr : out.crossings) {
        std::swap(cr.e[1], cr.e[3]);
    }
    validate(out);
    return out;
}

int writhe(const KnotDiagram& d) {
    DiagramAnalysis a = analyze(d);
    int w = 0;
    for (int s : a.sign) w += s;
    return w;
}

MarkedCompositeDiagram connected_sum(const std::vector<KnotDiagram>& summands) {
    if (summands.empty())
        fail(ErrorKind::InvalidIncidence, "connected sum of zero summands");
    int n = static_cast<int>(summands.size());
    std::vector<KnotDiagram> canon;
    for (int i = 0; i < n; ++i) {
        validate(summands[i]);
        if (summands[i].component_count() != 1)
            fail(ErrorKind::MultiComponentSummand,
                 "summand " + std::to_string(i) + " has " +
                     std::to_string(summands[i].component_count()) +
                     " components");
        if (summands[i].crossing_count() == 0)
            fail(ErrorKind::TrivialSummand,
                 "summand " + std::to_string(i) + " has no crossings");
        canon.push_back(canonical_form(summands[i]));
    }
    // Lay the summands in a row.  In summand i the cut edge is canonical
    // label 0 (its first edge); the strand leaves the span through a
    // fresh bridge edge and re-enters the next span where the next cut
    // edge used to arrive.
    int total_c = 0;
    for (const auto& s : canon) total_c += s.crossing_count();
    std::vector<Crossing> crossings;
    std::vector<int> offsets(n), begins(n);
    int edge_offset = 0;
    for (int i = 0; i < n; ++i) {
        offsets[i] = edge_offset;
        begins[i] = static_cast<int>(crossings.size());
        for (const auto& cr : canon[i].crossings) {
            Crossing shifted = cr;
            for (int s = 0; s < 4; ++s) shifted.e[s] += edge_offset;
            crossings.push_back(shifted);
        }
        edge_offset += 2 * canon[i].crossing_count();
    }
    // Bridge i runs from the cut tail of summand i to the cut head of
    // summand i+1 (cyclically).
    std::vector<int> bridge(n);
    for (int i = 0; i < n; ++i) bridge[i] = edge_offset + i;
    for (int i = 0; i < n; ++i) {
        DiagramAnalysis a = analyze(canon[i]);
        EdgeEnd tail = a.edge_tail.at(0);
        EdgeEnd head = a.edge_head.at(0);
        crossings[begins[i] + tail.crossing].e[tail.slot] = bridge[i];
        crossings[begins[i] + head.crossing].e[head.slot] =
            bridge[(i + n - 1) % n];
    }
    KnotDiagram joined =
        assemble_diagram(std::move(crossings), 0, join_names(summands, "#"));
    std::map<int, int> remap;
    KnotDiagram canonical = canonical_form(joined, &remap);
    MarkedCompositeDiagram out;
    out.diagram = std::move(canonical);
    for (int i = 0; i < n; ++i) {
        SummandMarker m;
        m.crossing_begin = begins[i];
        m.crossing_end = begins[i] + canon[i].crossing_count();
        m.entry_edge = remap.at(bridge[(i + n - 1) % n]);
        m.exit_edge = remap.at(bridge[i]);
        out.summands.push_back(m);
    }
    validate(out);
    return out;
}

KnotDiagram distant_union(const std::vector<KnotDiagram>& summands) {
    std::vector<Crossing> crossings;
    int circles = 0;
    int edge_offset = 0;
    for (const auto& s : summands) {
        validate(s);
        KnotDiagram c = canonical_form(s);
        for (const auto& cr : c.crossings) {
            Crossing shifted = cr;
            for (int k = 0; k < 4; ++k) shifted.e[k] += edge_offset;
            crossings.push_back(shifted);
        }
        edge_offset += 2 * c.crossing_count();
        for (const auto& comp : c.components)
            if (comp.empty()) ++circles;
    }
    return assemble_diagram(std::move(crossings), circles,
                            join_names(summands, "+"));
}

KnotDiagram component_subdiagram(const KnotDiagram& d, int i) {
    validate(d);
    if (i < 0 || i >= d.component_count())
        fail(ErrorKind::IndexOutOfRange,
             "component " + std::to_string(i) + " of " +
                 std::to_string(d.component_count()));
    DiagramAnalysis a = analyze(d);
    auto on_i = [&](int label) { return a.edge_component.at(label) == i; };
    // Smooth away passages of component i through discarded crossings by
    // merging the in/out edges of the passage.
    std::map<int, int> parent;
    for (int e : d.components[i]) parent[e] = e;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
    };
    std::vector<int> kept;
    for (int c = 0; c < d.crossing_count(); ++c) {
        const auto& e = d.crossings[c].e;
        bool under_on_i = on_i(e[0]) && on_i(e[2]);
        bool over_on_i = on_i(e[1]) && on_i(e[3]);
        if (under_on_i && over_on_i) {
            kept.push_back(c);
        } else {
            if (under_on_i) unite(e[0], e[2]);
            if (over_on_i) unite(e[1], e[3]);
        }
    }
    if (kept.empty()) {
        KnotDiagram out;
        out.components.emplace_back();
        out.name = d.name;
        return out;
    }
    std::vector<Crossing> crossings;
    for (int c : kept) {
        Crossing cr = d.crossings[c];
        for (int s = 0; s < 4; ++s) cr.e[s] = find(cr.e[s]);
        crossings.push_back(cr);
    }
    KnotDiagram sub = assemble_diagram(std::move(crossings), 0, d.name);
    return canonical_form(sub);
}

std::vector<std::vector<int>> crossing_partition(const KnotDiagram& d) {
    validate(d);
    DiagramAnalysis a = analyze(d);
    int n = d.component_count();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int c = 0; c < d.crossing_count(); ++c) {
        int under = a.edge_component.at(d.crossings[c].e[0]);
        int over = a.edge_component.at(d.crossings[c].e[1]);
        m[std::min(under, over)][std::max(under, over)] += 1;
    }
    return m;
}

KnotDiagram braid_closure(int strands, const std::vector<int>& word,
                          std::string name) {
    if (strands < 1)
        fail(ErrorKind::InvalidIncidence, "braid needs at least one strand");
    // Strand positions carry edge labels upward through the word; fresh
    // labels are introduced above every generator and the closure glues
    // the top labels back onto the bottom ones.
    std::vector<int> first(strands), cur(strands);
    std::iota(first.begin(), first.end(), 0);
    cur = first;
    int counter = strands;
    std::vector<Crossing> crossings;
    std::vector<bool> touched(strands, false);
    for (int g : word) {
        int i = (g > 0 ? g : -g) - 1;
        if (g == 0 || i + 1 >= strands)
            fail(ErrorKind::MalformedToken,
                 "braid letter " + std::to_string(g) + " out of range");
        int ll = cur[i], lr = cur[i + 1];
        int ul = counter++, ur = counter++;
        if (g > 0) {
            // left over right: the under-strand enters at the lower right
            crossings.push_back(Crossing{{lr, ur, ul, ll}});
        } else {
            crossings.push_back(Crossing{{ll, lr, ur, ul}});
        }
        cur[i] = ul;
        cur[i + 1] = ur;
        touched[i] = touched[i + 1] = true;
    }
    int circles = 0;
    std::map<int, int> remap;
    for (int k = 0; k < strands; ++k) {
        if (!touched[k]) {
            ++circles;
            continue;
        }
        remap[cur[k]] = first[k];
    }
    for (auto& cr : crossings)
        for (int s = 0; s < 4; ++s) {
            auto it = remap.find(cr.e[s]);
            if (it != remap.end()) cr.e[s] = it->second;
        }
    return assemble_diagram(std::move(crossings), circles, std::move(name));
}

namespace {

OrderedJson diagram_json_body(const KnotDiagram& d) {
    DiagramAnalysis a = analyze(d);
    OrderedJson j;
    j["crossings"] = OrderedJson::array();
    for (const auto& cr : d.crossings)
        j["crossings"].push_back({cr.e[0], cr.e[1], cr.e[2], cr.e[3]});
    j["over"] = OrderedJson::array();
    for (int c = 0; c < d.crossing_count(); ++c)
        j["over"].push_back(a.entry[c][3] ? d.crossings[c].e[3]
                                          : d.crossings[c].e[1]);
    j["components"] = OrderedJson::array();
    for (const auto& comp : d.components) j["components"].push_back(comp);
    return j;
}

KnotDiagram diagram_from_json_value(const OrderedJson& j) {
    if (!j.is_object() || !j.contains("crossings") || !j.contains("components"))
        fail(ErrorKind::MalformedToken, "diagram JSON missing required keys");
    KnotDiagram d;
    for (const auto& arr : j.at("crossings")) {
        if (!arr.is_array() || arr.size() != 4)
            fail(ErrorKind::MalformedToken, "crossing entry is not a 4-tuple");
        Crossing cr;
        for (int s = 0; s < 4; ++s) {
            if (!arr[s].is_number_integer())
                fail(ErrorKind::MalformedToken, "crossing entry is not integral");
            cr.e[s] = arr[s].get<int>();
        }
        d.crossings.push_back(cr);
    }
    for (const auto& comp : j.at("components")) {
        if (!comp.is_array())
            fail(ErrorKind::MalformedToken, "component entry is not an array");
        std::vector<int> cycle;
        for (const auto& e : comp) {
            if (!e.is_number_integer())
                fail(ErrorKind::MalformedToken, "component entry is not integral");
            cycle.push_back(e.get<int>());
        }
        d.components.push_back(std::move(cycle));
    }
    if (j.contains("name")) d.name = j.at("name").get<std::string>();
    validate(d);
    if (j.contains("over")) {
        DiagramAnalysis a = analyze(d);
        const auto& over = j.at("over");
        if (static_cast<int>(over.size()) != d.crossing_count())
            fail(ErrorKind::MalformedToken, "over array length mismatch");
        for (int c = 0; c < d.crossing_count(); ++c) {
            int expect = a.entry[c][3] ? d.crossings[c].e[3]
                                       : d.crossings[c].e[1];
            if (over[c].get<int>() != expect)
                fail(ErrorKind::InvalidIncidence,
                     "over marking inconsistent with orientations at crossing " +
                         std::to_string(c));
        }
    }
    return d;
}

}  // namespace

std::string diagram_to_json(const KnotDiagram& d) {
    OrderedJson j = diagram_json_body(d);
    if (!d.name.empty()) j["name"] = d.name;
    return j.dump(2);
}

KnotDiagram diagram_from_json(const std::string& text) {
    OrderedJson j = OrderedJson::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(ErrorKind::MalformedToken, "invalid JSON");
    return diagram_from_json_value(j);
}

std::string marked_to_json(const MarkedCompositeDiagram& m) {
    OrderedJson j = diagram_json_body(m.diagram);
    j["markers"] = OrderedJson::array();
    for (const auto& s : m.summands) {
        OrderedJson mk;
        mk["crossings"] = {s.crossing_begin, s.crossing_end};
        mk["entry"] = s.entry_edge;
        mk["exit"] = s.exit_edge;
        j["markers"].push_back(mk);
    }
    if (!m.diagram.name.empty()) j["name"] = m.diagram.name;
    return j.dump(2);
}

MarkedCompositeDiagram marked_from_json(const std::string& text) {
    OrderedJson j = OrderedJson::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(ErrorKind::MalformedToken, "invalid JSON");
    MarkedCompositeDiagram m;
    m.diagram = diagram_from_json_value(j);
    if (!j.contains("markers"))
        fail(ErrorKind::MalformedToken, "marked diagram JSON missing markers");
    for (const auto& mk : j.at("markers")) {
        SummandMarker s;
        s.crossing_begin = mk.at("crossings").at(0).get<int>();
        s.crossing_end = mk.at("crossings").at(1).get<int>();
        s.entry_edge = mk.at("entry").get<int>();
        s.exit_edge = mk.at("exit").get<int>();
        m.summands.push_back(s);
    }
    validate(m);
    return m;
}

}  // namespace knotfactor
