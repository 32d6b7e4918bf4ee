// Construction of the diagrammatic handle decomposition.
//
// The builder works in five passes: strand arcs, 1-handles with their
// cross-section lanes, 0-handles with their boundary patterns, face
// tracing, and finally the 2-handle attaching circuits.  Strips and
// lanes are emitted from local incidence rules (with the pieces lost to
// the tube window filtered out by removal predicates), and the circuit
// walks then bind each emitted piece exactly once.  A global usage
// check at the end confirms that the two descriptions agree.
//
// Local frames used by the incidence rules, with the under-strand of a
// crossing entering from the south: slot 0 = south, 1 = east,
// 2 = north, 3 = west.  Corner q of a crossing is the quadrant between
// slots q and q+1.  Its thickened vertices counterclockwise are
// v0 = stub q, v1 = flank of the slot-q edge, v2 = flank of the
// slot-(q+1) edge, v3 = stub q+1.  The six possible strips are the
// crossing square between v3 and v0, the region strip between v1 and
// v2, one canopy cap in each of the gaps (v0,v1) and (v2,v3), and the
// two canopy chords (v1,v3) and (v2,v0) across the horizontal discs.

#include "knotfactor/handles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "knotfactor/errors.hpp"

namespace knotfactor {

namespace {

constexpr int kLeft = 0;
constexpr int kRight = 1;

int mod4(int x) { return ((x % 4) + 4) % 4; }

// Slot from which the over-strand leaves the crossing.
int over_exit_slot(const DiagramAnalysis& a, int k) {
    return a.entry[k][3] ? 1 : 3;
}

// Shared arc-walking core: start at the given edge and keep going while
// the strand stays on its side of the projection sphere.  `stop_over`
// selects the under-arc rule (terminate on over slots, pass through
// slot 0), otherwise the over-arc rule.
StrandArc walk_arc(const KnotDiagram& d, const DiagramAnalysis& a,
                   int start_crossing, int first_edge, bool stop_over) {
    StrandArc arc;
    arc.start_crossing = start_crossing;
    int edge = first_edge;
    for (;;) {
        arc.edges.push_back(edge);
        check(arc.edges.size() <= a.edge_tail.size(),
              "strand arc fails to terminate");
        EdgeEnd head = a.edge_head.at(edge);
        bool over_slot = (head.slot % 2) == 1;
        if (over_slot == stop_over) {
            arc.end_crossing = head.crossing;
            return arc;
        }
        arc.passes.push_back({head.crossing, head.slot});
        edge = d.crossings[head.crossing].e[(head.slot + 2) % 4];
    }
}

// Arc family tables: which arc an edge belongs to and at which position,
// plus the unique mid-arc pass over every crossing.
struct ArcTables {
    std::vector<StrandArc> arcs;
    std::map<int, int> arc_of;
    std::map<int, int> pos_of;
    std::vector<std::pair<int, int>> pass_at;  // crossing -> (arc, pass index)

    void index(int crossings) {
        pass_at.assign(crossings, {-1, -1});
        for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
            for (int j = 0; j < static_cast<int>(arcs[i].edges.size()); ++j) {
                int e = arcs[i].edges[j];
                check(!arc_of.count(e), "edge in two arcs of one family");
                arc_of[e] = i;
                pos_of[e] = j;
            }
            for (int j = 0; j < static_cast<int>(arcs[i].passes.size()); ++j) {
                int k = arcs[i].passes[j].first;
                check(pass_at[k].first < 0, "two passes over one crossing");
                pass_at[k] = {i, j};
            }
        }
        for (int k = 0; k < crossings; ++k)
            check(pass_at[k].first >= 0, "crossing without a mid-arc pass");
    }
};

Rational r128(long long n) { return Rational(n, 128); }

// ---------------------------------------------------------------------
// Chart geometry.  Each boundary gap between vertices j and j+1 spans
// (32j+8, 32j+24)/128 and holds up to three disjoint lanes: near the
// counterclockwise-start vertex, the middle, and near the far vertex.

RatInterval gap_lane(int gap, int lane) {
    long long base = 32 * gap;
    switch (lane) {
        case 0: return {r128(base + 10), r128(base + 13)};
        case 1: return {r128(base + 14), r128(base + 18)};
        default: return {r128(base + 19), r128(base + 22)};
    }
}

Vec2 boundary_point(const Rational& t) {
    // normalize t into [0,1), then stretch to perimeter position s in
    // [0,8) starting at (1,0) and running counterclockwise
    long long q = t.num() / t.den();
    if (t.num() % t.den() != 0 && t.num() < 0) --q;
    Rational s = (t - Rational(q)) * Rational(8);
    if (s < Rational(1)) return {Rational(1), s};
    if (s < Rational(3)) return {Rational(2) - s, Rational(1)};
    if (s < Rational(5)) return {Rational(-1), Rational(4) - s};
    if (s < Rational(7)) return {s - Rational(6), Rational(-1)};
    return {Rational(1), s - Rational(8)};
}

std::vector<Vec2> make_ccw(std::vector<Vec2> poly) {
    if (poly.size() >= 3 && orient(poly[0], poly[1], poly[2]) < 0)
        std::reverse(poly.begin(), poly.end());
    return poly;
}

// Clips a convex polygon by the left half-plane of each directed edge of
// a convex counterclockwise clip polygon.
std::vector<Vec2> convex_clip(std::vector<Vec2> subject,
                              const std::vector<Vec2>& clip) {
    for (size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
        const Vec2& ca = clip[i];
        const Vec2& cb = clip[(i + 1) % clip.size()];
        std::vector<Vec2> out;
        for (size_t j = 0; j < subject.size(); ++j) {
            const Vec2& p = subject[j];
            const Vec2& q = subject[(j + 1) % subject.size()];
            bool pin = orient(ca, cb, p) >= 0;
            bool qin = orient(ca, cb, q) >= 0;
            if (pin) out.push_back(p);
            if (pin != qin) out.push_back(cross_point(p, q, ca, cb));
        }
        subject = std::move(out);
    }
    // drop repeated points introduced by touching edges
    std::vector<Vec2> dedup;
    for (const Vec2& p : subject)
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
    if (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    return dedup;
}

// The thickened projection of a horizontal chord: the quad between its
// two wall arcs.
std::vector<Vec2> chord_band(const RatInterval& leg1, const RatInterval& leg2) {
    return make_ccw({boundary_point(leg1.lo), boundary_point(leg1.hi),
                     boundary_point(leg2.lo), boundary_point(leg2.hi)});
}

// ---------------------------------------------------------------------
// Builder context.

struct Builder {
    const MarkedCompositeDiagram& m;
    const KnotDiagram& d;
    DiagramAnalysis a;
    int c = 0;
    ArcTables plus, minus;
    HandleStructure h;

    // 1-handle indices
    std::map<std::pair<int, int>, int> flank_ids;  // (edge, side), window edge excluded

    explicit Builder(const MarkedCompositeDiagram& marked)
        : m(marked), d(marked.diagram) {}

    int corner_id(int k, int q) const { return 4 * k + q; }
    int cap_id(int side) const { return 4 * c + side; }
    int stub_id(int k, int s) const { return 4 * k + s; }
    int square_id(int k) const { return k; }
    int region_id(int reg) const { return c + reg; }
    int canopy_id(bool over, int arc) const {
        return c + a.region_count() + (over ? 0 : c) + arc;
    }

    int flank_of(int edge, int side) const {
        return flank_ids.at({edge, side});
    }
    bool is_tail(int edge, int k, int slot) const {
        return a.edge_tail.at(edge) == EdgeEnd{k, slot};
    }

    // --- removal predicates for the pieces lost with the tube window ---
    bool pass_removed(bool over, int arc, int i) const {
        if (over) return arc == h.window.over_arc && i < h.window.over_pos;
        return arc == h.window.under_arc && i < h.window.under_pos;
    }
    bool start_cap_removed(bool over, int arc) const {
        return arc == (over ? h.window.over_arc : h.window.under_arc);
    }
    bool edge_lane_removed(bool over, int edge) const {
        // the window edge itself is handled by the flank piece split
        if (edge == h.window.edge) return false;
        const ArcTables& t = over ? plus : minus;
        int arc = t.arc_of.at(edge);
        int pos = t.pos_of.at(edge);
        if (over) return arc == h.window.over_arc && pos < h.window.over_pos;
        return arc == h.window.under_arc && pos < h.window.under_pos;
    }

    void run() {
        validate(m);
        a = analyze(d);
        c = d.crossing_count();
        plus.arcs = over_arcs(d, a);
        minus.arcs = under_arcs(d, a);
        plus.index(c);
        minus.index(c);
        locate_window();
        build_one_handles();
        build_zero_handles();
        trace_all_faces();
        build_circuits();
        finish();
    }

    void locate_window() {
        WindowInfo& w = h.window;
        w.edge = m.window_edge();
        w.over_arc = plus.arc_of.at(w.edge);
        w.over_pos = plus.pos_of.at(w.edge);
        w.under_arc = minus.arc_of.at(w.edge);
        w.under_pos = minus.pos_of.at(w.edge);
        w.cap[kLeft] = cap_id(kLeft);
        w.cap[kRight] = cap_id(kRight);
    }

    // --- lanes -------------------------------------------------------

    static Lane strip_lane(int two, int role) {
        Lane l;
        l.is_strip = true;
        l.two_handle = two;
        l.role = role;
        return l;
    }
    static Lane gap_lane_entry(bool boundary) {
        Lane l;
        l.boundary = boundary;
        return l;
    }

    // Replace absent strips by free gaps, then merge cyclically adjacent
    // gaps into one entry carrying the union of their boundary flags.
    static std::vector<Lane> merge_gaps(const std::vector<Lane>& raw) {
        std::vector<Lane> out;
        for (const Lane& l : raw) {
            if (!l.is_strip && !out.empty() && !out.back().is_strip)
                out.back().boundary = out.back().boundary || l.boundary;
            else
                out.push_back(l);
        }
        while (out.size() > 1 && !out.front().is_strip && !out.back().is_strip) {
            out.front().boundary = out.front().boundary || out.back().boundary;
            out.pop_back();
        }
        return out;
    }

    void build_one_handles() {
        h.one.resize(8 * c + 4);
        for (int k = 0; k < c; ++k)
            for (int s = 0; s < 4; ++s) build_stub(k, s);
        build_flanks();
        build_arches();
    }

    void build_stub(int k, int s) {
        OneHandle& o = h.one[stub_id(k, s)];
        o.kind = OneKind::Stub;
        o.prov.crossing = k;
        o.prov.slot = s;
        o.ends[0] = {corner_id(k, mod4(s + 3)), 3};
        o.ends[1] = {corner_id(k, s), 0};
        bool under_stub = (s % 2) == 0;  // the strand dips below this stub
        // cap lane: the canopy turning around where an arc of the
        // opposite family to the stub's strand terminates on edge e_s
        int edge = d.crossings[k].e[s];
        const ArcTables& fam = under_stub ? plus : minus;
        int cap_arc = fam.arc_of.at(edge);
        bool cap_is_start = is_tail(edge, k, s);
        bool cap_present = !(cap_is_start && start_cap_removed(under_stub, cap_arc));
        Lane cap = strip_lane(canopy_id(under_stub, cap_arc), 2);
        // through lane: the canopy of the arc passing this crossing on
        // the stub's side of the sphere
        auto [thr_arc, thr_i] = under_stub ? plus.pass_at[k] : minus.pass_at[k];
        bool thr_present = !pass_removed(under_stub, thr_arc, thr_i);
        Lane thr = strip_lane(canopy_id(under_stub, thr_arc), 1);
        std::vector<Lane> raw;
        raw.push_back(strip_lane(square_id(k), 0));
        if (under_stub) {
            raw.push_back(gap_lane_entry(true));
            raw.push_back(cap_present ? cap : gap_lane_entry(false));
            raw.push_back(thr_present ? thr : gap_lane_entry(false));
        } else {
            raw.push_back(thr_present ? thr : gap_lane_entry(false));
            raw.push_back(cap_present ? cap : gap_lane_entry(false));
            raw.push_back(gap_lane_entry(true));
        }
        o.lanes = merge_gaps(raw);
    }

    // Full cross-section of a flank on the given side of its edge, with
    // the canopy lanes already filtered by the removal predicates.
    std::vector<Lane> flank_lanes(int edge, int side, bool with_plus,
                                  bool with_minus) {
        int reg = a.edge_regions.at(edge)[side];
        Lane pl = strip_lane(canopy_id(true, plus.arc_of.at(edge)), 1);
        Lane mi = strip_lane(canopy_id(false, minus.arc_of.at(edge)), 1);
        std::vector<Lane> raw;
        raw.push_back(gap_lane_entry(true));  // tube side
        if (side == kLeft) {
            raw.push_back(with_plus ? pl : gap_lane_entry(false));
            raw.push_back(gap_lane_entry(false));  // sky
            raw.push_back(strip_lane(region_id(reg), 0));
            raw.push_back(gap_lane_entry(false));  // ground
            raw.push_back(with_minus ? mi : gap_lane_entry(false));
        } else {
            raw.push_back(with_minus ? mi : gap_lane_entry(false));
            raw.push_back(gap_lane_entry(false));  // ground
            raw.push_back(strip_lane(region_id(reg), 0));
            raw.push_back(gap_lane_entry(false));  // sky
            raw.push_back(with_plus ? pl : gap_lane_entry(false));
        }
        return merge_gaps(raw);
    }

    // End data of the full flank (edge, side): end 0 sits at the tail
    // crossing, end 1 at the head.
    std::array<std::array<int, 2>, 2> flank_ends(int edge, int side) const {
        EdgeEnd t = a.edge_tail.at(edge);
        EdgeEnd hd = a.edge_head.at(edge);
        if (side == kLeft)
            return {{{corner_id(t.crossing, t.slot), 1},
                     {corner_id(hd.crossing, mod4(hd.slot + 3)), 2}}};
        return {{{corner_id(t.crossing, mod4(t.slot + 3)), 2},
                 {corner_id(hd.crossing, hd.slot), 1}}};
    }

    void build_flanks() {
        int next = 4 * c;
        std::vector<int> edges;
        for (const auto& [e, end] : a.edge_tail) {
            (void)end;
            edges.push_back(e);
        }
        for (int e : edges) {
            for (int side = 0; side < 2; ++side) {
                auto ends = flank_ends(e, side);
                if (e == h.window.edge) {
                    for (int piece = 0; piece < 2; ++piece) {
                        OneHandle& o = h.one[next];
                        o.kind = OneKind::Flank;
                        o.prov.edge = e;
                        o.prov.side = side;
                        o.prov.piece = piece;
                        if (piece == 0) {
                            o.ends[0] = ends[0];
                            o.ends[1] = {{cap_id(side), 0}};
                            o.lanes = flank_lanes(e, side, false, false);
                        } else {
                            o.ends[0] = {{cap_id(side), 2}};
                            o.ends[1] = ends[1];
                            o.lanes = flank_lanes(e, side, true, true);
                        }
                        h.window.flank_piece[side][piece] = next++;
                    }
                } else {
                    OneHandle& o = h.one[next];
                    o.kind = OneKind::Flank;
                    o.prov.edge = e;
                    o.prov.side = side;
                    o.ends = ends;
                    o.lanes = flank_lanes(e, side,
                                          !edge_lane_removed(true, e),
                                          !edge_lane_removed(false, e));
                    flank_ids[{e, side}] = next++;
                }
            }
        }
        check(next == 8 * c + 2, "flank handle count mismatch");
    }

    void build_arches() {
        for (int which = 0; which < 2; ++which) {
            int id = 8 * c + 2 + which;
            OneHandle& o = h.one[id];
            o.kind = OneKind::Arch;
            o.prov.piece = which;  // 0 above the tube, 1 below
            o.ends[0] = {{cap_id(kLeft), which == 0 ? 1 : 3}};
            o.ends[1] = {{cap_id(kRight), which == 0 ? 1 : 3}};
            int canopy = which == 0 ? canopy_id(true, h.window.over_arc)
                                    : canopy_id(false, h.window.under_arc);
            o.lanes = {strip_lane(canopy, 1), gap_lane_entry(true)};
            h.window.arch[which] = id;
        }
    }

    // --- 0-handles ---------------------------------------------------

    // The 1-handle end sitting at vertex v1 or v2 of a corner: the flank
    // of the edge at the corresponding slot, or one of its window pieces.
    VertexRef edge_vertex(int k, int slot, bool first_of_corner) {
        int edge = d.crossings[k].e[slot];
        bool tail = is_tail(edge, k, slot);
        int side = first_of_corner == tail ? kLeft : kRight;
        int handle;
        if (edge == h.window.edge)
            handle = h.window.flank_piece[side][tail ? 0 : 1];
        else
            handle = flank_of(edge, side);
        return {handle, tail ? 0 : 1};
    }

    void add_strip(ZeroHandle& z, int two, int va, int vb, StripRoute route,
                   int level) {
        PatternStrip s;
        s.two_handle = two;
        s.va = va;
        s.vb = vb;
        s.route = route;
        s.level = level;
        z.strips.push_back(s);
    }

    void build_zero_handles() {
        h.zero.resize(4 * c + 2);
        for (int k = 0; k < c; ++k)
            for (int q = 0; q < 4; ++q) build_corner(k, q);
        for (int side = 0; side < 2; ++side) build_window_cap(side);
    }

    void build_corner(int k, int q) {
        ZeroHandle& z = h.zero[corner_id(k, q)];
        z.kind = ZeroKind::Corner;
        z.prov.crossing = k;
        z.prov.corner = q;
        z.vertices = {VertexRef{stub_id(k, q), 1},
                      edge_vertex(k, q, true),
                      edge_vertex(k, mod4(q + 1), false),
                      VertexRef{stub_id(k, mod4(q + 1)), 0}};
        bool even = (q % 2) == 0;
        add_strip(z, square_id(k), 3, 0, StripRoute::Side, 0);
        add_strip(z, region_id(a.corner_region[k][q]), 1, 2, StripRoute::Side, 0);
        // canopy caps in the gaps beside the stubs
        cap_strip(z, k, q, /*first=*/true, even);
        cap_strip(z, k, mod4(q + 1), /*first=*/false, !even);
        // canopy chords across the horizontal discs
        chord_strip(z, k, /*over=*/!even, 1, 3);
        chord_strip(z, k, /*over=*/even, 2, 0);
        build_chart(z);
    }

    // Cap strip for the arc terminating on the edge at `slot`; `first`
    // picks the (v0,v1) gap, otherwise (v2,v3).  `over` names the arc
    // family.
    void cap_strip(ZeroHandle& z, int k, int slot, bool first, bool over) {
        int edge = d.crossings[k].e[slot];
        const ArcTables& fam = over ? plus : minus;
        int arc = fam.arc_of.at(edge);
        bool start = is_tail(edge, k, slot);
        if (start && start_cap_removed(over, arc)) return;
        int va = first ? 0 : 2;
        add_strip(z, canopy_id(over, arc), va, va + 1, StripRoute::Side,
                  over ? 1 : -1);
    }

    void chord_strip(ZeroHandle& z, int k, bool over, int va, int vb) {
        auto [arc, i] = over ? plus.pass_at[k] : minus.pass_at[k];
        if (pass_removed(over, arc, i)) return;
        add_strip(z, canopy_id(over, arc), va, vb,
                  over ? StripRoute::Top : StripRoute::Bottom, 0);
    }

    void build_window_cap(int side) {
        ZeroHandle& z = h.zero[cap_id(side)];
        z.kind = ZeroKind::WindowCap;
        z.prov.side = side;
        z.vertices = {VertexRef{h.window.flank_piece[side][0], 1},
                      VertexRef{h.window.arch[0], side == kLeft ? 0 : 1},
                      VertexRef{h.window.flank_piece[side][1], 0},
                      VertexRef{h.window.arch[1], side == kLeft ? 0 : 1}};
        int reg = a.edge_regions.at(h.window.edge)[side];
        add_strip(z, region_id(reg), 0, 2, StripRoute::Side, 0);
        add_strip(z, canopy_id(true, h.window.over_arc), 1, 2, StripRoute::Side, 1);
        add_strip(z, canopy_id(false, h.window.under_arc), 3, 2, StripRoute::Side, -1);
    }

    // --- charts ------------------------------------------------------

    void build_chart(ZeroHandle& z) {
        HandleChart& ch = z.chart;
        for (int j = 0; j < 4; ++j)
            ch.vertex_arc[j] = {r128(32 * j - 8), r128(32 * j + 8)};
        // strips by their identifying vertex pair
        auto strip_at = [&](int va, int vb) {
            for (int i = 0; i < static_cast<int>(z.strips.size()); ++i)
                if (z.strips[i].va == va && z.strips[i].vb == vb) return i;
            return -1;
        };
        auto side_arc = [&](int strip, int gap) {
            if (strip < 0) return;
            ch.strip_arcs.push_back({strip, 0, gap_lane(gap, 1)});
        };
        auto chord_arcs = [&](int strip, int gap1, int lane1, int gap2,
                              int lane2) {
            if (strip < 0) return;
            ch.strip_arcs.push_back({strip, 1, gap_lane(gap1, lane1)});
            ch.strip_arcs.push_back({strip, 2, gap_lane(gap2, lane2)});
        };
        int cap_a = strip_at(0, 1), cap_b = strip_at(2, 3);
        int chord_a = strip_at(1, 3), chord_b = strip_at(2, 0);
        side_arc(cap_a, 0);
        side_arc(strip_at(1, 2), 1);
        side_arc(cap_b, 2);
        side_arc(strip_at(3, 0), 3);
        chord_arcs(chord_a, 0, 2, 3, 0);
        chord_arcs(chord_b, 2, 0, 3, 2);
        std::sort(ch.strip_arcs.begin(), ch.strip_arcs.end(),
                  [](const ChartArc& x, const ChartArc& y) {
                      return x.span.lo < y.span.lo;
                  });
        // central region: overlap of the projected chord bands
        std::vector<Vec2> square{{Rational(1), Rational(-1)},
                                 {Rational(1), Rational(1)},
                                 {Rational(-1), Rational(1)},
                                 {Rational(-1), Rational(-1)}};
        std::vector<Vec2> band_a = chord_band(gap_lane(0, 2), gap_lane(3, 0));
        std::vector<Vec2> band_b = chord_band(gap_lane(2, 0), gap_lane(3, 2));
        if (chord_a >= 0 && chord_b >= 0)
            ch.central_region = convex_clip(band_a, band_b);
        else if (chord_a >= 0)
            ch.central_region = band_a;
        else if (chord_b >= 0)
            ch.central_region = band_b;
        else
            ch.central_region = square;
    }

    // --- face tracing ------------------------------------------------

    struct RotEntry {
        bool is_strip = false;
        int strip = -1;
        int end_tag = 0;  // 0 at va, 1 at vb
        bool boundary = false;
    };

    std::vector<RotEntry> rotation(const ZeroHandle& z, int slot) const {
        const VertexRef& vr = z.vertices[slot];
        const OneHandle& o = h.one[vr.one_handle];
        std::vector<Lane> lanes = o.lanes;
        if (vr.end == 0) std::reverse(lanes.begin(), lanes.end());
        std::vector<RotEntry> rot;
        std::set<std::pair<int, int>> used;  // (strip, end_tag)
        for (const Lane& l : lanes) {
            RotEntry e;
            if (!l.is_strip) {
                e.boundary = l.boundary;
                rot.push_back(e);
                continue;
            }
            e.is_strip = true;
            int found = -1, tag = 0;
            for (int i = 0; i < static_cast<int>(z.strips.size()); ++i) {
                const PatternStrip& s = z.strips[i];
                if (s.two_handle != l.two_handle) continue;
                for (int t = 0; t < 2; ++t) {
                    int v = t == 0 ? s.va : s.vb;
                    if (v != slot || used.count({i, t})) continue;
                    // with two candidate strips of one 2-handle, the
                    // canopy's turning lane takes the side strip and its
                    // passing lane takes the chord
                    if (found >= 0) {
                        bool this_chord = s.route != StripRoute::Side;
                        if ((l.role == 1) != this_chord) continue;
                    }
                    found = i;
                    tag = t;
                }
            }
            check(found >= 0, "lane without a matching strip");
            used.insert({found, tag});
            e.strip = found;
            e.end_tag = tag;
            rot.push_back(e);
        }
        int incident = 0;
        for (const PatternStrip& s : z.strips)
            incident += (s.va == slot) + (s.vb == slot);
        check(incident == static_cast<int>(used.size()),
              "strip without a matching lane");
        return rot;
    }

    void trace_all_faces() {
        for (ZeroHandle& z : h.zero) trace_faces(z);
    }

    void trace_faces(ZeroHandle& z) const {
        z.faces.clear();
        if (z.strips.empty()) {
            if (z.vertices.empty()) z.faces.push_back({});
            return;
        }
        int n = static_cast<int>(z.vertices.size());
        std::vector<std::vector<RotEntry>> rots(n);
        for (int v = 0; v < n; ++v) rots[v] = rotation(z, v);
        // boundary orbit walk: cross a strip, then continue around the
        // arrival vertex disc to the next strip abutment
        std::set<std::pair<int, int>> seen;  // (strip, direction)
        for (int s0 = 0; s0 < static_cast<int>(z.strips.size()); ++s0) {
            for (int d0 = 0; d0 < 2; ++d0) {
                if (seen.count({s0, d0})) continue;
                PatternFace face;
                int s = s0, dir = d0;
                do {
                    seen.insert({s, dir});
                    face.word.push_back({false, s, 0});
                    const PatternStrip& ps = z.strips[s];
                    int v = dir == 0 ? ps.vb : ps.va;
                    int arrive_tag = dir == 0 ? 1 : 0;
                    const auto& rot = rots[v];
                    int len = static_cast<int>(rot.size());
                    int pos = -1;
                    for (int i = 0; i < len; ++i)
                        if (rot[i].is_strip && rot[i].strip == s &&
                            rot[i].end_tag == arrive_tag) {
                            pos = i;
                            break;
                        }
                    check(pos >= 0, "strip end missing from rotation");
                    FaceStep vstep{true, v, 0};
                    int i = pos;
                    for (;;) {
                        i = (i + 1) % len;
                        if (!rot[i].is_strip) {
                            ++vstep.gaps;
                            if (rot[i].boundary) face.touches_boundary = true;
                            continue;
                        }
                        break;
                    }
                    face.word.push_back(vstep);
                    s = rot[i].strip;
                    dir = rot[i].end_tag == 0 ? 0 : 1;
                } while (!(s == s0 && dir == d0));
                z.faces.push_back(std::move(face));
            }
        }
        check_sphere(z);
    }

    // Per connected component of the strip graph, the traced boundary
    // must close up a sphere.
    void check_sphere(const ZeroHandle& z) const {
        int n = static_cast<int>(z.vertices.size());
        std::vector<int> comp(n, -1);
        int comps = 0;
        for (int v0 = 0; v0 < n; ++v0) {
            if (comp[v0] >= 0) continue;
            bool touched = false;
            for (const PatternStrip& s : z.strips)
                touched = touched || s.va == v0 || s.vb == v0;
            check(touched, "thickened vertex without any strip");
            std::vector<int> stack{v0};
            comp[v0] = comps;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (const PatternStrip& s : z.strips) {
                    if (s.va != v && s.vb != v) continue;
                    int w = s.va == v ? s.vb : s.va;
                    if (comp[w] < 0) {
                        comp[w] = comps;
                        stack.push_back(w);
                    }
                }
            }
            ++comps;
        }
        for (int ci = 0; ci < comps; ++ci) {
            int verts = 0, strips = 0, faces = 0;
            for (int v = 0; v < n; ++v) verts += comp[v] == ci;
            for (const PatternStrip& s : z.strips) strips += comp[s.va] == ci;
            for (const PatternFace& f : z.faces)
                for (const FaceStep& st : f.word)
                    if (!st.at_vertex && comp[z.strips[st.index].va] == ci) {
                        ++faces;
                        break;
                    }
            check(verts - strips + faces == 2,
                  "boundary pattern does not close a sphere");
        }
    }

    // --- circuits ----------------------------------------------------

    CircuitStep strip_step(int zero, int two, int va, int vb, bool rev) const {
        const ZeroHandle& z = h.zero[zero];
        for (int i = 0; i < static_cast<int>(z.strips.size()); ++i) {
            const PatternStrip& s = z.strips[i];
            if (s.two_handle == two && s.va == va && s.vb == vb)
                return {true, zero, i, rev};
        }
        check(false, "circuit references a missing strip");
        return {};
    }

    CircuitStep lane_step(int one, int two, int role, bool rev) const {
        const OneHandle& o = h.one[one];
        for (int i = 0; i < static_cast<int>(o.lanes.size()); ++i) {
            const Lane& l = o.lanes[i];
            if (l.is_strip && l.two_handle == two && l.role == role)
                return {false, one, i, rev};
        }
        check(false, "circuit references a missing lane");
        return {};
    }

    void build_circuits() {
        h.two.resize(c + a.region_count() + 2 * c);
        for (int k = 0; k < c; ++k) build_square(k);
        for (int reg = 0; reg < a.region_count(); ++reg) build_region(reg);
        for (int arc = 0; arc < c; ++arc) {
            build_canopy(true, arc);
            build_canopy(false, arc);
        }
        check_usage();
    }

    void build_square(int k) {
        TwoHandle& t = h.two[square_id(k)];
        t.kind = TwoKind::Square;
        t.prov.crossing = k;
        for (int q = 0; q < 4; ++q) {
            t.circuit.push_back(
                strip_step(corner_id(k, q), square_id(k), 3, 0, true));
            t.circuit.push_back(
                lane_step(stub_id(k, mod4(q + 1)), square_id(k), 0, false));
        }
    }

    void build_region(int reg) {
        TwoHandle& t = h.two[region_id(reg)];
        t.kind = TwoKind::Region;
        t.prov.region = reg;
        for (const auto& corner : a.regions[reg]) {
            int zc = corner_id(corner.crossing, corner.corner);
            t.circuit.push_back(strip_step(zc, region_id(reg), 1, 2, false));
            int edge = d.crossings[corner.crossing].e[mod4(corner.corner + 1)];
            const VertexRef& out = h.zero[zc].vertices[2];
            const OneHandle& fl = h.one[out.one_handle];
            check(fl.prov.edge == edge, "region walk leaves the wrong flank");
            bool forward = out.end == 0;
            if (edge == h.window.edge) {
                // pass through the window cap between the two pieces
                int side = fl.prov.side;
                int za = h.window.flank_piece[side][0];
                int zb = h.window.flank_piece[side][1];
                int first = forward ? za : zb;
                int second = forward ? zb : za;
                t.circuit.push_back(lane_step(first, region_id(reg), 0, !forward));
                t.circuit.push_back(strip_step(cap_id(side), region_id(reg), 0, 2,
                                               !forward));
                t.circuit.push_back(lane_step(second, region_id(reg), 0, !forward));
            } else {
                t.circuit.push_back(
                    lane_step(out.one_handle, region_id(reg), 0, !forward));
            }
        }
    }

    // Cap block: the canopy's turn around the arc terminus at crossing k
    // whose cut lies across stub `slot`.
    void cap_block(std::vector<CircuitStep>* steps, int two, int k,
                   int slot) const {
        steps->push_back(
            strip_step(corner_id(k, mod4(slot + 3)), two, 2, 3, false));
        steps->push_back(lane_step(stub_id(k, slot), two, 2, false));
        steps->push_back(strip_step(corner_id(k, slot), two, 0, 1, false));
    }

    // Pass blocks: the canopy's two side lines crossing a passed
    // crossing, entered at `slot`.  The left block runs in arc
    // direction, the right block is emitted in arc direction and gets
    // reversed by the caller.
    void pass_block_left(std::vector<CircuitStep>* steps, int two, int k,
                         int slot) const {
        steps->push_back(
            strip_step(corner_id(k, mod4(slot + 3)), two, 2, 0, false));
        steps->push_back(lane_step(stub_id(k, mod4(slot + 3)), two, 1, true));
        steps->push_back(
            strip_step(corner_id(k, mod4(slot + 2)), two, 1, 3, true));
    }
    void pass_block_right(std::vector<CircuitStep>* steps, int two, int k,
                          int slot) const {
        steps->push_back(strip_step(corner_id(k, slot), two, 1, 3, false));
        steps->push_back(lane_step(stub_id(k, mod4(slot + 1)), two, 1, false));
        steps->push_back(
            strip_step(corner_id(k, mod4(slot + 1)), two, 2, 0, true));
    }

    // Lane of the canopy along an edge on the given side, honouring the
    // window pieces.
    CircuitStep edge_lane(int two, int edge, int side, bool rev) const {
        int handle = edge == h.window.edge
                         ? h.window.flank_piece[side][1]
                         : flank_of(edge, side);
        return lane_step(handle, two, 1, rev);
    }

    void build_canopy(bool over, int arcIdx) {
        const StrandArc& arc = over ? plus.arcs[arcIdx] : minus.arcs[arcIdx];
        int two = canopy_id(over, arcIdx);
        TwoHandle& t = h.two[two];
        t.kind = over ? TwoKind::OverCanopy : TwoKind::UnderCanopy;
        t.prov.arc = arcIdx;
        bool window = arcIdx == (over ? h.window.over_arc : h.window.under_arc);
        t.prov.window_half = window;
        int first = window ? (over ? h.window.over_pos : h.window.under_pos) : 0;
        int m = static_cast<int>(arc.edges.size());
        std::vector<CircuitStep> steps;
        if (window) {
            // start on the kept side of the window: down from the arch
            // across the left cap onto the head piece of the left flank
            int varch = over ? 1 : 3;
            steps.push_back(strip_step(cap_id(kLeft), two, varch, 2, false));
        } else {
            int slot = over ? 2 : over_exit_slot(a, arc.start_crossing);
            cap_block(&steps, two, arc.start_crossing, slot);
        }
        for (int i = first; i < m; ++i) {
            steps.push_back(edge_lane(two, arc.edges[i], kLeft, false));
            if (i + 1 < m)
                pass_block_left(&steps, two, arc.passes[i].first,
                                arc.passes[i].second);
        }
        cap_block(&steps, two, arc.end_crossing,
                  over ? 0 : a.edge_head.at(arc.edges.back()).slot);
        for (int i = m - 1; i >= first; --i) {
            if (i + 1 < m) {
                std::vector<CircuitStep> fwd;
                pass_block_right(&fwd, two, arc.passes[i].first,
                                 arc.passes[i].second);
                for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) {
                    CircuitStep s = *it;
                    s.reversed = !s.reversed;
                    steps.push_back(s);
                }
            }
            steps.push_back(edge_lane(two, arc.edges[i], kRight, true));
        }
        if (window) {
            int varch = over ? 1 : 3;
            steps.push_back(strip_step(cap_id(kRight), two, varch, 2, true));
            steps.push_back(
                lane_step(h.window.arch[over ? 0 : 1], two, 1, true));
        }
        t.circuit = std::move(steps);
        check_closed(t);
    }

    // Every circuit must chain end to end through the stored attachment
    // slots and close up.
    void check_closed(const TwoHandle& t) const {
        check(!t.circuit.empty(), "empty attaching circuit");
        int n = static_cast<int>(t.circuit.size());
        for (int i = 0; i < n; ++i) {
            const CircuitStep& cur = t.circuit[i];
            const CircuitStep& nxt = t.circuit[(i + 1) % n];
            check(cur.on_zero != nxt.on_zero,
                  "attaching circuit does not alternate");
            if (cur.on_zero) {
                // the strip's exit vertex must host the next lane's
                // entry end
                const ZeroHandle& z = h.zero[cur.handle];
                const PatternStrip& ps = z.strips[cur.piece];
                int v = cur.reversed ? ps.va : ps.vb;
                VertexRef expect{nxt.handle, nxt.reversed ? 1 : 0};
                check(z.vertices[v] == expect,
                      "attaching circuit breaks at a strip exit");
            } else {
                // the lane's exit end must sit on the next strip's
                // entry vertex
                const OneHandle& o = h.one[cur.handle];
                const auto& end = o.ends[cur.reversed ? 0 : 1];
                const PatternStrip& ps = h.zero[nxt.handle].strips[nxt.piece];
                int v = nxt.reversed ? ps.vb : ps.va;
                check(end[0] == nxt.handle && end[1] == v,
                      "attaching circuit breaks at a lane exit");
            }
        }
    }

    // Every strip and every strip lane is traversed exactly once.
    void check_usage() const {
        std::map<std::pair<int, int>, int> strip_use, lane_use;
        for (const TwoHandle& t : h.two)
            for (const CircuitStep& s : t.circuit) {
                if (s.on_zero)
                    ++strip_use[{s.handle, s.piece}];
                else
                    ++lane_use[{s.handle, s.piece}];
            }
        for (int z = 0; z < static_cast<int>(h.zero.size()); ++z)
            for (int i = 0; i < static_cast<int>(h.zero[z].strips.size()); ++i)
                check(strip_use[{z, i}] == 1, "strip not covered exactly once");
        for (int o = 0; o < static_cast<int>(h.one.size()); ++o)
            for (int i = 0; i < static_cast<int>(h.one[o].lanes.size()); ++i)
                if (h.one[o].lanes[i].is_strip)
                    check(lane_use[{o, i}] == 1,
                          "lane not covered exactly once");
    }

    void finish() {
        h.three = 0;
        h.diagram = d;
        h.plus_arcs = plus.arcs;
        h.minus_arcs = minus.arcs;
        check(static_cast<int>(h.zero.size()) == 4 * c + 2 &&
                  static_cast<int>(h.one.size()) == 8 * c + 4 &&
                  static_cast<int>(h.two.size()) == 3 * c + a.region_count(),
              "handle counts out of shape");
    }
};

}  // namespace

std::vector<StrandArc> over_arcs(const KnotDiagram& d,
                                 const DiagramAnalysis& a) {
    std::vector<StrandArc> arcs;
    for (int k = 0; k < d.crossing_count(); ++k)
        arcs.push_back(walk_arc(d, a, k, d.crossings[k].e[2], false));
    return arcs;
}

std::vector<StrandArc> under_arcs(const KnotDiagram& d,
                                  const DiagramAnalysis& a) {
    std::vector<StrandArc> arcs;
    for (int k = 0; k < d.crossing_count(); ++k) {
        int slot = over_exit_slot(a, k);
        arcs.push_back(walk_arc(d, a, k, d.crossings[k].e[slot], true));
    }
    return arcs;
}

Vec2 chart_boundary_point(const Rational& t) { return boundary_point(t); }

HandleStructure build_diagrammatic_handles(const MarkedCompositeDiagram& m) {
    Builder b(m);
    b.run();
    return std::move(b.h);
}

int HandleStructure::corner_count() const {
    int n = 0;
    for (const ZeroHandle& z : zero) n += z.kind == ZeroKind::Corner;
    return n;
}

std::array<int, 4> HandleStructure::handle_counts() const {
    return {static_cast<int>(zero.size()), static_cast<int>(one.size()),
            static_cast<int>(two.size()), three};
}

int euler_characteristic(const HandleStructure& h) {
    return static_cast<int>(h.zero.size()) - static_cast<int>(h.one.size()) +
           static_cast<int>(h.two.size()) - h.three;
}

// ---------------------------------------------------------------------
// Convention validation.

namespace {

std::string handle_name(int dim, int index) {
    return std::to_string(dim) + ":" + std::to_string(index);
}

// Circle arithmetic for chart sub-arcs: intervals may stick out below 0
// (the vertex arc straddling t = 0 does), so compare on the unwrapped
// cover.
bool circle_overlap(const RatInterval& x, const RatInterval& y) {
    for (int shift = -1; shift <= 1; ++shift) {
        Rational off(shift);
        if (x.lo < y.hi + off && y.lo + off < x.hi) return true;
    }
    return false;
}

}  // namespace

bool ConventionReport::pass() const {
    for (const Clause& c : clause)
        if (!c.pass) return false;
    return true;
}

std::string ConventionReport::str() const {
    static const char* names[4] = {"lower attachment", "disjointness",
                                   "product intersections",
                                   "two-handle support"};
    std::ostringstream os;
    for (int i = 0; i < 4; ++i) {
        os << names[i] << ": " << (clause[i].pass ? "pass" : "FAIL");
        for (const std::string& o : clause[i].offenders) os << " " << o;
        os << "\n";
    }
    return os.str();
}

ConventionReport validate_convention(const HandleStructure& h) {
    ConventionReport rep;
    auto flag = [&](int clause, const std::string& offender) {
        rep.clause[clause].pass = false;
        rep.clause[clause].offenders.push_back(offender);
    };

    int nz = static_cast<int>(h.zero.size());
    int no = static_cast<int>(h.one.size());

    // clause 0: 1-handles end on 0-handle vertices and the references
    // agree both ways; circuits alternate and stay in range
    std::map<std::pair<int, int>, int> host;  // (zero, slot) -> one-handle
    for (int o = 0; o < no; ++o) {
        for (int e = 0; e < 2; ++e) {
            int z = h.one[o].ends[e][0];
            int slot = h.one[o].ends[e][1];
            if (z < 0 || z >= nz || slot < 0 ||
                slot >= static_cast<int>(h.zero[z].vertices.size())) {
                flag(0, handle_name(1, o));
                continue;
            }
            if (!(h.zero[z].vertices[slot] == VertexRef{o, e}))
                flag(0, handle_name(1, o));
            auto key = std::make_pair(z, slot);
            if (host.count(key))
                flag(1, handle_name(0, z));
            host[key] = o;
        }
    }
    for (int z = 0; z < nz; ++z)
        for (const PatternStrip& s : h.zero[z].strips) {
            int n = static_cast<int>(h.zero[z].vertices.size());
            if (s.va < 0 || s.va >= n || s.vb < 0 || s.vb >= n ||
                s.two_handle < 0 ||
                s.two_handle >= static_cast<int>(h.two.size()))
                flag(0, handle_name(0, z));
        }

    // clauses 0 and 3 on circuits, collecting lane usage for clause 2
    std::map<std::pair<int, int>, int> lane_use;
    std::map<std::pair<int, int>, int> strip_use;
    for (int t = 0; t < static_cast<int>(h.two.size()); ++t) {
        const auto& circuit = h.two[t].circuit;
        bool lanes_seen = false;
        bool ok = !circuit.empty();
        int n = static_cast<int>(circuit.size());
        for (int i = 0; ok && i < n; ++i) {
            const CircuitStep& s = circuit[i];
            if (s.on_zero) {
                ok = s.handle >= 0 && s.handle < nz && s.piece >= 0 &&
                     s.piece < static_cast<int>(h.zero[s.handle].strips.size());
                if (ok)
                    ok = h.zero[s.handle].strips[s.piece].two_handle == t;
                if (ok) ++strip_use[{s.handle, s.piece}];
            } else {
                lanes_seen = true;
                ok = s.handle >= 0 && s.handle < no && s.piece >= 0 &&
                     s.piece < static_cast<int>(h.one[s.handle].lanes.size());
                if (ok) {
                    const Lane& l = h.one[s.handle].lanes[s.piece];
                    ok = l.is_strip && l.two_handle == t;
                }
                if (ok) ++lane_use[{s.handle, s.piece}];
            }
            if (ok && n > 1)
                ok = s.on_zero != circuit[(i + 1) % n].on_zero;
        }
        if (!ok) flag(0, handle_name(2, t));
        if (ok && !lanes_seen) flag(3, handle_name(2, t));
    }

    // clause 2: the 2-handles meet every 1-handle in full lanes, each
    // lane claimed by exactly one circuit passage
    for (int o = 0; o < no; ++o)
        for (int i = 0; i < static_cast<int>(h.one[o].lanes.size()); ++i)
            if (h.one[o].lanes[i].is_strip && lane_use[{o, i}] != 1)
                flag(2, handle_name(1, o));
    for (int z = 0; z < nz; ++z)
        for (int i = 0; i < static_cast<int>(h.zero[z].strips.size()); ++i)
            if (strip_use[{z, i}] != 1) flag(2, handle_name(0, z));

    // clause 1: chart sub-arcs of one 0-handle are pairwise disjoint
    for (int z = 0; z < nz; ++z) {
        const HandleChart& ch = h.zero[z].chart;
        bool charted = ch.vertex_arc[0].lo != ch.vertex_arc[0].hi;
        if (!charted) continue;
        std::vector<RatInterval> arcs(ch.vertex_arc.begin(),
                                      ch.vertex_arc.end());
        for (const ChartArc& ca : ch.strip_arcs) arcs.push_back(ca.span);
        for (size_t i = 0; i < arcs.size(); ++i)
            for (size_t j = i + 1; j < arcs.size(); ++j)
                if (circle_overlap(arcs[i], arcs[j])) {
                    flag(1, handle_name(0, z));
                    j = arcs.size();
                    i = arcs.size();
                }
    }
    return rep;
}

// ---------------------------------------------------------------------
// JSON dump.

namespace {

void json_rational(std::ostringstream& os, const Rational& v) {
    if (v.den() == 1)
        os << v.num();
    else
        os << '"' << v.str() << '"';
}

void json_interval(std::ostringstream& os, const RatInterval& iv) {
    os << '[';
    json_rational(os, iv.lo);
    os << ',';
    json_rational(os, iv.hi);
    os << ']';
}

const char* route_name(StripRoute r) {
    switch (r) {
        case StripRoute::Side: return "side";
        case StripRoute::Top: return "top";
        case StripRoute::Bottom: return "bottom";
    }
    return "side";
}

void json_prov(std::ostringstream& os, const Provenance& p) {
    bool first = true;
    auto field = [&](const char* name, int v) {
        if (v < 0) return;
        os << (first ? "" : ",") << '"' << name << "\":" << v;
        first = false;
    };
    field("crossing", p.crossing);
    field("corner", p.corner);
    field("slot", p.slot);
    field("edge", p.edge);
    field("side", p.side);
    field("piece", p.piece);
    field("region", p.region);
    field("arc", p.arc);
    if (p.window_half) {
        os << (first ? "" : ",") << "\"window_half\":true";
    }
}

}  // namespace

std::string handles_to_json(const HandleStructure& h) {
    std::ostringstream os;
    auto counts = h.handle_counts();
    os << "{\"counts\":[" << counts[0] << ',' << counts[1] << ',' << counts[2]
       << ',' << counts[3] << "],\"corners\":" << h.corner_count()
       << ",\"euler\":" << euler_characteristic(h);
    os << ",\"zero\":[";
    for (size_t z = 0; z < h.zero.size(); ++z) {
        const ZeroHandle& zh = h.zero[z];
        if (z) os << ',';
        os << "{\"kind\":\""
           << (zh.kind == ZeroKind::Corner ? "corner" : "window_cap")
           << "\",";
        json_prov(os, zh.prov);
        os << ",\"vertices\":[";
        for (size_t v = 0; v < zh.vertices.size(); ++v)
            os << (v ? "," : "") << '[' << zh.vertices[v].one_handle << ','
               << zh.vertices[v].end << ']';
        os << "],\"strips\":[";
        for (size_t s = 0; s < zh.strips.size(); ++s) {
            const PatternStrip& ps = zh.strips[s];
            os << (s ? "," : "") << "{\"two\":" << ps.two_handle
               << ",\"va\":" << ps.va << ",\"vb\":" << ps.vb << ",\"route\":\""
               << route_name(ps.route) << "\",\"level\":" << ps.level << '}';
        }
        os << "],\"faces\":[";
        for (size_t f = 0; f < zh.faces.size(); ++f) {
            const PatternFace& pf = zh.faces[f];
            os << (f ? "," : "") << "{\"boundary\":"
               << (pf.touches_boundary ? "true" : "false") << ",\"word\":[";
            for (size_t w = 0; w < pf.word.size(); ++w) {
                const FaceStep& st = pf.word[w];
                os << (w ? "," : "");
                if (st.at_vertex)
                    os << "{\"vertex\":" << st.index << ",\"gaps\":" << st.gaps
                       << '}';
                else
                    os << "{\"strip\":" << st.index << '}';
            }
            os << "]}";
        }
        os << ']';
        if (zh.chart.vertex_arc[0].lo != zh.chart.vertex_arc[0].hi) {
            os << ",\"chart\":{\"vertices\":[";
            for (int j = 0; j < 4; ++j) {
                if (j) os << ',';
                json_interval(os, zh.chart.vertex_arc[j]);
            }
            os << "],\"arcs\":[";
            for (size_t i = 0; i < zh.chart.strip_arcs.size(); ++i) {
                const ChartArc& ca = zh.chart.strip_arcs[i];
                os << (i ? "," : "") << "{\"strip\":" << ca.strip
                   << ",\"leg\":" << ca.leg << ",\"span\":";
                json_interval(os, ca.span);
                os << '}';
            }
            os << "],\"central\":[";
            for (size_t i = 0; i < zh.chart.central_region.size(); ++i) {
                const Vec2& p = zh.chart.central_region[i];
                os << (i ? "," : "") << '[';
                json_rational(os, p.x);
                os << ',';
                json_rational(os, p.y);
                os << ']';
            }
            os << "]}";
        }
        os << '}';
    }
    os << "],\"one\":[";
    for (size_t o = 0; o < h.one.size(); ++o) {
        const OneHandle& oh = h.one[o];
        if (o) os << ',';
        const char* kind = oh.kind == OneKind::Stub
                               ? "stub"
                               : (oh.kind == OneKind::Flank ? "flank" : "arch");
        os << "{\"kind\":\"" << kind << "\",";
        json_prov(os, oh.prov);
        os << ",\"ends\":[[" << oh.ends[0][0] << ',' << oh.ends[0][1] << "],["
           << oh.ends[1][0] << ',' << oh.ends[1][1] << "]],\"lanes\":[";
        for (size_t l = 0; l < oh.lanes.size(); ++l) {
            const Lane& ln = oh.lanes[l];
            os << (l ? "," : "");
            if (ln.is_strip)
                os << "{\"two\":" << ln.two_handle << ",\"role\":" << ln.role
                   << '}';
            else
                os << "{\"gap\":true,\"boundary\":"
                   << (ln.boundary ? "true" : "false") << '}';
        }
        os << "]}";
    }
    os << "],\"two\":[";
    for (size_t t = 0; t < h.two.size(); ++t) {
        const TwoHandle& th = h.two[t];
        if (t) os << ',';
        const char* kind = "square";
        if (th.kind == TwoKind::Region) kind = "region";
        if (th.kind == TwoKind::OverCanopy) kind = "over_canopy";
        if (th.kind == TwoKind::UnderCanopy) kind = "under_canopy";
        os << "{\"kind\":\"" << kind << "\",";
        json_prov(os, th.prov);
        os << ",\"circuit\":[";
        for (size_t s = 0; s < th.circuit.size(); ++s) {
            const CircuitStep& cs = th.circuit[s];
            os << (s ? "," : "") << '{'
               << (cs.on_zero ? "\"zero\":" : "\"one\":") << cs.handle
               << (cs.on_zero ? ",\"strip\":" : ",\"lane\":") << cs.piece
               << ",\"rev\":" << (cs.reversed ? "true" : "false") << '}';
        }
        os << "]}";
    }
    os << "]";
    if (h.window.edge >= 0) {
        os << ",\"window\":{\"edge\":" << h.window.edge
           << ",\"over_arc\":" << h.window.over_arc
           << ",\"under_arc\":" << h.window.under_arc
           << ",\"caps\":[" << h.window.cap[0] << ',' << h.window.cap[1]
           << "],\"arches\":[" << h.window.arch[0] << ',' << h.window.arch[1]
           << "]}";
    }
    os << '}';
    return os.str();
}

}  // namespace knotfactor
