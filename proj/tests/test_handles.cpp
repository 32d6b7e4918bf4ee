#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "knotfactor/diagram.hpp"
#include "knotfactor/handles.hpp"

using namespace knotfactor;

namespace {

KnotDiagram trefoil() { return parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"); }
KnotDiagram figure8() { return braid_closure(3, {1, -2, 1, -2}); }
KnotDiagram kink() { return braid_closure(2, {1}); }

MarkedCompositeDiagram granny() { return connected_sum({trefoil(), trefoil()}); }

// Deterministic supply of one-component braid closures.
struct KnotSource {
    std::mt19937 rng{20260814};

    KnotDiagram next(int max_crossings) {
        for (;;) {
            int strands = 2 + static_cast<int>(rng() % 2);
            int len = 1 + static_cast<int>(rng() % max_crossings);
            std::vector<int> word;
            for (int i = 0; i < len; ++i) {
                int g = 1 + static_cast<int>(rng() % (strands - 1));
                word.push_back(rng() % 2 ? g : -g);
            }
            KnotDiagram d = braid_closure(strands, word);
            if (d.component_count() == 1 && !d.components[0].empty()) return d;
        }
    }

    MarkedCompositeDiagram next_composite(int max_total) {
        int summands = 1 + static_cast<int>(rng() % 2);
        std::vector<KnotDiagram> parts;
        int budget = max_total;
        for (int i = 0; i < summands; ++i) {
            int cap = budget - (summands - 1 - i);
            parts.push_back(next(std::min(cap, 6)));
            budget -= parts.back().crossing_count();
        }
        return connected_sum(parts);
    }
};

Rational polygon_area_doubled(const std::vector<Vec2>& poly) {
    Rational area(0);
    int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        area = area + (p.x * q.y - q.x * p.y);
    }
    return area;
}

}  // namespace

TEST_CASE("over and under arcs partition the edges") {
    for (const KnotDiagram& d : {trefoil(), figure8(), kink()}) {
        DiagramAnalysis a = analyze(d);
        int c = d.crossing_count();
        for (bool over : {true, false}) {
            auto arcs = over ? over_arcs(d, a) : under_arcs(d, a);
            CHECK(static_cast<int>(arcs.size()) == c);
            std::map<int, int> edge_seen;
            std::vector<int> passed(c, 0);
            int total_edges = 0;
            for (const StrandArc& arc : arcs) {
                CHECK(!arc.edges.empty());
                CHECK(static_cast<int>(arc.passes.size()) ==
                      static_cast<int>(arc.edges.size()) - 1);
                for (int e : arc.edges) ++edge_seen[e];
                for (auto [k, slot] : arc.passes) {
                    ++passed[k];
                    // over-strands cross at the east/west slots, the
                    // under-strand at the south slot
                    CHECK((over ? slot % 2 == 1 : slot == 0));
                }
                total_edges += static_cast<int>(arc.edges.size());
            }
            CHECK(total_edges == 2 * c);
            for (auto [e, n] : edge_seen) {
                (void)e;
                CHECK(n == 1);
            }
            for (int k = 0; k < c; ++k) CHECK(passed[k] == 1);
        }
    }
}

TEST_CASE("trefoil summand tallies") {
    HandleStructure h = build_diagrammatic_handles(connected_sum({trefoil()}));
    CHECK(h.handle_counts() == std::array<int, 4>{14, 28, 14, 0});
    CHECK(h.corner_count() == 12);
    CHECK(euler_characteristic(h) == 0);
    int caps = 0;
    for (const ZeroHandle& z : h.zero) caps += z.kind == ZeroKind::WindowCap;
    CHECK(caps == 2);
    // charts cover exactly the corners
    for (const ZeroHandle& z : h.zero) {
        bool charted = z.chart.vertex_arc[0].lo != z.chart.vertex_arc[0].hi;
        CHECK(charted == (z.kind == ZeroKind::Corner));
    }
    CHECK(h.window.edge == connected_sum({trefoil()}).window_edge());
}

TEST_CASE("granny composite tallies") {
    HandleStructure h = build_diagrammatic_handles(granny());
    CHECK(h.handle_counts() == std::array<int, 4>{26, 52, 26, 0});
    CHECK(h.corner_count() == 24);
    CHECK(euler_characteristic(h) == 0);
    CHECK(validate_convention(h).pass());
}

TEST_CASE("every handle carries provenance") {
    HandleStructure h = build_diagrammatic_handles(granny());
    for (const ZeroHandle& z : h.zero) {
        if (z.kind == ZeroKind::Corner)
            CHECK((z.prov.crossing >= 0 && z.prov.corner >= 0));
        else
            CHECK(z.prov.side >= 0);
    }
    for (const OneHandle& o : h.one) {
        if (o.kind == OneKind::Stub)
            CHECK((o.prov.crossing >= 0 && o.prov.slot >= 0));
        if (o.kind == OneKind::Flank) CHECK((o.prov.edge >= 0 && o.prov.side >= 0));
        if (o.kind == OneKind::Arch) CHECK(o.prov.piece >= 0);
    }
    for (const TwoHandle& t : h.two) {
        bool tagged = t.prov.crossing >= 0 || t.prov.region >= 0 ||
                      t.prov.arc >= 0;
        CHECK(tagged);
    }
    // canopy handles know which side of the projection they occupy
    for (const ZeroHandle& z : h.zero)
        for (const PatternStrip& s : z.strips) {
            TwoKind k = h.two[s.two_handle].kind;
            if (s.route == StripRoute::Top)
                CHECK(k == TwoKind::OverCanopy);
            if (s.route == StripRoute::Bottom)
                CHECK(k == TwoKind::UnderCanopy);
            if (s.level > 0) CHECK(k == TwoKind::OverCanopy);
            if (s.level < 0) CHECK(k == TwoKind::UnderCanopy);
        }
}

TEST_CASE("randomized diagrams keep the closed-form tallies") {
    KnotSource src;
    for (int trial = 0; trial < 30; ++trial) {
        MarkedCompositeDiagram m = src.next_composite(12);
        int c = m.diagram.crossing_count();
        REQUIRE(c >= 1);
        REQUIRE(c <= 12);
        HandleStructure h = build_diagrammatic_handles(m);
        CHECK(h.handle_counts() ==
              std::array<int, 4>{4 * c + 2, 8 * c + 4, 4 * c + 2, 0});
        CHECK(h.corner_count() == 4 * c);
        CHECK(euler_characteristic(h) == 0);
        ConventionReport rep = validate_convention(h);
        if (!rep.pass()) MESSAGE(rep.str());
        CHECK(rep.pass());
    }
}

TEST_CASE("attachment references agree both ways") {
    HandleStructure h = build_diagrammatic_handles(connected_sum({figure8()}));
    for (int o = 0; o < static_cast<int>(h.one.size()); ++o)
        for (int e = 0; e < 2; ++e) {
            auto [z, slot] = h.one[o].ends[e];
            REQUIRE(z >= 0);
            REQUIRE(z < static_cast<int>(h.zero.size()));
            CHECK(h.zero[z].vertices[slot] == VertexRef{o, e});
        }
    // each vertex hosts exactly one 1-handle end
    std::set<std::pair<int, int>> slots;
    for (int z = 0; z < static_cast<int>(h.zero.size()); ++z)
        for (int v = 0; v < static_cast<int>(h.zero[z].vertices.size()); ++v)
            CHECK(slots.insert({h.zero[z].vertices[v].one_handle,
                                h.zero[z].vertices[v].end})
                      .second);
}

TEST_CASE("boundary pattern faces close up spheres") {
    HandleStructure h = build_diagrammatic_handles(granny());
    int full_corners = 0;
    for (const ZeroHandle& z : h.zero) {
        if (z.kind == ZeroKind::Corner && z.strips.size() == 6) {
            ++full_corners;
            CHECK(z.faces.size() == 4);
            int boundary = 0;
            for (const PatternFace& f : z.faces) boundary += f.touches_boundary;
            // two faces hug the strand tube, the other two are capped
            // off above and below the projection plane
            CHECK(boundary == 2);
        }
        if (z.kind == ZeroKind::WindowCap) {
            CHECK(z.faces.size() == 1);
            CHECK(z.faces[0].touches_boundary);
        }
    }
    CHECK(full_corners > 0);
}

TEST_CASE("chart arcs are disjoint, ordered, with a convex central region") {
    HandleStructure h = build_diagrammatic_handles(granny());
    for (const ZeroHandle& z : h.zero) {
        if (z.kind != ZeroKind::Corner) continue;
        const HandleChart& ch = z.chart;
        for (size_t i = 1; i < ch.strip_arcs.size(); ++i)
            CHECK(ch.strip_arcs[i - 1].span.hi < ch.strip_arcs[i].span.lo);
        CHECK(!ch.central_region.empty());
        Rational area = polygon_area_doubled(ch.central_region);
        CHECK(Rational(0) < area);
        // chords present: region confined to the strip between the
        // chord's two wall arcs, so x stays within [5/8, 13/16]
        bool has_east_chord = false;
        for (const PatternStrip& s : z.strips)
            has_east_chord = has_east_chord ||
                             (s.va == 1 && s.vb == 3 && s.route != StripRoute::Side);
        if (has_east_chord)
            for (const Vec2& p : ch.central_region) {
                CHECK(Rational(5, 8) <= p.x);
                CHECK(p.x <= Rational(13, 16));
            }
    }
}

TEST_CASE("window scarring trims the marked arcs") {
    MarkedCompositeDiagram m = connected_sum({kink()});
    HandleStructure h = build_diagrammatic_handles(m);
    CHECK(h.handle_counts() == std::array<int, 4>{6, 12, 6, 0});
    CHECK(euler_characteristic(h) == 0);
    CHECK(validate_convention(h).pass());
    // both strand arcs lose their tail half, so some corner misses a
    // chord or a cap
    int stripped = 0;
    for (const ZeroHandle& z : h.zero)
        if (z.kind == ZeroKind::Corner && z.strips.size() < 6) ++stripped;
    CHECK(stripped > 0);
    // the window caps carry the split flank pieces and the arches
    for (int side = 0; side < 2; ++side) {
        const ZeroHandle& cap = h.zero[h.window.cap[side]];
        CHECK(cap.kind == ZeroKind::WindowCap);
        CHECK(cap.vertices.size() == 4);
    }
}

TEST_CASE("scarring follows the subdivision point on every composite") {
    KnotSource src;
    for (int trial = 0; trial < 8; ++trial) {
        MarkedCompositeDiagram m = src.next_composite(10);
        HandleStructure h = build_diagrammatic_handles(m);
        CHECK(h.window.edge == m.window_edge());
        // the kept halves of the marked arcs stay attached to the caps
        bool over_on_cap = false, under_on_cap = false;
        for (const TwoHandle& t : h.two)
            for (const CircuitStep& s : t.circuit) {
                if (!s.on_zero) continue;
                if (s.handle != h.window.cap[0] && s.handle != h.window.cap[1])
                    continue;
                if (t.kind == TwoKind::OverCanopy) over_on_cap = true;
                if (t.kind == TwoKind::UnderCanopy) under_on_cap = true;
            }
        CHECK(over_on_cap);
        CHECK(under_on_cap);
    }
}

TEST_CASE("euler characteristic fixtures") {
    HandleStructure ball;
    ball.zero.resize(1);
    CHECK(euler_characteristic(ball) == 1);
    HandleStructure solid_torus;
    solid_torus.zero.resize(1);
    solid_torus.one.resize(1);
    solid_torus.one[0].ends[0] = {0, 0};
    solid_torus.one[0].ends[1] = {0, 1};
    CHECK(euler_characteristic(solid_torus) == 0);
}

TEST_CASE("a two-handle over zero one-handles fails the support clause") {
    HandleStructure h;
    h.zero.resize(1);
    h.one.resize(1);
    h.two.resize(1);
    h.one[0].ends[0] = {0, 0};
    h.one[0].ends[1] = {0, 1};
    h.one[0].lanes = {};  // bare handle, no lanes
    h.zero[0].vertices = {VertexRef{0, 0}, VertexRef{0, 1}};
    PatternStrip s;
    s.two_handle = 0;
    s.va = 0;
    s.vb = 1;
    h.zero[0].strips = {s};
    h.two[0].circuit = {{true, 0, 0, false}};
    ConventionReport rep = validate_convention(h);
    CHECK(rep.clause[0].pass);
    CHECK(rep.clause[1].pass);
    CHECK(rep.clause[2].pass);
    CHECK(!rep.clause[3].pass);
    REQUIRE(rep.clause[3].offenders.size() == 1);
    CHECK(rep.clause[3].offenders[0] == "2:0");
    CHECK(!rep.pass());
    CHECK(rep.str().find("FAIL") != std::string::npos);
}

TEST_CASE("overlapping placements fail the disjointness clause") {
    // chart overlap on one 0-handle
    HandleStructure h = build_diagrammatic_handles(connected_sum({trefoil()}));
    REQUIRE(!h.zero[0].chart.strip_arcs.empty());
    h.zero[0].chart.strip_arcs[0].span = {Rational(-1, 32), Rational(1, 32)};
    ConventionReport rep = validate_convention(h);
    CHECK(!rep.clause[1].pass);
    CHECK(rep.clause[1].offenders[0] == "0:0");

    // two 1-handle ends landing on one thickened vertex
    HandleStructure g;
    g.zero.resize(1);
    g.one.resize(2);
    g.one[0].ends[0] = {0, 0};
    g.one[0].ends[1] = {0, 1};
    g.one[1].ends[0] = {0, 0};
    g.one[1].ends[1] = {0, 2};
    g.zero[0].vertices = {VertexRef{0, 0}, VertexRef{0, 1}, VertexRef{1, 1}};
    ConventionReport rep2 = validate_convention(g);
    CHECK(!rep2.clause[1].pass);
}

TEST_CASE("wrap-around chart overlap is detected") {
    HandleStructure h = build_diagrammatic_handles(connected_sum({trefoil()}));
    // an arc hugging t = 1 from below pokes into the vertex straddling 0
    h.zero[0].chart.strip_arcs.back().span = {Rational(125, 128),
                                              Rational(127, 128)};
    ConventionReport rep = validate_convention(h);
    CHECK(!rep.clause[1].pass);
}

TEST_CASE("json dump is deterministic and well formed") {
    MarkedCompositeDiagram m = granny();
    std::string j1 = handles_to_json(build_diagrammatic_handles(m));
    std::string j2 = handles_to_json(build_diagrammatic_handles(m));
    CHECK(j1 == j2);
    auto parsed = nlohmann::json::parse(j1);
    CHECK(parsed["counts"] == nlohmann::json::array({26, 52, 26, 0}));
    CHECK(parsed["corners"] == 24);
    CHECK(parsed["euler"] == 0);
    CHECK(parsed["zero"].size() == 26);
    CHECK(parsed["one"].size() == 52);
    CHECK(parsed["two"].size() == 26);
    CHECK(parsed["window"]["edge"] == m.window_edge());
}

TEST_CASE("chart boundary parameterization walks the square") {
    CHECK(chart_boundary_point(Rational(0)) == Vec2{Rational(1), Rational(0)});
    CHECK(chart_boundary_point(Rational(1, 8)) ==
          Vec2{Rational(1), Rational(1)});
    CHECK(chart_boundary_point(Rational(1, 4)) ==
          Vec2{Rational(0), Rational(1)});
    CHECK(chart_boundary_point(Rational(1, 2)) ==
          Vec2{Rational(-1), Rational(0)});
    CHECK(chart_boundary_point(Rational(3, 4)) ==
          Vec2{Rational(0), Rational(-1)});
    // negative parameters wrap
    CHECK(chart_boundary_point(Rational(-1, 4)) ==
          Vec2{Rational(0), Rational(-1)});
}
