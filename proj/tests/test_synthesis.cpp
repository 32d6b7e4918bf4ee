#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "knotfactor/errors.hpp"
#include "knotfactor/handles.hpp"
#include "knotfactor/synthesis.hpp"

using namespace knotfactor;

namespace {

Vec2 pt(long long xn, long long xd, long long yn, long long yd) {
    return Vec2{Rational(xn, xd), Rational(yn, yd)};
}

ProjectedArc chord(const Vec2& a, const Vec2& b) {
    ProjectedArc arc;
    arc.a = a;
    arc.b = b;
    return arc;
}

ProjectedArc bent_arc(const Vec2& a, const Vec2& apex, const Vec2& b) {
    ProjectedArc arc;
    arc.bent = true;
    arc.a = a;
    arc.apex = apex;
    arc.b = b;
    return arc;
}

ChartArrangement chart_of(std::vector<ProjectedArc> arcs) {
    ChartArrangement chart;
    chart.arcs = std::move(arcs);
    return chart;
}

// Both endpoints on one closed edge of the square: the chord runs along
// the perimeter instead of through the interior.
bool along_edge(const Vec2& a, const Vec2& b) {
    Rational one(1), minus(-1);
    if (a.x == b.x && (a.x == one || a.x == minus)) return true;
    if (a.y == b.y && (a.y == one || a.y == minus)) return true;
    return false;
}

ErrorKind kind_of(const ChartArrangement& chart) {
    try {
        count_chart_crossings(chart);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected the arrangement to be rejected");
    return ErrorKind::Mismatch;
}

}  // namespace

TEST_CASE("empty and singleton charts count zero") {
    CHECK(count_chart_crossings(ChartArrangement{}).total() == 0);
    auto one = chart_of({chord(pt(1, 1, 0, 1), pt(-1, 1, 0, 1))});
    CHECK(count_chart_crossings(one).total() == 0);
    auto folded = chart_of({bent_arc(pt(1, 1, 0, 1), pt(0, 1, 1, 2), pt(-1, 1, 0, 1))});
    CHECK(count_chart_crossings(folded).total() == 0);
}

TEST_CASE("two chords cross exactly when their endpoints interleave") {
    // Sweep every 4-subset of a 16-point perimeter grid and all three
    // ways of pairing the four points into two chords.  Only the
    // pairing that links first-to-third and second-to-fourth
    // interleaves, and only it may cross.
    std::vector<Rational> grid;
    for (int j = 0; j < 16; ++j) grid.push_back(Rational(4 * j + 1, 64));
    const int pairing[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (int a = 0; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b)
            for (int c = b + 1; c < 16; ++c)
                for (int d = c + 1; d < 16; ++d) {
                    Vec2 p[4] = {chart_boundary_point(grid[a]), chart_boundary_point(grid[b]),
                                 chart_boundary_point(grid[c]), chart_boundary_point(grid[d])};
                    for (int w = 0; w < 3; ++w) {
                        Vec2 u = p[pairing[w][0]], v = p[pairing[w][1]];
                        Vec2 s = p[pairing[w][2]], t = p[pairing[w][3]];
                        if (along_edge(u, v) || along_edge(s, t)) continue;
                        auto ledger = count_chart_crossings(chart_of({chord(u, v), chord(s, t)}));
                        CHECK(ledger.straight_straight == (w == 1 ? 1 : 0));
                    }
                }
}

TEST_CASE("saturated chart meets every cap exactly") {
    auto ledger = count_chart_crossings(saturated_chart());
    CHECK(ledger.straight_straight == 20);
    CHECK(ledger.straight_bent == 16);
    CHECK(ledger.bent_bent == 2);
    CHECK(ledger.total() == 38);
}

TEST_CASE("saturated chart folds inside the central region") {
    auto chart = saturated_chart();
    int bent = 0;
    for (const auto& arc : chart.arcs) {
        if (!arc.bent) continue;
        ++bent;
        CHECK(arc.apex.x >= Rational(5, 8));
        CHECK(arc.apex.x <= Rational(13, 16));
        CHECK(arc.apex.y >= Rational(-13, 16));
        CHECK(arc.apex.y <= Rational(-5, 8));
    }
    CHECK(bent == 2);
    CHECK(chart.arcs.size() == 10);
}

TEST_CASE("saturated chart certifies against the caps") {
    ProjectedDiagram d;
    d.charts = {saturated_chart()};
    d.diagram_crossings = 1;
    auto report = count_crossings(d);
    CHECK(report.total == 38);
    CHECK(report.bound == 152);
    REQUIRE(report.per_chart.size() == 1);
    CHECK(report.per_chart[0].straight_straight == 20);
    CHECK(report.per_chart[0].straight_bent == 16);
    CHECK(report.per_chart[0].bent_bent == 2);
}

TEST_CASE("free chart realizes the undisciplined ledger") {
    auto ledger = count_chart_crossings(free_saturated_chart());
    CHECK(ledger.straight_straight == 28);
    CHECK(ledger.straight_bent == 32);
    CHECK(ledger.bent_bent == 4);
    CHECK(ledger.total() == 64);
}

TEST_CASE("certification rejects the free chart and names the tally") {
    auto expect_breach = [](std::vector<ProjectedArc> arcs, const std::string& tally) {
        ProjectedDiagram d;
        d.charts = {chart_of(std::move(arcs))};
        d.charts[0].zero_handle = 7;
        d.diagram_crossings = 1;
        try {
            count_crossings(d);
            FAIL("expected a cap breach for the " << tally << " tally");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::BoundViolated);
            std::string msg = e.what();
            CHECK(msg.find(tally) != std::string::npos);
            CHECK(msg.find("0-handle 7") != std::string::npos);
        }
    };

    auto full = free_saturated_chart().arcs;
    expect_breach(full, "straight-straight");
    expect_breach({full.begin(), full.begin() + 8}, "straight-straight");
    expect_breach({full.begin() + 8, full.end()}, "bent-bent");

    // Nested chords never cross each other, but every leg of the two
    // bent fans sweeps all eight, so only the straight-bent tally
    // breaches its cap.
    std::vector<ProjectedArc> fans;
    for (long long k = 0; k < 8; ++k)
        fans.push_back(chord(chart_boundary_point(Rational(10 + k, 64)),
                             chart_boundary_point(Rational(54 - k, 64))));
    Vec2 fold1 = Vec2{chart_boundary_point(Rational(1, 256)).x * Rational(255, 256),
                      chart_boundary_point(Rational(1, 256)).y * Rational(255, 256)};
    Vec2 fold2 = Vec2{chart_boundary_point(Rational(2, 256)).x * Rational(255, 256),
                      chart_boundary_point(Rational(2, 256)).y * Rational(255, 256)};
    fans.push_back(bent_arc(chart_boundary_point(Rational(31, 64)), fold1,
                            chart_boundary_point(Rational(33, 64))));
    fans.push_back(bent_arc(chart_boundary_point(Rational(30, 64)), fold2,
                            chart_boundary_point(Rational(34, 64))));
    auto ledger = count_chart_crossings(chart_of(fans));
    CHECK(ledger.straight_straight == 0);
    CHECK(ledger.straight_bent == 32);
    CHECK(ledger.bent_bent == 2);
    expect_breach(fans, "straight-bent");
}

TEST_CASE("opposite wall strips never meet") {
    auto all = saturated_chart().arcs;
    auto east_west = chart_of({all[0], all[1], all[4], all[5]});
    CHECK(count_chart_crossings(east_west).straight_straight == 2);
    auto north_south = chart_of({all[2], all[3], all[6], all[7]});
    CHECK(count_chart_crossings(north_south).straight_straight == 2);
}

TEST_CASE("a bent arc can straddle a chord and meet it twice") {
    auto chart = chart_of({chord(pt(0, 1, 1, 1), pt(0, 1, -1, 1)),
                           bent_arc(pt(-1, 1, 1, 2), pt(1, 2, 0, 1), pt(-1, 1, -1, 2))});
    auto ledger = count_chart_crossings(chart);
    CHECK(ledger.straight_bent == 2);
    CHECK(ledger.total() == 2);
}

TEST_CASE("the diagram budget scales with the crossing count") {
    ProjectedDiagram d;
    for (int k = 0; k < 5; ++k) d.charts.push_back(saturated_chart());
    d.diagram_crossings = 1;
    try {
        count_crossings(d);
        FAIL("five saturated charts exceed one crossing's budget");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BoundViolated);
        CHECK(std::string(e.what()).find("budget") != std::string::npos);
    }
    d.diagram_crossings = 2;
    auto report = count_crossings(d);
    CHECK(report.total == 190);
    CHECK(report.bound == 304);
    CHECK(report.per_chart.size() == 5);

    ProjectedDiagram empty;
    CHECK(count_crossings(empty).total == 0);
}

TEST_CASE("malformed arrangements are rejected as input errors") {
    Vec2 east = pt(1, 1, 0, 1), west = pt(-1, 1, 0, 1);
    Vec2 north = pt(0, 1, 1, 1);

    // endpoint in the interior, endpoint outside, coincident endpoints
    CHECK(kind_of(chart_of({chord(pt(1, 2, 1, 2), west)})) == ErrorKind::InvalidIncidence);
    CHECK(kind_of(chart_of({chord(pt(3, 2, 0, 1), west)})) == ErrorKind::InvalidIncidence);
    CHECK(kind_of(chart_of({chord(east, east)})) == ErrorKind::InvalidIncidence);
    // fold point must be strictly interior
    CHECK(kind_of(chart_of({bent_arc(west, north, east)})) == ErrorKind::InvalidIncidence);
    // two arcs sharing a boundary endpoint
    CHECK(kind_of(chart_of({chord(east, west), chord(east, north)})) ==
          ErrorKind::InvalidIncidence);
}

TEST_CASE("arrangements out of general position are rejected") {
    Vec2 east = pt(1, 1, 0, 1), west = pt(-1, 1, 0, 1);
    Vec2 north = pt(0, 1, 1, 1), south = pt(0, 1, -1, 1);
    Vec2 origin = pt(0, 1, 0, 1);

    // chord grazing another arc's fold point
    auto grazed = chart_of({bent_arc(west, origin, east),
                            chord(pt(-1, 1, -1, 1), pt(1, 1, 1, 1))});
    CHECK(kind_of(grazed) == ErrorKind::InvalidIncidence);
    // two bent arcs sharing a fold point
    auto shared_fold = chart_of({bent_arc(west, origin, east), bent_arc(north, origin, south)});
    CHECK(kind_of(shared_fold) == ErrorKind::InvalidIncidence);
    // collinear overlap between legs of two bent arcs
    auto overlap = chart_of({bent_arc(pt(1, 1, 1, 2), pt(-1, 2, -1, 4), pt(-1, 1, 1, 2)),
                             bent_arc(pt(-1, 1, -1, 2), pt(1, 2, 1, 4), pt(1, 1, -1, 2))});
    CHECK(kind_of(overlap) == ErrorKind::InvalidIncidence);
    // endpoint of one chord interior to an edge-running chord
    auto edge_run = chart_of({chord(pt(1, 1, -1, 2), pt(1, 1, 1, 2)), chord(east, west)});
    CHECK(kind_of(edge_run) == ErrorKind::InvalidIncidence);
}

TEST_CASE("the ledger ignores arc order") {
    auto base = saturated_chart();
    std::mt19937 rng(20260814);
    for (int round = 0; round < 10; ++round) {
        auto shuffled = base;
        std::shuffle(shuffled.arcs.begin(), shuffled.arcs.end(), rng);
        auto ledger = count_chart_crossings(shuffled);
        CHECK(ledger.straight_straight == 20);
        CHECK(ledger.straight_bent == 16);
        CHECK(ledger.bent_bent == 2);
    }
}

TEST_CASE("counts only depend on the endpoint cycle for straight charts") {
    std::mt19937 rng(20260814);

    // Draws `count` distinct perimeter parameters clear of the corners.
    auto sample = [&rng](int count) {
        std::set<long long> nums;
        while (static_cast<int>(nums.size()) < count)
            nums.insert(2 * static_cast<long long>(rng() % 2048) + 1);
        return std::vector<long long>(nums.begin(), nums.end());
    };

    for (int round = 0; round < 40; ++round) {
        int chords = 2 + static_cast<int>(rng() % 7);

        // a pairing of 2n boundary points into chords, avoiding chords
        // that run along an edge
        std::vector<int> order(2 * chords);
        std::vector<long long> params;
        std::vector<Vec2> points;
        auto redraw = [&]() {
            params = sample(2 * chords);
            points.clear();
            for (long long n : params) points.push_back(chart_boundary_point(Rational(n, 4096)));
            for (int i = 0; i < 2 * chords; ++i) order[i] = i;
            std::shuffle(order.begin(), order.end(), rng);
        };
        auto edge_free = [&]() {
            for (int i = 0; i < chords; ++i)
                if (along_edge(points[order[2 * i]], points[order[2 * i + 1]])) return false;
            return true;
        };
        do {
            redraw();
        } while (!edge_free());

        std::vector<ProjectedArc> arcs;
        for (int i = 0; i < chords; ++i)
            arcs.push_back(chord(points[order[2 * i]], points[order[2 * i + 1]]));
        int before = count_chart_crossings(chart_of(arcs)).straight_straight;

        // re-coordinatize: new parameter values and a rotation of the
        // cycle, preserving the cyclic order of the endpoints
        std::vector<int> rank(2 * chords);
        for (int i = 0; i < 2 * chords; ++i) rank[i] = i;
        std::sort(rank.begin(), rank.end(),
                  [&](int l, int r) { return params[l] < params[r]; });
        std::vector<Vec2> remapped(2 * chords);
        bool ok = false;
        while (!ok) {
            auto fresh = sample(2 * chords);
            int spin = static_cast<int>(rng() % (2 * chords));
            for (int k = 0; k < 2 * chords; ++k)
                remapped[rank[k]] =
                    chart_boundary_point(Rational(fresh[(k + spin) % (2 * chords)], 4096));
            ok = true;
            for (int i = 0; i < chords && ok; ++i)
                if (along_edge(remapped[order[2 * i]], remapped[order[2 * i + 1]])) ok = false;
        }
        std::vector<ProjectedArc> rearcs;
        for (int i = 0; i < chords; ++i)
            rearcs.push_back(chord(remapped[order[2 * i]], remapped[order[2 * i + 1]]));
        CHECK(count_chart_crossings(chart_of(rearcs)).straight_straight == before);
    }
}
