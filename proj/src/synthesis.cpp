// Chart projection and exact crossing counting.
//
// The chart square is [-1,1]^2.  A projected arc is either a straight
// chord between two perimeter points or a bent two-segment polyline
// with an interior fold point.  Crossings are counted pairwise per
// chart with exact rational orientation tests.  Anything short of a
// transversal interior crossing between two distinct arcs (a shared
// point, a chord grazing a fold, a collinear overlap) means the
// arrangement is not in general position and is rejected, because the
// geometric realization promises pairwise transverse arcs with
// distinct endpoints.
//
// The fixture charts realize the two extremes of the pair counting.
// The saturated chart keeps the wall-strip discipline: each triangle
// type's chord pair stays in the wall strip at its corner, and the two
// bent arcs fold inside the central region, so the tallies reach the
// caps 20 + 16 + 2 exactly.  The free variant drops the discipline:
// eight chords cross pairwise and both legs of either bent arc sweep
// the whole pack, reaching 28 + 32 + 4.

#include "knotfactor/synthesis.hpp"

#include <cstddef>
#include <string>

#include "knotfactor/errors.hpp"
#include "knotfactor/handles.hpp"

namespace knotfactor {

namespace {

// One straight piece of an arc: the whole chord, or half of a bent arc.
struct Piece {
    Vec2 a, b;
};

int piece_count(const ProjectedArc& arc) { return arc.bent ? 2 : 1; }

Piece piece_of(const ProjectedArc& arc, int k) {
    if (!arc.bent) return {arc.a, arc.b};
    return k == 0 ? Piece{arc.a, arc.apex} : Piece{arc.apex, arc.b};
}

Rational abs_r(const Rational& v) { return v.sign() < 0 ? -v : v; }

bool on_perimeter(const Vec2& p) {
    Rational one(1);
    Rational ax = abs_r(p.x), ay = abs_r(p.y);
    if (ax > one || ay > one) return false;
    return ax == one || ay == one;
}

bool strictly_inside(const Vec2& p) {
    Rational one(1);
    return abs_r(p.x) < one && abs_r(p.y) < one;
}

// Contact classification for closed segments of two distinct arcs:
// 1 proper transversal crossing, 0 disjoint, -1 degenerate.
int contact(const Piece& s, const Piece& t) {
    bool collinear_overlap = false;
    if (segments_cross(s.a, s.b, t.a, t.b, &collinear_overlap)) return 1;
    if (collinear_overlap) return -1;
    if (on_segment(s.a, s.b, t.a) || on_segment(s.a, s.b, t.b) ||
        on_segment(t.a, t.b, s.a) || on_segment(t.a, t.b, s.b))
        return -1;
    return 0;
}

void validate_arrangement(const ChartArrangement& chart) {
    const auto& arcs = chart.arcs;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const ProjectedArc& arc = arcs[i];
        if (!on_perimeter(arc.a) || !on_perimeter(arc.b))
            fail(ErrorKind::InvalidIncidence,
                 "arc " + std::to_string(i) + " has an endpoint off the chart perimeter");
        if (arc.a == arc.b)
            fail(ErrorKind::InvalidIncidence,
                 "arc " + std::to_string(i) + " has coincident endpoints");
        if (arc.bent && !strictly_inside(arc.apex))
            fail(ErrorKind::InvalidIncidence,
                 "arc " + std::to_string(i) + " has its fold point on or outside the perimeter");
    }
    for (std::size_t i = 0; i < arcs.size(); ++i)
        for (std::size_t j = i + 1; j < arcs.size(); ++j) {
            const Vec2 lhs[2] = {arcs[i].a, arcs[i].b};
            const Vec2 rhs[2] = {arcs[j].a, arcs[j].b};
            for (const Vec2& p : lhs)
                for (const Vec2& q : rhs)
                    if (p == q)
                        fail(ErrorKind::InvalidIncidence,
                             "arcs " + std::to_string(i) + " and " + std::to_string(j) +
                                 " share the endpoint (" + p.x.str() + ", " + p.y.str() + ")");
        }
}

// First arc pair that pushed a tally past its cap, if any.
struct CapBreach {
    int category = -1;  // 0 straight-straight, 1 straight-bent, 2 bent-bent, 3 total
    int arc_i = -1;
    int arc_j = -1;
};

const char* kCategoryName[4] = {"straight-straight", "straight-bent", "bent-bent", "total"};
const int kCategoryCap[4] = {kMaxStraightStraight, kMaxStraightBent, kMaxBentBent, kMaxPerChart};

ChartLedger scan_chart(const ChartArrangement& chart, CapBreach* breach) {
    validate_arrangement(chart);
    ChartLedger ledger;
    const auto& arcs = chart.arcs;
    for (std::size_t i = 0; i < arcs.size(); ++i)
        for (std::size_t j = i + 1; j < arcs.size(); ++j) {
            int hits = 0;
            for (int p = 0; p < piece_count(arcs[i]); ++p)
                for (int q = 0; q < piece_count(arcs[j]); ++q) {
                    int c = contact(piece_of(arcs[i], p), piece_of(arcs[j], q));
                    if (c < 0)
                        fail(ErrorKind::InvalidIncidence,
                             "arcs " + std::to_string(i) + " and " + std::to_string(j) +
                                 " are not transverse");
                    hits += c;
                }
            if (hits == 0) continue;
            int category;
            if (arcs[i].bent && arcs[j].bent)
                category = 2;
            else if (arcs[i].bent || arcs[j].bent)
                category = 1;
            else
                category = 0;
            int* cell = category == 0   ? &ledger.straight_straight
                        : category == 1 ? &ledger.straight_bent
                                        : &ledger.bent_bent;
            *cell += hits;
            if (breach && breach->category < 0) {
                if (*cell > kCategoryCap[category])
                    *breach = {category, static_cast<int>(i), static_cast<int>(j)};
                else if (ledger.total() > kMaxPerChart)
                    *breach = {3, static_cast<int>(i), static_cast<int>(j)};
            }
        }
    return ledger;
}

}  // namespace

ChartLedger count_chart_crossings(const ChartArrangement& chart) {
    return scan_chart(chart, nullptr);
}

CrossingReport count_crossings(const ProjectedDiagram& d) {
    CrossingReport report;
    report.bound = kCrossingFactor * d.diagram_crossings;
    for (std::size_t k = 0; k < d.charts.size(); ++k) {
        CapBreach breach;
        ChartLedger ledger = scan_chart(d.charts[k], &breach);
        if (breach.category >= 0)
            fail(ErrorKind::BoundViolated,
                 "chart " + std::to_string(k) + " (0-handle " +
                     std::to_string(d.charts[k].zero_handle) + "): " +
                     kCategoryName[breach.category] + " crossings exceed " +
                     std::to_string(kCategoryCap[breach.category]) + " at arcs " +
                     std::to_string(breach.arc_i) + " and " + std::to_string(breach.arc_j));
        report.per_chart.push_back(ledger);
        report.total += ledger.total();
    }
    if (report.total > report.bound)
        fail(ErrorKind::BoundViolated,
             "diagram total " + std::to_string(report.total) + " exceeds the budget " +
                 std::to_string(report.bound) + " for " + std::to_string(d.diagram_crossings) +
                 " diagram crossings");
    return report;
}

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

Vec2 shrink(const Vec2& p, const Rational& s) { return Vec2{p.x * s, p.y * s}; }

}  // namespace

ChartArrangement saturated_chart() {
    // Wall-strip chords.  Each strip holds its type's two chords,
    // slanted across the strip so that the pair crosses once and both
    // chords cross all four chords of the two neighbouring strips in
    // the shared corner boxes; opposite strips are disjoint.  That is
    // 4 in-strip plus 16 corner-box crossings, 20 in all.
    //
    // Bent arcs.  Both fold in the central region and fan out to the
    // southeast and northwest corners, so each leg crosses the four
    // chords of the two strips it runs between, 16 in all.  The folds
    // sit on opposite sides of the southeast diagonal and each fan
    // crosses over to the other side of its corner, so the southeast
    // legs cross once, the northwest legs cross once, and nothing else
    // meets: 2.
    ChartArrangement chart;
    chart.arcs = {
        chord(pt(57, 64, -1, 1), pt(31, 32, 1, 1)),    // east strip
        chord(pt(31, 32, -1, 1), pt(57, 64, 1, 1)),    //
        chord(pt(1, 1, 57, 64), pt(-1, 1, 31, 32)),    // north strip
        chord(pt(1, 1, 31, 32), pt(-1, 1, 57, 64)),    //
        chord(pt(-57, 64, 1, 1), pt(-31, 32, -1, 1)),  // west strip
        chord(pt(-31, 32, 1, 1), pt(-57, 64, -1, 1)),  //
        chord(pt(-1, 1, -57, 64), pt(1, 1, -31, 32)),  // south strip
        chord(pt(-1, 1, -31, 32), pt(1, 1, -57, 64)),  //
        bent_arc(pt(63, 64, -1, 1), pt(47, 64, -43, 64), pt(-1, 1, 63, 64)),
        bent_arc(pt(1, 1, -63, 64), pt(43, 64, -47, 64), pt(-63, 64, 1, 1)),
    };
    return chart;
}

ChartArrangement free_saturated_chart() {
    ChartArrangement chart;
    // Eight chords spanning 33/64 of the perimeter, starting every
    // 1/16: consecutive starts are closer than a span, so the endpoint
    // pairs of any two chords interleave and all 28 pairs cross.
    for (long long k = 0; k < 8; ++k)
        chart.arcs.push_back(chord(chart_boundary_point(Rational(k, 16)),
                                   chart_boundary_point(Rational(16 * k + 132, 256))));
    // Two bent arcs folded just inside the perimeter.  Each leg spans
    // nearly half the perimeter, so it interleaves with every chord
    // and crosses the whole pack once: 2 x 2 x 8 = 32.  The second
    // fan starts after the first and both its legs land beyond both
    // legs of the first, so all four leg pairs interleave as well: 4.
    Vec2 fold1 = shrink(chart_boundary_point(Rational(1, 32)), Rational(255, 256));
    Vec2 fold2 = shrink(chart_boundary_point(Rational(9, 256)), Rational(255, 256));
    chart.arcs.push_back(bent_arc(chart_boundary_point(Rational(67, 128)), fold1,
                                  chart_boundary_point(Rational(17, 32))));
    chart.arcs.push_back(bent_arc(chart_boundary_point(Rational(69, 128)), fold2,
                                  chart_boundary_point(Rational(35, 64))));
    return chart;
}

}  // namespace knotfactor
