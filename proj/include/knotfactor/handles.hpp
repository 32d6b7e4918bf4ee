#pragma once

// Handle decomposition of a knot exterior read off from a diagram.
//
// The construction places four 0-handles ("corners") in the quadrants of
// every crossing, joins them with four 1-handles ("stubs") crossing the
// strands where those have left the projection sphere, and runs a pair
// of 1-handles ("flanks") along each edge of the underlying 4-valent
// graph.  2-handles come in four families: one square per crossing, one
// per complementary region, and one canopy per over-strand arc (lying
// above the projection sphere) and per under-strand arc (below it).
// Finally the tube around the knot is pierced at a marked point of the
// distinguished edge: the two flanks beside that point are subdivided by
// a pair of new 0-handles ("window caps"), two arch 1-handles bridge the
// tube between them, the canopies over and under the point are split
// there, and the tail-side halves are discarded together with the two
// 3-handles they would otherwise support.  The result has no 3-handles
// and Euler characteristic zero.
//
// Attaching data is stored three ways, deliberately redundant so that
// each consumer reads the view it needs: every 0-handle carries its
// boundary pattern (thickened vertices in cyclic order, thickened-edge
// strips, traced complementary faces), every 1-handle carries the cyclic
// lane order around its cross-section, and every 2-handle carries its
// full attaching circuit.  Lanes are listed counterclockwise as seen
// looking along the 1-handle from end 0 towards end 1; viewed from
// outside the host 0-handle this is the rotation around the end-1
// vertex disc, and the rotation around end 0 is its reverse.
//
// Unexceptional 0-handles also carry a chart: an exact parameterization
// of the projected disc boundary by t in [0,1), with the four vertex
// discs centered at t = 0, 1/4, 1/2, 3/4 and every strip assigned a
// fixed rational sub-arc.  Chart coordinates realize the boundary as the
// perimeter of the square [-1,1]^2, so all later projection geometry
// stays in exact rational arithmetic.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "knotfactor/diagram.hpp"
#include "knotfactor/rational.hpp"

namespace knotfactor {

// A maximal run of edges along which the strand keeps to one side of the
// projection sphere: an over-arc passes over every crossing it meets and
// is cut where the knot dives under; under-arcs are the complementary
// family.  Arcs are indexed by their start crossing (each crossing
// starts exactly one arc of each family).
struct StrandArc {
    std::vector<int> edges;
    int start_crossing = -1;
    int end_crossing = -1;
    // Crossings traversed mid-arc, with the slot the strand enters at.
    std::vector<std::pair<int, int>> passes;
};

std::vector<StrandArc> over_arcs(const KnotDiagram& d, const DiagramAnalysis& a);
std::vector<StrandArc> under_arcs(const KnotDiagram& d, const DiagramAnalysis& a);

enum class ZeroKind { Corner, WindowCap };
enum class OneKind { Stub, Flank, Arch };
enum class TwoKind { Square, Region, OverCanopy, UnderCanopy };

// Where a handle came from in the diagram.  Unused fields stay -1.
struct Provenance {
    int crossing = -1;  // corners, stubs, squares
    int corner = -1;    // corners: quadrant q between slots q and q+1
    int slot = -1;      // stubs: the slot the stub crosses
    int edge = -1;      // flanks: edge label
    int side = -1;      // flanks and window caps: 0 = left of the edge, 1 = right
    int piece = -1;     // subdivided flanks: 0 = tail piece, 1 = head piece; arches: 0 = top, 1 = bottom
    int region = -1;    // region 2-handles: index into DiagramAnalysis::regions
    int arc = -1;       // canopies: start crossing of the strand arc
    bool window_half = false;  // canopy is the kept head-side half of a split arc
};

// One thickened vertex on a 0-handle boundary: the end disc of a
// 1-handle.
struct VertexRef {
    int one_handle = -1;
    int end = 0;
    bool operator==(const VertexRef&) const = default;
};

enum class StripRoute { Side, Top, Bottom };

// One thickened edge crossing a 0-handle boundary: the portion of a
// 2-handle attaching annulus that runs over this 0-handle between two of
// its thickened vertices.  Side strips run around the cylinder wall at
// the given level (-1 below the projection plane, 0 in it, +1 above);
// Top/Bottom strips cross the corresponding horizontal disc.
struct PatternStrip {
    int two_handle = -1;
    int va = -1;
    int vb = -1;
    StripRoute route = StripRoute::Side;
    int level = 0;
};

// One step of a traced complementary face: either along one side of a
// strip or around a vertex disc between two strip abutments (passing
// `gaps` free segments of the vertex-disc boundary on the way).
struct FaceStep {
    bool at_vertex = false;
    int index = -1;  // strip index or vertex index
    int gaps = 0;
    bool operator==(const FaceStep&) const = default;
};

struct PatternFace {
    std::vector<FaceStep> word;
    bool touches_boundary = false;  // meets the knot tube
};

// Chart of the projected disc of an unexceptional 0-handle.  Boundary
// points are parameterized by t in [0,1) mapped onto the perimeter of
// [-1,1]^2 counterclockwise with t = 0 at (1,0); vertex j is centered at
// t = j/4.  Top/Bottom strips occupy two wall arcs (one per endpoint
// vertex); Side strips occupy one.
struct RatInterval {
    Rational lo, hi;
};

struct ChartArc {
    int strip = -1;
    int leg = 0;  // 0 = single side arc, 1 = wall arc at va, 2 = wall arc at vb
    RatInterval span;
};

struct HandleChart {
    std::array<RatInterval, 4> vertex_arc;
    std::vector<ChartArc> strip_arcs;
    // Intersection of the projected bands of the two horizontal chord
    // strips: the convex polygon where bent arcs place their fold.
    std::vector<Vec2> central_region;
};

// Maps the boundary parameter onto the chart square's perimeter.
Vec2 chart_boundary_point(const Rational& t);

struct ZeroHandle {
    ZeroKind kind = ZeroKind::Corner;
    Provenance prov;
    std::vector<VertexRef> vertices;
    std::vector<PatternStrip> strips;
    std::vector<PatternFace> faces;  // traced, per fat-graph component
    HandleChart chart;               // populated for corners only
};

// One lane around a 1-handle cross-section: either a 2-handle running
// along the handle or a free stretch of boundary (carrying the knot tube
// when `boundary` is set).  `role` separates multiple lanes of the same
// 2-handle on one stub: 0 plain, 1 canopy passing along the arc, 2
// canopy turning around at its end.
struct Lane {
    bool is_strip = false;
    int two_handle = -1;
    int role = 0;
    bool boundary = false;
    bool operator==(const Lane&) const = default;
};

struct OneHandle {
    OneKind kind = OneKind::Stub;
    Provenance prov;
    // ends[i] = (0-handle index, vertex slot there).
    std::array<std::array<int, 2>, 2> ends{{{-1, -1}, {-1, -1}}};
    std::vector<Lane> lanes;
};

// One step of a 2-handle attaching circuit, alternating strips on
// 0-handles and lanes on 1-handles.  `reversed` records the traversal
// direction (vb->va across a strip, end1->end0 along a lane).
struct CircuitStep {
    bool on_zero = false;
    int handle = -1;
    int piece = -1;
    bool reversed = false;
};

struct TwoHandle {
    TwoKind kind = TwoKind::Square;
    Provenance prov;
    std::vector<CircuitStep> circuit;
};

// Bookkeeping for the pierced tube window.
struct WindowInfo {
    int edge = -1;
    int over_arc = -1;
    int under_arc = -1;
    int over_pos = 0;   // index of `edge` inside the over arc
    int under_pos = 0;  // and inside the under arc
    int cap[2] = {-1, -1};         // window-cap 0-handles, [left, right]
    int arch[2] = {-1, -1};        // arch 1-handles, [top, bottom]
    int flank_piece[2][2] = {{-1, -1}, {-1, -1}};  // [side][piece]
};

struct HandleStructure {
    std::vector<ZeroHandle> zero;
    std::vector<OneHandle> one;
    std::vector<TwoHandle> two;
    int three = 0;

    // Source facts kept for downstream consumers; empty for hand-built
    // fixtures.
    KnotDiagram diagram;
    std::vector<StrandArc> plus_arcs;
    std::vector<StrandArc> minus_arcs;
    WindowInfo window;

    int corner_count() const;
    std::array<int, 4> handle_counts() const;
};

// Builds the handle structure of the exterior of a marked composite
// diagram.  The window point is placed on the marked edge of the first
// summand.
HandleStructure build_diagrammatic_handles(const MarkedCompositeDiagram& m);

// Per-clause attachment sanity report: (0) every handle attaches along
// the prescribed part of its boundary to lower-index handles only, (1)
// same-dimension handles are disjoint (chart sub-arcs and attachment
// slots collide nowhere), (2) 1-handle/2-handle intersections are full
// product lanes matched by the circuits, (3) every 2-handle runs over at
// least one 1-handle.
struct ConventionReport {
    struct Clause {
        bool pass = true;
        std::vector<std::string> offenders;
    };
    std::array<Clause, 4> clause;
    bool pass() const;
    std::string str() const;
};

ConventionReport validate_convention(const HandleStructure& h);

int euler_characteristic(const HandleStructure& h);

std::string handles_to_json(const HandleStructure& h);

}  // namespace knotfactor
