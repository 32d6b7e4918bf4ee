#pragma once

// Knot and link diagram data model.
//
// A diagram is a PD-coded 4-valent graph in the 2-sphere.  Each crossing
// lists its four incident edge ends counterclockwise starting from the
// incoming under-strand edge, so the under-strand runs e[0] -> e[2] and
// the over-strand occupies slots 1 and 3.  Orientations are carried by
// the component cycles: each component is the sequence of edge labels in
// traversal order.  A component with no crossings is stored as an empty
// cycle and stands for a round circle.
//
// Slot geometry used throughout the project: with the under-strand
// entering from the south and leaving north, slot 0 = south, 1 = east,
// 2 = north, 3 = west.  A crossing is positive when its over-strand
// travels west to east, i.e. enters at slot 3.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "knotfactor/errors.hpp"

namespace knotfactor {

struct Crossing {
    std::array<int, 4> e;
    bool operator==(const Crossing&) const = default;
};

struct KnotDiagram {
    std::vector<Crossing> crossings;
    std::vector<std::vector<int>> components;
    std::string name;

    int crossing_count() const { return static_cast<int>(crossings.size()); }
    int component_count() const { return static_cast<int>(components.size()); }
};

// A contiguous run of crossings forming one summand of a composite
// diagram, together with the two edges on which the decomposing sphere
// meets the knot.  The entry edge carries the strand into the summand's
// span, the exit edge carries it out toward the next summand.
struct SummandMarker {
    int crossing_begin = 0;
    int crossing_end = 0;  // half-open span [begin, end)
    int entry_edge = -1;
    int exit_edge = -1;
    bool operator==(const SummandMarker&) const = default;
};

struct MarkedCompositeDiagram {
    KnotDiagram diagram;
    std::vector<SummandMarker> summands;

    int summand_count() const { return static_cast<int>(summands.size()); }
    // The distinguished edge carrying the subdivision point: the edge on
    // which the strand enters the first summand.
    int window_edge() const { return summands.at(0).entry_edge; }
};

// One edge end at a crossing.
struct EdgeEnd {
    int crossing = -1;
    int slot = -1;
    bool operator==(const EdgeEnd&) const = default;
    bool operator<(const EdgeEnd& o) const {
        return crossing != o.crossing ? crossing < o.crossing : slot < o.slot;
    }
};

// Derived incidence data for a validated diagram: strand directions,
// edge endpoints, crossing signs, component membership and the regions
// (complementary faces) of the embedding.
struct DiagramAnalysis {
    // entry[c][s] is true when the strand enters crossing c at slot s.
    std::vector<std::array<bool, 4>> entry;
    // Edge label -> the end it leaves from / arrives at.
    std::map<int, EdgeEnd> edge_tail;
    std::map<int, EdgeEnd> edge_head;
    // Edge label -> component index.
    std::map<int, int> edge_component;
    // +1 / -1 per crossing.
    std::vector<int> sign;
    // Regions as cyclic corner lists; corner (c,k) sits between slots k
    // and k+1 of crossing c.  Every corner appears in exactly one region.
    struct Corner {
        int crossing;
        int corner;
        bool operator==(const Corner&) const = default;
    };
    std::vector<std::vector<Corner>> regions;
    // Region index of each corner: corner_region[c][k].
    std::vector<std::array<int, 4>> corner_region;
    // The two regions flanking each edge, in (left, right) order seen
    // along the edge direction.
    std::map<int, std::array<int, 2>> edge_regions;

    int region_count() const { return static_cast<int>(regions.size()); }
};

// Validation: checks label incidences, component cycles, strand
// orientation consistency and sphere-embeddability (Euler count per
// connected piece of the 4-valent graph).  Throws Error on failure.
void validate(const KnotDiagram& d);
void validate(const MarkedCompositeDiagram& m);

// Full incidence analysis of a validated diagram.
DiagramAnalysis analyze(const KnotDiagram& d);

// Build a diagram from raw crossings: infers component cycles by strand
// traversal (choosing a deterministic orientation for components that
// never pass under) and validates.
KnotDiagram assemble_diagram(std::vector<Crossing> crossings,
                             int round_circles = 0,
                             std::string name = "");

// PD-code text I/O.  Tokens are X(a,b,c,d) or the letter O for a round
// circle, separated by whitespace.
KnotDiagram parse_pd(const std::string& text);
std::string serialize_pd(const KnotDiagram& d);

// Canonical relabeling: edge labels are renumbered 0,1,2,... along each
// component, components ordered by their first contact with the crossing
// array.  Two diagrams differing only by edge labels canonicalize to the
// same form.  The returned map sends old labels to new ones.
KnotDiagram canonical_form(const KnotDiagram& d,
                           std::map<int, int>* label_map = nullptr);
bool equal_up_to_labels(const KnotDiagram& a, const KnotDiagram& b);

// Mirror image: swaps over- and under-strands at every crossing.
KnotDiagram mirror(const KnotDiagram& d);

// Sum of crossing signs.
int writhe(const KnotDiagram& d);

// Connected sum of one-component diagrams laid out in a row, with a
// marker per summand.  Requires every summand to have at least one
// crossing and exactly one component.
MarkedCompositeDiagram connected_sum(const std::vector<KnotDiagram>& summands);

// Disjoint side-by-side union.
KnotDiagram distant_union(const std::vector<KnotDiagram>& summands);

// The diagram left after discarding every component except i: crossings
// where both strands belong to component i survive, passages through
// other components are smoothed away.
KnotDiagram component_subdiagram(const KnotDiagram& d, int i);

// Upper-triangular crossing-count matrix: entry (i,j) with i <= j counts
// the crossings involving components i and j (both strands on i when
// i = j); entries below the diagonal are zero.  Entries sum to the
// crossing count.
std::vector<std::vector<int>> crossing_partition(const KnotDiagram& d);

// Closure of a braid word on the given number of strands.  Word letters
// are +-k for the generator crossing strand positions k-1 and k (1-based
// k); positive letters pass the left strand over the right.  Strands
// untouched by the word close into round circles.
KnotDiagram braid_closure(int strands, const std::vector<int>& word,
                          std::string name = "");

// JSON serialization (bit-exact round trip).
std::string diagram_to_json(const KnotDiagram& d);
KnotDiagram diagram_from_json(const std::string& text);
std::string marked_to_json(const MarkedCompositeDiagram& m);
MarkedCompositeDiagram marked_from_json(const std::string& text);

}  // namespace knotfactor
