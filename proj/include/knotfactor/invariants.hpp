#pragma once

// Knot invariant oracle: Kauffman bracket and Jones polynomial.
//
// The bracket is evaluated by contracting crossings one at a time while
// maintaining a weighted sum over matchings of the open frontier edges.
// A state records which pending edge ends are connected through the part
// of the diagram already absorbed; smoothing the next crossing merges
// matchings, and closed loops contribute the usual factor
// delta = -A^2 - A^-2.  The cost is exponential in the frontier width,
// not in the total crossing number, so the long thin diagrams produced
// by the pipeline stay cheap.  A crossing-count limit and an internal
// state-count limit guard against pathological inputs.
//
// Convention: with the PD tuple (a,b,c,d) counterclockwise from the
// incoming under-strand, the A-smoothing joins (a,b) and (c,d).  Writhe
// normalization f = (-A^3)^(-w) <D>, and t = A^(-4).

#include "knotfactor/diagram.hpp"
#include "knotfactor/laurent.hpp"

namespace knotfactor {

// The loop factor -A^2 - A^-2.
Laurent bracket_loop_factor();

// Kauffman bracket, normalized so the round unknot evaluates to 1.
// Throws TooLarge past the crossing limit or when the frontier state
// space explodes.
Laurent kauffman_bracket(const KnotDiagram& d, int max_crossings = 2048);

// Jones polynomial in the variable t.  Defined here for diagrams whose
// writhe-corrected bracket has all exponents divisible by 4; this covers
// every knot (single component) and is checked at runtime.  Links with
// half-integral Jones exponents are outside this oracle's scope.
Laurent jones(const KnotDiagram& d, int max_crossings = 2048);

}  // namespace knotfactor
