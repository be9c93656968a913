#pragma once

#include <string>

#include "l2match/graph.hpp"

namespace l2match::testing {

// Labels: 0 = A, 1 = B, 2 = C.
inline constexpr Label A = 0, B = 1, C = 2;

inline const char* const d0_text =
    "t 6 8\n"
    "v 0 0 2\nv 1 1 4\nv 2 0 2\nv 3 1 4\nv 4 2 3\nv 5 0 1\n"
    "e 0 1\ne 1 2\ne 2 3\ne 0 3\ne 1 3\ne 1 4\ne 3 4\ne 4 5\n";

// triangle B-C-B
inline const char* const q0_text = "t 3 3\nv 0 1 2\nv 1 2 2\nv 2 1 2\ne 0 1\ne 1 2\ne 0 2\n";

// path A-B-C
inline const char* const q1_text = "t 3 2\nv 0 0 1\nv 1 1 2\nv 2 2 1\ne 0 1\ne 1 2\n";

inline const char* const d2_text =
    "t 6 6\n"
    "v 0 0 3\nv 1 1 2\nv 2 2 2\nv 3 1 2\nv 4 2 2\nv 5 0 1\n"
    "e 0 1\ne 1 2\ne 0 2\ne 0 3\ne 3 4\ne 4 5\n";

// triangle A-B-C
inline const char* const q2_text = "t 3 3\nv 0 0 2\nv 1 1 2\nv 2 2 2\ne 0 1\ne 1 2\ne 0 2\n";

inline LabeledGraph d0() { return parse_graph(d0_text); }
inline LabeledGraph q0() { return parse_graph(q0_text); }
inline LabeledGraph q1() { return parse_graph(q1_text); }
inline LabeledGraph d2() { return parse_graph(d2_text); }
inline LabeledGraph q2() { return parse_graph(q2_text); }

}  // namespace l2match::testing
