// Fixed sequents shared by the unit tests and the acceptance binary.
#pragma once

#include "intuit/labelled.hpp"
#include "intuit/nested.hpp"

#include <string>

namespace fixtures {

// The four-world example: Gi is the atom gi at wi, Di the atom di at wi.
inline std::string world_content(int i) {
    std::string n = std::to_string(i);
    return "w" + n + ": g" + n;
}

inline intuit::LabelledSequent lambda_with_loop() {
    return intuit::parse_labelled(
        "w0<=w0, w0<=w1, w1<=w2, w0<=w2, w0<=w3, w0: g0, w1: g1, w2: g2, w3: g3"
        " => w0: d0, w1: d1, w2: d2, w3: d3");
}

inline intuit::LabelledSequent lambda_treelike() {
    return intuit::parse_labelled(
        "w0<=w1, w1<=w2, w0<=w3, w0: g0, w1: g1, w2: g2, w3: g3 => w0: d0, w1: d1, w2: d2, w3: d3");
}

inline intuit::NestedSequent sigma_four() {
    return intuit::parse_nested("g0 -> d0, [g1 -> d1, [g2 -> d2]], [g3 -> d3]");
}

}  // namespace fixtures
