#pragma once

#include <cstddef>
#include <vector>

#include "offord/rational.hpp"

namespace offord {

// Finite weighted list of rationals, duplicates allowed, order preserved.
struct Multiset {
    std::vector<Rational> elems;

    Multiset() = default;
    explicit Multiset(std::vector<Rational> e) : elems(std::move(e)) {}

    std::size_t size() const { return elems.size(); }
    bool empty() const { return elems.empty(); }
    const Rational& operator[](std::size_t i) const { return elems[i]; }
};

}  // namespace offord
