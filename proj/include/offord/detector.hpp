#pragma once

#include <optional>
#include <vector>

#include "offord/budget.hpp"
#include "offord/gap.hpp"
#include "offord/linear.hpp"
#include "offord/multiset.hpp"
#include "offord/rational.hpp"

namespace offord {

struct StructureReport {
    bool found = false;
    std::optional<Gap> gap;             // proper, symmetric, rank <= r_max when found
    std::vector<std::size_t> covered;   // indices whose element lies in the GAP
    std::vector<std::size_t> exceptions;  // complement; at most n_prime of them
    Rational rho;                       // rho_linear of the input
    BigInt gap_size = 0;                // |Q| (= volume; the GAP is proper)
    Rational ilo_size_bound;            // rho^{-1} n'^{-r/2}, report-only comparison value
    std::size_t n_prime = 0;
};

// Desk-scale structure search: find the smallest-volume proper symmetric GAP
// of rank <= r_max (r_max <= 2) containing all but at most n_prime elements.
//
// Search order: rank 0 (the GAP {0}); rank 1 via the gcd of the non-outlier
// elements scaled to a common denominator; rank 2 via generator pairs drawn
// from a pool of normalized elements and pairwise differences, coordinates
// solved by bounded lattice walk (box <= +/-64 per generator, pool <= 500,
// exceeding either bound skips the rank instead of searching unboundedly).
// Outliers are chosen greedily by distance from the median, ties broken by
// index. Deterministic; found = false is a valid answer.
StructureReport detect_structure(const Multiset& a, std::size_t r_max, std::size_t n_prime,
                                 const Budget& budget = {});

struct IloComparison {
    BigInt gap_size;
    Rational ilo_size_bound;
    Rational ratio;  // gap_size / bound; logged, never asserted (unknown O-constant)
};

// Comparison record of detector output against the inverse-theorem size bound.
// Throws input_error when the report found nothing.
IloComparison validate_against_ilo(const StructureReport& report, const Multiset& a);

}  // namespace offord
