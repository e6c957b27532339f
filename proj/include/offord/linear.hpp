#pragma once

#include <map>
#include <utility>
#include <vector>

#include "offord/budget.hpp"
#include "offord/gap.hpp"
#include "offord/multiset.hpp"
#include "offord/rational.hpp"

namespace offord {

// Step distribution of one sign variable.
//   bernoulli: -1, +1 with probability 1/2 each.
//   lazy(mu):  -1, +1 with probability mu/2 each and 0 with probability
//              1 - mu, for rational mu in (0, 1]. lazy(1) has no zero atom and
//              is identical to bernoulli, exactly.
class StepLaw {
public:
    static StepLaw bernoulli();
    static StepLaw lazy(const Rational& mu);

    bool is_bernoulli() const { return bernoulli_; }
    const Rational& mu() const { return mu_; }

    // Atoms as (step value, probability), zero-probability atoms omitted,
    // in increasing step order. Step values are one of -1, 0, +1.
    std::vector<std::pair<int, Rational>> atoms() const;

private:
    StepLaw(bool b, Rational mu) : bernoulli_(b), mu_(std::move(mu)) {}
    bool bernoulli_;
    Rational mu_;
};

// Exact finite probability distribution: value -> positive probability,
// probabilities summing to exactly 1.
struct DistTable {
    std::map<Rational, Rational> atoms;

    Rational at(const Rational& v) const;
    // (max probability, least attaining value)
    std::pair<Rational, Rational> max_atom() const;
    Rational total_mass() const;
};

struct RhoResult {
    Rational rho;
    Rational at;  // least value attaining the max
};

// Exact law of S = sum a_i x_i with x_i iid by `law`, by iterated convolution
// over a value-indexed table. Empty multiset gives the point mass at 0.
DistTable walk_distribution(const Multiset& a, const StepLaw& law, const Budget& budget = {});

// Concentration probability rho(A) = sup_v P(S = v), with the least attaining
// value (deterministic tie-break).
RhoResult rho_linear(const Multiset& a, const StepLaw& law, const Budget& budget = {});

// Erdos bound C(n, floor(n/2)) / 2^n. Requires n >= 1.
Rational erdos_bound(std::size_t n);

// Number of ordered 2l-tuples (i_1..i_l, j_1..j_l) in [n]^{2l} with
// a_{i_1}+...+a_{i_l} = a_{j_1}+...+a_{j_l}. Indices range independently with
// repetition. Computed as sum of squared l-fold sum counts; n^(2l) must stay
// within the budget.
BigInt halasz_Rl(const Multiset& a, unsigned l, const Budget& budget = {});

// rho of the reference multiset A0 = {-floor(n/2), ..., floor(n/2)}, which has
// 2 floor(n/2) + 1 elements. Stanley: distinct-element multisets of size n
// satisfy rho(A) <= rho(A0). Note the element-count mismatch (n vs
// 2 floor(n/2) + 1) is as printed in the source theorem statement.
Rational stanley_reference(std::size_t n, const StepLaw& law, const Budget& budget = {});

// Guaranteed lower bound 1 / (n^r N) for rho of any n-multiset drawn from a
// proper symmetric GAP g of rank r and volume N.
Rational pigeonhole_lower_bound(const Gap& g, std::size_t n, const Budget& budget = {});

// sup_v P(S in [v - radius, v + radius]), exact, via a sliding window over the
// sorted support. radius = 0 degenerates to rho_linear.
Rational small_ball_linear(const Multiset& a, const Rational& radius, const StepLaw& law,
                           const Budget& budget = {});

}  // namespace offord
