#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "offord/budget.hpp"
#include "offord/multiset.hpp"
#include "offord/rational.hpp"

namespace offord {

// Generalized arithmetic progression: the image of the integer box
// { (m_1,...,m_r) : lower_i <= m_i <= upper_i } under
// m -> offset + sum_i m_i * g_i. Rank r = number of generators, volume =
// box cardinality. Proper when the map is injective on the box; symmetric
// when offset = 0 and lower_i = -upper_i for all i.
//
// Equality of GAPs is extensional (same element multiset under the cap),
// never representational; there is deliberately no operator==.
class Gap {
public:
    Gap(Rational offset, std::vector<Rational> generators, std::vector<long long> lower,
        std::vector<long long> upper);

    // Symmetric GAP from generators and box radii (lower = -radii, upper = radii).
    static Gap symmetric(std::vector<Rational> generators, std::vector<long long> radii);
    // Rank-0 symmetric GAP {0}.
    static Gap zero();

    std::size_t rank() const { return gens_.size(); }
    const Rational& offset() const { return offset_; }
    const std::vector<Rational>& generators() const { return gens_; }
    const std::vector<long long>& lower() const { return lo_; }
    const std::vector<long long>& upper() const { return hi_; }

    bool is_symmetric() const;
    BigInt volume() const;

    // Lexicographic enumeration of the coordinate box (first coordinate most
    // significant, each from lower to upper); the visitor receives
    // (value, coords) and returns false to stop. Throws budget_error if the
    // volume exceeds the cap.
    template <class Visitor>
    void for_each(Visitor&& visit, const Budget& budget = {}) const {
        check_cap(budget);
        const std::size_t r = rank();
        std::vector<long long> m(lo_);
        Rational value = offset_;
        for (std::size_t i = 0; i < r; ++i) value += Rational(static_cast<long>(m[i])) * gens_[i];
        for (;;) {
            if (!visit(static_cast<const Rational&>(value), static_cast<const std::vector<long long>&>(m)))
                return;
            std::size_t i = r;
            while (i-- > 0) {
                if (m[i] < hi_[i]) {
                    ++m[i];
                    value += gens_[i];
                    break;
                }
                value -= Rational(static_cast<long>(hi_[i] - lo_[i])) * gens_[i];
                m[i] = lo_[i];
            }
            if (i == static_cast<std::size_t>(-1)) return;  // odometer wrapped
        }
    }

    std::set<Rational> element_set(const Budget& budget = {}) const;

private:
    void check_cap(const Budget& budget) const;

    Rational offset_;
    std::vector<Rational> gens_;
    std::vector<long long> lo_, hi_;
};

// Coordinates of an element in a GAP: offset + sum coords_i * g_i = element.
struct GapCoords {
    Rational element;
    std::vector<long long> coords;
};

// First witness (in lexicographic coordinate order) that x lies in g, or
// nullopt. For non-proper GAPs the witness is the first-found one.
std::optional<GapCoords> membership(const Gap& g, const Rational& x, const Budget& budget = {});

struct ProperCheck {
    bool proper;
    // when !proper: two distinct coordinate vectors mapping to the same value
    std::vector<long long> witness_a, witness_b;
};
ProperCheck is_proper(const Gap& g, const Budget& budget = {});

// Same generators, box bounds scaled by n. Requires a symmetric input.
Gap dilate(const Gap& g, long long n);

enum class ProperizeStatus { proper, gave_up };

struct ProperizeResult {
    Gap gap;
    ProperizeStatus status;
};

// Heuristic properization: while the GAP is not proper, take a collision
// witness, i.e. a nonzero integer relation beta among the generators inside
// the difference box, and rewrite the box over the remaining generators
// scaled by 1/beta_s (s = last index with beta_s != 0). Each step drops the
// rank by one and keeps the element set a superset of the input's, so at most
// rank(g) steps run. No size guarantee is made; if an intermediate box
// exceeds the enumeration cap the current GAP is returned with gave_up.
ProperizeResult properize(const Gap& g, const Budget& budget = {});

struct RankReduceResult {
    Gap gap;
    std::vector<GapCoords> coords;  // coordinates of u in the returned GAP
};

// Rank reduction: given a proper symmetric g containing every element of u,
// return a symmetric GAP of rank <= rank(g) still containing u whose
// coordinate vectors for u have full rank. Repeatedly finds a primitive
// integer relation alpha with alpha . coords(u_j) = 0 for all j, picks the
// last index s with alpha_s != 0, sets w = g_s / alpha_s and rebuilds the
// generators as g_i' = g_i - alpha_i w (dropping s, box bounds kept), which
// preserves every element whose coordinates are orthogonal to alpha -- in
// particular all of u. The result of each step is re-properized.
RankReduceResult rank_reduce(const Gap& g, const Multiset& u, const Budget& budget = {});

}  // namespace offord
