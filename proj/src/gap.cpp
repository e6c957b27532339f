#include "offord/gap.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "offord/errors.hpp"
#include "offord/int_matrix.hpp"

namespace offord {

Gap::Gap(Rational offset, std::vector<Rational> generators, std::vector<long long> lower,
         std::vector<long long> upper)
    : offset_(std::move(offset)), gens_(std::move(generators)), lo_(std::move(lower)), hi_(std::move(upper)) {
    if (gens_.size() != lo_.size() || gens_.size() != hi_.size())
        throw input_error("GAP generator/bound lists disagree in length");
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (lo_[i] > hi_[i])
            throw input_error("GAP lower bound exceeds upper bound at generator " + std::to_string(i));
}

Gap Gap::symmetric(std::vector<Rational> generators, std::vector<long long> radii) {
    if (generators.size() != radii.size()) throw input_error("GAP generator/radius lists disagree in length");
    std::vector<long long> lo(radii.size()), hi(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < 0) throw input_error("negative GAP radius");
        lo[i] = -radii[i];
        hi[i] = radii[i];
    }
    return Gap(Rational(0), std::move(generators), std::move(lo), std::move(hi));
}

Gap Gap::zero() { return Gap(Rational(0), {}, {}, {}); }

bool Gap::is_symmetric() const {
    if (!offset_.is_zero()) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (lo_[i] != -hi_[i]) return false;
    return true;
}

BigInt Gap::volume() const {
    BigInt v = 1;
    for (std::size_t i = 0; i < gens_.size(); ++i) v *= BigInt(static_cast<long>(hi_[i])) - BigInt(static_cast<long>(lo_[i])) + 1;
    return v;
}

void Gap::check_cap(const Budget& budget) const {
    BigInt v = volume();
    if (v > BigInt(static_cast<unsigned long>(budget.gap_enum_cap)))
        throw budget_error("GAP enumeration cap exceeded: volume " + v.get_str() + " > cap " +
                           std::to_string(budget.gap_enum_cap));
}

std::set<Rational> Gap::element_set(const Budget& budget) const {
    std::set<Rational> out;
    for_each(
        [&](const Rational& v, const std::vector<long long>&) {
            out.insert(v);
            return true;
        },
        budget);
    return out;
}

std::optional<GapCoords> membership(const Gap& g, const Rational& x, const Budget& budget) {
    std::optional<GapCoords> hit;
    g.for_each(
        [&](const Rational& v, const std::vector<long long>& m) {
            if (v == x) {
                hit = GapCoords{x, m};
                return false;
            }
            return true;
        },
        budget);
    return hit;
}

ProperCheck is_proper(const Gap& g, const Budget& budget) {
    std::map<Rational, std::vector<long long>> seen;
    ProperCheck out{true, {}, {}};
    g.for_each(
        [&](const Rational& v, const std::vector<long long>& m) {
            auto [it, inserted] = seen.emplace(v, m);
            if (!inserted) {
                out = ProperCheck{false, it->second, m};
                return false;
            }
            return true;
        },
        budget);
    return out;
}

Gap dilate(const Gap& g, long long n) {
    if (!g.is_symmetric()) throw input_error("dilate requires a symmetric GAP");
    if (n < 1) throw input_error("dilation factor must be positive");
    std::vector<long long> radii(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) radii[i] = g.upper()[i] * n;
    return Gap::symmetric(g.generators(), std::move(radii));
}

namespace {

// Drops generators that contribute nothing: zero generator or a box pinned at
// {0}. Element set is unchanged.
Gap drop_trivial_generators(const Gap& g) {
    std::vector<Rational> gens;
    std::vector<long long> lo, hi;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (g.generators()[i].is_zero()) continue;
        if (g.lower()[i] == 0 && g.upper()[i] == 0) continue;
        gens.push_back(g.generators()[i]);
        lo.push_back(g.lower()[i]);
        hi.push_back(g.upper()[i]);
    }
    return Gap(g.offset(), std::move(gens), std::move(lo), std::move(hi));
}

// One collision-elimination step: beta is a nonzero integer relation among
// the generators (beta . g = 0). With s the last index where beta_s != 0 and
// d = beta_s, every element offset + sum m_i g_i rewrites exactly as
// offset + sum_{i != s} (m_i d - m_s beta_i) (g_i / d), so the GAP over the
// scaled generators with interval-arithmetic bounds contains every element of
// the input.
Gap eliminate_generator(const Gap& g, const std::vector<long long>& beta) {
    std::size_t s = beta.size();
    while (s-- > 0)
        if (beta[s] != 0) break;
    const long long d = beta[s];

    std::vector<Rational> gens;
    std::vector<long long> lo, hi;
    const Rational dq(static_cast<long>(d));
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (i == s) continue;
        // c_i = m_i d - m_s beta_i with m_i, m_s ranging over their boxes
        long long a1 = g.lower()[i] * d, a2 = g.upper()[i] * d;
        long long b1 = g.lower()[s] * beta[i], b2 = g.upper()[s] * beta[i];
        gens.push_back(g.generators()[i] / dq);
        lo.push_back(std::min(a1, a2) - std::max(b1, b2));
        hi.push_back(std::max(a1, a2) - std::min(b1, b2));
    }
    return Gap(g.offset(), std::move(gens), std::move(lo), std::move(hi));
}

}  // namespace

ProperizeResult properize(const Gap& g, const Budget& budget) {
    Gap cur = drop_trivial_generators(g);
    for (std::size_t step = 0; step <= g.rank(); ++step) {
        if (cur.volume() > BigInt(static_cast<unsigned long>(budget.gap_enum_cap)))
            return ProperizeResult{cur, ProperizeStatus::gave_up};
        ProperCheck pc = is_proper(cur, budget);
        if (pc.proper) return ProperizeResult{cur, ProperizeStatus::proper};
        std::vector<long long> beta(cur.rank());
        for (std::size_t i = 0; i < cur.rank(); ++i) beta[i] = pc.witness_a[i] - pc.witness_b[i];
        cur = drop_trivial_generators(eliminate_generator(cur, beta));
    }
    return ProperizeResult{cur, ProperizeStatus::gave_up};
}

RankReduceResult rank_reduce(const Gap& g, const Multiset& u, const Budget& budget) {
    if (!g.is_symmetric()) throw input_error("rank_reduce requires a symmetric GAP");
    // Non-proper inputs are accepted: elements embed through their first-found
    // witness coordinates, which is all the elimination needs.
    Gap cur = g;
    auto locate = [&](const Gap& gap) {
        std::vector<GapCoords> coords;
        coords.reserve(u.size());
        for (const auto& x : u.elems) {
            auto c = membership(gap, x, budget);
            if (!c)
                throw input_error("rank_reduce: element " + x.str() + " is not a member of the GAP");
            coords.push_back(std::move(*c));
        }
        return coords;
    };

    std::vector<GapCoords> coords = locate(cur);
    for (std::size_t step = 0; step <= g.rank(); ++step) {
        const std::size_t r = cur.rank();
        if (r == 0) break;
        std::vector<BigInt> phi_entries;
        phi_entries.reserve(coords.size() * r);
        for (const auto& c : coords)
            for (long long m : c.coords) phi_entries.emplace_back(static_cast<long>(m));
        IntMatrix phi(coords.size(), r, std::move(phi_entries));
        if (rank_exact(phi) == r) break;  // u spans the coordinate space

        auto kernel = integer_kernel(phi);
        const auto& alpha = kernel.front();  // primitive, alpha . coords = 0 for all of u
        std::size_t s = alpha.size();
        while (s-- > 0)
            if (sgn(alpha[s]) != 0) break;
        Rational w = cur.generators()[s] / Rational(alpha[s]);

        std::vector<Rational> gens;
        std::vector<long long> radii;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == s) continue;
            gens.push_back(cur.generators()[i] - Rational(alpha[i]) * w);
            radii.push_back(cur.upper()[i]);
        }
        Gap next = drop_trivial_generators(Gap::symmetric(std::move(gens), std::move(radii)));

        ProperizeResult pr = properize(next, budget);
        if (pr.status == ProperizeStatus::gave_up) {
            std::string rel;
            for (const auto& a : alpha) rel += (rel.empty() ? "" : ",") + a.get_str();
            throw input_error("rank_reduce: properization gave up after eliminating with relation (" + rel +
                              ")");
        }
        cur = pr.gap;
        coords = locate(cur);
    }
    return RankReduceResult{cur, std::move(coords)};
}

}  // namespace offord
