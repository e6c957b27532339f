#include "offord/linear.hpp"

#include <algorithm>
#include <string>

#include "offord/errors.hpp"

namespace offord {

StepLaw StepLaw::bernoulli() { return StepLaw(true, Rational(1)); }

StepLaw StepLaw::lazy(const Rational& mu) {
    if (mu.sign() <= 0 || mu > Rational(1)) throw input_error("lazy step parameter mu must lie in (0, 1]");
    return StepLaw(false, mu);
}

std::vector<std::pair<int, Rational>> StepLaw::atoms() const {
    const Rational half_mu = mu_ / Rational(2);
    std::vector<std::pair<int, Rational>> out;
    out.emplace_back(-1, half_mu);
    Rational zero_mass = Rational(1) - mu_;
    if (!zero_mass.is_zero()) out.emplace_back(0, zero_mass);
    out.emplace_back(1, half_mu);
    return out;
}

Rational DistTable::at(const Rational& v) const {
    auto it = atoms.find(v);
    return it == atoms.end() ? Rational(0) : it->second;
}

std::pair<Rational, Rational> DistTable::max_atom() const {
    Rational best(0), arg(0);
    bool first = true;
    for (const auto& [v, p] : atoms) {
        if (first || p > best) {
            best = p;
            arg = v;
            first = false;
        }
    }
    return {best, arg};
}

Rational DistTable::total_mass() const {
    Rational s(0);
    for (const auto& [v, p] : atoms) s += p;
    return s;
}

DistTable walk_distribution(const Multiset& a, const StepLaw& law, const Budget& budget) {
    DistTable cur;
    cur.atoms.emplace(Rational(0), Rational(1));
    const auto steps = law.atoms();
    for (const auto& ai : a.elems) {
        std::map<Rational, Rational> next;
        for (const auto& [v, p] : cur.atoms) {
            for (const auto& [s, q] : steps) {
                Rational value = v;
                if (s > 0)
                    value += ai;
                else if (s < 0)
                    value -= ai;
                auto [it, inserted] = next.emplace(value, p * q);
                if (!inserted) it->second += p * q;
            }
        }
        if (next.size() > budget.support_cap)
            throw budget_error("walk support cap exceeded: " + std::to_string(next.size()) +
                               " distinct values > cap " + std::to_string(budget.support_cap));
        cur.atoms = std::move(next);
    }
    return cur;
}

RhoResult rho_linear(const Multiset& a, const StepLaw& law, const Budget& budget) {
    DistTable t = walk_distribution(a, law, budget);
    auto [p, v] = t.max_atom();
    return RhoResult{p, v};
}

Rational erdos_bound(std::size_t n) {
    if (n == 0) throw input_error("erdos_bound requires n >= 1");
    return Rational(binomial(n, n / 2), int_pow(BigInt(2), n));
}

BigInt halasz_Rl(const Multiset& a, unsigned l, const Budget& budget) {
    if (l == 0) throw input_error("halasz_Rl requires l >= 1");
    const std::size_t n = a.size();
    if (n == 0) return 0;
    // budget gate on the raw n^(2l) solution space
    BigInt space = int_pow(BigInt(static_cast<unsigned long>(n)), 2ul * l);
    if (space > BigInt(static_cast<unsigned long>(budget.halasz_cap)))
        throw budget_error("halasz enumeration cap exceeded: n^(2l) = " + space.get_str() + " > cap " +
                           std::to_string(budget.halasz_cap));

    // counts of l-fold ordered sums; R_l = sum of squared counts
    std::map<Rational, BigInt> counts;
    std::vector<std::size_t> idx(l, 0);
    for (;;) {
        Rational s(0);
        for (std::size_t t = 0; t < l; ++t) s += a[idx[t]];
        counts[s] += 1;
        std::size_t t = l;
        while (t-- > 0) {
            if (++idx[t] < n) break;
            idx[t] = 0;
        }
        if (t == static_cast<std::size_t>(-1)) break;
    }
    BigInt r = 0;
    for (const auto& [v, c] : counts) r += c * c;
    return r;
}

Rational stanley_reference(std::size_t n, const StepLaw& law, const Budget& budget) {
    if (n == 0) throw input_error("stanley_reference requires n >= 1");
    const long h = static_cast<long>(n / 2);
    Multiset a0;
    for (long v = -h; v <= h; ++v) a0.elems.emplace_back(v);
    return rho_linear(a0, law, budget).rho;
}

Rational pigeonhole_lower_bound(const Gap& g, std::size_t n, const Budget& budget) {
    if (!g.is_symmetric()) throw input_error("pigeonhole_lower_bound requires a symmetric GAP");
    ProperCheck pc = is_proper(g, budget);
    if (!pc.proper) throw input_error("pigeonhole_lower_bound requires a proper GAP");
    BigInt denom = int_pow(BigInt(static_cast<unsigned long>(n)), static_cast<unsigned long>(g.rank()));
    denom *= g.volume();
    return Rational(BigInt(1), denom);
}

Rational small_ball_linear(const Multiset& a, const Rational& radius, const StepLaw& law,
                           const Budget& budget) {
    if (radius.sign() < 0) throw input_error("small_ball_linear requires radius >= 0");
    DistTable t = walk_distribution(a, law, budget);
    // The optimal window [v - radius, v + radius] can be slid until its left
    // edge sits on a support point, so scanning windows anchored at each
    // support value is exhaustive.
    std::vector<std::pair<Rational, Rational>> pts(t.atoms.begin(), t.atoms.end());
    const Rational width = radius + radius;
    Rational best(0), sum(0);
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < pts.size(); ++hi) {
        sum += pts[hi].second;
        while (pts[hi].first - pts[lo].first > width) {
            sum -= pts[lo].second;
            ++lo;
        }
        if (sum > best) best = sum;
    }
    return best;
}

}  // namespace offord
