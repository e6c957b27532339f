#pragma once

// Independent brute-force oracles used by the test suites. Everything here
// recomputes results along a different route than the library (recursive
// cofactor expansion, direct outcome enumeration, nested box loops) so the
// two paths only agree when both are right.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "offord/gap.hpp"
#include "offord/int_matrix.hpp"
#include "offord/linear.hpp"
#include "offord/multilinear.hpp"
#include "offord/multiset.hpp"
#include "offord/rational.hpp"

namespace oracle {

using offord::BigInt;
using offord::Rational;

// Determinant by recursive cofactor expansion along the first row.
inline Rational det_cofactor(const std::vector<std::vector<Rational>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Rational(1);
    if (n == 1) return m[0][0];
    Rational acc(0);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Rational>> sub;
        sub.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Rational> row;
            row.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            sub.push_back(std::move(row));
        }
        Rational term = m[0][c] * det_cofactor(sub);
        acc += sign > 0 ? term : -term;
        sign = -sign;
    }
    return acc;
}

inline BigInt det_cofactor_int(const offord::IntMatrix& m) {
    std::vector<std::vector<Rational>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i].emplace_back(m.at(i, j));
    Rational d = det_cofactor(rows);
    return d.numerator();  // integral input, integral determinant
}

// All outcomes of n iid draws from the law, as (signs, probability) pairs.
inline void for_each_outcome(const offord::StepLaw& law, std::size_t n,
                             const std::function<void(const std::vector<int>&, const Rational&)>& f) {
    const auto atoms = law.atoms();
    std::vector<int> x(n, 0);
    auto rec = [&](auto&& self, std::size_t k, const Rational& p) -> void {
        if (k == n) {
            f(x, p);
            return;
        }
        for (const auto& [s, q] : atoms) {
            x[k] = s;
            self(self, k + 1, p * q);
        }
    };
    rec(rec, 0, Rational(1));
}

// Law of sum a_i x_i by full outcome enumeration.
inline std::map<Rational, Rational> walk_enum(const offord::Multiset& a, const offord::StepLaw& law) {
    std::map<Rational, Rational> out;
    for_each_outcome(law, a.size(), [&](const std::vector<int>& x, const Rational& p) {
        Rational s(0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (x[i] == 1)
                s += a[i];
            else if (x[i] == -1)
                s -= a[i];
        }
        out[s] += p;
    });
    return out;
}

inline std::pair<Rational, Rational> max_atom(const std::map<Rational, Rational>& t) {
    Rational best(0), arg(0);
    bool first = true;
    for (const auto& [v, p] : t)
        if (first || p > best) {
            best = p;
            arg = v;
            first = false;
        }
    return {best, arg};
}

// Law of sum a_ij x_i y_j by full joint enumeration.
inline std::map<Rational, Rational> bilinear_enum(const offord::RectMatrix& a, const offord::StepLaw& law) {
    const std::size_t n = a.n();
    std::map<Rational, Rational> out;
    for_each_outcome(law, n, [&](const std::vector<int>& x, const Rational& px) {
        std::vector<int> xc = x;
        for_each_outcome(law, n, [&, xc](const std::vector<int>& y, const Rational& py) {
            Rational s(0);
            for (std::size_t i = 0; i < n; ++i) {
                if (xc[i] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (y[j] == 0) continue;
                    Rational t = a.at(i, j);
                    if (xc[i] * y[j] < 0) t = -t;
                    s += t;
                }
            }
            out[s] += px * py;
        });
    });
    return out;
}

// Law of sum over all ordered pairs a_ij x_i x_j, evaluated directly.
inline std::map<Rational, Rational> quadratic_enum(const offord::SymMatrix& a, const offord::StepLaw& law) {
    const std::size_t n = a.n();
    std::map<Rational, Rational> out;
    for_each_outcome(law, n, [&](const std::vector<int>& x, const Rational& p) {
        Rational s(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (x[j] == 0) continue;
                Rational t = a.at(i, j);
                if (x[i] * x[j] < 0) t = -t;
                s += t;
            }
        }
        out[s] += p;
    });
    return out;
}

// Every (value, coords) of a GAP by fresh nested evaluation per tuple.
inline void gap_enum(const offord::Gap& g,
                     const std::function<void(const Rational&, const std::vector<long long>&)>& f) {
    const std::size_t r = g.rank();
    std::vector<long long> m(r, 0);
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == r) {
            Rational v = g.offset();
            for (std::size_t i = 0; i < r; ++i)
                v += Rational(static_cast<long>(m[i])) * g.generators()[i];
            f(v, m);
            return;
        }
        for (long long c = g.lower()[k]; c <= g.upper()[k]; ++c) {
            m[k] = c;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
}

inline std::set<Rational> gap_elements_enum(const offord::Gap& g) {
    std::set<Rational> out;
    gap_enum(g, [&](const Rational& v, const std::vector<long long>&) { out.insert(v); });
    return out;
}

// R_l by full enumeration over all (i_1..i_l, j_1..j_l).
inline BigInt halasz_enum(const offord::Multiset& a, unsigned l) {
    const std::size_t n = a.size();
    std::vector<std::size_t> idx(2 * l, 0);
    BigInt count = 0;
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == 2 * l) {
            Rational lhs(0), rhs(0);
            for (unsigned t = 0; t < l; ++t) lhs += a[idx[t]];
            for (unsigned t = l; t < 2 * l; ++t) rhs += a[idx[t]];
            if (lhs == rhs) count += 1;
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            idx[k] = i;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    return count;
}

// Exact q_n by enumerating every symmetric sign matrix with the cofactor
// determinant (fully independent of the Bareiss path).
inline std::pair<std::uint64_t, std::uint64_t> qn_enum(std::size_t n) {
    const std::size_t bits = n * (n + 1) / 2;
    const std::uint64_t total = 1ull << bits;
    std::uint64_t singular = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        std::size_t b = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Rational v((mask >> b) & 1 ? 1 : -1);
                ++b;
                m[i][j] = v;
                m[j][i] = v;
            }
        if (det_cofactor(m).is_zero()) ++singular;
    }
    return {singular, total};
}

// Span membership by rank comparison, for cross-checking odlyzko_count.
inline std::uint64_t odlyzko_rank_oracle(const std::vector<std::vector<int>>& rows) {
    const std::size_t n = rows.front().size();
    std::vector<std::vector<long>> base;
    for (const auto& r : rows) base.emplace_back(r.begin(), r.end());
    const std::size_t base_rank = offord::rank_exact(offord::IntMatrix::from_rows(base));
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        auto aug = base;
        std::vector<long> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1 ? 1 : -1;
        aug.push_back(v);
        if (offord::rank_exact(offord::IntMatrix::from_rows(aug)) == base_rank) ++count;
    }
    return count;
}

}  // namespace oracle
