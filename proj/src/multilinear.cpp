#include "offord/multilinear.hpp"

#include <algorithm>
#include <string>
#include <thread>
#include <utility>

#include "offord/errors.hpp"
#include "offord/rng.hpp"

namespace offord {

RectMatrix::RectMatrix(std::size_t n, std::vector<Rational> entries) : n_(n), e_(std::move(entries)) {
    if (e_.size() != n_ * n_)
        throw input_error("matrix entry count does not match " + std::to_string(n_) + "x" + std::to_string(n_));
}

RectMatrix RectMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t n = rows.size();
    std::vector<Rational> e;
    e.reserve(n * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw input_error("matrix is not square");
        for (const auto& v : r) e.push_back(v);
    }
    return RectMatrix(n, std::move(e));
}

std::vector<std::vector<Rational>> RectMatrix::rows() const {
    std::vector<std::vector<Rational>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i].push_back(at(i, j));
    return out;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw input_error("matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rows[i][j] != rows[j][i])
                throw input_error("matrix is not symmetric at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, rows[i][j]);
    return m;
}

RectMatrix SymMatrix::to_rect() const {
    RectMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) m.set(i, j, at(i, j));
    return m;
}

std::vector<std::vector<Rational>> SymMatrix::rows() const {
    std::vector<std::vector<Rational>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i].push_back(at(i, j));
    return out;
}

namespace {

using Rows = std::vector<std::vector<Rational>>;

std::uint64_t checked_pow_u64(std::uint64_t base, std::size_t e, std::uint64_t cap, const char* what) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (out > cap / base)
            throw budget_error(std::string(what) + " outcome cap exceeded: needs " +
                               std::to_string(base) + "^" + std::to_string(e) + " outcomes > cap " +
                               std::to_string(cap));
        out *= base;
    }
    return out;
}

// Distribution of v^T m w for a general rows x cols block: enumerate the
// row-variable outcomes over [begin, end) of the mixed-radix index space
// (first digit most significant) and convolve the induced linear form in the
// column variables.
void bilinear_range(const Rows& m, std::size_t rows, std::size_t cols,
                    const std::vector<std::pair<int, Rational>>& row_atoms, const StepLaw& col_law,
                    std::uint64_t begin, std::uint64_t end, const Budget& budget,
                    std::map<Rational, Rational>& out) {
    const std::size_t L = row_atoms.size();

    std::vector<std::size_t> digit(rows, 0);
    {
        std::uint64_t rem = begin;
        for (std::size_t i = rows; i-- > 0;) {
            digit[i] = rem % L;
            rem /= L;
        }
    }
    std::vector<Rational> coeff(cols, Rational(0));
    Rational prob(1);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& [s, p] = row_atoms[digit[i]];
        prob *= p;
        if (s == 1)
            for (std::size_t j = 0; j < cols; ++j) coeff[j] += m[i][j];
        else if (s == -1)
            for (std::size_t j = 0; j < cols; ++j) coeff[j] -= m[i][j];
    }

    auto apply_digit_change = [&](std::size_t i, std::size_t from, std::size_t to) {
        const int ds = row_atoms[to].first - row_atoms[from].first;
        if (ds != 0) {
            const Rational dq(static_cast<long>(ds));
            for (std::size_t j = 0; j < cols; ++j) coeff[j] += dq * m[i][j];
        }
        prob /= row_atoms[from].second;
        prob *= row_atoms[to].second;
    };

    for (std::uint64_t idx = begin; idx < end; ++idx) {
        DistTable walk = walk_distribution(Multiset(coeff), col_law, budget);
        for (const auto& [v, q] : walk.atoms) {
            auto [it, inserted] = out.emplace(v, prob * q);
            if (!inserted) it->second += prob * q;
        }
        if (out.size() > budget.support_cap)
            throw budget_error("bilinear support cap exceeded: " + std::to_string(out.size()) +
                               " distinct values > cap " + std::to_string(budget.support_cap));
        if (idx + 1 == end) break;
        for (std::size_t i = rows; i-- > 0;) {
            if (digit[i] + 1 < L) {
                apply_digit_change(i, digit[i], digit[i] + 1);
                ++digit[i];
                break;
            }
            apply_digit_change(i, digit[i], 0);
            digit[i] = 0;
        }
    }
}

DistTable bilinear_dist_general(const Rows& m, std::size_t rows, std::size_t cols, const StepLaw& row_law,
                                const StepLaw& col_law, const Budget& budget, unsigned workers) {
    const auto row_atoms = row_law.atoms();
    const std::uint64_t total =
        checked_pow_u64(row_atoms.size(), rows, budget.bilinear_x_cap, "bilinear");

    unsigned w = std::max(1u, workers);
    if (w > total) w = static_cast<unsigned>(total);

    DistTable result;
    if (w == 1) {
        bilinear_range(m, rows, cols, row_atoms, col_law, 0, total, budget, result.atoms);
        return result;
    }

    std::vector<std::map<Rational, Rational>> parts(w);
    std::vector<std::thread> threads;
    threads.reserve(w);
    std::vector<std::exception_ptr> errors(w);
    for (unsigned t = 0; t < w; ++t) {
        const std::uint64_t begin = total * t / w, end = total * (t + 1) / w;
        threads.emplace_back([&, t, begin, end] {
            try {
                bilinear_range(m, rows, cols, row_atoms, col_law, begin, end, budget, parts[t]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (auto& part : parts)
        for (auto& [v, p] : part) {
            auto [it, inserted] = result.atoms.emplace(v, p);
            if (!inserted) it->second += p;
        }
    return result;
}

}  // namespace

DistTable bilinear_distribution(const RectMatrix& m, const StepLaw& row_law, const StepLaw& col_law,
                                const Budget& budget, unsigned workers) {
    return bilinear_dist_general(m.rows(), m.n(), m.n(), row_law, col_law, budget, workers);
}

RhoResult rho_bilinear(const RectMatrix& a, const StepLaw& law, const Budget& budget, unsigned workers) {
    DistTable t = bilinear_distribution(a, law, law, budget, workers);
    auto [p, v] = t.max_atom();
    return RhoResult{p, v};
}

DistTable quadratic_distribution(const SymMatrix& a, const StepLaw& law, const Budget& budget) {
    const std::size_t n = a.n();
    const auto atoms = law.atoms();
    checked_pow_u64(atoms.size(), n, budget.quad_outcome_cap, "quadratic");

    DistTable out;
    std::vector<int> x(n, 0);

    // value contribution of assigning x_k = s given the prefix x_0..x_{k-1}:
    // a_kk s^2 + 2 s sum_{i<k} a_ik x_i
    auto rec = [&](auto&& self, std::size_t k, const Rational& value, const Rational& prob) -> void {
        if (k == n) {
            auto [it, inserted] = out.atoms.emplace(value, prob);
            if (!inserted) it->second += prob;
            if (out.atoms.size() > budget.support_cap)
                throw budget_error("quadratic support cap exceeded: " + std::to_string(out.atoms.size()) +
                                   " distinct values > cap " + std::to_string(budget.support_cap));
            return;
        }
        Rational dot(0);
        for (std::size_t i = 0; i < k; ++i) {
            if (x[i] == 1)
                dot += a.at(i, k);
            else if (x[i] == -1)
                dot -= a.at(i, k);
        }
        for (const auto& [s, p] : atoms) {
            x[k] = s;
            if (s == 0) {
                self(self, k + 1, value, prob * p);
            } else {
                Rational add = a.at(k, k);
                if (s == 1)
                    add += dot + dot;
                else
                    add -= dot + dot;
                self(self, k + 1, value + add, prob * p);
            }
        }
        x[k] = 0;
    };
    rec(rec, 0, Rational(0), Rational(1));
    return out;
}

RhoResult rho_quadratic(const SymMatrix& a, const StepLaw& law, const Budget& budget) {
    DistTable t = quadratic_distribution(a, law, budget);
    auto [p, v] = t.max_atom();
    return RhoResult{p, v};
}

RectMatrix a_u_submatrix(const SymMatrix& a, const std::vector<std::size_t>& u) {
    const std::size_t n = a.n();
    std::vector<bool> in_u(n, false);
    for (std::size_t i : u) {
        if (i >= n) throw input_error("a_u_submatrix index " + std::to_string(i) + " out of range");
        in_u[i] = true;
    }
    RectMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (in_u[i] != in_u[j]) out.set(i, j, a.at(i, j));
    return out;
}

DecouplingReport decoupling_check(const SymMatrix& a, const Budget& budget) {
    const std::size_t n = a.n();
    if (n > budget.decoupling_n_cap)
        throw budget_error("decoupling dimension cap exceeded: n = " + std::to_string(n) + " > cap " +
                           std::to_string(budget.decoupling_n_cap));

    const Rational rho = rho_quadratic(a, StepLaw::bernoulli(), budget).rho;
    const Rational lhs = rational_pow(rho, 8);
    const StepLaw half = StepLaw::lazy(Rational(1, 2));

    // For a fixed cut U the form splits into two independent bilinear pieces
    // across the cut: v_U^T A[U,Uc] w_Uc + v_Uc^T A[Uc,U] w_U. The atom of
    // their sum at 0 is read off the two exact tables.
    Rational rhs_sum(0), rhs_min(0);
    bool first = true;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<std::size_t> us, vs;
        for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? us : vs).push_back(i);
        Rows f(us.size()), g(vs.size());
        for (std::size_t i = 0; i < us.size(); ++i)
            for (std::size_t j : vs) f[i].push_back(a.at(us[i], j));
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j : us) g[i].push_back(a.at(vs[i], j));
        DistTable df = bilinear_dist_general(f, us.size(), vs.size(), half, half, budget, 1);
        DistTable dg = bilinear_dist_general(g, vs.size(), us.size(), half, half, budget, 1);
        Rational p0(0);
        for (const auto& [v, p] : df.atoms) {
            Rational q = dg.at(-v);
            if (!q.is_zero()) p0 += p * q;
        }
        rhs_sum += p0;
        if (first || p0 < rhs_min) rhs_min = p0;
        first = false;
    }
    Rational rhs_mean = rhs_sum / Rational(int_pow(BigInt(2), n));
    return DecouplingReport{lhs, rhs_mean, rhs_min, lhs <= rhs_mean};
}

namespace {

Rational sample_gap_element(const Gap& q, std::mt19937_64& eng) {
    Rational v = q.offset();
    for (std::size_t i = 0; i < q.rank(); ++i) {
        long long c = uniform_in(eng, q.lower()[i], q.upper()[i]);
        v += Rational(static_cast<long>(c)) * q.generators()[i];
    }
    return v;
}

void require_proper_symmetric(const Gap& q, const Budget& budget, const char* who) {
    if (!q.is_symmetric()) throw input_error(std::string(who) + " requires a symmetric GAP");
    if (!is_proper(q, budget).proper) throw input_error(std::string(who) + " requires a proper GAP");
}

Rational additive_certificate(const Gap& q, std::size_t n) {
    // pigeonhole on n^2 Q: rho >= 1/(n^{2r} |Q|)
    BigInt denom = int_pow(BigInt(static_cast<unsigned long>(n)), 2 * q.rank());
    denom *= q.volume();
    return Rational(BigInt(1), denom);
}

Rational zero_atom_of_int_walk(const std::vector<long long>& k, const Budget& budget) {
    Multiset m;
    for (long long v : k) m.elems.emplace_back(Rational(static_cast<long>(v)));
    return walk_distribution(m, StepLaw::bernoulli(), budget).at(Rational(0));
}

}  // namespace

PlantedBilinear plant_bilinear_additive(const Gap& q, std::size_t n, std::uint64_t seed,
                                        const Budget& budget) {
    if (n == 0) throw input_error("plant_bilinear_additive requires n >= 1");
    require_proper_symmetric(q, budget, "plant_bilinear_additive");
    auto eng = seeded_engine(seed);
    RectMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, sample_gap_element(q, eng));
    return PlantedBilinear{std::move(m), additive_certificate(q, n)};
}

PlantedBilinear plant_bilinear_algebraic(const std::vector<long long>& k, const std::vector<long long>& l,
                                         const std::vector<Rational>& b, const std::vector<Rational>& bp,
                                         const Budget& budget) {
    const std::size_t n = k.size();
    if (n == 0 || l.size() != n || b.size() != n || bp.size() != n)
        throw input_error("plant_bilinear_algebraic requires four equal-length nonempty vectors");
    RectMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.set(i, j, Rational(static_cast<long>(k[i])) * b[j] + Rational(static_cast<long>(l[j])) * bp[i]);
    Rational cert = zero_atom_of_int_walk(k, budget) * zero_atom_of_int_walk(l, budget);
    return PlantedBilinear{std::move(m), std::move(cert)};
}

PlantedBilinear plant_bilinear_combined(const Gap& q, const std::vector<long long>& k,
                                        const std::vector<long long>& l, const std::vector<Rational>& b,
                                        const std::vector<Rational>& bp, std::uint64_t seed,
                                        const Budget& budget) {
    PlantedBilinear alg = plant_bilinear_algebraic(k, l, b, bp, budget);
    const std::size_t n = k.size();
    require_proper_symmetric(q, budget, "plant_bilinear_combined");
    auto eng = seeded_engine(seed);
    RectMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, alg.matrix.at(i, j) + sample_gap_element(q, eng));
    // certificate: on the event that both planted linear forms vanish, the
    // form lands in n^2 Q; pigeonhole over its volume
    Rational cert = alg.certificate / Rational(dilate(q, static_cast<long long>(n) * n).volume());
    return PlantedBilinear{std::move(m), std::move(cert)};
}

PlantedQuadratic plant_quadratic_additive(const Gap& q, std::size_t n, std::uint64_t seed,
                                          const Budget& budget) {
    if (n == 0) throw input_error("plant_quadratic_additive requires n >= 1");
    require_proper_symmetric(q, budget, "plant_quadratic_additive");
    auto eng = seeded_engine(seed);
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, sample_gap_element(q, eng));
    return PlantedQuadratic{std::move(m), additive_certificate(q, n)};
}

PlantedQuadratic plant_quadratic_algebraic(const std::vector<long long>& k, const std::vector<Rational>& b,
                                           const Budget& budget) {
    const std::size_t n = k.size();
    if (n == 0 || b.size() != n)
        throw input_error("plant_quadratic_algebraic requires two equal-length nonempty vectors");
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m.set(i, j, Rational(static_cast<long>(k[i])) * b[j] + Rational(static_cast<long>(k[j])) * b[i]);
    return PlantedQuadratic{std::move(m), zero_atom_of_int_walk(k, budget)};
}

PlantedQuadratic plant_quadratic_combined(const Gap& q, const std::vector<long long>& k,
                                          const std::vector<Rational>& b, std::uint64_t seed,
                                          const Budget& budget) {
    PlantedQuadratic alg = plant_quadratic_algebraic(k, b, budget);
    const std::size_t n = k.size();
    require_proper_symmetric(q, budget, "plant_quadratic_combined");
    auto eng = seeded_engine(seed);
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, alg.matrix.at(i, j) + sample_gap_element(q, eng));
    Rational cert = alg.certificate / Rational(dilate(q, static_cast<long long>(n) * n).volume());
    return PlantedQuadratic{std::move(m), std::move(cert)};
}

}  // namespace offord
