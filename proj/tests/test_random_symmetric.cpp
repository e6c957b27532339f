#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "offord/errors.hpp"
#include "offord/random_symmetric.hpp"
#include "offord/rng.hpp"
#include "oracles.hpp"

using namespace offord;

namespace {

IntMatrix to_int_matrix(const SymMatrix& m) {
    std::vector<BigInt> e;
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = 0; j < m.n(); ++j) e.push_back(m.at(i, j).numerator());
    return IntMatrix(m.n(), m.n(), std::move(e));
}

SymMatrix sym_from_mask(std::size_t n, std::uint64_t mask) {
    SymMatrix m(n);
    std::size_t b = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            m.set(i, j, Rational((mask >> b) & 1 ? 1 : -1));
            ++b;
        }
    return m;
}

// bordered matrix [[t, x^T], [x, m]] for the cofactor identity checks
IntMatrix bordered(const SymMatrix& m, const std::vector<int>& border) {
    const std::size_t n = m.n() + 1;
    std::vector<BigInt> e(n * n);
    e[0] = border[0];
    for (std::size_t i = 1; i < n; ++i) {
        e[i] = border[i];
        e[i * n] = border[i];
    }
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) e[i * n + j] = m.at(i - 1, j - 1).numerator();
    return IntMatrix(n, n, std::move(e));
}

}  // namespace

TEST_CASE("sample_symmetric produces symmetric sign matrices, reproducibly") {
    auto e1 = seeded_engine(99), e2 = seeded_engine(99);
    SymMatrix a = sample_symmetric(5, e1), b = sample_symmetric(5, e2);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(a.at(i, j) == b.at(i, j));
            CHECK(a.at(i, j) == a.at(j, i));
            CHECK(a.at(i, j).abs() == Rational(1));
        }

    // empirical mean of a fixed off-diagonal entry, 10^4 samples, 5 sigma
    auto eng = seeded_engine(7);
    long sum = 0;
    for (int t = 0; t < 10000; ++t) {
        SymMatrix m = sample_symmetric(3, eng);
        sum += m.at(0, 1) == Rational(1) ? 1 : -1;
    }
    CHECK(std::abs(sum) <= 500);
}

TEST_CASE("qn_exact matches the frozen oracle values") {
    CHECK(qn_exact(1).q_hat == Rational(0));
    CHECK(qn_exact(2).q_hat == Rational(1, 2));
    CHECK(qn_exact(3).q_hat == Rational(1, 2));
    CHECK(qn_exact(2).total == 8);
    CHECK(qn_exact(2).singular_count == 4);

    // independently recomputed by cofactor-expansion enumeration
    auto [s3, t3] = oracle::qn_enum(3);
    CHECK(qn_exact(3).singular_count == s3);
    CHECK(qn_exact(3).total == t3);

    Budget tiny;
    tiny.qn_exact_cap = 4;
    CHECK_THROWS_AS(qn_exact(3, tiny), budget_error);
}

TEST_CASE("qn_montecarlo is deterministic and brackets small-n truth") {
    RngSpec rng{2024, 2};
    auto a = qn_montecarlo(3, 20000, rng);
    auto b = qn_montecarlo(3, 20000, rng);
    CHECK(a.singular_count == b.singular_count);
    CHECK(a.q_hat == b.q_hat);
    CHECK(*a.wilson_low == *b.wilson_low);
    CHECK(*a.wilson_high == *b.wilson_high);
    CHECK(*a.wilson_low <= Rational(1, 2));
    CHECK(*a.wilson_high >= Rational(1, 2));

    CHECK_THROWS_AS(qn_montecarlo(3, 0, rng), input_error);
}

TEST_CASE("wilson interval encloses the estimate and stays in [0,1]") {
    auto [lo, hi] = wilson_interval_95(0, 100);
    CHECK(lo == Rational(0));
    CHECK(hi > Rational(0));
    auto [lo2, hi2] = wilson_interval_95(100, 100);
    CHECK(hi2 == Rational(1));
    auto [lo3, hi3] = wilson_interval_95(50, 100);
    CHECK(lo3 < Rational(1, 2));
    CHECK(hi3 > Rational(1, 2));
    CHECK(lo3 >= Rational(0));
    CHECK(hi3 <= Rational(1));
}

TEST_CASE("odlyzko_count pinned cases and rank-oracle agreement") {
    std::vector<std::vector<int>> single{{1, -1, 1, 1}};
    CHECK(odlyzko_count(single) == 2);

    // k = n independent rows span everything
    std::vector<std::vector<int>> full;
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<int> row(3, 1);
        for (std::size_t j = 0; j < i; ++j) row[j] = -1;
        full.push_back(row);
    }
    REQUIRE(rank_exact(IntMatrix::from_rows({{1, 1, 1}, {-1, 1, 1}, {-1, -1, 1}})) == 3);
    CHECK(odlyzko_count(full) == 8);

    std::mt19937_64 eng(31);
    for (int rep = 0; rep < 25; ++rep) {
        std::size_t n = 2 + eng() % 5, k = 1 + eng() % n;
        std::vector<std::vector<int>> rows(k, std::vector<int>(n));
        for (auto& r : rows)
            for (auto& v : r) v = (eng() >> 32) & 1 ? 1 : -1;
        std::uint64_t got = odlyzko_count(rows);
        CHECK(got == oracle::odlyzko_rank_oracle(rows));
        // Odlyzko's bound, exact
        std::vector<std::vector<long>> li;
        for (const auto& r : rows) li.emplace_back(r.begin(), r.end());
        std::size_t rank = rank_exact(IntMatrix::from_rows(li));
        CHECK(BigInt(got) <= int_pow(BigInt(2), rank));
    }

    CHECK_THROWS_AS(odlyzko_count({{1, 0, 1}}), input_error);
    Budget tiny;
    tiny.odlyzko_cap = 4;
    CHECK_THROWS_AS(odlyzko_count({{1, 1, 1, -1}}, tiny), budget_error);
}

TEST_CASE("rank_increase_experiment rejects bad ranges and meets the step bound") {
    RngSpec rng{11, 2};
    CHECK_THROWS_AS(rank_increase_experiment(4, 3, 10, rng), input_error);  // k = n-1
    CHECK_THROWS_AS(rank_increase_experiment(4, 2, 0, rng), input_error);

    auto rep = rank_increase_experiment(4, 2, 2000, rng);
    CHECK(rep.bound == Rational(3, 4));
    // 5 sigma slack below the bound at beta = 1/4
    CHECK(rep.frequency >= Rational(3, 4) - Rational(5) * sqrt_upper(Rational(3, 16) / Rational(2000)));

    auto rep2 = rank_increase_experiment(4, 2, 2000, rng);
    CHECK(rep2.jumps == rep.jumps);  // determinism
}

TEST_CASE("cofactor matrix pinned cases") {
    SymMatrix m = SymMatrix::from_rows({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}});
    SymMatrix c = cofactor_matrix(m);
    CHECK(c.at(0, 0) == Rational(1));
    CHECK(c.at(0, 1) == Rational(-1));
    CHECK(c.at(1, 1) == Rational(1));

    SymMatrix id(3);
    for (std::size_t i = 0; i < 3; ++i) id.set(i, i, Rational(1));
    SymMatrix cid = cofactor_matrix(id);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(cid.at(i, j) == (i == j ? Rational(1) : Rational(0)));
}

TEST_CASE("bordered determinant identity holds for every sign border") {
    std::mt19937_64 eng(37);
    for (int rep = 0; rep < 12; ++rep) {
        std::size_t k = 2 + eng() % 3;
        SymMatrix m = sample_symmetric(k, eng);
        SymMatrix c = cofactor_matrix(m);
        Rational det_m{bareiss_det(to_int_matrix(m))};
        for (std::uint64_t mask = 0; mask < (1ull << (k + 1)); ++mask) {
            std::vector<int> border(k + 1);
            for (std::size_t b = 0; b <= k; ++b) border[b] = (mask >> b) & 1 ? 1 : -1;
            Rational quad(0);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    Rational t = c.at(i, j);
                    if (border[i + 1] * border[j + 1] < 0) t = -t;
                    quad += t;
                }
            Rational lhs{bareiss_det(bordered(m, border))};
            CHECK(lhs == Rational(border[0]) * det_m - quad);
        }
    }
}

TEST_CASE("corank-1 symmetric matrices have rank <= 1 cofactor matrices") {
    for (std::size_t size = 2; size <= 5; ++size) {
        const std::size_t bits = size * (size + 1) / 2;
        for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
            // cheap sign-matrix rank prefilter, exact
            std::vector<int> fast(size * size);
            {
                std::size_t b = 0;
                for (std::size_t i = 0; i < size; ++i)
                    for (std::size_t j = i; j < size; ++j) {
                        int v = (mask >> b) & 1 ? 1 : -1;
                        ++b;
                        fast[i * size + j] = v;
                        fast[j * size + i] = v;
                    }
            }
            if (rank_sign64(fast, size, size) != size - 1) continue;
            SymMatrix m = sym_from_mask(size, mask);
            CHECK(rank_rational(cofactor_matrix(m).rows()) <= 1);
        }
    }
}

TEST_CASE("rank1_factor reconstructs and rejects correctly") {
    SymMatrix c = SymMatrix::from_rows({{Rational(1), Rational(-1)}, {Rational(-1), Rational(1)}});
    auto f = rank1_factor(c);
    REQUIRE(f.has_value());
    CHECK(*f == std::vector<Rational>{Rational(1), Rational(-1)});

    auto z = rank1_factor(SymMatrix(3));
    REQUIRE(z.has_value());
    CHECK(*z == std::vector<Rational>(3, Rational(0)));

    SymMatrix full(2);
    full.set(0, 0, Rational(1));
    full.set(1, 1, Rational(1));
    CHECK(!rank1_factor(full).has_value());  // rank 2

    SymMatrix neg(1);
    neg.set(0, 0, Rational(-4));
    CHECK(!rank1_factor(neg).has_value());  // negative diagonal

    SymMatrix nonsquare_diag(1);
    nonsquare_diag.set(0, 0, Rational(2));
    CHECK(!rank1_factor(nonsquare_diag).has_value());  // sqrt(2) irrational

    // round trip on generated rank-1 matrices
    std::mt19937_64 eng(41);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 1 + eng() % 4;
        std::vector<Rational> a;
        for (std::size_t i = 0; i < n; ++i)
            a.emplace_back(static_cast<long>(eng() % 9) - 4, 1 + static_cast<long>(eng() % 3));
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m.set(i, j, a[i] * a[j]);
        auto g = rank1_factor(m);
        REQUIRE(g.has_value());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK((*g)[i] * (*g)[j] == m.at(i, j));
    }
}

TEST_CASE("kernel heights stay under the Hadamard bound") {
    IntMatrix flat = IntMatrix::from_rows({{1, 1}, {1, 1}});
    auto rep = kernel_height_check(flat);
    CHECK(rep.kernel == std::vector<Rational>{Rational(1), Rational(-1)});
    CHECK(rep.max_numerator == 1);
    CHECK(rep.max_denominator == 1);
    CHECK(rep.hadamard_floor == 2);
    CHECK(rep.within_bound);

    CHECK_THROWS_AS(kernel_height_check(IntMatrix::from_rows({{1, 1}, {1, -1}})), input_error);
    CHECK_THROWS_AS(kernel_height_check(IntMatrix::from_rows({{1, 2}, {2, 1}})), input_error);

    std::mt19937_64 eng(43);
    int found = 0;
    while (found < 15) {
        std::size_t n = 2 + eng() % 5;
        std::vector<BigInt> e(n * n);
        std::vector<int> s(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                int v = (eng() >> 32) & 1 ? 1 : -1;
                e[i * n + j] = v;
                e[j * n + i] = v;
                s[i * n + j] = v;
                s[j * n + i] = v;
            }
        if (bareiss_det_sign64(s, n) != 0) continue;
        ++found;
        auto r = kernel_height_check(IntMatrix(n, n, e));
        CHECK(r.within_bound);
        bool has_unit = false;
        for (const auto& x : r.kernel) has_unit |= x == Rational(1);
        CHECK(has_unit);
    }
}

TEST_CASE("kernel vectors of corank-1 sign matrices match Cramer adjugate columns") {
    // dual route: for corank-1 m, the adjugate columns (built purely from
    // bareiss_det minors) span the kernel, so the primitive kernel vector must
    // be parallel to any nonzero adjugate column, and its heights are bounded
    // by the largest (n-1)-minor
    std::mt19937_64 eng(53);
    int found = 0;
    while (found < 12) {
        std::size_t n = 2 + eng() % 5;
        std::vector<BigInt> e(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                int v = (eng() >> 32) & 1 ? 1 : -1;
                e[i * n + j] = v;
                e[j * n + i] = v;
            }
        IntMatrix m(n, n, e);
        if (bareiss_det(m) != 0) continue;
        auto kernel = integer_kernel(m);
        if (kernel.size() != 1) continue;  // corank 1 only
        ++found;
        const auto& v = kernel.front();

        // adjugate column j0: adj(i, j0) = (-1)^{i+j0} minor(j0, i)
        BigInt max_minor = 0;
        std::vector<BigInt> col;
        for (std::size_t j0 = 0; j0 < n && col.empty(); ++j0) {
            std::vector<BigInt> cand(n);
            bool nonzero = false;
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<BigInt> sub;
                sub.reserve((n - 1) * (n - 1));
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == j0) continue;
                    for (std::size_t c = 0; c < n; ++c) {
                        if (c == i) continue;
                        sub.push_back(m.at(r, c));
                    }
                }
                BigInt minor = bareiss_det(IntMatrix(n - 1, n - 1, std::move(sub)));
                max_minor = std::max(max_minor, BigInt(abs(minor)));
                cand[i] = (i + j0) % 2 == 0 ? minor : BigInt(-minor);
                nonzero |= sgn(cand[i]) != 0;
            }
            if (nonzero) col = std::move(cand);
        }
        REQUIRE(!col.empty());
        // parallel: col[i] v[j] == col[j] v[i] for all i, j
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(col[i] * v[j] == col[j] * v[i]);

        // heights of the unit-scaled kernel vector are ratios of minors
        auto rep = kernel_height_check(m);
        CHECK(rep.max_numerator <= max_minor);
        CHECK(rep.max_denominator <= max_minor);
    }
}

TEST_CASE("removable_index finds a rank-preserving removal") {
    std::mt19937_64 eng(47);
    int found = 0;
    while (found < 10) {
        std::size_t n = 3 + eng() % 3;
        SymMatrix m = sample_symmetric(n, eng);
        if (rank_rational(m.rows()) != n - 1) continue;
        ++found;
        std::size_t idx = removable_index(m);
        CHECK(idx < n);
        std::vector<std::vector<Rational>> minor;
        auto rows = m.rows();
        for (std::size_t r = 0; r < n; ++r) {
            if (r == idx) continue;
            std::vector<Rational> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != idx) row.push_back(rows[r][c]);
            minor.push_back(row);
        }
        CHECK(rank_rational(minor) >= n - 2);
    }
}
