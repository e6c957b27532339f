#include "offord/detector.hpp"

#include <algorithm>
#include <set>

#include "offord/errors.hpp"

namespace offord {

namespace {

constexpr std::size_t kPoolCap = 500;
constexpr long long kCoordBox = 64;

struct Candidate {
    Gap gap;
    std::vector<std::size_t> covered;
    BigInt volume;
};

// deterministic preference: smallest volume, then lowest rank, then
// lexicographically smallest generator list
bool better(const Candidate& a, const Candidate& b) {
    if (a.volume != b.volume) return a.volume < b.volume;
    if (a.gap.rank() != b.gap.rank()) return a.gap.rank() < b.gap.rank();
    return std::lexicographical_compare(a.gap.generators().begin(), a.gap.generators().end(),
                                        b.gap.generators().begin(), b.gap.generators().end());
}

std::vector<std::size_t> covered_by_set(const Multiset& a, const std::set<Rational>& elems) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (elems.count(a[i])) out.push_back(i);
    return out;
}

// Solve x = m1 g1 + m2 g2 in integers with |m1|, |m2| <= kCoordBox, preferring
// small max(|m1|, |m2|), then small |m1|, then the numeric values. Returns
// false when no bounded solution exists.
bool solve_pair(const Rational& x, const Rational& g1, const Rational& g2, long long& m1_out,
                long long& m2_out) {
    // clear denominators: m1 G1 + m2 G2 = X over the integers
    BigInt d12 = lcm(g1.denominator(), g2.denominator());
    BigInt den = lcm(d12, x.denominator());
    BigInt g1i = g1.numerator() * (den / g1.denominator());
    BigInt g2i = g2.numerator() * (den / g2.denominator());
    BigInt xi = x.numerator() * (den / x.denominator());

    BigInt g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), g1i.get_mpz_t(), g2i.get_mpz_t());
    if (sgn(g) == 0) return sgn(xi) == 0 ? (m1_out = 0, m2_out = 0, true) : false;
    if (!mpz_divisible_p(xi.get_mpz_t(), g.get_mpz_t())) return false;
    BigInt q = xi / g;
    BigInt base1 = u * q, base2 = v * q;
    BigInt step1 = g2i / g, step2 = g1i / g;  // m1 = base1 + t step1, m2 = base2 - t step2

    // t-range keeping |m1| <= box (step1 != 0 since g2 != 0)
    auto div_floor = [](const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    };
    auto div_ceil = [](const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    };
    const BigInt box(static_cast<long>(kCoordBox));
    BigInt lo = (-box - base1), hi = (box - base1);
    BigInt t_lo, t_hi;
    if (sgn(step1) > 0) {
        t_lo = div_ceil(lo, step1);
        t_hi = div_floor(hi, step1);
    } else {
        t_lo = div_ceil(hi, step1);
        t_hi = div_floor(lo, step1);
    }
    if (t_lo > t_hi) return false;

    bool have = false;
    long long best1 = 0, best2 = 0;
    for (BigInt t = t_lo; t <= t_hi; t += 1) {
        BigInt m1 = base1 + t * step1;
        BigInt m2 = base2 - t * step2;
        if (abs(m2) > box) continue;
        long long c1 = static_cast<long long>(m1.get_si());
        long long c2 = static_cast<long long>(m2.get_si());
        auto key = [](long long a, long long b) {
            return std::tuple(std::max(std::llabs(a), std::llabs(b)), std::llabs(a), a, b);
        };
        if (!have || key(c1, c2) < key(best1, best2)) {
            best1 = c1;
            best2 = c2;
            have = true;
        }
    }
    if (!have) return false;
    m1_out = best1;
    m2_out = best2;
    return true;
}

Rational ilo_bound(const Rational& rho, std::size_t n_prime, std::size_t r) {
    // rho^{-1} n'^{-r/2}; n' clamped to >= 1 so the degenerate n' = 0 call is
    // still reportable. Odd ranks use an outward-rounded rational sqrt.
    const std::size_t np = std::max<std::size_t>(n_prime, 1);
    Rational inv_rho = Rational(1) / rho;
    BigInt half_pow = int_pow(BigInt(static_cast<unsigned long>(np)), r / 2);
    Rational bound = inv_rho / Rational(half_pow);
    if (r % 2 == 1) bound = bound * sqrt_upper(Rational(1, static_cast<long>(np)));
    return bound;
}

}  // namespace

StructureReport detect_structure(const Multiset& a, std::size_t r_max, std::size_t n_prime,
                                 const Budget& budget) {
    const std::size_t n = a.size();
    if (n == 0) throw input_error("detect_structure requires a nonempty multiset");
    if (n_prime >= n) throw input_error("detect_structure requires n_prime < n");
    if (r_max > 2) throw input_error("detect_structure supports r_max <= 2");

    StructureReport report;
    report.n_prime = n_prime;
    report.rho = rho_linear(a, StepLaw::bernoulli(), budget).rho;

    // outliers: greedy by |a_i - median|, ties broken by lower index
    std::vector<Rational> sorted(a.elems);
    std::sort(sorted.begin(), sorted.end());
    const Rational median = sorted[(n - 1) / 2];
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return (a[i] - median).abs() > (a[j] - median).abs();
    });
    std::vector<bool> inlier(n, true);
    for (std::size_t t = 0; t < n_prime; ++t) inlier[order[t]] = false;

    std::optional<Candidate> best;
    auto offer = [&](Candidate c) {
        if (c.covered.size() + n_prime < n) return;
        if (!best || better(c, *best)) best = std::move(c);
    };

    // rank 0: the GAP {0}
    {
        std::vector<std::size_t> covered;
        for (std::size_t i = 0; i < n; ++i)
            if (a[i].is_zero()) covered.push_back(i);
        offer(Candidate{Gap::zero(), std::move(covered), 1});
    }

    // rank 1: gcd of the inliers after clearing denominators
    if (r_max >= 1) {
        BigInt den = 1;
        for (std::size_t i = 0; i < n; ++i)
            if (inlier[i]) den = lcm(den, a[i].denominator());
        BigInt g = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (inlier[i]) g = gcd(g, a[i].numerator() * (den / a[i].denominator()));
        if (sgn(g) != 0) {
            Rational gen(g, den);
            long long radius = 0;
            bool fits = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (!inlier[i]) continue;
                Rational q = a[i] / gen;  // exact integer by construction
                if (!q.numerator().fits_slong_p()) {
                    fits = false;
                    break;
                }
                radius = std::max(radius, std::llabs(q.numerator().get_si()));
            }
            if (fits) {
                Gap gap = Gap::symmetric({gen}, {radius});
                std::vector<std::size_t> covered;
                for (std::size_t i = 0; i < n; ++i) {
                    Rational q = a[i] / gen;
                    if (q.is_integer() && q.abs() <= Rational(static_cast<long>(radius)))
                        covered.push_back(i);
                }
                BigInt vol = gap.volume();
                offer(Candidate{std::move(gap), std::move(covered), std::move(vol)});
            }
        }
    }

    // rank 2: generator pairs from normalized elements and pairwise differences
    if (r_max >= 2) {
        std::set<Rational> pool_set;
        std::vector<std::size_t> in_idx;
        for (std::size_t i = 0; i < n; ++i)
            if (inlier[i]) in_idx.push_back(i);
        for (std::size_t i : in_idx)
            if (!a[i].is_zero()) pool_set.insert(a[i].abs());
        for (std::size_t s = 0; s < in_idx.size() && pool_set.size() <= kPoolCap; ++s)
            for (std::size_t t = s + 1; t < in_idx.size(); ++t) {
                Rational d = (a[in_idx[s]] - a[in_idx[t]]).abs();
                if (!d.is_zero()) pool_set.insert(d);
            }
        if (pool_set.size() <= kPoolCap) {
            std::vector<Rational> pool(pool_set.begin(), pool_set.end());
            for (std::size_t p = 0; p < pool.size(); ++p) {
                for (std::size_t q = p + 1; q < pool.size(); ++q) {
                    const Rational &g1 = pool[p], &g2 = pool[q];
                    long long r1 = 0, r2 = 0;
                    bool ok = true;
                    for (std::size_t i : in_idx) {
                        long long m1, m2;
                        if (!solve_pair(a[i], g1, g2, m1, m2)) {
                            ok = false;
                            break;
                        }
                        r1 = std::max(r1, std::llabs(m1));
                        r2 = std::max(r2, std::llabs(m2));
                    }
                    if (!ok) continue;
                    Gap gap = Gap::symmetric({g1, g2}, {r1, r2});
                    ProperCheck pc = is_proper(gap, budget);
                    if (!pc.proper) {
                        ProperizeResult pr = properize(gap, budget);
                        if (pr.status != ProperizeStatus::proper || pr.gap.rank() > r_max) continue;
                        gap = pr.gap;
                    }
                    std::set<Rational> elems = gap.element_set(budget);
                    std::vector<std::size_t> covered = covered_by_set(a, elems);
                    BigInt vol = gap.volume();
                    offer(Candidate{std::move(gap), std::move(covered), std::move(vol)});
                }
            }
        }
    }

    if (!best) {
        report.found = false;
        for (std::size_t i = 0; i < n; ++i) report.exceptions.push_back(i);
        report.ilo_size_bound = ilo_bound(report.rho, n_prime, 0);
        return report;
    }
    report.found = true;
    report.gap = best->gap;
    report.covered = best->covered;
    std::vector<bool> cov(n, false);
    for (std::size_t i : report.covered) cov[i] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!cov[i]) report.exceptions.push_back(i);
    report.gap_size = best->volume;
    report.ilo_size_bound = ilo_bound(report.rho, n_prime, best->gap.rank());
    return report;
}

IloComparison validate_against_ilo(const StructureReport& report, const Multiset&) {
    if (!report.found) throw input_error("validate_against_ilo requires a successful detection");
    IloComparison cmp;
    cmp.gap_size = report.gap_size;
    cmp.ilo_size_bound = report.ilo_size_bound;
    cmp.ratio = Rational(cmp.gap_size) / cmp.ilo_size_bound;
    return cmp;
}

}  // namespace offord
