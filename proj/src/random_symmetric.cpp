#include "offord/random_symmetric.hpp"

#include <algorithm>
#include <string>
#include <thread>
#include <utility>

#include "offord/errors.hpp"
#include "offord/rng.hpp"

namespace offord {

namespace {

// row-major sign matrix as ints, the working format of the sampling loops
std::vector<int> sample_sign_sym(std::size_t n, std::mt19937_64& eng) {
    std::vector<int> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            int v = random_sign(eng);
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
    return m;
}

bool sign_singular(const std::vector<int>& m, std::size_t n) {
    if (n <= kSignFastMaxN) return bareiss_det_sign64(m, n) == 0;
    std::vector<BigInt> e(m.begin(), m.end());
    return sgn(bareiss_det(IntMatrix(n, n, std::move(e)))) == 0;
}

std::size_t sign_rank(const std::vector<int>& m, std::size_t rows, std::size_t cols) {
    if (rows <= kSignFastMaxN && cols <= kSignFastMaxN) return rank_sign64(m, rows, cols);
    std::vector<BigInt> e(m.begin(), m.end());
    return rank_exact(IntMatrix(rows, cols, std::move(e)));
}

}  // namespace

SymMatrix sample_symmetric(std::size_t n, std::mt19937_64& eng) {
    if (n == 0) throw input_error("sample_symmetric requires n >= 1");
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, Rational(random_sign(eng)));
    return m;
}

std::pair<Rational, Rational> wilson_interval_95(std::uint64_t successes, std::uint64_t total) {
    if (total == 0) throw input_error("Wilson interval of an empty sample");
    const Rational z(49, 25);  // 1.96 exactly
    const Rational z2 = z * z;
    const Rational t{BigInt(total)};
    const Rational p{BigInt(successes), BigInt(total)};
    const Rational denom = Rational(1) + z2 / t;
    const Rational center = p + z2 / (t + t);
    const Rational arg = p * (Rational(1) - p) / t + z2 / (Rational(4) * t * t);
    const Rational rad = z * sqrt_upper(arg);  // outward-rounded: interval only widens
    Rational low = (center - rad) / denom;
    Rational high = (center + rad) / denom;
    if (low.sign() < 0) low = Rational(0);
    if (high > Rational(1)) high = Rational(1);
    return {low, high};
}

QnEstimate qn_exact(std::size_t n, const Budget& budget) {
    if (n == 0) throw input_error("qn_exact requires n >= 1");
    const std::size_t bits = n * (n + 1) / 2;
    if (bits >= 64 || (1ull << bits) > budget.qn_exact_cap)
        throw budget_error("qn_exact cap exceeded: needs 2^" + std::to_string(bits) +
                           " determinants > cap " + std::to_string(budget.qn_exact_cap));

    const std::uint64_t total = 1ull << bits;
    // bit position of each upper-triangle entry
    std::vector<std::pair<std::size_t, std::size_t>> pos;
    pos.reserve(bits);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pos.emplace_back(i, j);

    std::uint64_t singular = 0;
    std::vector<int> m(n * n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t b = 0; b < bits; ++b) {
            int v = (mask >> b) & 1 ? 1 : -1;
            auto [i, j] = pos[b];
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
        if (sign_singular(m, n)) ++singular;
    }
    QnEstimate est;
    est.n = n;
    est.mode = QnMode::exact;
    est.singular_count = singular;
    est.total = total;
    est.q_hat = Rational(BigInt(singular), BigInt(total));
    return est;
}

QnEstimate qn_montecarlo(std::size_t n, std::uint64_t trials, const RngSpec& rng, const Budget&) {
    if (n == 0) throw input_error("qn_montecarlo requires n >= 1");
    if (trials == 0) throw input_error("qn_montecarlo requires trials >= 1");

    const unsigned workers = std::max(1u, rng.workers);
    std::vector<std::uint64_t> counts(workers, 0);
    auto run = [&](unsigned w) {
        auto eng = worker_engine(rng.base_seed, w);
        const std::uint64_t begin = trials * w / workers, end = trials * (w + 1) / workers;
        std::uint64_t c = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            auto m = sample_sign_sym(n, eng);
            if (sign_singular(m, n)) ++c;
        }
        counts[w] = c;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }
    std::uint64_t singular = 0;
    for (auto c : counts) singular += c;

    QnEstimate est;
    est.n = n;
    est.mode = QnMode::montecarlo;
    est.singular_count = singular;
    est.total = trials;
    est.q_hat = Rational(BigInt(singular), BigInt(trials));
    auto [lo, hi] = wilson_interval_95(singular, trials);
    est.wilson_low = lo;
    est.wilson_high = hi;
    est.seed = rng.base_seed;
    est.workers = workers;
    return est;
}

std::uint64_t odlyzko_count(const std::vector<std::vector<int>>& rows, const Budget& budget) {
    if (rows.empty()) throw input_error("odlyzko_count requires at least one row");
    const std::size_t n = rows.front().size();
    if (n == 0) throw input_error("odlyzko_count requires nonempty rows");
    for (const auto& r : rows) {
        if (r.size() != n) throw input_error("odlyzko_count rows differ in length");
        for (int v : r)
            if (v != 1 && v != -1) throw input_error("odlyzko_count entries must be +/-1");
    }
    if (n >= 64 || (1ull << n) > budget.odlyzko_cap)
        throw budget_error("odlyzko cap exceeded: needs 2^" + std::to_string(n) +
                           " membership tests > cap " + std::to_string(budget.odlyzko_cap));

    // fraction-free echelon basis of the row space
    const std::size_t k = rows.size();
    std::vector<BigInt> a(k * n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = rows[i][j];
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    {
        BigInt prev = 1;
        std::size_t r = 0;
        for (std::size_t c = 0; c < n && r < k; ++c) {
            std::size_t piv = r;
            while (piv < k && sgn(a[piv * n + c]) == 0) ++piv;
            if (piv == k) continue;
            if (piv != r)
                for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[r * n + j]);
            for (std::size_t i = r + 1; i < k; ++i) {
                for (std::size_t j = c + 1; j < n; ++j) {
                    BigInt num = a[i * n + j] * a[r * n + c] - a[i * n + c] * a[r * n + j];
                    mpz_divexact(a[i * n + j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                }
                a[i * n + c] = 0;
            }
            prev = a[r * n + c];
            pivots.emplace_back(r, c);
            ++r;
        }
    }

    // v is in the span iff eliminating every pivot column reduces it to zero;
    // the intermediate vector is rescaled (gcd) to keep heights flat
    std::uint64_t count = 0;
    std::vector<BigInt> v(n);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1 ? 1 : -1;
        for (auto [r, c] : pivots) {
            if (sgn(v[c]) == 0) continue;
            const BigInt f = v[c];
            const BigInt& piv = a[r * n + c];
            BigInt g = 0;
            for (std::size_t j = 0; j < n; ++j) {
                v[j] = v[j] * piv - f * a[r * n + j];
                g = gcd(g, v[j]);
            }
            if (sgn(g) > 0 && g != 1)
                for (auto& vj : v) mpz_divexact(vj.get_mpz_t(), vj.get_mpz_t(), g.get_mpz_t());
        }
        bool zero = true;
        for (const auto& vj : v)
            if (sgn(vj) != 0) {
                zero = false;
                break;
            }
        if (zero) ++count;
    }
    return count;
}

RankIncreaseReport rank_increase_experiment(std::size_t n, std::size_t k, std::uint64_t trials,
                                            const RngSpec& rng, const Budget& budget) {
    if (n < 3 || k < 1 || k > n - 2)
        throw input_error("rank_increase_experiment requires 1 <= k <= n-2");
    if (trials == 0) throw input_error("rank_increase_experiment requires trials >= 1");

    const unsigned workers = std::max(1u, rng.workers);
    std::vector<std::uint64_t> jump_counts(workers, 0);
    std::vector<std::string> failures(workers);

    auto run = [&](unsigned w) {
        auto eng = worker_engine(rng.base_seed, w);
        const std::uint64_t begin = trials * w / workers, end = trials * (w + 1) / workers;
        std::uint64_t jumps = 0;
        const std::size_t m = n + 1;
        std::vector<int> bordered(m * m);
        for (std::uint64_t t = begin; t < end; ++t) {
            // fresh seed matrix conditioned on {rank = k}
            std::vector<int> seed;
            bool found = false;
            for (std::uint64_t attempt = 0; attempt < budget.seed_retry_cap; ++attempt) {
                seed = sample_sign_sym(n, eng);
                if (sign_rank(seed, n, n) == k) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                failures[w] = "rank_increase_experiment: no rank-" + std::to_string(k) +
                              " seed of size " + std::to_string(n) + " within " +
                              std::to_string(budget.seed_retry_cap) + " attempts";
                return;
            }
            // border with a fresh random row/column
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) bordered[i * m + j] = seed[i * n + j];
            for (std::size_t i = 0; i < m; ++i) {
                int v = random_sign(eng);
                bordered[i * m + n] = v;
                bordered[n * m + i] = v;
            }
            if (sign_rank(bordered, m, m) == k + 2) ++jumps;
        }
        jump_counts[w] = jumps;
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }
    for (const auto& f : failures)
        if (!f.empty()) throw budget_error(f);

    std::uint64_t jumps = 0;
    for (auto c : jump_counts) jumps += c;

    RankIncreaseReport rep;
    rep.n = n;
    rep.k = k;
    rep.trials = trials;
    rep.jumps = jumps;
    rep.frequency = Rational(BigInt(jumps), BigInt(trials));
    rep.bound = Rational(1) - Rational(BigInt(1), int_pow(BigInt(2), static_cast<unsigned long>(n - k)));
    return rep;
}

SymMatrix cofactor_matrix(const SymMatrix& m) {
    const std::size_t n = m.n();
    if (n == 0) throw input_error("cofactor_matrix of an empty matrix");
    auto rows = m.rows();
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            std::vector<std::vector<Rational>> minor;
            minor.reserve(n - 1);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<Rational> row;
                row.reserve(n - 1);
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j) continue;
                    row.push_back(rows[r][c]);
                }
                minor.push_back(std::move(row));
            }
            Rational d = det_rational(minor);
            out.set(i, j, ((i + j) % 2 == 0) ? d : -d);
        }
    }
    return out;
}

std::optional<std::vector<Rational>> rank1_factor(const SymMatrix& c) {
    const std::size_t n = c.n();
    auto rows = c.rows();
    const std::size_t rk = rank_rational(rows);
    if (rk > 1) return std::nullopt;
    if (rk == 0) return std::vector<Rational>(n, Rational(0));

    // rank-1 symmetric: c = t v v^T, so every nonzero row has a nonzero
    // diagonal entry if a rational factorization exists at all
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
        if (!c.at(i, i).is_zero()) {
            p = i;
            break;
        }
    if (p == n) return std::nullopt;  // nonzero rank-1 with zero diagonal: no a_i a_i pattern
    const Rational& cpp = c.at(p, p);
    if (cpp.sign() < 0) return std::nullopt;

    // a_p = sqrt(c_pp) must be rational
    BigInt num = cpp.numerator(), den = cpp.denominator();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        return std::nullopt;
    BigInt rnum, rden;
    mpz_sqrt(rnum.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rden.get_mpz_t(), den.get_mpz_t());
    Rational ap(rnum, rden);

    std::vector<Rational> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = c.at(i, p) / ap;
    // sign convention: first nonzero entry positive
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        if (a[i].sign() < 0)
            for (auto& ai : a) ai = -ai;
        break;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (a[i] * a[j] != c.at(i, j)) return std::nullopt;
    return a;
}

KernelHeightReport kernel_height_check(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("kernel_height_check requires a square matrix");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m.at(i, j) != 1 && m.at(i, j) != -1)
                throw input_error("kernel_height_check entries must be +/-1");
    auto kernel = integer_kernel(m);
    if (kernel.empty()) throw input_error("kernel_height_check requires a singular matrix");

    const auto& v = kernel.front();
    BigInt pivot = 0;
    for (const auto& x : v)
        if (sgn(x) != 0) {
            pivot = x;
            break;
        }
    KernelHeightReport rep;
    rep.kernel.reserve(n);
    rep.max_numerator = 0;
    rep.max_denominator = 0;
    for (const auto& x : v) {
        Rational e(x, pivot);
        rep.max_numerator = std::max(rep.max_numerator, BigInt(abs(e.numerator())));
        rep.max_denominator = std::max(rep.max_denominator, e.denominator());
        rep.kernel.push_back(std::move(e));
    }
    BigInt nn = int_pow(BigInt(static_cast<unsigned long>(n)), static_cast<unsigned long>(n));
    rep.hadamard_floor = isqrt(nn);
    rep.within_bound = rep.max_numerator * rep.max_numerator <= nn &&
                       rep.max_denominator * rep.max_denominator <= nn;
    return rep;
}

std::size_t removable_index(const SymMatrix& m) {
    const std::size_t n = m.n();
    if (n < 2) throw input_error("removable_index requires n >= 2");
    auto rows = m.rows();
    if (rank_rational(rows) != n - 1) throw input_error("removable_index requires rank n-1");
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<Rational>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<Rational> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c) {
                if (c == i) continue;
                row.push_back(rows[r][c]);
            }
            minor.push_back(std::move(row));
        }
        if (rank_rational(minor) >= n - 2) return i;
    }
    throw input_error("removable_index: no index found (violated guarantee)");
}

}  // namespace offord
