#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "offord/budget.hpp"
#include "offord/int_matrix.hpp"
#include "offord/multilinear.hpp"
#include "offord/rational.hpp"

namespace offord {

// Reproducibility contract for stochastic experiments: identical
// (base_seed, workers, trials) give bit-identical results. Trials are split
// into contiguous ranges, worker w draws from worker_engine(base_seed, w),
// and counts merge by summation, so scheduling cannot change the outcome.
struct RngSpec {
    std::uint64_t base_seed = 0;
    unsigned workers = 1;
};

// Random symmetric sign matrix: upper triangle (diagonal included) iid
// uniform +/-1, mirrored below.
SymMatrix sample_symmetric(std::size_t n, std::mt19937_64& eng);

enum class QnMode { exact, montecarlo };

struct QnEstimate {
    std::size_t n = 0;
    QnMode mode = QnMode::exact;
    std::uint64_t singular_count = 0;
    std::uint64_t total = 0;
    Rational q_hat;
    // Monte Carlo only: conservative rational enclosure of the Wilson 95%
    // score interval (outward-rounded square root).
    std::optional<Rational> wilson_low, wilson_high;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

// Exact singularity probability of the n x n symmetric sign matrix by plain
// enumeration of all 2^{n(n+1)/2} upper triangles.
QnEstimate qn_exact(std::size_t n, const Budget& budget = {});

// Monte Carlo estimate with Wilson 95% interval; deterministic per RngSpec.
QnEstimate qn_montecarlo(std::size_t n, std::uint64_t trials, const RngSpec& rng,
                         const Budget& budget = {});

// Conservative rational enclosure of the Wilson 95% score interval.
std::pair<Rational, Rational> wilson_interval_95(std::uint64_t successes, std::uint64_t total);

// Number of vectors v in {-1,1}^n lying in the rational span of the given
// +/-1 rows. 2^n membership tests against a fraction-free echelon basis.
std::uint64_t odlyzko_count(const std::vector<std::vector<int>>& rows, const Budget& budget = {});

struct RankIncreaseReport {
    std::size_t n = 0, k = 0;
    std::uint64_t trials = 0, jumps = 0;
    Rational frequency;  // jumps / trials
    Rational bound;      // 1 - 2^{k-n}
};

// Conditional frequency of the rank jumping by exactly 2 when a random
// symmetric matrix of rank exactly k is bordered by a fresh random row and
// column. Each trial rejection-samples a fresh seed matrix conditioned on
// {rank = k} (the only distribution-faithful construction), with an explicit
// per-trial retry budget.
RankIncreaseReport rank_increase_experiment(std::size_t n, std::size_t k, std::uint64_t trials,
                                            const RngSpec& rng, const Budget& budget = {});

// Matrix of signed cofactors c_ij = (-1)^{i+j} det(m with row i, column j
// removed); symmetric for symmetric input. For the first-row/column border
// [[t, x^T], [x, m]] the exact expansion is
//   det = t det(m) - sum_ij c_ij x_i x_j,
// which tests verify for all sign borders.
SymMatrix cofactor_matrix(const SymMatrix& m);

// Rational rank-1 symmetric factorization: when rank(c) <= 1 and c_ij = a_i a_j
// admits a rational solution, returns a with its first nonzero entry positive.
// The zero matrix factors as the zero vector. Returns nullopt when the rank
// exceeds 1 or no rational factorization exists (negative or non-square
// leading diagonal entry).
std::optional<std::vector<Rational>> rank1_factor(const SymMatrix& c);

struct KernelHeightReport {
    std::vector<Rational> kernel;  // scaled so its first nonzero entry is 1
    BigInt max_numerator;          // heights over canonical entries
    BigInt max_denominator;
    BigInt hadamard_floor;  // floor(n^{n/2})
    bool within_bound;      // heights^2 <= n^n
};

// One primitive kernel vector of a singular +/-1 matrix, scaled so an entry
// is 1, with entry heights compared against the Hadamard bound n^{n/2}.
// Throws input_error on nonsingular input.
KernelHeightReport kernel_height_check(const IntMatrix& m);

// First index i (0-based) whose removal (row and column) from a symmetric
// matrix of rank n-1 leaves rank at least n-2. Scans indices in order.
std::size_t removable_index(const SymMatrix& m);

}  // namespace offord
