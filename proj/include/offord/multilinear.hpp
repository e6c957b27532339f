#pragma once

#include <cstdint>
#include <vector>

#include "offord/budget.hpp"
#include "offord/gap.hpp"
#include "offord/linear.hpp"
#include "offord/rational.hpp"

namespace offord {

// Square matrix of rationals, row-major.
class RectMatrix {
public:
    explicit RectMatrix(std::size_t n) : n_(n), e_(n * n, Rational(0)) {}
    RectMatrix(std::size_t n, std::vector<Rational> entries);
    static RectMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t n() const { return n_; }
    const Rational& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, Rational v) { e_[i * n_ + j] = std::move(v); }
    std::vector<std::vector<Rational>> rows() const;

private:
    std::size_t n_;
    std::vector<Rational> e_;
};

// Symmetric matrix of rationals; upper triangle stored, symmetric reads.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t n) : n_(n), tri_(n * (n + 1) / 2, Rational(0)) {}
    // Validates exact symmetry of the given square rows (input_error otherwise).
    static SymMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t n() const { return n_; }
    const Rational& at(std::size_t i, std::size_t j) const { return tri_[tri_index(i, j)]; }
    void set(std::size_t i, std::size_t j, Rational v) { tri_[tri_index(i, j)] = std::move(v); }
    RectMatrix to_rect() const;
    std::vector<std::vector<Rational>> rows() const;

private:
    std::size_t tri_index(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }
    std::size_t n_;
    std::vector<Rational> tri_;
};

// Exact law of the bilinear form v^T m w where v_i are iid by row_law and w_j
// iid by col_law. Enumerates v outcomes (split across `workers` contiguous
// ranges, merged in worker order; the result is independent of the split) and
// convolves the induced linear form in w for each.
DistTable bilinear_distribution(const RectMatrix& m, const StepLaw& row_law, const StepLaw& col_law,
                                const Budget& budget = {}, unsigned workers = 1);

// Bilinear concentration probability rho_b(A) = sup_v P(sum a_ij x_i y_j = v)
// with least attaining value.
RhoResult rho_bilinear(const RectMatrix& a, const StepLaw& law, const Budget& budget = {},
                       unsigned workers = 1);

// Exact law of the quadratic form sum_{i,j} a_ij x_i x_j (all ordered pairs,
// diagonal included) by direct outcome enumeration.
DistTable quadratic_distribution(const SymMatrix& a, const StepLaw& law, const Budget& budget = {});

// Quadratic concentration probability rho_q(A) with least attaining value.
RhoResult rho_quadratic(const SymMatrix& a, const StepLaw& law, const Budget& budget = {});

// Cut submatrix: entry (i,j) is a_ij when exactly one of i, j lies in u,
// else 0. Throws input_error on out-of-range indices.
RectMatrix a_u_submatrix(const SymMatrix& a, const std::vector<std::size_t>& u);

struct DecouplingReport {
    Rational lhs;       // rho_q(A)^8, Bernoulli steps
    Rational rhs_mean;  // E_U P_{v,w}(sum A_U(ij) v_i w_j = 0), v,w iid eta^{1/2}, U uniform
    Rational rhs_min;   // min over U of the same probability
    bool holds;         // lhs <= rhs_mean
};

// Exact decoupling comparison. The inequality's right side is computed in
// expectation over the 2^n cuts U (the averaged form); the per-U minimum is
// reported alongside so neither reading is hidden. Requires n within the
// decoupling dimension cap.
DecouplingReport decoupling_check(const SymMatrix& a, const Budget& budget = {});

// Planted-instance generators. Each returns the constructed matrix together
// with an exact certificate c guaranteeing rho >= c for the matching
// concentration probability.

struct PlantedBilinear {
    RectMatrix matrix;
    Rational certificate;
};

struct PlantedQuadratic {
    SymMatrix matrix;
    Rational certificate;
};

// Entries sampled from a proper symmetric GAP q; certificate 1/(n^{2r} |Q|).
PlantedBilinear plant_bilinear_additive(const Gap& q, std::size_t n, std::uint64_t seed,
                                        const Budget& budget = {});
// a_ij = k_i b_j + l_j bp_i; certificate P(sum k_i x_i = 0) P(sum l_j y_j = 0).
PlantedBilinear plant_bilinear_algebraic(const std::vector<long long>& k, const std::vector<long long>& l,
                                         const std::vector<Rational>& b, const std::vector<Rational>& bp,
                                         const Budget& budget = {});
// Sum of the two structures; certificate p0 / Vol(n^2 Q).
PlantedBilinear plant_bilinear_combined(const Gap& q, const std::vector<long long>& k,
                                        const std::vector<long long>& l, const std::vector<Rational>& b,
                                        const std::vector<Rational>& bp, std::uint64_t seed,
                                        const Budget& budget = {});

// Symmetric fill from a proper symmetric GAP q; certificate 1/(n^{2r} |Q|).
PlantedQuadratic plant_quadratic_additive(const Gap& q, std::size_t n, std::uint64_t seed,
                                          const Budget& budget = {});
// a_ij = k_i b_j + k_j b_i; certificate P(sum k_i x_i = 0).
PlantedQuadratic plant_quadratic_algebraic(const std::vector<long long>& k, const std::vector<Rational>& b,
                                           const Budget& budget = {});
// Sum of the two structures; certificate P(sum k_i x_i = 0) / Vol(n^2 Q).
PlantedQuadratic plant_quadratic_combined(const Gap& q, const std::vector<long long>& k,
                                          const std::vector<Rational>& b, std::uint64_t seed,
                                          const Budget& budget = {});

}  // namespace offord
