#pragma once

#include <cstddef>
#include <vector>

#include "offord/rational.hpp"

namespace offord {

// Dense integer matrix with arbitrary-precision entries, immutable after
// construction. Row-major storage.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);

    static IntMatrix zero(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
    static IntMatrix from_big_rows(const std::vector<std::vector<BigInt>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const BigInt& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

private:
    std::size_t rows_, cols_;
    std::vector<BigInt> e_;
};

// Exact determinant by fraction-free (Bareiss) elimination; all intermediate
// values stay integral. Throws input_error on non-square input.
BigInt bareiss_det(const IntMatrix& m);

// Exact rank over the rationals, any shape.
std::size_t rank_exact(const IntMatrix& m);

// Basis of the integer kernel {v : m v = 0}. Each vector is primitive
// (entry gcd 1) with its first nonzero entry positive; vectors are ordered by
// the free column they solve for. Empty iff m has full column rank.
std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& m);

// Fast int64 paths for small sign matrices. Fraction-free intermediates are
// minors of the input, so for +/-1 entries and n <= 16 everything fits in
// 64 bits (Hadamard: |minor of size k| <= k^(k/2)). Both must agree exactly
// with the arbitrary-precision routines; tests enforce this.
constexpr std::size_t kSignFastMaxN = 16;
long long bareiss_det_sign64(const std::vector<int>& row_major, std::size_t n);
std::size_t rank_sign64(const std::vector<int>& row_major, std::size_t rows, std::size_t cols);

// Exact determinant / rank for matrices of rationals. Rank scales each row to
// integers (rank-preserving) and defers to rank_exact.
Rational det_rational(const std::vector<std::vector<Rational>>& rows);
std::size_t rank_rational(const std::vector<std::vector<Rational>>& rows);

}  // namespace offord
