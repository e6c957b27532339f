#include "offord/int_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>

#include "offord/errors.hpp"

namespace offord {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
        throw input_error("matrix entry count " + std::to_string(e_.size()) + " does not match " +
                          std::to_string(rows_) + "x" + std::to_string(cols_));
}

IntMatrix IntMatrix::zero(std::size_t rows, std::size_t cols) {
    return IntMatrix(rows, cols, std::vector<BigInt>(rows * cols, 0));
}

IntMatrix IntMatrix::identity(std::size_t n) {
    std::vector<BigInt> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    return IntMatrix(n, n, std::move(e));
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    std::vector<BigInt> e;
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != cols) throw input_error("ragged matrix rows");
        for (long v : r) e.emplace_back(v);
    }
    return IntMatrix(rows.size(), cols, std::move(e));
}

IntMatrix IntMatrix::from_big_rows(const std::vector<std::vector<BigInt>>& rows) {
    std::vector<BigInt> e;
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != cols) throw input_error("ragged matrix rows");
        for (const auto& v : r) e.push_back(v);
    }
    return IntMatrix(rows.size(), cols, std::move(e));
}

BigInt bareiss_det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;

    std::vector<BigInt> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);

    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // pivot: first nonzero in column k at or below row k
        std::size_t piv = k;
        while (piv < n && sgn(a[piv * n + k]) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[k * n + j]);
            sign = -sign;
        }
        const BigInt& pivot = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt num = a[i * n + j] * pivot - a[i * n + k] * a[k * n + j];
                mpz_divexact(a[i * n + j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    return sign > 0 ? a[(n - 1) * n + (n - 1)] : BigInt(-a[(n - 1) * n + (n - 1)]);
}

namespace {

// Fraction-free forward elimination in place. Returns pivot (row, col) list.
// After return, rows beyond the pivot count are zero.
std::vector<std::pair<std::size_t, std::size_t>> echelonize(std::vector<BigInt>& a, std::size_t rows,
                                                            std::size_t cols) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(a[piv * cols + c]) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        const BigInt pivot = a[r * cols + c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                BigInt num = a[i * cols + j] * pivot - a[i * cols + c] * a[r * cols + j];
                mpz_divexact(a[i * cols + j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[i * cols + c] = 0;
        }
        prev = pivot;
        pivots.emplace_back(r, c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank_exact(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    std::vector<BigInt> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m.at(i, j);
    return echelonize(a, rows, cols).size();
}

std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<BigInt>> basis;
    if (cols == 0) return basis;
    if (rows == 0) {
        // whole space: standard basis
        for (std::size_t j = 0; j < cols; ++j) {
            std::vector<BigInt> v(cols, 0);
            v[j] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }

    std::vector<BigInt> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m.at(i, j);
    auto pivots = echelonize(a, rows, cols);

    std::vector<bool> is_pivot_col(cols, false);
    for (auto [r, c] : pivots) is_pivot_col[c] = true;

    // One kernel vector per free column: back-substitute through the echelon
    // rows in rationals, then clear denominators and normalize.
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot_col[f]) continue;
        std::vector<Rational> x(cols, Rational(0));
        x[f] = Rational(1);
        for (std::size_t pi = pivots.size(); pi-- > 0;) {
            auto [r, c] = pivots[pi];
            Rational acc(0);
            for (std::size_t j = c + 1; j < cols; ++j)
                if (!x[j].is_zero()) acc += Rational(a[r * cols + j]) * x[j];
            x[c] = -acc / Rational(a[r * cols + c]);
        }
        BigInt l = 1;
        for (const auto& xi : x) l = lcm(l, xi.denominator());
        std::vector<BigInt> v(cols);
        BigInt g = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            v[j] = x[j].numerator() * (l / x[j].denominator());
            g = gcd(g, v[j]);
        }
        if (sgn(g) != 0)
            for (auto& vj : v) mpz_divexact(vj.get_mpz_t(), vj.get_mpz_t(), g.get_mpz_t());
        for (const auto& vj : v) {
            if (sgn(vj) == 0) continue;
            if (sgn(vj) < 0)
                for (auto& w : v) w = -w;
            break;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

long long bareiss_det_sign64(const std::vector<int>& row_major, std::size_t n) {
    assert(n <= kSignFastMaxN);
    assert(row_major.size() == n * n);
    if (n == 0) return 1;
    std::vector<long long> a(row_major.begin(), row_major.end());
    long long prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv * n + k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a[piv * n + j], a[k * n + j]);
            sign = -sign;
        }
        const long long pivot = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const long long aik = a[i * n + k];
            for (std::size_t j = k + 1; j < n; ++j)
                a[i * n + j] = (a[i * n + j] * pivot - aik * a[k * n + j]) / prev;
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    return sign * a[n * n - 1];
}

Rational det_rational(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw input_error("determinant of non-square matrix");
    if (n == 0) return Rational(1);
    std::vector<Rational> a;
    a.reserve(n * n);
    for (const auto& r : rows)
        for (const auto& v : r) a.push_back(v);

    Rational det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv * n + k].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a[piv * n + j], a[k * n + j]);
            det = -det;
        }
        const Rational pivot = a[k * n + k];
        det *= pivot;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i * n + k].is_zero()) continue;
            Rational f = a[i * n + k] / pivot;
            for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
            a[i * n + k] = Rational(0);
        }
    }
    return det;
}

std::size_t rank_rational(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::vector<BigInt> e;
    e.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw input_error("ragged matrix rows");
        BigInt l = 1;
        for (const auto& v : r) l = lcm(l, v.denominator());
        for (const auto& v : r) e.push_back(v.numerator() * (l / v.denominator()));
    }
    return rank_exact(IntMatrix(rows.size(), cols, std::move(e)));
}

std::size_t rank_sign64(const std::vector<int>& row_major, std::size_t rows, std::size_t cols) {
    assert(rows <= kSignFastMaxN && cols <= kSignFastMaxN);
    assert(row_major.size() == rows * cols);
    std::vector<long long> a(row_major.begin(), row_major.end());
    long long prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        const long long pivot = a[r * cols + c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const long long aic = a[i * cols + c];
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i * cols + j] = (a[i * cols + j] * pivot - aic * a[r * cols + j]) / prev;
            a[i * cols + c] = 0;
        }
        prev = pivot;
        ++r;
    }
    return r;
}

}  // namespace offord
