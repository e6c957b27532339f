#pragma once

#include <cstdint>

namespace offord {

// Enumeration caps. Every exact operation that enumerates an exponential or
// product-sized object checks the relevant cap up front and throws
// budget_error instead of truncating.
//
// The OFFORD_BUDGET environment variable (and the CLI --budget flag) override
// the count-typed caps with a single value. The decoupling dimension cap is
// structural and stays fixed unless set explicitly.
struct Budget {
    std::uint64_t gap_enum_cap = 10'000'000;     // coordinate tuples per GAP scan
    std::uint64_t support_cap = 10'000'000;      // distinct atoms in a distribution table
    std::uint64_t halasz_cap = 100'000'000;      // n^(2l) ordered tuples
    std::uint64_t bilinear_x_cap = 65'536;       // x-outcomes in rho_bilinear (2^16)
    std::uint64_t quad_outcome_cap = 1'594'323;  // outcomes in rho_quadratic (3^13 >= 2^20)
    std::uint64_t qn_exact_cap = 268'435'456;    // 2^(n(n+1)/2) determinants (2^28)
    std::uint64_t odlyzko_cap = 16'777'216;      // 2^n membership tests (2^24)
    std::uint64_t seed_retry_cap = 100'000;      // rejection attempts per conditioned seed
    std::uint64_t decoupling_n_cap = 8;          // matrix dimension in decoupling_check

    // Replaces the count-typed caps with `v`.
    Budget& with_general_cap(std::uint64_t v);

    // Default caps, then OFFORD_BUDGET applied when present and parseable.
    static Budget from_env();
};

}  // namespace offord
