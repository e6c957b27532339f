#include "offord/budget.hpp"

#include <cstdlib>
#include <string>

namespace offord {

Budget& Budget::with_general_cap(std::uint64_t v) {
    gap_enum_cap = v;
    support_cap = v;
    halasz_cap = v;
    bilinear_x_cap = v;
    quad_outcome_cap = v;
    qn_exact_cap = v;
    odlyzko_cap = v;
    return *this;
}

Budget Budget::from_env() {
    Budget b;
    if (const char* env = std::getenv("OFFORD_BUDGET")) {
        try {
            unsigned long long v = std::stoull(std::string(env));
            if (v > 0) b.with_general_cap(v);
        } catch (...) {
            // unparseable value: keep defaults
        }
    }
    return b;
}

}  // namespace offord
