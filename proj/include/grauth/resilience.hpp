#ifndef GRAUTH_RESILIENCE_HPP
#define GRAUTH_RESILIENCE_HPP

#include "grauth/ring.hpp"

#include <unordered_map>

namespace grauth {

// Resilient map f : B^n -> B used inside the encoding maps.
struct ResilientMap {
    enum class Kind { Linear, Table };

    Kind kind = Kind::Linear;
    std::vector<Elem> coeffs;                  // n unit elements of B (linear)
    std::unordered_map<i64, Elem> table;       // x-vector index -> value (table)
    int claimed_t = 0;

    Elem eval(const Ring& b, const std::vector<Elem>& x, i64 x_index) const;
};

struct ResilienceReport {
    bool ok = false;
    int t = 0;
    i64 fixings_checked = 0;
    std::string failure; // empty when ok
};

// Brute-force resiliency check: for every coordinate subset J with |J| <= t
// and |J| < n and every fixing of the J coordinates, the restricted map must
// hit each value of B equally often.  J = {} checks global balancedness.
ResilienceReport check_resilient(const Ring& b, int n, const ResilientMap& f,
                                 int t, i64 cap = i64(1) << 22);

} // namespace grauth

#endif
