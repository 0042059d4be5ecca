// Exact operation counts for retrieval sweeps. The classical regime
// stimulates every subset of up to r neurons with every bipolar fragment,
// so its cost is sum_{i=1..r} C(n,i) * 2^i; restricting to the r active
// sites shrinks n to r and the same sum collapses to 3^r - 1. Counts are
// exact big integers, never asymptotic estimates.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace bmx {

using BigInt = boost::multiprecision::cpp_int;

/// Exact n-choose-k via the multiplicative recurrence (each division is
/// exact).
[[nodiscard]] inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) {
        throw std::domain_error("binomial: k exceeds n");
    }
    if (k > n - k) k = n - k;
    BigInt c = 1;
    for (unsigned i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

/// Classical sweep count: sum_{i=1..r} C(n,i) * 2^i.
[[nodiscard]] inline BigInt cost_classical(unsigned n, unsigned r) {
    if (r < 1 || r > n) {
        throw std::domain_error("cost_classical: need 1 <= r <= n");
    }
    BigInt total = 0;
    BigInt pow2 = 1;
    for (unsigned i = 1; i <= r; ++i) {
        pow2 *= 2;
        total += binomial(n, i) * pow2;
    }
    return total;
}

/// Active-sites sweep count: sum_{i=1..r} C(r,i) * 2^i, which equals
/// 3^r - 1 by the binomial theorem (the identity doubles as a test
/// cross-check).
[[nodiscard]] inline BigInt cost_active(unsigned r) {
    if (r < 1) {
        throw std::domain_error("cost_active: need r >= 1");
    }
    BigInt total = 0;
    BigInt pow2 = 1;
    for (unsigned i = 1; i <= r; ++i) {
        pow2 *= 2;
        total += binomial(r, i) * pow2;
    }
    return total;
}

struct CostReport {
    unsigned n = 0;
    unsigned r = 0;
    BigInt classical_ops;
    BigInt active_ops;
    double ratio = 0.0;  // classical_ops / active_ops
};

[[nodiscard]] inline CostReport cost_report(unsigned n, unsigned r) {
    CostReport rep;
    rep.n = n;
    rep.r = r;
    rep.classical_ops = cost_classical(n, r);
    rep.active_ops = cost_active(r);
    rep.ratio = static_cast<double>(rep.classical_ops) / static_cast<double>(rep.active_ops);
    return rep;
}

}  // namespace bmx
