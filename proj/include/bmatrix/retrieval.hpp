// Fragment-growing recall over the strict lower triangle of the trained
// matrix. A clamp fixes the leading neurons of an update order; every
// later neuron takes the sign of its accumulated input from all earlier
// ones, and the finished fragment is mapped back to original neuron
// indices.
//
// Multi-site stimulation offers three orderings:
//   arbitrary   - clamped sites first, the rest in a seeded random order
//   averaged    - the rest ranked by mean distance to the clamped sites
//   independent - one classical spread per site; the pre-signum potentials
//                 are summed across sites and signed once at the end
//
// Clamped prefixes are always sorted ascending by neuron index so results
// are reproducible whatever order the caller lists sites in.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bmatrix/core.hpp"
#include "bmatrix/rng.hpp"
#include "bmatrix/training.hpp"

namespace bmx {

enum class StrategyKind { classical, arbitrary, averaged, independent };

struct Strategy {
    StrategyKind kind = StrategyKind::classical;
    std::uint64_t seed = 0;  // consumed by arbitrary only
};

[[nodiscard]] inline std::string strategy_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::classical: return "classical";
        case StrategyKind::arbitrary: return "arbitrary";
        case StrategyKind::averaged: return "averaged";
        case StrategyKind::independent: return "independent";
    }
    throw std::invalid_argument("unknown strategy");
}

[[nodiscard]] inline StrategyKind strategy_from_name(const std::string& name) {
    if (name == "classical") return StrategyKind::classical;
    if (name == "arbitrary") return StrategyKind::arbitrary;
    if (name == "averaged") return StrategyKind::averaged;
    if (name == "independent") return StrategyKind::independent;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

// How the independent method merges its per-site runs. Summing integer
// potentials is the default; majority voting over the per-site bipolar
// outputs is kept for comparison.
enum class IndependentCombine { sum_potentials, majority_vote };

struct RetrievalResult {
    BipolarVector output;
    std::optional<std::size_t> matched;  // set iff output equals that stored memory
    Strategy strategy;
    std::vector<std::size_t> clamped_sites;  // ascending
    UpdateOrder order;
};

struct FragmentTrace {
    BipolarVector output;         // original neuron indices
    std::vector<int> potentials;  // pre-signum sum per neuron; clamp spin at clamped sites
};

/// Run the recall recursion along `order`. The first clamp_count entries
/// of the fragment are the clamp; each later position i becomes
/// sgn(sum of B'[i][j] * f[j] over j < i) where B' is the strict lower
/// triangle of the permuted matrix. Also records each neuron's integer
/// potential for the independent method.
[[nodiscard]] inline FragmentTrace grow_fragment_trace(const WeightMatrix& t,
                                                       const UpdateOrder& uo,
                                                       const std::vector<Spin>& clamp) {
    const std::size_t n = t.size();
    if (!is_permutation_of(uo.order, n)) {
        throw std::invalid_argument("grow_fragment: update order is not a permutation");
    }
    if (uo.clamp_count < 1 || clamp.size() != uo.clamp_count) {
        throw std::invalid_argument("grow_fragment: clamp size must equal clamp_count >= 1");
    }
    for (Spin s : clamp) {
        if (s != -1 && s != 1) {
            throw std::invalid_argument("grow_fragment: clamp values must be -1 or +1");
        }
    }

    std::vector<Spin> f(n);          // fragment in permuted positions
    std::vector<int> pot(n, 0);      // potentials in original indices
    for (std::size_t k = 0; k < uo.clamp_count; ++k) {
        f[k] = clamp[k];
        pot[uo.order[k]] = clamp[k];
    }
    for (std::size_t i = uo.clamp_count; i < n; ++i) {
        int sum = 0;
        for (std::size_t j = 0; j < i; ++j) {
            sum += t(uo.order[i], uo.order[j]) * f[j];
        }
        f[i] = sgn(sum);
        pot[uo.order[i]] = sum;
    }

    std::vector<Spin> out(n);
    for (std::size_t i = 0; i < n; ++i) out[uo.order[i]] = f[i];
    return FragmentTrace{BipolarVector(std::move(out)), std::move(pot)};
}

[[nodiscard]] inline BipolarVector grow_fragment(const WeightMatrix& t, const UpdateOrder& uo,
                                                 const std::vector<Spin>& clamp) {
    return grow_fragment_trace(t, uo, clamp).output;
}

namespace detail {

// Validates a site list against n and returns (site, value) pairs sorted
// ascending by site.
inline std::vector<std::pair<std::size_t, Spin>> sorted_clamp(
    const std::vector<std::size_t>& sites, const std::vector<Spin>& values, std::size_t n) {
    if (sites.empty()) {
        throw std::invalid_argument("retrieval: at least one site required");
    }
    if (sites.size() != values.size()) {
        throw std::invalid_argument("retrieval: sites/values length mismatch");
    }
    std::vector<std::pair<std::size_t, Spin>> pairs;
    pairs.reserve(sites.size());
    for (std::size_t k = 0; k < sites.size(); ++k) {
        if (sites[k] >= n) {
            throw std::out_of_range("retrieval: site index out of range");
        }
        pairs.emplace_back(sites[k], values[k]);
    }
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t k = 1; k < pairs.size(); ++k) {
        if (pairs[k].first == pairs[k - 1].first) {
            throw std::invalid_argument("retrieval: duplicate site");
        }
    }
    return pairs;
}

inline void check_shapes(const WeightMatrix& t, const ProximityModel& prox,
                         const MemorySet& memories) {
    if (t.size() != prox.size() || t.size() != memories.width()) {
        throw std::invalid_argument("retrieval: matrix, geometry and memories disagree on n");
    }
}

}  // namespace detail

/// Classical recall: clamp one neuron and spread along its proximity row.
[[nodiscard]] inline RetrievalResult retrieve_classical(const WeightMatrix& t,
                                                        const ProximityModel& prox,
                                                        std::size_t site, Spin value,
                                                        const MemorySet& memories) {
    detail::check_shapes(t, prox, memories);
    UpdateOrder uo = single_site_order(prox, site);
    BipolarVector out = grow_fragment(t, uo, {value});
    RetrievalResult res;
    res.matched = memories.find(out);
    res.output = std::move(out);
    res.strategy = Strategy{StrategyKind::classical, 0};
    res.clamped_sites = {site};
    res.order = std::move(uo);
    return res;
}

/// Clamped sites ascending, then the remaining neurons in a seeded
/// uniform random permutation.
[[nodiscard]] inline UpdateOrder order_arbitrary(std::size_t n,
                                                 const std::vector<std::size_t>& sites,
                                                 std::uint64_t seed) {
    auto pairs = detail::sorted_clamp(sites, std::vector<Spin>(sites.size(), 1), n);
    std::vector<bool> clamped(n, false);
    UpdateOrder uo;
    uo.order.reserve(n);
    for (const auto& [s, v] : pairs) {
        uo.order.push_back(s);
        clamped[s] = true;
    }
    std::vector<std::size_t> tail;
    tail.reserve(n - pairs.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!clamped[i]) tail.push_back(i);
    }
    SeededRng rng(seed);
    rng.shuffle(tail);
    uo.order.insert(uo.order.end(), tail.begin(), tail.end());
    uo.clamp_count = pairs.size();
    return uo;
}

/// Clamped sites ascending, then the remaining neurons by increasing mean
/// distance to the clamped set, ties to the lower index.
[[nodiscard]] inline UpdateOrder order_averaged(const ProximityModel& prox,
                                                const std::vector<std::size_t>& sites) {
    const std::size_t n = prox.size();
    auto pairs = detail::sorted_clamp(sites, std::vector<Spin>(sites.size(), 1), n);
    std::vector<bool> clamped(n, false);
    UpdateOrder uo;
    uo.order.reserve(n);
    for (const auto& [s, v] : pairs) {
        uo.order.push_back(s);
        clamped[s] = true;
    }
    std::vector<std::size_t> tail;
    std::vector<double> avg(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (clamped[i]) continue;
        double sum = 0.0;
        for (const auto& [s, v] : pairs) sum += prox.dist(s, i);
        avg[i] = sum / static_cast<double>(pairs.size());
        tail.push_back(i);
    }
    std::stable_sort(tail.begin(), tail.end(), [&](std::size_t a, std::size_t b) {
        if (avg[a] != avg[b]) return avg[a] < avg[b];
        return a < b;
    });
    uo.order.insert(uo.order.end(), tail.begin(), tail.end());
    uo.clamp_count = pairs.size();
    return uo;
}

/// Multi-site recall under the arbitrary or averaged ordering. Clamp
/// values are aligned to the ascending-sorted site prefix.
[[nodiscard]] inline RetrievalResult retrieve_multi(const WeightMatrix& t,
                                                    const ProximityModel& prox,
                                                    const std::vector<std::size_t>& sites,
                                                    const std::vector<Spin>& values,
                                                    const Strategy& strategy,
                                                    const MemorySet& memories) {
    detail::check_shapes(t, prox, memories);
    if (strategy.kind != StrategyKind::arbitrary && strategy.kind != StrategyKind::averaged) {
        throw std::invalid_argument(
            "retrieve_multi: strategy must be arbitrary or averaged (use retrieve_classical or "
            "retrieve_independent otherwise)");
    }
    auto pairs = detail::sorted_clamp(sites, values, t.size());
    std::vector<std::size_t> sorted_sites;
    std::vector<Spin> clamp;
    sorted_sites.reserve(pairs.size());
    clamp.reserve(pairs.size());
    for (const auto& [s, v] : pairs) {
        sorted_sites.push_back(s);
        clamp.push_back(v);
    }

    UpdateOrder uo = strategy.kind == StrategyKind::arbitrary
                         ? order_arbitrary(t.size(), sorted_sites, strategy.seed)
                         : order_averaged(prox, sorted_sites);
    BipolarVector out = grow_fragment(t, uo, clamp);
    RetrievalResult res;
    res.matched = memories.find(out);
    res.output = std::move(out);
    res.strategy = strategy;
    res.clamped_sites = std::move(sorted_sites);
    res.order = std::move(uo);
    return res;
}

/// Independent recall: each clamped site runs the classical single-site
/// spread on its own, recording every neuron's integer pre-signum
/// potential (the clamp spin at the site itself). The potential vectors
/// are summed over sites in ascending site order and signed once; clamped
/// neurons keep their clamp values.
[[nodiscard]] inline RetrievalResult retrieve_independent(
    const WeightMatrix& t, const ProximityModel& prox, const std::vector<std::size_t>& sites,
    const std::vector<Spin>& values, const MemorySet& memories,
    IndependentCombine combine = IndependentCombine::sum_potentials) {
    detail::check_shapes(t, prox, memories);
    const std::size_t n = t.size();
    auto pairs = detail::sorted_clamp(sites, values, n);

    std::vector<long long> resultant(n, 0);
    for (const auto& [site, value] : pairs) {
        FragmentTrace trace = grow_fragment_trace(t, single_site_order(prox, site), {value});
        for (std::size_t j = 0; j < n; ++j) {
            if (combine == IndependentCombine::sum_potentials) {
                resultant[j] += trace.potentials[j];
            } else {
                resultant[j] += sgn(trace.potentials[j]);
            }
        }
    }

    std::vector<Spin> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = sgn(resultant[j]);
    std::vector<std::size_t> sorted_sites;
    sorted_sites.reserve(pairs.size());
    for (const auto& [s, v] : pairs) {
        out[s] = v;  // clamped sites keep their stimulus
        sorted_sites.push_back(s);
    }

    RetrievalResult res;
    res.output = BipolarVector(std::move(out));
    res.matched = memories.find(res.output);
    res.strategy = Strategy{StrategyKind::independent, 0};
    res.clamped_sites = sorted_sites;
    // No single spread order exists here; report the canonical completion
    // (clamped prefix, then the rest ascending).
    res.order.order = std::move(sorted_sites);
    std::vector<bool> clamped(n, false);
    for (std::size_t k = 0; k < pairs.size(); ++k) clamped[res.order.order[k]] = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!clamped[i]) res.order.order.push_back(i);
    }
    res.order.clamp_count = pairs.size();
    return res;
}

}  // namespace bmx
