// Seeded Monte-Carlo capacity experiments. Each trial draws a fresh
// memory set and geometry from a seed derived as
// trial_seed = derive_seed(master_seed, trial_index), trains, identifies
// active sites, stimulates every memory at its own sites with its own
// bits, and counts exact recalls of the owning memory. Trials are
// independent substreams, so any single trial can be replayed on its own
// and the aggregate table is a pure function of the configuration.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bmatrix/core.hpp"
#include "bmatrix/retrieval.hpp"
#include "bmatrix/rng.hpp"
#include "bmatrix/sites.hpp"
#include "bmatrix/training.hpp"

namespace bmx {

struct ExperimentConfig {
    std::size_t n = 12;
    std::size_t m = 8;
    std::size_t r = 4;
    std::size_t trials = 250;
    Strategy strategy;
    GeometryKind geometry;
    std::uint64_t master_seed = 0;
    IndependentCombine combine = IndependentCombine::sum_potentials;

    void validate() const {
        if (trials < 1) throw std::domain_error("experiment: trials must be >= 1");
        if (m < 2) throw std::domain_error("experiment: m must be >= 2");
        if (r < 1 || r > n) throw std::domain_error("experiment: need 1 <= r <= n");
    }
};

struct TrialOutcome {
    unsigned successes = 0;        // output == the owning memory, bit for bit
    unsigned any_matches = 0;      // output == some stored memory
    unsigned strict_memories = 0;  // memories whose whole site set is strict
};

struct ExperimentStats {
    double mean_success = 0.0;
    double stddev = 0.0;
    double strict_site_rate = 0.0;
    double mean_any_match = 0.0;  // shown in summaries; not a CSV column
    std::vector<unsigned> per_trial;
};

/// m distinct patterns drawn uniformly with rejection of duplicates.
[[nodiscard]] inline MemorySet generate_memories(std::size_t n, std::size_t m,
                                                 std::uint64_t seed) {
    if (n < 64 && m > (std::uint64_t{1} << n)) {
        throw std::domain_error("generate_memories: m exceeds 2^n distinct patterns");
    }
    SeededRng rng(seed);
    std::vector<BipolarVector> out;
    out.reserve(m);
    while (out.size() < m) {
        std::vector<Spin> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = rng.spin();
        BipolarVector candidate(std::move(v));
        bool duplicate = false;
        for (const auto& prev : out) {
            if (prev == candidate) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) out.push_back(std::move(candidate));
    }
    return MemorySet(std::move(out));
}

/// Recall every memory from its listed sites (clamped with its own bits)
/// and score the outcomes. classical uses the first listed site only; the
/// arbitrary tail order for memory i is seeded with
/// derive_seed(seed_base, i).
[[nodiscard]] inline TrialOutcome evaluate_recall(
    const WeightMatrix& t, const ProximityModel& prox, const MemorySet& memories,
    const std::vector<std::vector<std::size_t>>& site_sets, StrategyKind strategy,
    std::uint64_t seed_base, IndependentCombine combine = IndependentCombine::sum_potentials) {
    if (site_sets.size() != memories.count()) {
        throw std::invalid_argument("evaluate_recall: one site set per memory required");
    }
    TrialOutcome outcome;
    for (std::size_t i = 0; i < memories.count(); ++i) {
        const auto& sites = site_sets[i];
        if (sites.empty()) {
            throw std::invalid_argument("evaluate_recall: empty site set");
        }
        std::vector<Spin> values;
        values.reserve(sites.size());
        for (std::size_t s : sites) values.push_back(memories[i][s]);

        RetrievalResult res;
        switch (strategy) {
            case StrategyKind::classical:
                res = retrieve_classical(t, prox, sites.front(), values.front(), memories);
                break;
            case StrategyKind::arbitrary:
                res = retrieve_multi(t, prox, sites, values,
                                     Strategy{StrategyKind::arbitrary, derive_seed(seed_base, i)},
                                     memories);
                break;
            case StrategyKind::averaged:
                res = retrieve_multi(t, prox, sites, values,
                                     Strategy{StrategyKind::averaged, 0}, memories);
                break;
            case StrategyKind::independent:
                res = retrieve_independent(t, prox, sites, values, memories, combine);
                break;
        }
        if (res.matched) {
            ++outcome.any_matches;
            if (*res.matched == i) ++outcome.successes;
        }
    }
    return outcome;
}

/// One seeded trial: fresh memories and geometry, train, identify sites,
/// recall each memory from its own sites.
[[nodiscard]] inline TrialOutcome run_trial(const ExperimentConfig& config,
                                            std::size_t trial_index) {
    config.validate();
    const std::uint64_t trial_seed = derive_seed(config.master_seed, trial_index);
    const MemorySet memories =
        generate_memories(config.n, config.m, derive_seed(trial_seed, 1));
    const ProximityModel prox = build_proximity(
        config.n, GeometryKind{config.geometry.variant, derive_seed(trial_seed, 2)});
    const WeightMatrix t = train_hebbian(memories);
    const ActiveSiteMap map = identify_sites(memories, config.r);

    std::vector<std::vector<std::size_t>> site_sets;
    site_sets.reserve(config.m);
    TrialOutcome outcome;
    for (std::size_t i = 0; i < config.m; ++i) {
        site_sets.push_back(map.entry(i).sites);
        if (map.all_strict(i)) ++outcome.strict_memories;
    }
    const TrialOutcome recalled = evaluate_recall(t, prox, memories, site_sets,
                                                  config.strategy.kind, derive_seed(trial_seed, 3),
                                                  config.combine);
    outcome.successes = recalled.successes;
    outcome.any_matches = recalled.any_matches;
    return outcome;
}

/// Aggregate trials 0..trials-1 in index order. stddev is the population
/// deviation, so a single trial reports 0.
[[nodiscard]] inline ExperimentStats run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentStats stats;
    stats.per_trial.reserve(config.trials);
    unsigned long long strict_total = 0;
    unsigned long long any_total = 0;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        const TrialOutcome outcome = run_trial(config, trial);
        stats.per_trial.push_back(outcome.successes);
        strict_total += outcome.strict_memories;
        any_total += outcome.any_matches;
    }
    const double count = static_cast<double>(config.trials);
    double sum = 0.0;
    for (unsigned s : stats.per_trial) sum += s;
    stats.mean_success = sum / count;
    double var = 0.0;
    for (unsigned s : stats.per_trial) {
        const double d = static_cast<double>(s) - stats.mean_success;
        var += d * d;
    }
    stats.stddev = std::sqrt(var / count);
    stats.strict_site_rate =
        static_cast<double>(strict_total) / (count * static_cast<double>(config.m));
    stats.mean_any_match = static_cast<double>(any_total) / count;
    return stats;
}

struct SweepRow {
    StrategyKind strategy = StrategyKind::independent;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t r = 0;
    std::size_t trials = 0;
    std::uint64_t master_seed = 0;
    ExperimentStats stats;
};

/// Cross product of (n, strategy) cells, every cell run under the shared
/// master seed; one row per cell in list order.
[[nodiscard]] inline std::vector<SweepRow> run_sweep(const ExperimentConfig& base,
                                                     const std::vector<std::size_t>& n_values,
                                                     const std::vector<StrategyKind>& strategies) {
    if (n_values.empty() || strategies.empty()) {
        throw std::invalid_argument("run_sweep: n values and strategies must be nonempty");
    }
    std::vector<SweepRow> rows;
    rows.reserve(n_values.size() * strategies.size());
    for (std::size_t n : n_values) {
        for (StrategyKind kind : strategies) {
            ExperimentConfig config = base;
            config.n = n;
            config.strategy.kind = kind;
            SweepRow row;
            row.strategy = kind;
            row.n = n;
            row.m = config.m;
            row.r = config.r;
            row.trials = config.trials;
            row.master_seed = config.master_seed;
            row.stats = run_experiment(config);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace bmx
