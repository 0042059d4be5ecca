// Active-site identification. During training each memory is scored
// column by column against the others: score(i,j) counts the other
// memories whose bit at j differs from memory i's. The top-r scoring
// neurons become memory i's active sites (stimulation points for recall),
// and each memory gets a prime activation level as its group label.
//
// A site with score m-1 differs from every other memory ("strict").
// Requiring strictness outright often leaves no satisfying column once m
// grows, so scoring ranks all columns and degrades gracefully while still
// reducing to the strict rule whenever strict sites exist.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bmatrix/core.hpp"

namespace bmx {

/// The i-th prime, 0-based: 2, 3, 5, 7, ...
[[nodiscard]] inline std::uint64_t nth_prime(std::size_t index) {
    std::vector<std::uint64_t> primes;
    std::uint64_t candidate = 2;
    while (primes.size() <= index) {
        bool is_prime = true;
        for (std::uint64_t p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                is_prime = false;
                break;
            }
        }
        if (is_prime) primes.push_back(candidate);
        ++candidate;
    }
    return primes[index];
}

struct ActiveSiteEntry {
    std::uint64_t level = 0;              // prime label, metadata only
    std::vector<std::size_t> sites;       // ranked by score desc, index asc
    std::vector<std::size_t> scores;      // aligned with sites
};

class ActiveSiteMap {
public:
    ActiveSiteMap(std::vector<ActiveSiteEntry> entries, std::size_t memory_count)
        : entries_(std::move(entries)), m_(memory_count) {}

    [[nodiscard]] std::size_t memory_count() const { return m_; }

    [[nodiscard]] const ActiveSiteEntry& entry(std::size_t memory) const {
        if (memory >= entries_.size()) {
            throw std::out_of_range("ActiveSiteMap: memory index out of range");
        }
        return entries_[memory];
    }

    /// The memory's prime activation level (memory 0 -> 2, 1 -> 3, ...).
    [[nodiscard]] std::uint64_t level_of(std::size_t memory) const {
        return entry(memory).level;
    }

    /// True when a site's bit differs from every other memory.
    [[nodiscard]] bool is_strict_score(std::size_t score) const { return score + 1 == m_; }

    /// True when every site of this memory is strict.
    [[nodiscard]] bool all_strict(std::size_t memory) const {
        const auto& e = entry(memory);
        for (std::size_t s : e.scores) {
            if (!is_strict_score(s)) return false;
        }
        return !e.sites.empty();
    }

    [[nodiscard]] const std::vector<ActiveSiteEntry>& entries() const { return entries_; }

private:
    std::vector<ActiveSiteEntry> entries_;
    std::size_t m_ = 0;
};

/// Score every column of every memory and keep the top-r sites per memory
/// (ties to the lower index; score-0 columns are never selected). With a
/// single stored memory all columns count as strict and the first r
/// indices are chosen.
[[nodiscard]] inline ActiveSiteMap identify_sites(const MemorySet& memories, std::size_t r) {
    if (r < 1) {
        throw std::invalid_argument("identify_sites: r must be at least 1");
    }
    const std::size_t m = memories.count();
    const std::size_t n = memories.width();
    std::vector<ActiveSiteEntry> entries(m);

    for (std::size_t i = 0; i < m; ++i) {
        ActiveSiteEntry& e = entries[i];
        e.level = nth_prime(i);

        if (m == 1) {
            // Degenerate rule: scores are vacuous, take the first r indices.
            for (std::size_t j = 0; j < std::min(r, n); ++j) {
                e.sites.push_back(j);
                e.scores.push_back(0);
            }
            continue;
        }

        std::vector<std::size_t> score(n, 0);
        for (std::size_t k = 0; k < m; ++k) {
            if (k == i) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (memories[k][j] != memories[i][j]) ++score[j];
            }
        }

        std::vector<std::size_t> ranked(n);
        for (std::size_t j = 0; j < n; ++j) ranked[j] = j;
        std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
            if (score[a] != score[b]) return score[a] > score[b];
            return a < b;
        });

        for (std::size_t j : ranked) {
            if (e.sites.size() == r) break;
            if (score[j] == 0) break;  // ranked, so the rest are zero too
            e.sites.push_back(j);
            e.scores.push_back(score[j]);
        }
        // Pairwise-distinct memories with m >= 2 always leave at least one
        // column with score >= 1.
    }
    return ActiveSiteMap(std::move(entries), m);
}

}  // namespace bmx
