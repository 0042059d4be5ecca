// Core value types for B-matrix associative recall: bipolar patterns,
// memory sets, the symmetric Hebbian weight matrix and its permuted views,
// neuron geometry, and update orders.
//
// All types are immutable values after construction and safe to copy or
// share across threads.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bmx {

using Spin = std::int8_t;  // exactly -1 or +1

// Thrown by text-format readers; carries the 1-based offending line.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Signum with a fixed tie rule: sgn(0) = +1. Total and deterministic.
[[nodiscard]] constexpr Spin sgn(long long x) {
    return x < 0 ? Spin{-1} : Spin{+1};
}

// A length-n pattern over {-1,+1}. Serves as stored memory, fragment
// carrier, and retrieval output. Text form renders +1 as '1', -1 as '0'.
class BipolarVector {
public:
    BipolarVector() = default;

    explicit BipolarVector(std::vector<Spin> values) : values_(std::move(values)) {
        for (Spin s : values_) {
            if (s != -1 && s != 1) {
                throw std::invalid_argument("BipolarVector: element must be -1 or +1");
            }
        }
    }

    /// Parse from '1'/'0' characters ('1' -> +1, '0' -> -1).
    [[nodiscard]] static BipolarVector from_bits(std::string_view bits) {
        std::vector<Spin> v;
        v.reserve(bits.size());
        for (char c : bits) {
            if (c == '1') {
                v.push_back(1);
            } else if (c == '0') {
                v.push_back(-1);
            } else {
                throw std::invalid_argument(std::string("invalid pattern character '") + c + "'");
            }
        }
        return BipolarVector(std::move(v));
    }

    [[nodiscard]] std::string to_bits() const {
        std::string s;
        s.reserve(values_.size());
        for (Spin v : values_) s.push_back(v > 0 ? '1' : '0');
        return s;
    }

    [[nodiscard]] BipolarVector negated() const {
        std::vector<Spin> v(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) v[i] = static_cast<Spin>(-values_[i]);
        return BipolarVector(std::move(v));
    }

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] Spin operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] const std::vector<Spin>& values() const { return values_; }

    bool operator==(const BipolarVector&) const = default;

private:
    std::vector<Spin> values_;
};

/// Count of positions where a and b differ.
[[nodiscard]] inline std::size_t hamming(const BipolarVector& a, const BipolarVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("hamming: dimension mismatch");
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) ++d;
    }
    return d;
}

// m distinct patterns of common length n (n >= 2, m >= 1).
class MemorySet {
public:
    explicit MemorySet(std::vector<BipolarVector> memories) : memories_(std::move(memories)) {
        if (memories_.empty()) {
            throw std::invalid_argument("MemorySet: at least one memory required");
        }
        const std::size_t n = memories_.front().size();
        if (n < 2) {
            throw std::invalid_argument("MemorySet: need at least 2 neurons");
        }
        for (const auto& mem : memories_) {
            if (mem.size() != n) {
                throw std::invalid_argument("MemorySet: memories must share one length");
            }
        }
        for (std::size_t i = 0; i < memories_.size(); ++i) {
            for (std::size_t j = i + 1; j < memories_.size(); ++j) {
                if (memories_[i] == memories_[j]) {
                    throw std::invalid_argument(
                        "MemorySet: duplicate memories at rows " + std::to_string(i) + " and " +
                        std::to_string(j));
                }
            }
        }
    }

    [[nodiscard]] std::size_t count() const { return memories_.size(); }
    [[nodiscard]] std::size_t width() const { return memories_.front().size(); }
    [[nodiscard]] const BipolarVector& operator[](std::size_t i) const { return memories_.at(i); }
    [[nodiscard]] const std::vector<BipolarVector>& memories() const { return memories_; }

    /// Index of the memory equal to v, if any.
    [[nodiscard]] std::optional<std::size_t> find(const BipolarVector& v) const {
        for (std::size_t i = 0; i < memories_.size(); ++i) {
            if (memories_[i] == v) return i;
        }
        return std::nullopt;
    }

private:
    std::vector<BipolarVector> memories_;
};

// Symmetric integer matrix T with zero diagonal; the strict lower
// triangle B satisfies T = B + B^T exactly.
class WeightMatrix {
public:
    WeightMatrix() = default;

    explicit WeightMatrix(std::size_t n) : n_(n), t_(n * n, 0) {}

    WeightMatrix(std::size_t n, std::vector<int> entries) : n_(n), t_(std::move(entries)) {
        if (t_.size() != n_ * n_) {
            throw std::invalid_argument("WeightMatrix: entry count does not match size");
        }
        validate();
    }

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] int operator()(std::size_t i, std::size_t j) const { return t_[i * n_ + j]; }
    int& at(std::size_t i, std::size_t j) { return t_[i * n_ + j]; }

    /// Strict lower triangle entry: B[i][j] for j < i, else 0.
    [[nodiscard]] int b(std::size_t i, std::size_t j) const {
        return j < i ? (*this)(i, j) : 0;
    }

    void validate() const {
        for (std::size_t i = 0; i < n_; ++i) {
            if ((*this)(i, i) != 0) {
                throw std::invalid_argument("WeightMatrix: nonzero diagonal");
            }
            for (std::size_t j = i + 1; j < n_; ++j) {
                if ((*this)(i, j) != (*this)(j, i)) {
                    throw std::invalid_argument("WeightMatrix: not symmetric");
                }
            }
        }
    }

    bool operator==(const WeightMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<int> t_;
};

// A permutation of 0..n-1 whose leading clamp_count entries are the
// clamped neurons; the recall fragment grows along this order.
struct UpdateOrder {
    std::vector<std::size_t> order;
    std::size_t clamp_count = 0;
};

/// Check that `order` is a bijection on 0..n-1.
[[nodiscard]] inline bool is_permutation_of(const std::vector<std::size_t>& order, std::size_t n) {
    if (order.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (std::size_t idx : order) {
        if (idx >= n || seen[idx]) return false;
        seen[idx] = true;
    }
    return true;
}

/// Conjugate t by a permutation: result[i][j] = t[order[i]][order[j]].
/// Symmetry and the zero diagonal survive; the off-diagonal multiset is
/// unchanged.
[[nodiscard]] inline WeightMatrix permute_matrix(const WeightMatrix& t,
                                                 const std::vector<std::size_t>& order) {
    const std::size_t n = t.size();
    if (!is_permutation_of(order, n)) {
        throw std::invalid_argument("permute_matrix: invalid permutation");
    }
    WeightMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.at(i, j) = t(order[i], order[j]);
        }
    }
    return out;
}

[[nodiscard]] inline WeightMatrix permute_matrix(const WeightMatrix& t, const UpdateOrder& order) {
    return permute_matrix(t, order.order);
}

// Neuron coordinates in 2-D or 3-D plus the full pairwise Euclidean
// distance matrix. Squared distances are kept alongside: they are exact
// integers for the lattice layouts, so orderings compare them instead of
// rounded roots.
class ProximityModel {
public:
    ProximityModel(std::vector<std::array<double, 3>> positions, int dims)
        : positions_(std::move(positions)), dims_(dims) {
        if (dims_ != 2 && dims_ != 3) {
            throw std::invalid_argument("ProximityModel: dims must be 2 or 3");
        }
        const std::size_t n = positions_.size();
        if (n < 2) {
            throw std::invalid_argument("ProximityModel: need at least 2 neurons");
        }
        d2_.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dx = positions_[i][0] - positions_[j][0];
                const double dy = positions_[i][1] - positions_[j][1];
                const double dz = positions_[i][2] - positions_[j][2];
                const double d2 = dx * dx + dy * dy + dz * dz;
                d2_[i * n + j] = d2;
                d2_[j * n + i] = d2;
            }
        }
    }

    [[nodiscard]] std::size_t size() const { return positions_.size(); }
    [[nodiscard]] int dims() const { return dims_; }
    [[nodiscard]] const std::array<double, 3>& position(std::size_t i) const {
        return positions_[i];
    }

    /// Squared Euclidean distance (exact for integer layouts).
    [[nodiscard]] double dist2(std::size_t i, std::size_t j) const {
        return d2_[i * positions_.size() + j];
    }

    /// Euclidean distance.
    [[nodiscard]] double dist(std::size_t i, std::size_t j) const {
        return std::sqrt(dist2(i, j));
    }

private:
    std::vector<std::array<double, 3>> positions_;
    int dims_ = 2;
    std::vector<double> d2_;
};

}  // namespace bmx
