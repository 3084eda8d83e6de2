#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace easyqg {

/// Finite sequence of positive variable labels (a multi-index).
using Word = std::vector<int>;

Word parse_word(std::string_view text);
std::string to_string(const Word& w);

/// Largest ground size accepted by the enumerators. Defaults to 10; the
/// WG_KMAX environment variable (read once) or set_k_max() override it.
int k_max();
void set_k_max(int value);

/// A set partition of {1..k} in canonical form: every block sorted ascending
/// and blocks ordered by their minimum. Internally the partition is the
/// restricted growth string `labels` (labels[i] is the block index of point
/// i+1), so equality is plain vector equality.
class SetPartition {
public:
    /// The empty partition of the empty set (k = 0).
    SetPartition() = default;

    /// Any labelling of the points; relabelled to restricted growth form.
    static SetPartition from_labels(std::span<const int> labels);
    /// Blocks over 1..k; must be disjoint, nonempty and cover 1..k.
    static SetPartition from_blocks(int k, const std::vector<std::vector<int>>& blocks);
    /// Strict parse of the "1,2|3,4" text form. Non-canonical or non-covering
    /// input is rejected.
    static SetPartition parse(std::string_view text);

    static SetPartition discrete(int k);
    static SetPartition full(int k);

    int ground_size() const noexcept { return static_cast<int>(labels_.size()); }
    int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
    const std::vector<std::uint8_t>& labels() const noexcept { return labels_; }
    /// Block index of point p (1-based point).
    int block_of(int p) const { return labels_.at(static_cast<std::size_t>(p - 1)); }

    std::string to_string() const;

    friend bool operator==(const SetPartition&, const SetPartition&) = default;
    friend std::strong_ordering operator<=>(const SetPartition& a, const SetPartition& b) {
        return a.labels_ <=> b.labels_;
    }

private:
    void build_blocks();

    std::vector<std::uint8_t> labels_;
    std::vector<std::vector<int>> blocks_;
};

/// All of P(k), ordered by decreasing block count and then lexicographically
/// by restricted growth string. Finer partitions therefore always precede
/// coarser ones, which keeps the zeta matrix upper triangular.
std::vector<SetPartition> enumerate_all(int k);

/// Bell(k) via the Bell triangle (exact).
unsigned long long bell_number(int k);

/// pi <= sigma: each block of pi lies inside a block of sigma.
bool is_refinement(const SetPartition& pi, const SetPartition& sigma);
SetPartition join(const SetPartition& pi, const SetPartition& sigma);
SetPartition meet(const SetPartition& pi, const SetPartition& sigma);

/// ker w: positions grouped by equal letters.
SetPartition kernel(const Word& w);

/// Crossing-quadruple test.
bool is_noncrossing(const SetPartition& pi);
/// Repeatedly removes an interval block; noncrossing iff this empties pi.
bool is_noncrossing_by_interval_removal(const SetPartition& pi);

/// Every block holds as many odd as even points.
bool is_balanced(const SetPartition& pi);

}  // namespace easyqg

template <>
struct std::hash<easyqg::SetPartition> {
    std::size_t operator()(const easyqg::SetPartition& p) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto l : p.labels()) h = (h ^ l) * 1099511628211ull;
        return h ^ static_cast<std::size_t>(p.ground_size());
    }
};
