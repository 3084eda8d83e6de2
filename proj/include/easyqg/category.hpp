#pragma once

#include "easyqg/partition.hpp"
#include "easyqg/rational.hpp"

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace easyqg {

/// The ten easy quantum groups, each attached to a family D of partitions.
enum class Category {
    O,        // P_2   pairings
    S,        // P     all partitions
    H,        // P_h   even block sizes
    B,        // P_b   block size <= 2
    OStar,    // E_2   balanced pairings
    HStar,    // E_h   balanced partitions
    OPlus,    // NC_2
    SPlus,    // NC
    HPlus,    // NC_h
    BPlus,    // NC_b
};

inline constexpr std::array<Category, 10> kAllCategories = {
    Category::O,     Category::S,     Category::H,     Category::B,     Category::OStar,
    Category::HStar, Category::OPlus, Category::SPlus, Category::HPlus, Category::BPlus};

/// "O", "S", "H", "B", "O*", "H*", "O+", "S+", "H+", "B+".
std::string_view to_string(Category c);
Category parse_category(std::string_view text);

/// Family name as written in the partition tables ("P_2", "NC", "E_h", ...).
std::string_view family_name(Category c);

bool is_free(Category c);
bool is_half_liberated(Category c);

/// The lattice the family sits in for Moebius purposes: NC for the free
/// categories, E_h for the half-liberated ones, P for the classical ones.
Category ambient_category(Category c);

/// Family predicate D(k) membership.
bool in_family(Category c, const SetPartition& pi);

/// D(k) in enumerate_all order; k = 0 yields the single empty partition.
std::vector<SetPartition> enumerate_family(Category c, int k);

/// Moebius function of D(k) ordered by refinement, stored densely in the
/// family's enumeration order. Entry (a, b) is mu(pi_a, pi_b) when
/// pi_a <= pi_b and 0 otherwise.
class MobiusTable {
public:
    MobiusTable(Category c, int k);

    Category category() const noexcept { return category_; }
    int ground_size() const noexcept { return k_; }
    const std::vector<SetPartition>& partitions() const noexcept { return partitions_; }
    const Matrix<long long>& values() const noexcept { return mu_; }
    /// Dense order relation: leq()[a][b] iff partitions[a] <= partitions[b].
    const std::vector<std::vector<bool>>& leq() const noexcept { return leq_; }

    /// Index of pi in partitions(), or -1.
    int index_of(const SetPartition& pi) const;
    /// Throws MembershipError when either argument is outside the family.
    long long operator()(const SetPartition& pi, const SetPartition& sigma) const;

private:
    Category category_;
    int k_;
    std::vector<SetPartition> partitions_;
    std::vector<std::vector<bool>> leq_;
    Matrix<long long> mu_;
};

/// Shared, memoized table for (c, k).
std::shared_ptr<const MobiusTable> mobius_table(Category c, int k);

/// mu_{D(k)}(pi, 1_k) for every pi in D(k), in enumeration order. Computed
/// from the top down so only one column is materialised; 1_k must be in D(k).
std::shared_ptr<const std::vector<long long>> mobius_to_top(Category c, int k);

/// mu_{D(k)}(pi, sigma) with D the family of c.
long long mobius(Category c, int k, const SetPartition& pi, const SetPartition& sigma);
/// mu on the full lattice P(k).
long long mobius_full(int k, const SetPartition& pi, const SetPartition& sigma);

}  // namespace easyqg
