#pragma once

#include "easyqg/category.hpp"

#include <string>
#include <vector>

namespace easyqg {

/// Outcome of an invariant suite: how many individual checks ran and a
/// human-readable line per violation.
struct VerifyReport {
    std::string suite;
    std::size_t checks = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Weingarten asymptotics on the grid n = 8, 16, 32, ... <= n_max:
/// the maximal residual |n^{|pi|} W - mu| strictly decreases along the grid
/// (or is identically 0), and n * residual stays within kWestGrowth of its
/// value at the first grid point. The same growth bound is applied to the
/// scaled magnitudes |W| n^{|pi|+|sigma|-|pi v sigma|}.
VerifyReport verify_west(Category c, int k, long n_max);
inline constexpr int kWestGrowth = 2;

/// mu inside D(k) equals mu of the ambient lattice on every comparable pair.
VerifyReport verify_moebius(Category c, int k);
VerifyReport verify_moebius_all(int k);

/// W * G = identity exactly.
VerifyReport verify_inverse(Category c, int k, long n);

/// For every pi in D(k) and every kernel class of j with letters <= n:
/// sum over i with pi <= ker i of the Haar integral equals [pi <= ker j].
VerifyReport verify_fixed_point(Category c, int k, long n);

/// |pi| + |sigma| <= |pi v sigma| + |pi ^ sigma| on all of P(k).
VerifyReport verify_semimodular(int k);

/// Half-independence model vs the half-liberated moment-cumulant formula for
/// two and three variables, Rayleigh and non-Rayleigh laws, up to `order`.
VerifyReport verify_half_model(int order);

}  // namespace easyqg
