#pragma once

#include "easyqg/category.hpp"
#include "easyqg/rational.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace easyqg {

/// Gram matrix n^{|pi v sigma|} over D(k), its exact inverse and the Moebius
/// matrix of D(k), all indexed by enumerate_family(category, k).
struct WeingartenTable {
    Category category;
    int k;
    long n;
    std::vector<SetPartition> partitions;
    Matrix<Integer> gram;
    Matrix<Rational> weingarten;
    Matrix<long long> mobius;
};

/// Gram matrix of D(k) at dimension n. Empty D(k) gives a 0x0 matrix.
Matrix<Integer> gram(Category c, int k, long n);

/// Builds (or fetches from the process-wide memo) the table for (c, k, n).
/// Throws SingularMatrixError when the Gram matrix is not invertible.
std::shared_ptr<const WeingartenTable> weingarten_table(Category c, int k, long n);

/// Haar-state integral of u_{i1 j1} ... u_{ik jk} over the easy quantum group
/// of category c in dimension n:
///   sum over pi <= ker i, sigma <= ker j in D(k) of W(pi, sigma).
Rational haar_integral(Category c, long n, const Word& i, const Word& j);

/// One matrix entry addressed by row/column index into table.partitions.
struct TableEntry {
    int row;
    int col;
    Rational value;
};

struct ResidualReport {
    std::vector<TableEntry> entries;  // comparable pairs pi <= sigma only
    Rational max = 0;
};

/// |n^{|pi|} W(pi, sigma) - mu(pi, sigma)| for every comparable pair.
ResidualReport asymptotic_residual(Category c, int k, long n);

/// |W(pi, sigma)| * n^{|pi| + |sigma| - |pi v sigma|} for every pair.
std::vector<TableEntry> order_bound_table(Category c, int k, long n);

/// n * sum over all pairs of |n^{|pi|} W(pi, sigma) - mu(pi, sigma)|, the
/// quantity whose supremum over n is the finite de Finetti constant C_k.
Rational scaled_residual_sum(const WeingartenTable& table);

struct CkStep {
    long n;
    std::optional<Rational> value;  // empty when the Gram matrix is singular
};

struct CkResult {
    Rational ck = 0;
    long argmax_n = 0;  // 0 when every scanned n was singular
    std::vector<CkStep> trace;
};

/// Maximum of scaled_residual_sum over n = 1..n_max, skipping singular n.
CkResult ck_constant(Category c, int k, long n_max);

}  // namespace easyqg
