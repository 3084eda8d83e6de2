#pragma once

#include "easyqg/category.hpp"
#include "easyqg/rational.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace easyqg {

// --- exact finite-group oracles ----------------------------------------------

enum class FiniteFamily { S, H };

/// S_n (n <= 7) or the hyperoctahedral group H_n of signed permutation
/// matrices (n <= 5), small enough to enumerate.
struct FiniteGroupSpec {
    FiniteFamily family;
    int n;

    std::size_t order() const;
    Category category() const { return family == FiniteFamily::S ? Category::S : Category::H; }
};

/// (1/|G|) sum_g prod_l g_{i_l j_l} by full enumeration.
Rational group_integral_exact(const FiniteGroupSpec& spec, const Word& i, const Word& j);

/// Checks, at every group element g, that
///   sum over i with pi <= ker i of prod_l g_{i_l j_l} = [pi <= ker j].
bool fixed_point_identity_check(const FiniteGroupSpec& spec, const SetPartition& pi,
                                const Word& j);

// --- Monte Carlo ---------------------------------------------------------------

struct MCConfig {
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned workers = 0;
};

enum class ContinuousFamily { O, B };

/// Haar orthogonal matrix for sample `index`: QR of a Gaussian matrix with the
/// signs of diag(R) absorbed into Q.
Eigen::MatrixXd sample_haar_orthogonal(int n, const MCConfig& cfg, std::uint64_t index);

/// Haar element of B_n: diag(1, h) with h Haar in O_{n-1}, conjugated by an
/// orthogonal matrix whose first column is the normalized all-ones vector.
Eigen::MatrixXd sample_bistochastic(int n, const MCConfig& cfg, std::uint64_t index);

struct MCEstimate {
    double estimate = 0;
    double std_error = 0;
};

/// Sample mean and standard error of prod_l g_{i_l j_l}.
MCEstimate group_integral_mc(ContinuousFamily family, int n, const Word& i, const Word& j,
                             const MCConfig& cfg);

/// Several monomials evaluated on one shared sample stream.
std::vector<MCEstimate> group_integral_mc_batch(ContinuousFamily family, int n,
                                                const std::vector<std::pair<Word, Word>>& words,
                                                const MCConfig& cfg);

// --- half-independence matrix model --------------------------------------------

/// Parity normal form: for a word with balanced kernel, the sorted word
/// x_{j1}^{2k1} ... x_{jm}^{2km} (j1 < ... < jm) reachable by permuting odd and
/// even positions separately. std::nullopt marks an unbalanced word.
std::optional<Word> parity_normal_form(const Word& w);

/// Per-variable even moments m_2, m_4, ... of x_i (equivalently of |xi_i|^2).
struct HalfModelSpec {
    std::map<int, std::vector<Rational>> even_moments;

    /// Hankel and shifted-Hankel positivity of (1, m_2, m_4, ...), i.e. the
    /// sequence is a Stieltjes moment sequence up to the available order.
    /// Throws PreconditionError naming the first offending variable.
    void validate() const;
};

/// E tr of x_{w1} ... x_{wk} with x_i = [[0, xi_i], [conj xi_i, 0]].
Rational half_model_moment(const HalfModelSpec& spec, const Word& w);

struct HalfModelReport {
    bool ok = true;
    Rational max_discrepancy = 0;
    std::optional<Word> witness;
    std::size_t words_checked = 0;
};

/// Compares model moments with the half-liberated moment-cumulant prediction
/// (per-variable cumulants, mixed cumulants zero) on every word of length
/// 1..order_max over the model's letters.
HalfModelReport half_model_vs_cumulants(const HalfModelSpec& spec, int order_max);

// --- finite de Finetti gaps ------------------------------------------------------

struct GapResult {
    Rational lhs;
    Rational rhs;
    Rational gap;
};

/// Sampling without replacement from the urn versus its i.i.d. prediction.
GapResult urn_definetti_gap(const std::vector<Rational>& urn, const Word& j);

/// Uniform point on the radius-sqrt(n) sphere in R^n versus i.i.d. N(0, 1).
GapResult sphere_definetti_gap(int n, const Word& j);

/// Exact moment of the coordinates of the uniform radius-sqrt(n) sphere point.
Rational sphere_moment(int n, const Word& j);

}  // namespace easyqg
