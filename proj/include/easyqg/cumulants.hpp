#pragma once

#include "easyqg/category.hpp"
#include "easyqg/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace easyqg {

/// Which lattice the moment-cumulant formula sums over:
/// classical -> P, free -> NC, half -> E_h.
enum class Species { Classical, Free, Half };

std::string_view to_string(Species s);
Species parse_species(std::string_view text);
/// S, S+ or H*: the category whose family is the species lattice.
Category lattice_of(Species s);

/// Values on words of length 1..order_max. The empty word is implicitly 1 for
/// moments. A single-variable functional stores the words 1, 11, 111, ...
struct WordFunction {
    int order_max = 0;
    bool single_variable = false;
    std::map<Word, Rational> values;

    /// Words of length 1..m of the single letter 1, from seq[r-1] = value at order r.
    static WordFunction from_sequence(std::span<const Rational> seq);
    /// seq[r-1] = value at 1^r; only meaningful for single-variable data.
    std::vector<Rational> sequence() const;
    /// Throws PreconditionError if w is missing.
    const Rational& at(const Word& w) const;
};

struct MomentFunctional : WordFunction {
    /// E[w]; the empty word maps to 1.
    Rational operator()(const Word& w) const;
};

struct CumulantFamily : WordFunction {
    Species species = Species::Classical;
};

/// Value attached to one block, given as its sorted 1-based positions.
using BlockValue = std::function<Rational(std::span<const int>)>;

/// Product of block values over the blocks of pi.
Rational block_product(const SetPartition& pi, const BlockValue& f);

/// Nested evaluation: repeatedly removes an interval block V, folding its
/// value into the argument just before it, until no block remains. Throws
/// MembershipError when pi is crossing (no interval block exists).
Rational nested_evaluation(const SetPartition& pi, const BlockValue& f);

/// rho^(pi) for the species: nested form for free, block product otherwise.
/// pi must lie in the species lattice (MembershipError otherwise).
Rational partitioned_functional(Species s, const SetPartition& pi, const BlockValue& f);

/// Cumulants by Moebius inversion over the species lattice. For the half
/// species every odd-length moment must vanish (PreconditionError otherwise)
/// and odd-order cumulants are 0.
CumulantFamily moments_to_cumulants(Species s, const MomentFunctional& m);

/// Moments by summing partitioned cumulants over the species lattice; the half
/// species sums only over pi <= ker w.
MomentFunctional cumulants_to_moments(const CumulantFamily& c);

enum class LawKind { Gaussian, Semicircle, RayleighSym };

/// gaussian(mean, var), semicircle(mean, var), rayleigh_sym(var) (mean 0).
struct Law {
    LawKind kind;
    Rational mean = 0;
    Rational variance = 1;
};

Species species_of(LawKind kind);

/// The law's only nonzero cumulants are orders 1 and 2 in its species.
CumulantFamily law_cumulants(const Law& law, int order);
/// Moments of orders 1..order.
std::vector<Rational> law_moments(const Law& law, int order);

struct VanishingReport {
    bool ok = true;
    std::optional<Word> witness;
};

/// Checks the cumulant pattern required by the family of cat: nonzero values
/// only on constant words whose single block 1_r lies in D(r). The species must
/// match the category (classical: O,S,H,B; free: O+,S+,H+,B+; half: O*,H*).
VanishingReport vanishing_pattern_check(Species s, Category cat, const CumulantFamily& c);

}  // namespace easyqg
