#include "easyqg/cumulants.hpp"

#include "easyqg/errors.hpp"

#include <algorithm>

namespace easyqg {

namespace {

Word restrict_word(const Word& w, std::span<const int> positions) {
    Word out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(w[static_cast<std::size_t>(p - 1)]);
    return out;
}

bool is_constant(const Word& w) {
    return std::adjacent_find(w.begin(), w.end(), std::not_equal_to<>()) == w.end();
}

bool compatible(Species s, Category c) {
    switch (s) {
        case Species::Classical: return !is_free(c) && !is_half_liberated(c);
        case Species::Free: return is_free(c);
        case Species::Half: return is_half_liberated(c);
    }
    return false;
}

}  // namespace

std::string_view to_string(Species s) {
    switch (s) {
        case Species::Classical: return "classical";
        case Species::Free: return "free";
        case Species::Half: return "half";
    }
    return "?";
}

Species parse_species(std::string_view text) {
    if (text == "classical") return Species::Classical;
    if (text == "free") return Species::Free;
    if (text == "half") return Species::Half;
    throw ParseError("unknown species '" + std::string(text) + "' (classical, free, half)");
}

Category lattice_of(Species s) {
    switch (s) {
        case Species::Classical: return Category::S;
        case Species::Free: return Category::SPlus;
        case Species::Half: return Category::HStar;
    }
    return Category::S;
}

// --- WordFunction --------------------------------------------------------------

WordFunction WordFunction::from_sequence(std::span<const Rational> seq) {
    WordFunction f;
    f.order_max = static_cast<int>(seq.size());
    f.single_variable = true;
    for (std::size_t r = 1; r <= seq.size(); ++r) f.values.emplace(Word(r, 1), seq[r - 1]);
    return f;
}

std::vector<Rational> WordFunction::sequence() const {
    std::vector<Rational> out;
    for (int r = 1; r <= order_max; ++r) out.push_back(at(Word(static_cast<std::size_t>(r), 1)));
    return out;
}

const Rational& WordFunction::at(const Word& w) const {
    auto it = values.find(w);
    if (it == values.end()) throw PreconditionError("no value for word (" + to_string(w) + ")");
    return it->second;
}

Rational MomentFunctional::operator()(const Word& w) const {
    if (w.empty()) return 1;
    return at(w);
}

// --- partitioned functionals ---------------------------------------------------

Rational block_product(const SetPartition& pi, const BlockValue& f) {
    Rational out = 1;
    for (const auto& block : pi.blocks()) out *= f(block);
    return out;
}

Rational nested_evaluation(const SetPartition& pi, const BlockValue& f) {
    if (pi.ground_size() == 0) return 1;
    std::vector<int> remaining(static_cast<std::size_t>(pi.ground_size()));
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i) + 1;
    // Multiplier carried by each argument slot a_p.
    std::vector<Rational> arg(remaining.size() + 1, 1);
    std::vector<bool> done(static_cast<std::size_t>(pi.block_count()), false);

    for (int step = 0; step < pi.block_count(); ++step) {
        // Pick the innermost interval: the last block whose points form a
        // contiguous run of `remaining`.
        int chosen = -1;
        std::size_t start = 0;
        for (int b = pi.block_count() - 1; b >= 0 && chosen < 0; --b) {
            if (done[b]) continue;
            const auto& block = pi.blocks()[b];
            auto first = std::find(remaining.begin(), remaining.end(), block.front());
            auto offset = static_cast<std::size_t>(first - remaining.begin());
            if (offset + block.size() > remaining.size()) continue;
            if (std::equal(block.begin(), block.end(), first)) {
                chosen = b;
                start = offset;
            }
        }
        if (chosen < 0)
            throw MembershipError("partition " + pi.to_string() + " is crossing");
        const auto& block = pi.blocks()[chosen];
        Rational value = f(block);
        for (int p : block) value *= arg[p];
        done[chosen] = true;
        const std::size_t end = start + block.size();
        if (start > 0)
            arg[remaining[start - 1]] *= value;
        else if (end < remaining.size())
            arg[remaining[end]] *= value;
        else
            return value;
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(start),
                        remaining.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return 1;  // unreachable for k >= 1
}

Rational partitioned_functional(Species s, const SetPartition& pi, const BlockValue& f) {
    if (!in_family(lattice_of(s), pi))
        throw MembershipError("partition " + pi.to_string() + " not in the " +
                              std::string(to_string(s)) + " lattice");
    if (s == Species::Free) return nested_evaluation(pi, f);
    return block_product(pi, f);
}

// --- transforms ----------------------------------------------------------------

CumulantFamily moments_to_cumulants(Species s, const MomentFunctional& m) {
    const Category lattice = lattice_of(s);
    if (s == Species::Half)
        for (const auto& [w, v] : m.values)
            if (w.size() % 2 == 1 && v != 0)
                throw PreconditionError("half-liberated cumulants need vanishing odd moments; E[" +
                                        to_string(w) + "] = " + to_string(v));

    CumulantFamily c;
    c.species = s;
    c.order_max = m.order_max;
    c.single_variable = m.single_variable;
    for (const auto& [w, v] : m.values) {
        const int r = static_cast<int>(w.size());
        if (s == Species::Half && r % 2 == 1) {
            c.values.emplace(w, 0);
            continue;
        }
        const auto parts = enumerate_family(lattice, r);
        const auto mu = mobius_to_top(lattice, r);
        const BlockValue moment = [&](std::span<const int> block) {
            return m(restrict_word(w, block));
        };
        Rational sum = 0;
        for (std::size_t a = 0; a < parts.size(); ++a) {
            if ((*mu)[a] == 0) continue;
            sum += static_cast<long>((*mu)[a]) * partitioned_functional(s, parts[a], moment);
        }
        c.values.emplace(w, std::move(sum));
    }
    return c;
}

MomentFunctional cumulants_to_moments(const CumulantFamily& c) {
    const Category lattice = lattice_of(c.species);
    MomentFunctional m;
    m.order_max = c.order_max;
    m.single_variable = c.single_variable;
    for (const auto& [w, v] : c.values) {
        const int r = static_cast<int>(w.size());
        const auto parts = enumerate_family(lattice, r);
        const SetPartition ker = kernel(w);
        const BlockValue cumulant = [&](std::span<const int> block) {
            return c.at(restrict_word(w, block));
        };
        Rational sum = 0;
        for (const auto& pi : parts) {
            if (c.species == Species::Half && !is_refinement(pi, ker)) continue;
            sum += partitioned_functional(c.species, pi, cumulant);
        }
        m.values.emplace(w, std::move(sum));
    }
    return m;
}

// --- laws ------------------------------------------------------------------------

Species species_of(LawKind kind) {
    switch (kind) {
        case LawKind::Gaussian: return Species::Classical;
        case LawKind::Semicircle: return Species::Free;
        case LawKind::RayleighSym: return Species::Half;
    }
    return Species::Classical;
}

CumulantFamily law_cumulants(const Law& law, int order) {
    if (law.variance < 0) throw PreconditionError("negative variance " + to_string(law.variance));
    if (order < 1) throw PreconditionError("order must be positive");
    if (law.kind == LawKind::RayleighSym && law.mean != 0)
        throw PreconditionError("symmetrized Rayleigh law has mean 0");
    std::vector<Rational> seq(static_cast<std::size_t>(order), 0);
    seq[0] = law.mean;
    if (order >= 2) seq[1] = law.variance;
    CumulantFamily c;
    static_cast<WordFunction&>(c) = WordFunction::from_sequence(seq);
    c.species = species_of(law.kind);
    return c;
}

std::vector<Rational> law_moments(const Law& law, int order) {
    return cumulants_to_moments(law_cumulants(law, order)).sequence();
}

VanishingReport vanishing_pattern_check(Species s, Category cat, const CumulantFamily& c) {
    if (!compatible(s, cat))
        throw PreconditionError("category " + std::string(to_string(cat)) +
                                " is not compatible with " + std::string(to_string(s)) +
                                " cumulants");
    std::vector<const std::pair<const Word, Rational>*> entries;
    for (const auto& e : c.values) entries.push_back(&e);
    std::stable_sort(entries.begin(), entries.end(),
                     [](auto* a, auto* b) { return a->first.size() < b->first.size(); });
    for (const auto* e : entries) {
        const Word& w = e->first;
        if (e->second == 0) continue;
        const int r = static_cast<int>(w.size());
        if (!is_constant(w) || !in_family(cat, SetPartition::full(r))) return {false, w};
    }
    return {};
}

}  // namespace easyqg
