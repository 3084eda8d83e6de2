#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "easyqg/cumulants.hpp"
#include "easyqg/errors.hpp"
#include "oracles.hpp"

#include <random>

using namespace easyqg;

namespace {

std::vector<Rational> seq(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

MomentFunctional moments(const std::vector<Rational>& s) {
    MomentFunctional m;
    static_cast<WordFunction&>(m) = WordFunction::from_sequence(s);
    return m;
}

CumulantFamily cumulants(Species sp, const std::vector<Rational>& s) {
    CumulantFamily c;
    static_cast<WordFunction&>(c) = WordFunction::from_sequence(s);
    c.species = sp;
    return c;
}

Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-12, 12), den(1, 7);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

std::vector<Word> words_upto(int order, int letters) {
    std::vector<Word> out, layer{{}};
    for (int r = 1; r <= order; ++r) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int l = 1; l <= letters; ++l) {
                Word x = w;
                x.push_back(l);
                next.push_back(x);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

// A block value that depends on the block's size and first point, so that
// mixing blocks up would change the result.
Rational tagged(std::span<const int> block) {
    return Rational(static_cast<long>(3 * block.size() + 1)) + Rational(block.front(), 5);
}

constexpr std::array kSpecies = {Species::Classical, Species::Free, Species::Half};

}  // namespace

TEST_CASE("species tags") {
    for (Species s : kSpecies) CHECK(parse_species(to_string(s)) == s);
    CHECK_THROWS_AS(parse_species("boolean"), ParseError);
    CHECK(lattice_of(Species::Free) == Category::SPlus);
}

TEST_CASE("partitioned functional") {
    const auto pi = SetPartition::parse("1,2|3");
    const BlockValue f = [](std::span<const int> b) { return b.size() == 2 ? Rational(7) : Rational(3); };
    for (Species s : {Species::Classical, Species::Free}) CHECK(partitioned_functional(s, pi, f) == 21);
    CHECK_THROWS_AS(partitioned_functional(Species::Half, pi, f), MembershipError);

    const auto nested = SetPartition::parse("1,8,9,10|2,7|3,4,5|6");
    CHECK(nested_evaluation(nested, tagged) == block_product(nested, tagged));
    CHECK(partitioned_functional(Species::Free, SetPartition::full(6), tagged) == tagged(std::vector<int>{1, 2, 3, 4, 5, 6}));
    CHECK_THROWS_AS(partitioned_functional(Species::Free, SetPartition::parse("1,3|2,4"), f), MembershipError);
    CHECK_THROWS_AS(nested_evaluation(SetPartition::parse("1,3|2,4"), f), MembershipError);
}

TEST_CASE("nested and product evaluations agree on NC(k), k <= 8") {
    for (int k = 1; k <= 8; ++k)
        for (const auto& pi : enumerate_family(Category::SPlus, k))
            CHECK(nested_evaluation(pi, tagged) == block_product(pi, tagged));
}

TEST_CASE("moments to cumulants examples") {
    CHECK(moments_to_cumulants(Species::Classical, moments(seq({0, 1, 0, 3}))).sequence() == seq({0, 1, 0, 0}));
    CHECK(moments_to_cumulants(Species::Free, moments(seq({0, 1, 0, 2}))).sequence() == seq({0, 1, 0, 0}));
    CHECK(moments_to_cumulants(Species::Half, moments(seq({0, 1, 0, 2}))).sequence() == seq({0, 1, 0, 0}));
    CHECK_THROWS_AS(moments_to_cumulants(Species::Half, moments(seq({1, 1}))), PreconditionError);
    CHECK_THROWS_AS(moments_to_cumulants(Species::Half, moments(seq({0, 1, 1, 3}))), PreconditionError);
    CHECK_NOTHROW(moments_to_cumulants(Species::Half, moments(law_moments({LawKind::RayleighSym, 0, 2}, 8))));
}

TEST_CASE("cumulants to moments examples") {
    const auto unit = seq({0, 1, 0, 0, 0, 0});
    CHECK(cumulants_to_moments(cumulants(Species::Classical, unit)).sequence().back() == 15);
    CHECK(cumulants_to_moments(cumulants(Species::Free, unit)).sequence().back() == 5);
    CHECK(cumulants_to_moments(cumulants(Species::Half, unit)).sequence().back() == 6);
}

TEST_CASE("law moments") {
    CHECK(law_moments({LawKind::Gaussian, 0, 1}, 4) == seq({0, 1, 0, 3}));
    CHECK(law_moments({LawKind::Semicircle, 0, 1}, 6) == seq({0, 1, 0, 2, 0, 5}));
    CHECK(law_moments({LawKind::RayleighSym, 0, 1}, 6) == seq({0, 1, 0, 2, 0, 6}));
    for (long v : {1, 2, 3})
        for (int m = 1; m <= 4; ++m) {
            const Rational vm = ipow(v, static_cast<unsigned>(m));
            CHECK(law_moments({LawKind::Gaussian, 0, v}, 2 * m).back() == vm * oracle::double_factorial(m));
            CHECK(law_moments({LawKind::Semicircle, 0, v}, 2 * m).back() == vm * oracle::catalan(m));
            CHECK(law_moments({LawKind::RayleighSym, 0, v}, 2 * m).back() == vm * oracle::factorial(m));
        }
    // Gaussian(1, 1): E[x^2] = 2, E[x^3] = 4.
    CHECK(law_moments({LawKind::Gaussian, 1, 1}, 3) == seq({1, 2, 4}));
    CHECK_THROWS_AS(law_moments({LawKind::Gaussian, 0, -1}, 2), PreconditionError);
    CHECK_THROWS_AS(law_moments({LawKind::RayleighSym, 1, 1}, 2), PreconditionError);
}

TEST_CASE("single-variable cumulants match the recursive solution") {
    std::mt19937 rng(11);
    const std::function<bool(const oracle::Blocks&)> all = [](const oracle::Blocks&) { return true; };
    const std::function<bool(const oracle::Blocks&)> nc = [](const oracle::Blocks& p) { return !oracle::crossing(p); };
    const std::function<bool(const oracle::Blocks&)> bal = [](const oracle::Blocks& p) { return oracle::balanced(p); };
    for (int t = 0; t < 10; ++t) {
        std::vector<Rational> m(7);
        for (auto& x : m) x = random_rational(rng);
        CHECK(moments_to_cumulants(Species::Classical, moments(m)).sequence() == oracle::cumulants_by_recursion(m, all));
        CHECK(moments_to_cumulants(Species::Free, moments(m)).sequence() == oracle::cumulants_by_recursion(m, nc));
        for (std::size_t r = 0; r < m.size(); r += 2) m[r] = 0;
        CHECK(moments_to_cumulants(Species::Half, moments(m)).sequence() == oracle::cumulants_by_recursion(m, bal));
    }
}

TEST_CASE("classical and free cumulants agree at orders 1 and 2") {
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> m(5);
        for (auto& x : m) x = random_rational(rng);
        const auto c = moments_to_cumulants(Species::Classical, moments(m)).sequence();
        const auto k = moments_to_cumulants(Species::Free, moments(m)).sequence();
        CHECK(c[0] == k[0]);
        CHECK(c[1] == k[1]);
    }
}

TEST_CASE("single-variable round trips, order 8") {
    std::mt19937 rng(2024);
    for (int t = 0; t < 100; ++t) {
        const Species s = kSpecies[t % 3];
        std::vector<Rational> x(8);
        for (std::size_t r = 0; r < x.size(); ++r) x[r] = (s == Species::Half && r % 2 == 0) ? Rational(0) : random_rational(rng);
        const auto m = moments(x);
        CHECK(cumulants_to_moments(moments_to_cumulants(s, m)).values == m.values);
        const auto c = cumulants(s, x);
        CHECK(moments_to_cumulants(s, cumulants_to_moments(c)).values == c.values);
    }
}

TEST_CASE("multivariate round trips, 3 letters, order 5") {
    std::mt19937 rng(77);
    const auto ws = words_upto(5, 3);
    for (int t = 0; t < 20; ++t) {
        const Species s = kSpecies[t % 3];
        CumulantFamily c;
        c.species = s;
        c.order_max = 5;
        for (const auto& w : ws) {
            Rational v = random_rational(rng);
            // Half-independent input: cumulants live on constant words of even length.
            if (s == Species::Half) {
                const bool constant = std::all_of(w.begin(), w.end(), [&](int l) { return l == w[0]; });
                if (!constant || w.size() % 2 == 1) v = 0;
            }
            c.values.emplace(w, v);
        }
        const auto m = cumulants_to_moments(c);
        CHECK(m.values.size() == ws.size());
        CHECK(moments_to_cumulants(s, m).values == c.values);
        if (s != Species::Half) {
            MomentFunctional arbitrary;
            arbitrary.order_max = 5;
            for (const auto& w : ws) arbitrary.values.emplace(w, random_rational(rng));
            CHECK(cumulants_to_moments(moments_to_cumulants(s, arbitrary)).values == arbitrary.values);
        } else {
            CHECK(cumulants_to_moments(moments_to_cumulants(s, m)).values == m.values);
        }
    }
}

TEST_CASE("vanishing pattern") {
    const auto g01 = law_cumulants({LawKind::Gaussian, 0, 1}, 6);
    const auto g11 = law_cumulants({LawKind::Gaussian, 1, 1}, 6);
    CHECK(vanishing_pattern_check(Species::Classical, Category::O, g01).ok);
    const auto bad = vanishing_pattern_check(Species::Classical, Category::O, g11);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.witness.has_value());
    CHECK(*bad.witness == Word{1});
    CHECK(vanishing_pattern_check(Species::Classical, Category::B, g11).ok);
    CHECK(vanishing_pattern_check(Species::Classical, Category::S, g11).ok);
    CHECK(vanishing_pattern_check(Species::Classical, Category::H, g01).ok);
    CHECK(vanishing_pattern_check(Species::Free, Category::OPlus, law_cumulants({LawKind::Semicircle, 0, 2}, 6)).ok);
    CHECK(vanishing_pattern_check(Species::Half, Category::OStar, law_cumulants({LawKind::RayleighSym, 0, 1}, 6)).ok);
    CHECK_THROWS_AS(vanishing_pattern_check(Species::Free, Category::O, g01), PreconditionError);
    CHECK_THROWS_AS(vanishing_pattern_check(Species::Half, Category::S, g01), PreconditionError);

    CumulantFamily mixed;
    mixed.species = Species::Classical;
    mixed.order_max = 2;
    mixed.values = {{{1}, 0}, {{1, 1}, 1}, {{1, 2}, Rational(1, 2)}};
    const auto r = vanishing_pattern_check(Species::Classical, Category::S, mixed);
    CHECK_FALSE(r.ok);
    CHECK(*r.witness == Word{1, 2});
}
