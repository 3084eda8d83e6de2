#include "easyqg/verify.hpp"

#include "easyqg/exact_linalg.hpp"
#include "easyqg/models.hpp"
#include "easyqg/weingarten.hpp"

namespace easyqg {

namespace {

std::string tag(Category c, int k) {
    return "cat=" + std::string(to_string(c)) + " k=" + std::to_string(k);
}

// Representative word of a kernel class: the restricted growth string + 1.
Word representative(const SetPartition& p) {
    Word w;
    for (auto l : p.labels()) w.push_back(l + 1);
    return w;
}

// Maximum of |W| n^{|pi|+|sigma|-|pi v sigma|} over all pairs.
Rational max_order_bound(Category c, int k, long n) {
    Rational m = 0;
    for (const auto& e : order_bound_table(c, k, n))
        if (e.value > m) m = e.value;
    return m;
}

}  // namespace

VerifyReport verify_west(Category c, int k, long n_max) {
    VerifyReport r{"west", 0, {}};
    std::vector<long> grid;
    for (long n = 8; n <= n_max; n *= 2) grid.push_back(n);
    if (grid.empty()) grid.push_back(n_max);

    std::vector<Rational> residual, bound;
    for (long n : grid) {
        residual.push_back(asymptotic_residual(c, k, n).max);
        bound.push_back(max_order_bound(c, k, n));
    }
    const Rational first_scaled = residual[0] * grid[0];
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const std::string at = tag(c, k) + " n=" + std::to_string(grid[g]);
        ++r.checks;
        if (residual[g] * grid[g] > first_scaled * kWestGrowth)
            r.violations.push_back(at + ": n*residual " + to_string(residual[g] * grid[g]) +
                                   " exceeds " + std::to_string(kWestGrowth) + " x " +
                                   to_string(first_scaled));
        ++r.checks;
        if (bound[g] > bound[0] * kWestGrowth)
            r.violations.push_back(at + ": scaled magnitude " + to_string(bound[g]) +
                                   " exceeds " + std::to_string(kWestGrowth) + " x " +
                                   to_string(bound[0]));
        if (g == 0) continue;
        ++r.checks;
        const bool both_zero = residual[g] == 0 && residual[g - 1] == 0;
        if (!both_zero && !(residual[g] < residual[g - 1]))
            r.violations.push_back(at + ": residual " + to_string(residual[g]) +
                                   " not below " + to_string(residual[g - 1]));
    }
    return r;
}

VerifyReport verify_moebius(Category c, int k) {
    VerifyReport r{"moebius", 0, {}};
    const auto family = mobius_table(c, k);
    const auto ambient = mobius_table(ambient_category(c), k);
    const auto& parts = family->partitions();
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = 0; b < parts.size(); ++b) {
            if (!family->leq()[a][b]) continue;
            ++r.checks;
            const long long inside = family->values()[a][b];
            const long long outside = (*ambient)(parts[a], parts[b]);
            if (inside != outside)
                r.violations.push_back(tag(c, k) + ": mu(" + parts[a].to_string() + ", " +
                                       parts[b].to_string() + ") = " + std::to_string(inside) +
                                       " in " + std::string(family_name(c)) + " but " +
                                       std::to_string(outside) + " in " +
                                       std::string(family_name(ambient_category(c))));
        }
    return r;
}

VerifyReport verify_moebius_all(int k) {
    VerifyReport r{"moebius", 0, {}};
    for (Category c : kAllCategories) {
        auto one = verify_moebius(c, k);
        r.checks += one.checks;
        r.violations.insert(r.violations.end(), one.violations.begin(), one.violations.end());
    }
    return r;
}

VerifyReport verify_inverse(Category c, int k, long n) {
    VerifyReport r{"inverse", 0, {}};
    const auto t = weingarten_table(c, k, n);
    const auto product = multiply(t->weingarten, t->gram);
    for (std::size_t a = 0; a < product.size(); ++a)
        for (std::size_t b = 0; b < product.size(); ++b) {
            ++r.checks;
            if (product[a][b] != (a == b ? 1 : 0))
                r.violations.push_back(tag(c, k) + " n=" + std::to_string(n) + ": (W G)[" +
                                       std::to_string(a) + "][" + std::to_string(b) + "] = " +
                                       to_string(product[a][b]));
        }
    return r;
}

VerifyReport verify_fixed_point(Category c, int k, long n) {
    VerifyReport r{"fixedpoint", 0, {}};
    const auto family = enumerate_family(c, k);
    std::vector<Word> j_words;
    for (const auto& p : enumerate_all(k))
        if (p.block_count() <= n) j_words.push_back(representative(p));

    for (const auto& pi : family) {
        // All i with pi <= ker i: one free letter per block of pi.
        std::vector<Word> i_words;
        std::size_t count = 1;
        for (int b = 0; b < pi.block_count(); ++b) count *= static_cast<std::size_t>(n);
        for (std::size_t code = 0; code < count; ++code) {
            Word w(static_cast<std::size_t>(k));
            std::size_t rest = code;
            for (const auto& block : pi.blocks()) {
                const int letter = static_cast<int>(rest % static_cast<std::size_t>(n)) + 1;
                rest /= static_cast<std::size_t>(n);
                for (int p : block) w[p - 1] = letter;
            }
            i_words.push_back(std::move(w));
        }
        for (const auto& j : j_words) {
            ++r.checks;
            Rational sum = 0;
            for (const auto& i : i_words) sum += haar_integral(c, n, i, j);
            const int expected = is_refinement(pi, kernel(j)) ? 1 : 0;
            if (sum != expected)
                r.violations.push_back(tag(c, k) + " n=" + std::to_string(n) + " pi=" +
                                       pi.to_string() + " j=" + to_string(j) + ": sum " +
                                       to_string(sum) + " != " + std::to_string(expected));
        }
    }
    return r;
}

VerifyReport verify_semimodular(int k) {
    VerifyReport r{"semimodular", 0, {}};
    const auto parts = enumerate_all(k);
    for (const auto& a : parts)
        for (const auto& b : parts) {
            ++r.checks;
            if (a.block_count() + b.block_count() >
                join(a, b).block_count() + meet(a, b).block_count())
                r.violations.push_back("k=" + std::to_string(k) + ": " + a.to_string() + " / " +
                                       b.to_string());
        }
    return r;
}

VerifyReport verify_half_model(int order) {
    VerifyReport r{"half", 0, {}};
    auto rayleigh = [](int count) {
        std::vector<Rational> m;
        Rational f = 1;
        for (int a = 1; a <= count; ++a) m.push_back(f *= a);
        return m;
    };
    // Non-Rayleigh law with m_2 = 1, m_4 = 3, m_6 = 15 (|xi|^2 ~ chi-square(1)).
    const std::vector<Rational> other{1, 3, 15, 105, 945};
    const int count = (order + 1) / 2;

    std::vector<std::pair<std::string, HalfModelSpec>> specs;
    for (int vars : {2, 3}) {
        HalfModelSpec ray, mixed;
        for (int v = 1; v <= vars; ++v) {
            ray.even_moments[v] = rayleigh(count);
            mixed.even_moments[v] =
                v == 1 ? rayleigh(count)
                       : std::vector<Rational>(other.begin(), other.begin() + count);
        }
        specs.emplace_back(std::to_string(vars) + " Rayleigh variables", ray);
        specs.emplace_back(std::to_string(vars) + " variables incl. m4=3 law", mixed);
    }
    for (const auto& [label, spec] : specs) {
        spec.validate();
        const auto report = half_model_vs_cumulants(spec, order);
        r.checks += report.words_checked;
        if (!report.ok)
            r.violations.push_back(label + ": discrepancy " + to_string(report.max_discrepancy) +
                                   " at (" + to_string(*report.witness) + ")");
    }
    return r;
}

}  // namespace easyqg
