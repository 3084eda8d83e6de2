#include "easyqg/weingarten.hpp"

#include "easyqg/errors.hpp"
#include "easyqg/exact_linalg.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace easyqg {

namespace {

void check_shape(int k, long n) {
    if (k < 0 || k > k_max())
        throw SizeLimitError("k=" + std::to_string(k) + " outside 0.." + std::to_string(k_max()));
    if (n < 1) throw PreconditionError("dimension n must be positive");
}

Matrix<Integer> gram_of(const std::vector<SetPartition>& parts, long n) {
    const std::size_t m = parts.size();
    Matrix<Integer> g(m, std::vector<Integer>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            unsigned blocks = static_cast<unsigned>(join(parts[a], parts[b]).block_count());
            g[a][b] = ipow(n, blocks);
            g[b][a] = g[a][b];
        }
    return g;
}

std::shared_ptr<const WeingartenTable> build_table(Category c, int k, long n) {
    auto mob = mobius_table(c, k);
    auto table = std::make_shared<WeingartenTable>();
    table->category = c;
    table->k = k;
    table->n = n;
    table->partitions = mob->partitions();
    table->gram = gram_of(table->partitions, n);
    try {
        table->weingarten = invert_exact(table->gram);
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("Gram matrix singular for (cat=" + std::string(to_string(c)) +
                                  ", k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    }
    table->mobius = mob->values();
    return table;
}

// Positions of D(k) elements refining ker w.
std::vector<std::size_t> refining(const WeingartenTable& t, const Word& w) {
    std::vector<std::size_t> out;
    const SetPartition ker = kernel(w);
    for (std::size_t a = 0; a < t.partitions.size(); ++a)
        if (is_refinement(t.partitions[a], ker)) out.push_back(a);
    return out;
}

}  // namespace

Matrix<Integer> gram(Category c, int k, long n) {
    check_shape(k, n);
    return gram_of(enumerate_family(c, k), n);
}

std::shared_ptr<const WeingartenTable> weingarten_table(Category c, int k, long n) {
    check_shape(k, n);
    using Key = std::tuple<Category, int, long>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const WeingartenTable>> cache;
    const Key key{c, k, n};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    // Built outside the lock; a concurrent duplicate build yields an equal table.
    auto table = build_table(c, k, n);
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(table)).first->second;
}

Rational haar_integral(Category c, long n, const Word& i, const Word& j) {
    if (i.size() != j.size())
        throw DimensionError("index words differ in length: " + std::to_string(i.size()) +
                             " vs " + std::to_string(j.size()));
    for (const Word* w : {&i, &j})
        for (int letter : *w)
            if (letter < 1 || letter > n)
                throw PreconditionError("letter " + std::to_string(letter) + " outside 1.." +
                                        std::to_string(n));
    const int k = static_cast<int>(i.size());
    check_shape(k, n);
    if (k == 0) return 1;
    auto table = weingarten_table(c, k, n);
    if (table->partitions.empty()) return 0;
    Rational sum = 0;
    const auto rows = refining(*table, i);
    const auto cols = refining(*table, j);
    for (auto a : rows)
        for (auto b : cols) sum += table->weingarten[a][b];
    return sum;
}

ResidualReport asymptotic_residual(Category c, int k, long n) {
    auto t = weingarten_table(c, k, n);
    ResidualReport report;
    const auto& leq = mobius_table(c, k)->leq();
    for (std::size_t a = 0; a < t->partitions.size(); ++a) {
        const Integer scale = ipow(n, static_cast<unsigned>(t->partitions[a].block_count()));
        for (std::size_t b = 0; b < t->partitions.size(); ++b) {
            if (!leq[a][b]) continue;
            Rational r = abs(t->weingarten[a][b] * scale - static_cast<long>(t->mobius[a][b]));
            if (r > report.max) report.max = r;
            report.entries.push_back({static_cast<int>(a), static_cast<int>(b), std::move(r)});
        }
    }
    return report;
}

std::vector<TableEntry> order_bound_table(Category c, int k, long n) {
    auto t = weingarten_table(c, k, n);
    std::vector<TableEntry> out;
    const auto& parts = t->partitions;
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = 0; b < parts.size(); ++b) {
            // n^{|pi v sigma|} is the Gram entry itself.
            const unsigned e = static_cast<unsigned>(parts[a].block_count() + parts[b].block_count());
            Rational v = abs(t->weingarten[a][b]) * ipow(n, e) / t->gram[a][b];
            out.push_back({static_cast<int>(a), static_cast<int>(b), std::move(v)});
        }
    return out;
}

Rational scaled_residual_sum(const WeingartenTable& t) {
    Rational sum = 0;
    for (std::size_t a = 0; a < t.partitions.size(); ++a) {
        const Integer scale = ipow(t.n, static_cast<unsigned>(t.partitions[a].block_count()));
        for (std::size_t b = 0; b < t.partitions.size(); ++b)
            sum += abs(t.weingarten[a][b] * scale - static_cast<long>(t.mobius[a][b]));
    }
    return sum * t.n;
}

CkResult ck_constant(Category c, int k, long n_max) {
    check_shape(k, n_max);
    CkResult result;
    for (long n = 1; n <= n_max; ++n) {
        CkStep step{n, std::nullopt};
        try {
            step.value = scaled_residual_sum(*weingarten_table(c, k, n));
        } catch (const SingularMatrixError&) {
        }
        if (step.value && (result.argmax_n == 0 || *step.value > result.ck)) {
            result.ck = *step.value;
            result.argmax_n = n;
        }
        result.trace.push_back(std::move(step));
    }
    return result;
}

}  // namespace easyqg
