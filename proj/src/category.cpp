#include "easyqg/category.hpp"

#include "easyqg/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace easyqg {

namespace {

struct CategoryInfo {
    Category category;
    std::string_view tag;
    std::string_view family;
};

constexpr std::array<CategoryInfo, 10> kInfo = {{
    {Category::O, "O", "P_2"},
    {Category::S, "S", "P"},
    {Category::H, "H", "P_h"},
    {Category::B, "B", "P_b"},
    {Category::OStar, "O*", "E_2"},
    {Category::HStar, "H*", "E_h"},
    {Category::OPlus, "O+", "NC_2"},
    {Category::SPlus, "S+", "NC"},
    {Category::HPlus, "H+", "NC_h"},
    {Category::BPlus, "B+", "NC_b"},
}};

const CategoryInfo& info(Category c) { return kInfo[static_cast<std::size_t>(c)]; }

bool all_blocks(const SetPartition& pi, bool (*pred)(std::size_t)) {
    for (const auto& b : pi.blocks())
        if (!pred(b.size())) return false;
    return true;
}

bool pair_block(std::size_t s) { return s == 2; }
bool even_block(std::size_t s) { return s % 2 == 0; }
bool small_block(std::size_t s) { return s <= 2; }

}  // namespace

std::string_view to_string(Category c) { return info(c).tag; }

Category parse_category(std::string_view text) {
    for (const auto& i : kInfo)
        if (i.tag == text) return i.category;
    throw ParseError("unknown category '" + std::string(text) +
                     "' (expected one of O,S,H,B,O*,H*,O+,S+,H+,B+)");
}

std::string_view family_name(Category c) { return info(c).family; }

bool is_free(Category c) {
    return c == Category::OPlus || c == Category::SPlus || c == Category::HPlus ||
           c == Category::BPlus;
}

bool is_half_liberated(Category c) { return c == Category::OStar || c == Category::HStar; }

Category ambient_category(Category c) {
    if (is_free(c)) return Category::SPlus;
    if (is_half_liberated(c)) return Category::HStar;
    return Category::S;
}

bool in_family(Category c, const SetPartition& pi) {
    switch (c) {
        case Category::S: return true;
        case Category::O: return all_blocks(pi, pair_block);
        case Category::H: return all_blocks(pi, even_block);
        case Category::B: return all_blocks(pi, small_block);
        case Category::OStar: return all_blocks(pi, pair_block) && is_balanced(pi);
        case Category::HStar: return is_balanced(pi);
        case Category::SPlus: return is_noncrossing(pi);
        case Category::OPlus: return all_blocks(pi, pair_block) && is_noncrossing(pi);
        case Category::HPlus: return all_blocks(pi, even_block) && is_noncrossing(pi);
        case Category::BPlus: return all_blocks(pi, small_block) && is_noncrossing(pi);
    }
    return false;
}

std::vector<SetPartition> enumerate_family(Category c, int k) {
    if (k < 0 || k > k_max())
        throw SizeLimitError("k=" + std::to_string(k) + " outside 0.." + std::to_string(k_max()));
    if (k == 0) return {SetPartition{}};
    std::vector<SetPartition> out;
    for (auto& pi : enumerate_all(k))
        if (in_family(c, pi)) out.push_back(std::move(pi));
    return out;
}

// --- Moebius -----------------------------------------------------------------

MobiusTable::MobiusTable(Category c, int k)
    : category_(c), k_(k), partitions_(enumerate_family(c, k)) {
    const std::size_t n = partitions_.size();
    leq_.assign(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) leq_[a][b] = is_refinement(partitions_[a], partitions_[b]);

    // Enumeration order is a linear extension of <=, so mu is upper
    // triangular and mu(a, b) = -sum_{a <= v < b} mu(a, v).
    mu_.assign(n, std::vector<long long>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        mu_[a][a] = 1;
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!leq_[a][b]) continue;
            long long sum = 0;
            for (std::size_t v = a; v < b; ++v)
                if (leq_[a][v] && leq_[v][b]) sum += mu_[a][v];
            mu_[a][b] = -sum;
        }
    }
}

int MobiusTable::index_of(const SetPartition& pi) const {
    if (pi.ground_size() != k_) return -1;
    // Partitions are sorted by block count descending then labels; binary search.
    auto less = [](const SetPartition& x, const SetPartition& y) {
        if (x.block_count() != y.block_count()) return x.block_count() > y.block_count();
        return x.labels() < y.labels();
    };
    auto it = std::lower_bound(partitions_.begin(), partitions_.end(), pi, less);
    if (it == partitions_.end() || !(*it == pi)) return -1;
    return static_cast<int>(it - partitions_.begin());
}

long long MobiusTable::operator()(const SetPartition& pi, const SetPartition& sigma) const {
    int a = index_of(pi);
    int b = index_of(sigma);
    if (a < 0 || b < 0)
        throw MembershipError("partition " + (a < 0 ? pi : sigma).to_string() + " not in " +
                              std::string(family_name(category_)) + "(" + std::to_string(k_) +
                              ")");
    return mu_[a][b];
}

std::shared_ptr<const MobiusTable> mobius_table(Category c, int k) {
    static std::mutex mutex;
    static std::map<std::pair<Category, int>, std::shared_ptr<const MobiusTable>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find({c, k}); it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const MobiusTable>(c, k);
    std::lock_guard lock(mutex);
    return cache.try_emplace({c, k}, std::move(table)).first->second;
}

std::shared_ptr<const std::vector<long long>> mobius_to_top(Category c, int k) {
    static std::mutex mutex;
    static std::map<std::pair<Category, int>, std::shared_ptr<const std::vector<long long>>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find({c, k}); it != cache.end()) return it->second;
    }
    const auto parts = enumerate_family(c, k);
    if (parts.empty() || !(parts.back() == SetPartition::full(k)))
        throw MembershipError("1_" + std::to_string(k) + " not in " + std::string(family_name(c)) +
                              "(" + std::to_string(k) + ")");
    // mu(a, top) = -sum_{a < v <= top} mu(v, top); coarser partitions come later.
    const std::size_t n = parts.size();
    auto column = std::make_shared<std::vector<long long>>(n, 0);
    (*column)[n - 1] = 1;
    for (std::size_t a = n - 1; a-- > 0;) {
        long long sum = 0;
        for (std::size_t v = a + 1; v < n; ++v)
            if ((*column)[v] != 0 && is_refinement(parts[a], parts[v])) sum += (*column)[v];
        (*column)[a] = -sum;
    }
    std::lock_guard lock(mutex);
    return cache.try_emplace({c, k}, std::move(column)).first->second;
}

long long mobius(Category c, int k, const SetPartition& pi, const SetPartition& sigma) {
    return (*mobius_table(c, k))(pi, sigma);
}

long long mobius_full(int k, const SetPartition& pi, const SetPartition& sigma) {
    return mobius(Category::S, k, pi, sigma);
}

}  // namespace easyqg
