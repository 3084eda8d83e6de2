#include "easyqg/partition.hpp"

#include "easyqg/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <numeric>

namespace easyqg {

namespace {

int parse_positive(std::string_view s, std::string_view context) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || value <= 0)
        throw ParseError("expected positive integer, got '" + std::string(s) + "' in '" +
                         std::string(context) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

int initial_k_max() {
    if (const char* env = std::getenv("WG_KMAX")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 10;
}

std::atomic<int>& k_max_slot() {
    static std::atomic<int> slot{initial_k_max()};
    return slot;
}

struct DisjointSets {
    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    std::vector<int> parent;
};

void require_same_size(const SetPartition& a, const SetPartition& b) {
    if (a.ground_size() != b.ground_size())
        throw DimensionError("partitions of different ground sets: " +
                             std::to_string(a.ground_size()) + " vs " +
                             std::to_string(b.ground_size()));
}

}  // namespace

Word parse_word(std::string_view text) {
    Word w;
    if (text.empty()) return w;
    for (auto part : split(text, ',')) w.push_back(parse_positive(part, text));
    return w;
}

std::string to_string(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

int k_max() { return k_max_slot().load(std::memory_order_relaxed); }

void set_k_max(int value) {
    if (value < 1 || value > 255) throw SizeLimitError("k_max must lie in 1..255");
    k_max_slot().store(value, std::memory_order_relaxed);
}

// --- SetPartition ----------------------------------------------------------

SetPartition SetPartition::from_labels(std::span<const int> labels) {
    SetPartition p;
    std::map<int, std::uint8_t> relabel;
    p.labels_.reserve(labels.size());
    for (int l : labels) {
        auto [it, inserted] = relabel.try_emplace(l, static_cast<std::uint8_t>(relabel.size()));
        p.labels_.push_back(it->second);
    }
    p.build_blocks();
    return p;
}

SetPartition SetPartition::from_blocks(int k, const std::vector<std::vector<int>>& blocks) {
    if (k < 0) throw DimensionError("negative ground size");
    std::vector<int> labels(static_cast<std::size_t>(k), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw ParseError("empty block");
        for (int e : blocks[b]) {
            if (e < 1 || e > k)
                throw ParseError("point " + std::to_string(e) + " outside 1.." + std::to_string(k));
            if (labels[e - 1] != -1) throw ParseError("point " + std::to_string(e) + " repeated");
            labels[e - 1] = static_cast<int>(b);
        }
    }
    if (std::find(labels.begin(), labels.end(), -1) != labels.end())
        throw ParseError("blocks do not cover 1.." + std::to_string(k));
    return from_labels(labels);
}

SetPartition SetPartition::parse(std::string_view text) {
    if (text.empty()) return SetPartition{};
    std::vector<std::vector<int>> blocks;
    int k = 0;
    for (auto block_text : split(text, '|')) {
        std::vector<int> block;
        for (auto e : split(block_text, ',')) block.push_back(parse_positive(e, text));
        k += static_cast<int>(block.size());
        blocks.push_back(std::move(block));
    }
    auto p = from_blocks(k, blocks);
    if (p.to_string() != text)
        throw ParseError("partition '" + std::string(text) + "' is not in canonical form (" +
                         p.to_string() + ")");
    return p;
}

SetPartition SetPartition::discrete(int k) {
    std::vector<int> labels(static_cast<std::size_t>(k));
    std::iota(labels.begin(), labels.end(), 0);
    return from_labels(labels);
}

SetPartition SetPartition::full(int k) {
    std::vector<int> labels(static_cast<std::size_t>(k), 0);
    return from_labels(labels);
}

void SetPartition::build_blocks() {
    blocks_.clear();
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] >= blocks_.size()) blocks_.resize(labels_[i] + 1u);
        blocks_[labels_[i]].push_back(static_cast<int>(i) + 1);
    }
}

std::string SetPartition::to_string() const {
    std::string s;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b) s += '|';
        for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
            if (i) s += ',';
            s += std::to_string(blocks_[b][i]);
        }
    }
    return s;
}

// --- enumeration -------------------------------------------------------------

std::vector<SetPartition> enumerate_all(int k) {
    if (k < 1 || k > k_max())
        throw SizeLimitError("k=" + std::to_string(k) + " outside 1.." + std::to_string(k_max()));
    std::vector<SetPartition> out;
    out.reserve(static_cast<std::size_t>(bell_number(k)));

    // Restricted growth strings in lexicographic order.
    std::vector<int> rgs(static_cast<std::size_t>(k), 0);
    std::vector<int> prefix_max(static_cast<std::size_t>(k), 0);
    while (true) {
        out.push_back(SetPartition::from_labels(rgs));
        int i = k - 1;
        while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
        if (i == 0) break;
        ++rgs[i];
        prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
        for (int j = i + 1; j < k; ++j) {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const SetPartition& a, const SetPartition& b) {
        return a.block_count() > b.block_count();
    });
    return out;
}

unsigned long long bell_number(int k) {
    if (k < 0) return 0;
    std::vector<unsigned long long> row{1};
    for (int i = 0; i < k; ++i) {
        std::vector<unsigned long long> next{row.back()};
        for (auto v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

// --- lattice -----------------------------------------------------------------

bool is_refinement(const SetPartition& pi, const SetPartition& sigma) {
    require_same_size(pi, sigma);
    std::vector<int> image(static_cast<std::size_t>(pi.block_count()), -1);
    const auto& a = pi.labels();
    const auto& b = sigma.labels();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int& slot = image[a[i]];
        if (slot == -1)
            slot = b[i];
        else if (slot != b[i])
            return false;
    }
    return true;
}

SetPartition join(const SetPartition& pi, const SetPartition& sigma) {
    require_same_size(pi, sigma);
    const int k = pi.ground_size();
    DisjointSets sets(k);
    for (const auto* p : {&pi, &sigma})
        for (const auto& block : p->blocks())
            for (std::size_t i = 1; i < block.size(); ++i) sets.unite(block[0] - 1, block[i] - 1);
    std::vector<int> labels(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) labels[i] = sets.find(i);
    return SetPartition::from_labels(labels);
}

SetPartition meet(const SetPartition& pi, const SetPartition& sigma) {
    require_same_size(pi, sigma);
    const int k = pi.ground_size();
    std::vector<int> labels(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) labels[i] = pi.labels()[i] * 256 + sigma.labels()[i];
    return SetPartition::from_labels(labels);
}

SetPartition kernel(const Word& w) {
    if (w.empty()) throw EmptyInputError("kernel of the empty word");
    return SetPartition::from_labels(w);
}

bool is_noncrossing(const SetPartition& pi) {
    // Looks for a < b < c < d with a,c in one block and b,d in another.
    const auto& lab = pi.labels();
    const int k = pi.ground_size();
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            if (lab[b] == lab[a]) continue;
            for (int c = b + 1; c < k; ++c) {
                if (lab[c] != lab[a]) continue;
                for (int d = c + 1; d < k; ++d)
                    if (lab[d] == lab[b]) return false;
            }
        }
    return true;
}

bool is_noncrossing_by_interval_removal(const SetPartition& pi) {
    // Work on the sequence of block labels; remove a block whose occurrences
    // form a contiguous run until nothing is left.
    std::vector<int> seq(pi.labels().begin(), pi.labels().end());
    while (!seq.empty()) {
        bool removed = false;
        for (int block = 0; block < pi.block_count() && !removed; ++block) {
            auto first = std::find(seq.begin(), seq.end(), block);
            if (first == seq.end()) continue;
            auto last = std::find_if(first, seq.end(), [&](int l) { return l != block; });
            if (std::find(last, seq.end(), block) != seq.end()) continue;
            seq.erase(first, last);
            removed = true;
        }
        if (!removed) return false;
    }
    return true;
}

bool is_balanced(const SetPartition& pi) {
    for (const auto& block : pi.blocks()) {
        int odd = 0;
        for (int e : block) odd += e % 2;
        if (2 * odd != static_cast<int>(block.size())) return false;
    }
    return true;
}

}  // namespace easyqg
