#include "easyqg/models.hpp"

#include "easyqg/cumulants.hpp"
#include "easyqg/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

namespace easyqg {

namespace {

void require_letters(const Word& w, int n) {
    for (int l : w)
        if (l < 1 || l > n)
            throw PreconditionError("letter " + std::to_string(l) + " outside 1.." +
                                    std::to_string(n));
}

// Calls visit(perm, signs) for every element of the group, where the element
// maps basis vector e_b to signs[b] * e_{perm[b]}.
template <typename Visit>
void for_each_element(const FiniteGroupSpec& spec, Visit&& visit) {
    const int n = spec.n;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> signs(static_cast<std::size_t>(n), 1);
    const unsigned masks = spec.family == FiniteFamily::H ? (1u << n) : 1u;
    do {
        for (unsigned mask = 0; mask < masks; ++mask) {
            for (int b = 0; b < n; ++b) signs[b] = (mask >> b) & 1u ? -1 : 1;
            visit(perm, signs);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

// prod_l g_{i_l j_l} for a signed permutation matrix.
int monomial(const std::vector<int>& perm, const std::vector<int>& signs, const Word& i,
             const Word& j) {
    int value = 1;
    for (std::size_t l = 0; l < i.size(); ++l) {
        const int col = j[l] - 1;
        if (perm[col] != i[l] - 1) return 0;
        value *= signs[col];
    }
    return value;
}

void check_group(const FiniteGroupSpec& spec) {
    const int limit = spec.family == FiniteFamily::S ? 7 : 5;
    if (spec.n < 1 || spec.n > limit)
        throw SizeLimitError(std::string(spec.family == FiniteFamily::S ? "S" : "H") + "_" +
                             std::to_string(spec.n) + " too large to enumerate (n <= " +
                             std::to_string(limit) + ")");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Per-sample generator depending only on (seed, index).
std::mt19937_64 sample_engine(const MCConfig& cfg, std::uint64_t index, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(cfg.seed ^ splitmix64(index * 4 + stream)));
}

Eigen::MatrixXd haar_orthogonal_from(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd z(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) z(r, c) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd& r = qr.matrixQR();
    for (int c = 0; c < n; ++c)
        if (r(c, c) < 0) q.col(c) *= -1.0;
    return q;
}

bool hankel_psd(const std::vector<Rational>& s, int shift) {
    // s holds s_0, s_1, ...; matrix entries s_{a+b+shift}, largest size that fits.
    const int len = static_cast<int>(s.size());
    const int d = (len - 1 - shift) / 2;
    if (d < 0) return true;
    Matrix<Rational> a(static_cast<std::size_t>(d + 1), std::vector<Rational>(d + 1));
    for (int r = 0; r <= d; ++r)
        for (int c = 0; c <= d; ++c) a[r][c] = s[r + c + shift];
    for (int k = 0; k <= d; ++k) {
        if (a[k][k] < 0) return false;
        if (a[k][k] == 0) {
            for (int c = k; c <= d; ++c)
                if (a[k][c] != 0) return false;
            continue;
        }
        for (int r = k + 1; r <= d; ++r) {
            const Rational f = a[r][k] / a[k][k];
            for (int c = k; c <= d; ++c) a[r][c] -= f * a[k][c];
        }
    }
    return true;
}

Integer double_factorial_odd(int m) {  // (m-1)!! for even m, 1 for m = 0
    Integer out = 1;
    for (int t = m - 1; t > 1; t -= 2) out *= t;
    return out;
}

}  // namespace

// --- exact oracles -----------------------------------------------------------

std::size_t FiniteGroupSpec::order() const {
    std::size_t f = 1;
    for (int t = 2; t <= n; ++t) f *= static_cast<std::size_t>(t);
    return family == FiniteFamily::H ? f << n : f;
}

Rational group_integral_exact(const FiniteGroupSpec& spec, const Word& i, const Word& j) {
    check_group(spec);
    if (i.size() != j.size()) throw DimensionError("index words differ in length");
    require_letters(i, spec.n);
    require_letters(j, spec.n);
    long long sum = 0;
    for_each_element(spec, [&](const auto& perm, const auto& signs) {
        sum += monomial(perm, signs, i, j);
    });
    return ratio(static_cast<long>(sum), static_cast<long>(spec.order()));
}

bool fixed_point_identity_check(const FiniteGroupSpec& spec, const SetPartition& pi,
                                const Word& j) {
    check_group(spec);
    const int k = static_cast<int>(j.size());
    if (pi.ground_size() != k) throw DimensionError("partition and word sizes differ");
    require_letters(j, spec.n);
    if (!in_family(spec.category(), pi))
        throw MembershipError("partition " + pi.to_string() + " not in " +
                              std::string(family_name(spec.category())));
    const int expected = k == 0 || is_refinement(pi, kernel(j)) ? 1 : 0;

    // Words constant on the blocks of pi, i.e. one letter per block.
    const int blocks = pi.block_count();
    std::size_t count = 1;
    for (int b = 0; b < blocks; ++b) count *= static_cast<std::size_t>(spec.n);
    std::vector<Word> words;
    words.reserve(count);
    for (std::size_t code = 0; code < count; ++code) {
        Word w(static_cast<std::size_t>(k));
        std::size_t rest = code;
        for (int b = 0; b < blocks; ++b) {
            const int letter = static_cast<int>(rest % spec.n) + 1;
            rest /= spec.n;
            for (int p : pi.blocks()[b]) w[p - 1] = letter;
        }
        words.push_back(std::move(w));
    }

    bool ok = true;
    for_each_element(spec, [&](const auto& perm, const auto& signs) {
        if (!ok) return;
        long long sum = 0;
        for (const auto& w : words) sum += monomial(perm, signs, w, j);
        ok = sum == expected;
    });
    return ok;
}

// --- Monte Carlo -------------------------------------------------------------

Eigen::MatrixXd sample_haar_orthogonal(int n, const MCConfig& cfg, std::uint64_t index) {
    if (n < 1) throw PreconditionError("n must be positive");
    auto rng = sample_engine(cfg, index, 0);
    return haar_orthogonal_from(rng, n);
}

Eigen::MatrixXd sample_bistochastic(int n, const MCConfig& cfg, std::uint64_t index) {
    if (n < 2) throw PreconditionError("bistochastic sampling needs n >= 2");
    auto rng = sample_engine(cfg, index, 1);
    Eigen::MatrixXd inner = Eigen::MatrixXd::Identity(n, n);
    inner.bottomRightCorner(n - 1, n - 1) = haar_orthogonal_from(rng, n - 1);
    // Householder reflection sending e_1 to the normalized all-ones vector.
    Eigen::VectorXd v = -Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    v(0) += 1.0;
    Eigen::MatrixXd reflect = Eigen::MatrixXd::Identity(n, n) - 2.0 * v * v.transpose() / v.squaredNorm();
    return reflect * inner * reflect.transpose();
}

std::vector<MCEstimate> group_integral_mc_batch(ContinuousFamily family, int n,
                                                const std::vector<std::pair<Word, Word>>& words,
                                                const MCConfig& cfg) {
    for (const auto& [i, j] : words) {
        if (i.size() != j.size()) throw DimensionError("index words differ in length");
        require_letters(i, n);
        require_letters(j, n);
    }
    if (cfg.samples < 2) throw PreconditionError("need at least two samples");

    // Fixed-size chunks, each summed sequentially; chunk sums are then reduced
    // pairwise in index order, so the result does not depend on scheduling.
    constexpr std::size_t kChunk = 1024;
    const std::size_t chunks = (cfg.samples + kChunk - 1) / kChunk;
    const std::size_t m = words.size();
    std::vector<std::vector<double>> sums(chunks, std::vector<double>(2 * m, 0.0));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t c; (c = next.fetch_add(1)) < chunks;) {
            auto& acc = sums[c];
            const std::size_t end = std::min(cfg.samples, (c + 1) * kChunk);
            for (std::size_t s = c * kChunk; s < end; ++s) {
                const Eigen::MatrixXd g = family == ContinuousFamily::O
                                              ? sample_haar_orthogonal(n, cfg, s)
                                              : sample_bistochastic(n, cfg, s);
                for (std::size_t q = 0; q < m; ++q) {
                    const auto& [i, j] = words[q];
                    double x = 1.0;
                    for (std::size_t l = 0; l < i.size(); ++l) x *= g(i[l] - 1, j[l] - 1);
                    acc[2 * q] += x;
                    acc[2 * q + 1] += x * x;
                }
            }
        }
    };
    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (std::size_t width = 1; width < chunks; width *= 2)
        for (std::size_t c = 0; c + width < chunks; c += 2 * width)
            for (std::size_t q = 0; q < 2 * m; ++q) sums[c][q] += sums[c + width][q];

    const double count = static_cast<double>(cfg.samples);
    std::vector<MCEstimate> out(m);
    for (std::size_t q = 0; q < m; ++q) {
        const double mean = sums[0][2 * q] / count;
        const double var = std::max(0.0, (sums[0][2 * q + 1] - count * mean * mean) / (count - 1));
        out[q] = {mean, std::sqrt(var / count)};
    }
    return out;
}

MCEstimate group_integral_mc(ContinuousFamily family, int n, const Word& i, const Word& j,
                             const MCConfig& cfg) {
    return group_integral_mc_batch(family, n, {{i, j}}, cfg).front();
}

// --- half model ----------------------------------------------------------------

std::optional<Word> parity_normal_form(const Word& w) {
    if (w.empty()) return w;
    if (!is_balanced(kernel(w))) return std::nullopt;
    Word sorted = w;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

void HalfModelSpec::validate() const {
    for (const auto& [letter, moments] : even_moments) {
        std::vector<Rational> s{1};
        s.insert(s.end(), moments.begin(), moments.end());
        if (!hankel_psd(s, 0) || !hankel_psd(s, 1))
            throw PreconditionError("even moments of variable " + std::to_string(letter) +
                                    " are not a moment sequence of |xi|^2");
    }
}

Rational half_model_moment(const HalfModelSpec& spec, const Word& w) {
    if (w.size() % 2 == 1) return 0;
    // Powers of xi (odd positions) and of conj(xi) (even positions) per variable.
    std::map<int, std::pair<int, int>> powers;
    for (std::size_t p = 0; p < w.size(); ++p) {
        auto& slot = powers[w[p]];
        (p % 2 == 0 ? slot.first : slot.second) += 1;
    }
    Rational value = 1;
    for (const auto& [letter, ab] : powers) {
        auto it = spec.even_moments.find(letter);
        if (it == spec.even_moments.end())
            throw PreconditionError("no moments for variable " + std::to_string(letter));
        if (ab.first != ab.second) return 0;  // E[xi^a conj(xi)^b] = 0 unless a = b
        if (static_cast<std::size_t>(ab.first) > it->second.size())
            throw PreconditionError("moment m_" + std::to_string(2 * ab.first) +
                                    " of variable " + std::to_string(letter) + " not supplied");
        value *= it->second[static_cast<std::size_t>(ab.first) - 1];
    }
    return value;
}

HalfModelReport half_model_vs_cumulants(const HalfModelSpec& spec, int order_max) {
    if (order_max < 1) throw PreconditionError("order_max must be positive");
    std::vector<int> letters;
    std::map<int, CumulantFamily> per_variable;
    for (const auto& [letter, moments] : spec.even_moments) {
        letters.push_back(letter);
        std::vector<Rational> seq(static_cast<std::size_t>(order_max), 0);
        for (int r = 2; r <= order_max; r += 2) {
            if (static_cast<std::size_t>(r / 2) > moments.size())
                throw PreconditionError("moment m_" + std::to_string(r) + " of variable " +
                                        std::to_string(letter) + " not supplied");
            seq[r - 1] = moments[r / 2 - 1];
        }
        MomentFunctional m;
        static_cast<WordFunction&>(m) = WordFunction::from_sequence(seq);
        per_variable.emplace(letter, moments_to_cumulants(Species::Half, m));
    }

    // Joint cumulants: each variable's own values on constant words, 0 on mixed ones.
    CumulantFamily joint;
    joint.species = Species::Half;
    joint.order_max = order_max;
    std::vector<Word> words;
    Word w;
    std::function<void()> extend = [&] {
        if (!w.empty()) words.push_back(w);
        if (static_cast<int>(w.size()) == order_max) return;
        for (int l : letters) {
            w.push_back(l);
            extend();
            w.pop_back();
        }
    };
    extend();
    for (const auto& word : words) {
        const bool constant = std::all_of(word.begin(), word.end(), [&](int l) { return l == word[0]; });
        joint.values.emplace(word, constant ? per_variable.at(word[0]).at(Word(word.size(), 1))
                                            : Rational(0));
    }
    const MomentFunctional predicted = cumulants_to_moments(joint);

    HalfModelReport report;
    for (const auto& word : words) {
        const Rational diff = abs(half_model_moment(spec, word) - predicted.at(word));
        ++report.words_checked;
        if (diff > report.max_discrepancy) {
            report.max_discrepancy = diff;
            report.witness = word;
        }
    }
    report.ok = report.max_discrepancy == 0;
    return report;
}

// --- de Finetti gaps -------------------------------------------------------------

GapResult urn_definetti_gap(const std::vector<Rational>& urn, const Word& j) {
    const int n = static_cast<int>(urn.size());
    if (n < 1) throw PreconditionError("empty urn");
    if (static_cast<int>(j.size()) > n)
        throw PreconditionError("word of length " + std::to_string(j.size()) +
                                " longer than urn of size " + std::to_string(n));
    require_letters(j, n);
    if (j.empty()) return {1, 1, 0};

    const SetPartition ker = kernel(j);
    const int d = ker.block_count();
    std::vector<int> sizes;
    for (const auto& b : ker.blocks()) sizes.push_back(static_cast<int>(b.size()));

    std::vector<Rational> power_sum(j.size() + 1, 0);
    for (std::size_t r = 0; r <= j.size(); ++r)
        for (const auto& v : urn) {
            Rational p = 1;
            for (std::size_t t = 0; t < r; ++t) p *= v;
            power_sum[r] += p;
        }

    // Sum over injective block -> urn-slot maps by inclusion-exclusion over
    // partitions tau of the blocks: mu(0, tau) = prod_B (-1)^{|B|-1} (|B|-1)!.
    Rational injective = 0;
    for (const auto& tau : enumerate_all(d)) {
        Rational term = 1;
        for (const auto& group : tau.blocks()) {
            int r = 0;
            for (int b : group) r += sizes[b - 1];
            Integer coeff = 1;
            for (int t = 2; t < static_cast<int>(group.size()); ++t) coeff *= t;
            if (group.size() % 2 == 0) coeff = -coeff;
            term *= power_sum[r] * coeff;
        }
        injective += term;
    }
    Integer falling = 1;
    for (int t = 0; t < d; ++t) falling *= n - t;

    GapResult out;
    out.lhs = injective / falling;
    out.rhs = 1;
    for (int r : sizes) out.rhs *= power_sum[r] / n;
    out.gap = abs(out.lhs - out.rhs);
    return out;
}

Rational sphere_moment(int n, const Word& j) {
    if (n < 1) throw PreconditionError("n must be positive");
    require_letters(j, n);
    std::map<int, int> counts;
    for (int l : j) ++counts[l];
    Rational value = 1;
    int half_total = 0;
    for (const auto& [letter, c] : counts) {
        if (c % 2 == 1) return 0;
        value *= double_factorial_odd(c);
        half_total += c / 2;
    }
    // E over the unit sphere of prod u_a^{2k_a} = prod (2k_a - 1)!! / prod_{t<K} (n + 2t),
    // scaled by n^K for radius sqrt(n).
    for (int t = 0; t < half_total; ++t) value *= ratio(n, n + 2 * t);
    return value;
}

GapResult sphere_definetti_gap(int n, const Word& j) {
    GapResult out;
    out.lhs = sphere_moment(n, j);
    std::map<int, int> counts;
    for (int l : j) ++counts[l];
    int top = 1;
    for (const auto& [l, c] : counts) top = std::max(top, c);
    const auto gaussian = law_moments({LawKind::Gaussian, 0, 1}, top);
    out.rhs = 1;
    for (const auto& [l, c] : counts) out.rhs *= gaussian[static_cast<std::size_t>(c) - 1];
    out.gap = abs(out.lhs - out.rhs);
    return out;
}

}  // namespace easyqg
