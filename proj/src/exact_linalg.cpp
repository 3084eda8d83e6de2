#include "easyqg/exact_linalg.hpp"

#include "easyqg/errors.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace easyqg {

namespace {

void require_square(const Matrix<Integer>& a) {
    for (const auto& row : a)
        if (row.size() != a.size()) throw DimensionError("matrix is not square");
}

// Reduces the n x m matrix `m` in place with Jordan-Bareiss steps on its
// first n columns. Returns the signed determinant of the leading n x n block,
// or 0 if a pivot column is entirely zero.
Integer bareiss_jordan(Matrix<Integer>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    const std::size_t cols = m[0].size();
    Integer prev = 1;
    int sign = 1;
    Integer tmp;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        const Integer pivot = m[k][k];
        // Columns that vanish in the pivot row only get rescaled.
        std::vector<std::size_t> live;
        for (std::size_t j = 0; j < cols; ++j)
            if (j != k && sgn(m[k][j]) != 0) live.push_back(j);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            auto& row = m[i];
            const Integer factor = row[k];
            if (factor != 0) {
                for (std::size_t j : live) {
                    mpz_mul(tmp.get_mpz_t(), pivot.get_mpz_t(), row[j].get_mpz_t());
                    mpz_submul(tmp.get_mpz_t(), factor.get_mpz_t(), m[k][j].get_mpz_t());
                    mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
                }
            }
            for (std::size_t j = 0; j < cols; ++j) {
                if (j == k || sgn(row[j]) == 0) continue;
                if (factor != 0 && sgn(m[k][j]) != 0) continue;
                mpz_mul(tmp.get_mpz_t(), pivot.get_mpz_t(), row[j].get_mpz_t());
                mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            row[k] = 0;
        }
        prev = pivot;
    }
    return sign * prev;
}


Matrix<Rational> invert_bareiss(const Matrix<Integer>& a) {
    const std::size_t n = a.size();
    Matrix<Integer> m(n, std::vector<Integer>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n + i] = 1;
    }
    if (bareiss_jordan(m) == 0) throw SingularMatrixError("matrix is singular");
    // Every diagonal entry of the left block now equals the last pivot d and
    // the right block is d * a^{-1}.
    Matrix<Rational> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const Integer& d = m[i][i];
        for (std::size_t j = 0; j < n; ++j) {
            inv[i][j] = Rational(m[i][n + j], d);
            inv[i][j].canonicalize();
        }
    }
    return inv;
}

// --- multi-modular inversion --------------------------------------------------

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 x, u64 y, u64 p) { return static_cast<u64>(static_cast<u128>(x) * y % p); }

u64 powmod(u64 x, u64 e, u64 p) {
    u64 r = 1;
    for (; e; e >>= 1, x = mulmod(x, x, p))
        if (e & 1) r = mulmod(r, x, p);
    return r;
}

// Inverse of a mod p by Gauss-Jordan; empty when a is singular mod p.
std::optional<std::vector<u64>> invert_mod(const Matrix<Integer>& a, u64 p) {
    const std::size_t n = a.size(), w = 2 * n;
    std::vector<u64> m(n * w, 0);
    Integer r;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mpz_fdiv_r_ui(r.get_mpz_t(), a[i][j].get_mpz_t(), p);
            m[i * w + j] = r.get_ui();
        }
        m[i * w + n + i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv * w + k] == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != k)
            for (std::size_t j = 0; j < w; ++j) std::swap(m[piv * w + j], m[k * w + j]);
        const u64 inv = powmod(m[k * w + k], p - 2, p);
        for (std::size_t j = 0; j < w; ++j) m[k * w + j] = mulmod(m[k * w + j], inv, p);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i * w + k] == 0) continue;
            const u64 f = p - m[i * w + k];
            for (std::size_t j = 0; j < w; ++j)
                if (m[k * w + j]) m[i * w + j] = (m[i * w + j] + mulmod(f, m[k * w + j], p)) % p;
        }
    }
    std::vector<u64> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = m[i * w + n + j];
    return out;
}

// p/q with |p|, q <= sqrt(mod / 2) and p = q * x (mod mod), if one exists.
bool reconstruct(const Integer& x, const Integer& mod, const Integer& bound, Rational& out) {
    Integer r0 = mod, r1 = x, t0 = 0, t1 = 1, q, tmp;
    while (r1 > bound) {
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    out = Rational(r1, t1);
    out.canonicalize();
    return true;
}

bool is_identity(const Matrix<Rational>& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

// Inverts modulo a growing set of 62-bit primes, recombines by CRT and
// rational reconstruction, and accepts the candidate only once W * A = I holds
// exactly. Returns nullopt if a prime divides the determinant, leaving the
// decision (and any singularity error) to the fraction-free path.
std::optional<Matrix<Rational>> invert_multimodular(const Matrix<Integer>& a) {
    const std::size_t n = a.size();
    if (n == 0) return Matrix<Rational>{};
    // Hadamard bound on |det| and on every cofactor.
    double log2_h = 0;
    for (const auto& row : a) {
        double norm = 0;
        for (const auto& v : row) norm += v.get_d() * v.get_d();
        log2_h += 0.5 * std::log2(std::max(1.0, norm));
    }
    const std::size_t max_primes = static_cast<std::size_t>((2 * log2_h + 2) / 61) + 2;

    Integer prime = Integer(1) << 61;
    Integer mod = 1;
    std::vector<Integer> residue(n * n, 0);
    Matrix<Rational> candidate(n, std::vector<Rational>(n));
    Integer bound, coeff, t;
    for (std::size_t round = 0; round < max_primes; ++round) {
        mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
        const u64 p = prime.get_ui();
        const auto inv = invert_mod(a, p);
        if (!inv) return std::nullopt;
        // CRT: x = r + mod * ((v - r) * mod^{-1} mod p).
        mpz_fdiv_r_ui(t.get_mpz_t(), mod.get_mpz_t(), p);
        const u64 mod_inv = powmod(t.get_ui(), p - 2, p);
        for (std::size_t e = 0; e < n * n; ++e) {
            mpz_fdiv_r_ui(t.get_mpz_t(), residue[e].get_mpz_t(), p);
            const u64 diff = ((*inv)[e] + p - t.get_ui()) % p;
            coeff = static_cast<unsigned long>(mulmod(diff, mod_inv, p));
            mpz_addmul(residue[e].get_mpz_t(), mod.get_mpz_t(), coeff.get_mpz_t());
        }
        mod *= prime;
        mpz_fdiv_q_2exp(bound.get_mpz_t(), mod.get_mpz_t(), 1);
        mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
        bool complete = true;
        for (std::size_t e = 0; e < n * n && complete; ++e)
            complete = reconstruct(residue[e], mod, bound, candidate[e / n][e % n]);
        if (complete && is_identity(multiply(candidate, a))) return candidate;
    }
    return std::nullopt;
}

}  // namespace

Matrix<Rational> invert_exact(const Matrix<Integer>& a) {
    require_square(a);
    if (auto inv = invert_multimodular(a)) return std::move(*inv);
    return invert_bareiss(a);
}

Integer determinant(const Matrix<Integer>& a) {
    require_square(a);
    Matrix<Integer> m = a;
    return bareiss_jordan(m);
}

Matrix<Rational> multiply(const Matrix<Rational>& a, const Matrix<Integer>& b) {
    const std::size_t n = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = inner ? b[0].size() : 0;
    Matrix<Rational> out(n, std::vector<Rational>(cols, 0));
    std::vector<Integer> scaled(inner);
    Integer acc;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != inner) throw DimensionError("incompatible matrix shapes");
        // Bring the row over a common denominator and work in integers.
        Integer denom = 1;
        for (const auto& x : a[i]) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), x.get_den_mpz_t());
        for (std::size_t t = 0; t < inner; ++t)
            scaled[t] = a[i][t].get_num() * (denom / a[i][t].get_den());
        for (std::size_t j = 0; j < cols; ++j) {
            acc = 0;
            for (std::size_t t = 0; t < inner; ++t)
                mpz_addmul(acc.get_mpz_t(), scaled[t].get_mpz_t(), b[t][j].get_mpz_t());
            out[i][j] = Rational(acc, denom);
            out[i][j].canonicalize();
        }
    }
    return out;
}

}  // namespace easyqg
