#include "fontaine/linalg.hpp"

#include "fontaine/padic.hpp"

#include <algorithm>

namespace fontaine {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) { return (a * b) % m; }

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t acc = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) acc = mulmod(acc, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return acc;
}

uint64_t invmod_pp(uint64_t a, uint32_t p, uint64_t m) {
    if (a % p == 0) throw not_a_unit("zpn: inverting a non-unit");
    uint64_t phi = (m / p) * (p - 1);
    return powmod(a % m, phi - 1, m);
}

int32_t val_mod(uint64_t r, uint32_t p, int32_t n) {
    if (r == 0) return n;
    int32_t v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    return std::min(v, n);
}

} // namespace

uint64_t ZpnMatrix::modulus() const { return pow_mod_base(p, n); }

ZpnMatrix zpn_matrix(uint32_t p, int32_t n, size_t rows, size_t cols) {
    ZpnMatrix M;
    M.p = p;
    M.n = n;
    M.rows = rows;
    M.cols = cols;
    M.a.assign(rows * cols, 0);
    (void)M.modulus(); // validate the cap early
    return M;
}

ZpnSolveResult zpn_solve(const ZpnMatrix& A0, const std::vector<uint64_t>& b0) {
    if (b0.size() != A0.rows) throw input_error("zpn_solve: rhs length mismatch");
    const uint32_t p = A0.p;
    const int32_t n = A0.n;
    const uint64_t m = A0.modulus();
    const size_t rows = A0.rows, cols = A0.cols;

    ZpnMatrix A = A0;
    for (auto& e : A.a) e %= m;
    std::vector<uint64_t> b = b0;
    for (auto& e : b) e %= m;

    // V accumulates the column operations: original x = V * reduced y
    std::vector<std::vector<uint64_t>> V(cols, std::vector<uint64_t>(cols, 0));
    for (size_t j = 0; j < cols; ++j) V[j][j] = 1; // V[j] is row j of V

    std::vector<int32_t> diag; // valuations of the diagonal pivots p^{d_k}
    size_t k = 0;
    while (k < rows && k < cols) {
        // minimal-valuation pivot in the trailing block
        int32_t best = n;
        size_t bi = k, bj = k;
        for (size_t i = k; i < rows; ++i)
            for (size_t j = k; j < cols; ++j) {
                int32_t v = val_mod(A.at(i, j), p, n);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best >= n) break; // trailing block is zero mod p^n
        // move pivot to (k, k)
        if (bi != k) {
            for (size_t j = 0; j < cols; ++j) std::swap(A.at(bi, j), A.at(k, j));
            std::swap(b[bi], b[k]);
        }
        if (bj != k) {
            for (size_t i = 0; i < rows; ++i) std::swap(A.at(i, bj), A.at(i, k));
            std::swap(V[bj], V[k]);
        }
        const int32_t d = best;
        const uint64_t pd = pow_mod_base(p, d);
        // normalize the pivot to exactly p^d
        uint64_t unit = A.at(k, k) / pd;
        uint64_t uinv = invmod_pp(unit % m, p, m);
        for (size_t j = k; j < cols; ++j) A.at(k, j) = mulmod(A.at(k, j), uinv, m);
        b[k] = mulmod(b[k], uinv, m);
        // clear the rest of column k (factors are exact: d was minimal)
        for (size_t i = k + 1; i < rows; ++i) {
            uint64_t e = A.at(i, k);
            if (e == 0) continue;
            uint64_t f = e / pd;
            for (size_t j = k; j < cols; ++j)
                A.at(i, j) = (A.at(i, j) + m - mulmod(f, A.at(k, j), m)) % m;
            b[i] = (b[i] + m - mulmod(f, b[k], m)) % m;
        }
        // clear the rest of row k by column operations
        for (size_t j = k + 1; j < cols; ++j) {
            uint64_t e = A.at(k, j);
            if (e == 0) continue;
            uint64_t f = e / pd;
            for (size_t i = k; i < rows; ++i)
                A.at(i, j) = (A.at(i, j) + m - mulmod(f, A.at(i, k), m)) % m;
            for (size_t t = 0; t < cols; ++t)
                V[j][t] = (V[j][t] + m - mulmod(f, V[k][t], m)) % m;
        }
        diag.push_back(d);
        ++k;
    }

    ZpnSolveResult res;
    // feasibility: p^{d_i} y_i = b_i, and zero rows must have zero rhs
    std::vector<uint64_t> y(cols, 0);
    res.solvable = true;
    for (size_t i = 0; i < rows; ++i) {
        if (i < diag.size()) {
            uint64_t pd = pow_mod_base(p, diag[i]);
            if (b[i] % pd != 0) {
                res.solvable = false;
                res.certificate = "pivot row " + std::to_string(i) + " needs division by p^" +
                                  std::to_string(diag[i]) + " but rhs has valuation " +
                                  std::to_string(val_mod(b[i], p, n));
                break;
            }
            y[i] = b[i] / pd;
        } else if (b[i] != 0) {
            res.solvable = false;
            res.certificate = "zero row " + std::to_string(i) + " against nonzero rhs residue " +
                              std::to_string(b[i]);
            break;
        }
    }
    if (res.solvable) {
        res.particular.assign(cols, 0);
        for (size_t c = 0; c < cols; ++c)
            for (size_t j = 0; j < cols; ++j)
                res.particular[c] = (res.particular[c] + mulmod(V[j][c], y[j], m)) % m;
        // x = V^T-free form: x = sum_j y_j * (column j of V) = sum_j y_j * V[j]
    }

    // kernel: torsion from pivots with d > 0, free generators past the pivots
    for (size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] == 0) continue;
        uint64_t scale = pow_mod_base(p, n - diag[i]);
        ZpnKernelGen g;
        g.order_exp = diag[i];
        g.vec.assign(cols, 0);
        for (size_t t = 0; t < cols; ++t) g.vec[t] = mulmod(V[i][t], scale, m);
        res.kernel.push_back(std::move(g));
    }
    for (size_t j = diag.size(); j < cols; ++j) {
        ZpnKernelGen g;
        g.order_exp = n;
        g.vec = V[j];
        res.kernel.push_back(std::move(g));
    }
    return res;
}

int32_t zpn_kernel_free_rank(const ZpnSolveResult& r, int32_t n) {
    int32_t c = 0;
    for (const auto& g : r.kernel)
        if (g.order_exp == n) ++c;
    return c;
}

int64_t zpn_kernel_size_log(const ZpnSolveResult& r) {
    int64_t s = 0;
    for (const auto& g : r.kernel) s += g.order_exp;
    return s;
}

std::vector<uint64_t> zpn_solve_unique(const ZpnMatrix& A, const std::vector<uint64_t>& b) {
    ZpnSolveResult r = zpn_solve(A, b);
    if (!r.solvable)
        throw singular_system("no solution: " + r.certificate);
    if (!r.kernel.empty())
        throw singular_system("solution not unique: kernel has " +
                              std::to_string(r.kernel.size()) + " generators");
    return r.particular;
}

} // namespace fontaine
