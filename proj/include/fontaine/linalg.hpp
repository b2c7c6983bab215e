#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fontaine/errors.hpp"

namespace fontaine {

/*
 * Exact linear algebra over Z/p^n.  Entries are residues in [0, p^n).
 * Systems are solved by a Smith-style reduction with minimal-valuation
 * pivoting (row and column operations), which stays exact because the ring
 * is local: every entry is a unit times a power of p.
 */
struct ZpnMatrix {
    uint32_t p = 3;
    int32_t n = 1;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<uint64_t> a; // row-major, rows*cols residues

    uint64_t modulus() const;
    uint64_t& at(size_t i, size_t j) { return a[i * cols + j]; }
    uint64_t at(size_t i, size_t j) const { return a[i * cols + j]; }
};

ZpnMatrix zpn_matrix(uint32_t p, int32_t n, size_t rows, size_t cols);

// one generator of the kernel: the vector and its additive order p^e
struct ZpnKernelGen {
    std::vector<uint64_t> vec;
    int32_t order_exp = 0;
};

struct ZpnSolveResult {
    bool solvable = false;
    std::string certificate;           // human-readable reason when infeasible
    std::vector<uint64_t> particular;  // one solution when solvable
    std::vector<ZpnKernelGen> kernel;  // generators of ker(A) as Z/p^n-module
};

// solve A x = b exactly; the kernel is filled in either way
ZpnSolveResult zpn_solve(const ZpnMatrix& A, const std::vector<uint64_t>& b);

// number of kernel generators of full additive order p^n
int32_t zpn_kernel_free_rank(const ZpnSolveResult& r, int32_t n);

// log_p of the number of solutions (= |kernel|) when solvable
int64_t zpn_kernel_size_log(const ZpnSolveResult& r);

// convenience: A x = b must have a unique solution; throws otherwise
std::vector<uint64_t> zpn_solve_unique(const ZpnMatrix& A, const std::vector<uint64_t>& b);

} // namespace fontaine
