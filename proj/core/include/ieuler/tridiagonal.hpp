#pragma once

#include <vector>

namespace ieuler {

// Row k reads lower[k] x[k-1] + diag[k] x[k] + upper[k] x[k+1] = rhs[k];
// lower[0] and upper[n-1] are ignored.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    explicit Tridiagonal(std::size_t n = 0) { resize(n); }
    void resize(std::size_t n);
    std::size_t size() const noexcept { return diag.size(); }
};

/// Thomas elimination without pivoting, meant for M-matrices.
/// Throws NumericalError on a vanishing pivot.
std::vector<double> solve(const Tridiagonal& system);
void solve_into(const Tridiagonal& system, std::vector<double>& x, std::vector<double>& scratch);

}  // namespace ieuler
