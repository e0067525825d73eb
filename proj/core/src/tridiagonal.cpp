#include "ieuler/tridiagonal.hpp"

#include <cmath>

#include "ieuler/errors.hpp"

namespace ieuler {

void Tridiagonal::resize(std::size_t n) {
    lower.assign(n, 0.0);
    diag.assign(n, 0.0);
    upper.assign(n, 0.0);
    rhs.assign(n, 0.0);
}

void solve_into(const Tridiagonal& a, std::vector<double>& x, std::vector<double>& c) {
    const std::size_t n = a.size();
    x.resize(n);
    c.resize(n);
    if (n == 0) return;
    double pivot = a.diag[0];
    if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot))
        throw NumericalError("tridiagonal solve: singular pivot");
    c[0] = a.upper[0] / pivot;
    x[0] = a.rhs[0] / pivot;
    for (std::size_t k = 1; k < n; ++k) {
        pivot = a.diag[k] - a.lower[k] * c[k - 1];
        if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot))
            throw NumericalError("tridiagonal solve: singular pivot");
        c[k] = a.upper[k] / pivot;
        x[k] = (a.rhs[k] - a.lower[k] * x[k - 1]) / pivot;
    }
    for (std::size_t k = n - 1; k-- > 0;) x[k] -= c[k] * x[k + 1];
}

std::vector<double> solve(const Tridiagonal& a) {
    std::vector<double> x, c;
    solve_into(a, x, c);
    return x;
}

}  // namespace ieuler
