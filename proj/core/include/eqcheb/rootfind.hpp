#pragma once

#include <vector>

#include "eqcheb/errors.hpp"
#include "eqcheb/polynomial.hpp"

namespace eqcheb {

struct RootSet {
    std::vector<cplx> roots;
    std::vector<double> residuals;  // |p(root)|
    int iterations = 0;
};

// Aberth iteration ran out of steps; best() holds the last iterate.
class RootFindError : public Error {
public:
    RootFindError(const std::string& what, RootSet best) : Error(what), best_(std::move(best)) {}
    const RootSet& best() const { return best_; }

private:
    RootSet best_;
};

// All roots by Aberth-Ehrlich with Gauss-Seidel updates. Converged when every
// correction is below tol * (1 + |root|). Output sorted by (angle, modulus).
RootSet all_roots(const Polynomial& p, double tol = 1e-14, int max_iter = 1000);

// Sort order used for roots everywhere: argument in (-pi, pi], then modulus;
// roots within ~1e-14 of the real axis count as real.
void sort_roots(std::vector<cplx>& roots);

}  // namespace eqcheb
