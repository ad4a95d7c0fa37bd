/**
 * Exact feasibility of { d >= 0 : A d = b } by a phase-1 simplex with
 * Bland's rule over rationals.  Instances here are small (columns are the
 * deterministic sections of a scenario), so no factorization tricks.
 */

#ifndef SDIST_LP_HPP
#define SDIST_LP_HPP

#include <vector>

#include "sdist/rational.hpp"

namespace sdist {

struct LpFeasibility {
    bool feasible = false;
    std::vector<Rational> solution;  // one feasible d when feasible
};

LpFeasibility lp_feasible(const MatrixR& a, const VectorR& b);

}  // namespace sdist

#endif  // SDIST_LP_HPP
