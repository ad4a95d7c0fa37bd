#include "sdist/lp.hpp"

#include <stdexcept>

namespace sdist {

// Phase-1 simplex on the tableau [A | I], basis = artificials, minimizing
// their sum.  Bland's rule (lowest eligible index for entering and leaving)
// guarantees termination.
LpFeasibility lp_feasible(const MatrixR& a_in, const VectorR& b_in)
{
    const int m = static_cast<int>(a_in.rows());
    const int n = static_cast<int>(a_in.cols());

    MatrixR t(m, n + m);
    VectorR rhs = b_in;
    t.setZero();
    t.block(0, 0, m, n) = a_in;
    for (int i = 0; i < m; ++i) {
        if (rhs(i) < 0) {
            t.row(i) = -t.row(i);
            rhs(i) = -rhs(i);
        }
        t(i, n + i) = 1;
    }

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i)
        basis[i] = n + i;

    // Reduced cost of column j for the phase-1 objective: c_j - sum over
    // rows of the column (artificials have cost 1, structurals 0).
    auto reduced_cost = [&](int j) -> Rational {
        Rational z = 0;
        for (int i = 0; i < m; ++i)
            if (basis[i] >= n)
                z += t(i, j);
        const Rational c = (j >= n) ? Rational(1) : Rational(0);
        return c - z;
    };

    while (true) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j) {
            if (reduced_cost(j) < 0) {
                enter = j;
                break;
            }
        }
        if (enter < 0)
            break;

        int leave = -1;
        Rational best;
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) > 0) {
                const Rational ratio = rhs(i) / t(i, enter);
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave < 0)
            throw std::logic_error("phase-1 objective unbounded");

        const Rational piv = t(leave, enter);
        t.row(leave) /= piv;
        rhs(leave) /= piv;
        for (int i = 0; i < m; ++i) {
            if (i != leave && t(i, enter) != 0) {
                const Rational f = t(i, enter);
                t.row(i) -= f * t.row(leave);
                rhs(i) -= f * rhs(leave);
            }
        }
        basis[leave] = enter;
    }

    Rational objective = 0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n)
            objective += rhs(i);

    LpFeasibility out;
    out.feasible = (objective == 0);
    if (out.feasible) {
        out.solution.assign(n, Rational(0));
        for (int i = 0; i < m; ++i)
            if (basis[i] < n)
                out.solution[basis[i]] = rhs(i);
    }
    return out;
}

}  // namespace sdist
