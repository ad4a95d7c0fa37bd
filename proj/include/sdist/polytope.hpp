/**
 * The inequality description of the twisted-distribution polytope in
 * correlation coordinates, tight-set ranks, the vertex test, and an exact
 * double-description vertex enumerator used as an independent oracle.
 *
 * Row (t, ab) of M encodes 4 p_t^{ab} - 1 = sum over face slots of
 * (-1)^{...} c(face); the polytope is { c : M c >= rhs } where the right-hand
 * side is -1 minus the contribution of degenerate faces at c = 1.  Repeated
 * faces (glued edges of a single triangle) accumulate, so entries are in
 * {-2,...,2} in general and in {-1,0,1} on shape-valid complexes.
 */

#ifndef SDIST_POLYTOPE_HPP
#define SDIST_POLYTOPE_HPP

#include <vector>

#include "sdist/distribution.hpp"
#include "sdist/rational.hpp"
#include "sdist/simplicial_set.hpp"

namespace sdist {

struct HPolytope {
    ComplexPtr space;
    Cochain2 twist;
    std::vector<EdgeId> columns;   // non-degenerate edges, ascending
    std::vector<int> col_of_edge;  // edge id -> column (-1 for degenerate)
    MatrixR a;                     // 4|X2| rows
    VectorR rhs;

    static int row_index(TriangleId t, int a, int b) { return 4 * t + 2 * a + b; }
};

HPolytope build_m(ComplexPtr x, const Cochain2& beta);

/** Sign of the M entry contributed by face slot i at outcomes (a,b). */
int m_entry(int slot, int a, int b, int beta);

struct VertexReport {
    std::vector<int> tight_rows;  // rows with p_t^{ab} = 0
    int rank = 0;                 // exact rank of the tight submatrix
    int columns = 0;              // |X_1^deg-free|
    bool is_vertex = false;       // rank == columns
    std::vector<EdgeId> zp_edges;
    std::vector<TriangleId> zp_triangles;
};

VertexReport rank_of(const TwistedDistribution& p);

class DimensionTooLargeError : public std::runtime_error {
public:
    explicit DimensionTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * All vertices of the twisted-distribution polytope, exactly.  Equalities
 * forced by degenerate faces are eliminated by substitution first; the
 * double-description pass then starts from the correlation cube and inserts
 * the remaining inequalities with rank-based adjacency tests.  Output is
 * sorted by correlation coordinates and duplicate-free.
 */
std::vector<TwistedDistribution> enumerate_vertices(ComplexPtr x, const Cochain2& beta,
                                                    int max_columns = 16);

/** Affine dimension of a point set in correlation coordinates. */
int affine_dimension(const std::vector<TwistedDistribution>& points);

/**
 * Vertices of { d : A d >= b } intersected with [lo,hi]^n, by the same
 * double-description core.  Exposed for oracle-style feasibility checks.
 */
std::vector<VectorR> dd_vertices(const MatrixR& a, const VectorR& b, const Rational& lo,
                                 const Rational& hi, int max_free_columns = 24);

}  // namespace sdist

#endif  // SDIST_POLYTOPE_HPP
