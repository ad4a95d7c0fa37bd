/**
 * Signed-graph machinery behind the rank formula
 *
 *     rank(p) = |(Z_p)_1°| + |Xbar_2°| - b(Xbar, pbar),
 *
 * where b counts balanced components of the contracted graph of the reduced
 * support graph of pbar on the quotient Xbar = X/Z_p.
 *
 * The enlarged graph Gamma_beta(X) is bipartite: edge-side vertices are the
 * non-degenerate edges, outcome-side vertices are pairs (triangle, ab), and
 * the sign on {x, s_t^{ab}} is the corresponding M-matrix entry.  The hat
 * construction keeps the outcome side as vertices and turns each edge-side
 * vertex of degree two into a bidirected edge between its two neighbors.
 */

#ifndef SDIST_SIGNED_GRAPH_HPP
#define SDIST_SIGNED_GRAPH_HPP

#include <string>
#include <vector>

#include "sdist/distribution.hpp"
#include "sdist/simplicial_set.hpp"

namespace sdist {

struct SignedBipartiteGraph {
    struct OutcomeVertex {
        TriangleId tri;
        int a, b;
    };
    struct Arc {
        int edge_vertex;     // index into edge_vertices
        int outcome_vertex;  // index into outcome_vertices
        int sign;            // +1 / -1
    };
    std::vector<EdgeId> edge_vertices;  // the X_1° side
    std::vector<OutcomeVertex> outcome_vertices;
    std::vector<Arc> arcs;
};

class ShapeViolationError : public std::runtime_error {
public:
    explicit ShapeViolationError(const std::string& what) : std::runtime_error(what) {}
};

/** Gamma_beta(X): all outcome vertices (t, ab). Requires a shape-valid complex. */
SignedBipartiteGraph gamma_graph(ComplexPtr x, const Cochain2& beta);

/** Gamma_beta(X, p): outcome vertices restricted to zero entries of p. */
SignedBipartiteGraph support_graph(const TwistedDistribution& p);

class DeterministicSimplexPresentError : public std::runtime_error {
public:
    explicit DeterministicSimplexPresentError(const std::string& what) : std::runtime_error(what) {}
};

class NoZeroOutcomeError : public std::runtime_error {
public:
    explicit NoZeroOutcomeError(const std::string& what) : std::runtime_error(what) {}
};

struct ReducedGraph {
    SignedBipartiteGraph graph;          // one kept outcome vertex per triangle
    std::vector<std::pair<int, int>> kept;  // (a,b) kept, indexed by triangle
};

/**
 * Gamma^0: for a distribution with no deterministic simplices, keep the
 * unique zero-outcome vertex of each three-sided triangle and one member of
 * the forced zero pair of each degenerate-face triangle (the a = 0 member
 * when one exists; the lexicographically first otherwise -- the two choices
 * differ by a switching and carry the same rank and balance).
 */
ReducedGraph reduced_graph(const TwistedDistribution& p);

// ---------------------------------------------------------------------------
// Signed graphs, balance, bidirected incidence

struct SignedGraph {
    int n = 0;
    struct E {
        int u, v;
        int sign;
    };
    std::vector<E> edges;
};

struct BalanceReport {
    int components = 0;
    int balanced = 0;  // the number b of balanced components
    std::vector<int> component_of;       // per vertex
    std::vector<bool> component_balanced;
};

/** Switching-based balance test per component (BFS labeling). */
BalanceReport balanced_components(const SignedGraph& g);

class DegreeViolationError : public std::runtime_error {
public:
    explicit DegreeViolationError(const std::string& what) : std::runtime_error(what) {}
};

struct BidirectedGraph {
    int n = 0;  // vertices
    struct E {
        int u, v;
        int eta_u, eta_v;  // per-incidence signs
    };
    std::vector<E> edges;
};

/**
 * Contract a signed bipartite graph whose edge-side vertices all have degree
 * exactly two: vertices of the result are the outcome side, each edge-side
 * vertex becomes a bidirected edge with eta = the arc signs.
 */
BidirectedGraph hat(const SignedBipartiteGraph& g);

/** Underlying signed graph: gamma(e) = -eta(u,e) eta(v,e). */
SignedGraph underlying_signed(const BidirectedGraph& g);

struct IncidenceRank {
    int direct_rank = 0;  // exact rank of the incidence matrix H
    int vertices = 0;
    int balanced = 0;
    int via_balance() const { return vertices - balanced; }
};

/** Rank of H both directly and as |V| - b; the two are asserted equal. */
IncidenceRank incidence_rank(const BidirectedGraph& g);

// ---------------------------------------------------------------------------
// The rank formula

class HypothesisViolationError : public std::runtime_error {
public:
    HypothesisViolationError(std::string clause_, const std::string& what)
        : std::runtime_error(what), clause(std::move(clause_))
    {
    }
    std::string clause;
};

struct RankFormulaResult {
    int rank = 0;
    int zp_edge_count = 0;
    int quotient_triangle_count = 0;
    int balanced = 0;
    ComplexPtr quotient;
    Cochain2 beta_bar;
    ReducedGraph gamma0;
    BidirectedGraph sigma_hat;
    std::string trace;  // human-readable account of every stage
};

/**
 * Full pipeline: Z_p, s, quotient, twist descent, pbar = phi(p), Gamma^0,
 * hat, balance.  Throws HypothesisViolation when the main theorem's
 * hypotheses fail (a triangle without a zero outcome, a quotient edge not in
 * exactly two triangles, a quotient triangle without a degenerate face), and
 * propagates stage errors otherwise.
 */
RankFormulaResult rank_formula(const TwistedDistribution& p);

/** Adjacency text for --emit-graph and the trace. */
std::string render_graph(const SignedBipartiteGraph& g, const SimplicialSet2& x);
std::string render_bidirected(const BidirectedGraph& g);

}  // namespace sdist

#endif  // SDIST_SIGNED_GRAPH_HPP
