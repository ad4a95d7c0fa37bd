/**
 * Twisted simplicial distributions on a 2-dimensional complex.
 *
 * A distribution assigns each generating triangle an outcome table
 * (p00, p01, p10, p11) of exact rationals; the first index is the outcome of
 * the d2-face, the second the outcome of the d0-face.  The d0-marginal is
 * twisted by the cocycle: (d0 p)^0 sums the entries with b = beta(t).
 * Degenerate faces must marginalize to the delta at 0.
 */

#ifndef SDIST_DISTRIBUTION_HPP
#define SDIST_DISTRIBUTION_HPP

#include <array>
#include <optional>
#include <vector>

#include "sdist/cochain.hpp"
#include "sdist/rational.hpp"
#include "sdist/simplicial_set.hpp"

namespace sdist {

struct OutcomeTable {
    std::array<Rational, 4> p{};  // (p00, p01, p10, p11)

    Rational& at(int a, int b) { return p[2 * a + b]; }
    const Rational& at(int a, int b) const { return p[2 * a + b]; }
    bool operator==(const OutcomeTable& o) const { return p == o.p; }

    bool is_point_mass() const;
    /** The (a,b) carrying mass 1, when is_point_mass(). */
    std::pair<int, int> point() const;

    static OutcomeTable uniform();
    static OutcomeTable delta(int a, int b);
    /** Convolution over Z2 x Z2. */
    OutcomeTable convolve(const OutcomeTable& o) const;
};

/**
 * Probability of outcome 0 on face slot i of a table with twist bit beta:
 * i=0 sums entries with b = beta, i=1 the diagonal, i=2 the a = 0 row.
 */
Rational face_marginal0(const OutcomeTable& t, int slot, int beta);

class TwistedDistribution {
public:
    TwistedDistribution() = default;
    TwistedDistribution(ComplexPtr space, Cochain2 twist)
        : space_(std::move(space)), twist_(std::move(twist)), tables_(space_->triangle_count())
    {
    }

    const ComplexPtr& space() const { return space_; }
    const Cochain2& twist() const { return twist_; }
    OutcomeTable& table(TriangleId t) { return tables_[t]; }
    const OutcomeTable& table(TriangleId t) const { return tables_[t]; }

    /** Marginal distribution p_e(0) of an edge; degenerate edges give 1. */
    Rational edge_marginal0(EdgeId e) const;

    bool operator==(const TwistedDistribution& o) const
    {
        return space_.get() == o.space_.get() && twist_ == o.twist_ && tables_ == o.tables_;
    }

private:
    ComplexPtr space_;
    Cochain2 twist_;
    std::vector<OutcomeTable> tables_;
};

// ---------------------------------------------------------------------------
// Validation

struct DistIssue {
    enum class Kind { Negativity, NormalizationFailure, MarginalMismatch, DegenerateFaceViolation };
    Kind kind;
    TriangleId tri = -1;
    EdgeId edge = -1;
    int face_slot = -1;
    std::string detail;
};

struct DistReport {
    std::vector<DistIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

DistReport validate_dist(const TwistedDistribution& p);

// ---------------------------------------------------------------------------
// Correlation coordinates

class InfeasibleCorrelationsError : public std::runtime_error {
public:
    explicit InfeasibleCorrelationsError(const std::string& what) : std::runtime_error(what) {}
};

/** c(e) in [-1,1] per edge id; degenerate edges carry the constant 1. */
struct CorrelationVector {
    std::vector<Rational> c;
    bool operator==(const CorrelationVector& o) const { return c == o.c; }
};

CorrelationVector correlations(const TwistedDistribution& p);

/**
 * Reconstruct the tables from correlations via
 *   p^{ab} = (1 + (-1)^a c(x2) + (-1)^{b+beta} c(x0) + (-1)^{a+b} c(x1)) / 4
 * (face slots taken with multiplicity).  Throws InfeasibleCorrelations when
 * some entry comes out negative.
 */
TwistedDistribution from_correlations(ComplexPtr x, const Cochain2& beta, const CorrelationVector& c);

// ---------------------------------------------------------------------------
// Convolution product

class MismatchedComplexError : public std::runtime_error {
public:
    explicit MismatchedComplexError(const std::string& what) : std::runtime_error(what) {}
};

/** Triangle-wise convolution; an alpha- and beta-twisted pair yields alpha+beta. */
TwistedDistribution convolve(const TwistedDistribution& p, const TwistedDistribution& q);

// ---------------------------------------------------------------------------
// Deterministic distributions

class SolutionSpaceTooLargeError : public std::runtime_error {
public:
    explicit SolutionSpaceTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Table of the deterministic distribution of a section s (delta s = beta):
 * the point mass sits at (s(d2 t), s(d0 t) + beta(t)), which is the unique
 * table whose edge marginals realize s.
 */
TwistedDistribution deterministic_distribution(ComplexPtr x, const Cochain2& beta, const Cochain1& s);

/**
 * All sections s with delta s = beta (empty exactly when [beta] != 0).
 * Throws SolutionSpaceTooLarge when the solution space has dimension
 * above max_log2 (default 20).
 */
std::vector<Cochain1> deterministic_all(const SimplicialSet2& x, const Cochain2& beta, int max_log2 = 20);

/** Convex mixture of deterministic distributions. */
TwistedDistribution theta(ComplexPtr x, const Cochain2& beta,
                          const std::vector<std::pair<Cochain1, Rational>>& weights);

struct ContextualityResult {
    bool contextual = false;
    bool empty_deterministic_set = false;  // [beta] != 0: contextual by emptiness
    std::vector<std::pair<Cochain1, Rational>> certificate;  // positive weights when non-contextual
};

/** Exact decision of membership in the image of theta (phase-1 simplex). */
ContextualityResult is_contextual(const TwistedDistribution& p);

// ---------------------------------------------------------------------------
// Deterministic subcomplex and the quotient bijection phi

/** Z_p: subcomplex generated by deterministic edges and triangles of p. */
SimplicialSubset deterministic_subcomplex(const TwistedDistribution& p);

/** Deterministic outcome s(e) for every deterministic edge of p, as a cochain. */
Cochain1 deterministic_outcomes(const TwistedDistribution& p);

class RestrictionNotDeterministicError : public std::runtime_error {
public:
    explicit RestrictionNotDeterministicError(const std::string& what) : std::runtime_error(what) {}
};

struct PhiResult {
    SimplicialSubset zp;
    QuotientMap q;
    Cochain1 s;          // trivialization of beta|_{Z_p}, supported on Z_p
    Cochain2 beta_bar;   // twist on the quotient
    TwistedDistribution image;
};

/**
 * phi(p) = delta^{s~} . p, descended to X/Z_p.  The section s must agree
 * with p on Z_p (throws RestrictionNotDeterministic otherwise); the image is
 * (beta + zeta(s))-twisted and restricts to delta^0 at the basepoint.
 */
PhiResult phi(const TwistedDistribution& p, const Cochain1& s);

/** Convenience overload deriving s from p itself. */
PhiResult phi(const TwistedDistribution& p);

/**
 * The same construction along an arbitrary face-closed z on which p is
 * deterministic (z need not be all of Z_p); used to take the quotient one
 * deterministic simplex at a time.
 */
PhiResult phi_along(const TwistedDistribution& p, const SimplicialSubset& z, const Cochain1& s);

/** Inverse: pull back along q and convolve with delta^{s~} again. */
TwistedDistribution phi_inverse(const QuotientMap& q, const Cochain1& s, const Cochain2& beta_source,
                                const TwistedDistribution& pbar);

}  // namespace sdist

#endif  // SDIST_DISTRIBUTION_HPP
