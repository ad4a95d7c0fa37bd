/**
 * Z/2 cochains on a 2-dimensional complex and the operations the rank
 * pipeline needs: coboundaries, cocycle trivialization (GF(2) solve), the
 * connecting cocycle zeta(s) of a quotient, and twist descent.
 *
 * Every normalized 2-cochain on a 2-dimensional complex is a cocycle (there
 * are no generating 3-simplices), so Cochain2 doubles as the cocycle type.
 */

#ifndef SDIST_COCHAIN_HPP
#define SDIST_COCHAIN_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sdist/simplicial_set.hpp"

namespace sdist {

/** Normalized 1-cochain: one bit per edge, forced 0 on degenerate edges. */
class Cochain1 {
public:
    Cochain1() = default;
    explicit Cochain1(const SimplicialSet2& x) : val_(x.edge_count(), 0) {}

    int operator()(EdgeId e) const { return val_[e]; }
    void set(const SimplicialSet2& x, EdgeId e, int v);
    int size() const { return static_cast<int>(val_.size()); }

    Cochain1 operator+(const Cochain1& o) const;
    bool operator==(const Cochain1& o) const { return val_ == o.val_; }

private:
    std::vector<std::uint8_t> val_;
};

/** Normalized 2-cochain: one bit per generating triangle. */
class Cochain2 {
public:
    Cochain2() = default;
    explicit Cochain2(const SimplicialSet2& x) : val_(x.triangle_count(), 0) {}
    explicit Cochain2(int triangles) : val_(triangles, 0) {}

    int operator()(TriangleId t) const { return val_[t]; }
    void set(TriangleId t, int v) { val_[t] = static_cast<std::uint8_t>(v & 1); }
    int size() const { return static_cast<int>(val_.size()); }

    Cochain2 operator+(const Cochain2& o) const;
    bool operator==(const Cochain2& o) const { return val_ == o.val_; }
    bool is_zero() const;

private:
    std::vector<std::uint8_t> val_;
};

/** (delta s)(t) = s(d0 t) + s(d1 t) + s(d2 t) mod 2 (slots with multiplicity). */
Cochain2 coboundary1(const SimplicialSet2& x, const Cochain1& s);

/**
 * Find a normalized s with delta s = beta, or nothing when [beta] != 0.
 * The kernel of the underlying GF(2) system is exposed through
 * trivialize_full for callers that enumerate all solutions.
 */
std::optional<Cochain1> trivialize(const SimplicialSet2& x, const Cochain2& beta);

struct Trivialization {
    Cochain1 particular;
    std::vector<Cochain1> kernel;  // basis of {s : delta s = 0}
};
std::optional<Trivialization> trivialize_full(const SimplicialSet2& x, const Cochain2& beta);

/** [beta1] == [beta2], decided by trivializing the sum. */
bool class_equal(const SimplicialSet2& x, const Cochain2& b1, const Cochain2& b2);

class RestrictionNotTrivializedError : public std::runtime_error {
public:
    explicit RestrictionNotTrivializedError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Connecting cocycle of the cofiber sequence Z -> X -> X/Z: extend s by zero
 * to X, take the coboundary, and descend.  Requires delta s~ to vanish on
 * the triangles of Z (automatic when Z is 1-dimensional); throws
 * RestrictionNotTrivialized otherwise.  s must be supported on Z.
 */
Cochain2 zeta(const QuotientMap& q, const Cochain1& s);

/**
 * Twist carried to the quotient: beta_bar(t~) = beta(t) + (delta s~)(t) for
 * surviving triangles.  Requires (beta + delta s~)|_Z = 0, i.e. delta s =
 * beta on the triangles of Z; throws RestrictionNotTrivialized otherwise.
 * Coincides with beta descended plus zeta(s) when Z is 1-dimensional.
 */
Cochain2 descend_twist(const QuotientMap& q, const Cochain2& beta, const Cochain1& s);

}  // namespace sdist

#endif  // SDIST_COCHAIN_HPP
