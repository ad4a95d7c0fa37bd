#ifndef SDIST_TEST_HELPERS_HPP
#define SDIST_TEST_HELPERS_HPP

#include <random>
#include <stdexcept>
#include <string>

#include "sdist/distribution.hpp"
#include "sdist/simplicial_set.hpp"

namespace sdist::testing {

inline EdgeId edge_id(const SimplicialSet2& x, const std::string& name)
{
    for (EdgeId e = 0; e < x.edge_count(); ++e)
        if (x.edge(e).name == name)
            return e;
    throw std::runtime_error("no edge named " + name);
}

inline TriangleId tri_id(const SimplicialSet2& x, const std::string& name)
{
    for (TriangleId t = 0; t < x.triangle_count(); ++t)
        if (x.triangle(t).name == name)
            return t;
    throw std::runtime_error("no triangle named " + name);
}

/** Delta^2 with x = d2 glued to z = d1 (the simplest contextual scenario). */
inline ComplexPtr glued_triangle()
{
    ComplexBuilder b;
    const auto v0 = b.add_vertex("0"), v1 = b.add_vertex("1"), v2 = b.add_vertex("2");
    const auto x = b.add_edge("x", v0, v1);
    const auto z = b.add_edge("z", v0, v2);
    const auto y = b.add_edge("y", v1, v2);
    b.add_triangle("s", y, z, x);
    b.glue(x, z);
    return b.build().complex;
}

/** Delta^2 with x glued to z and y collapsed. */
inline ComplexPtr glued_collapsed_triangle()
{
    ComplexBuilder b;
    const auto v0 = b.add_vertex("0"), v1 = b.add_vertex("1"), v2 = b.add_vertex("2");
    const auto x = b.add_edge("x", v0, v1);
    const auto z = b.add_edge("z", v0, v2);
    const auto y = b.add_edge("y", v1, v2);
    b.add_triangle("s", y, z, x);
    b.glue(x, z);
    b.collapse(y);
    return b.build().complex;
}

/**
 * Boundary-deterministic distribution on cycle(n): edge x_i carries the
 * outcome a_i, interior edges are uniform.  Valid for every twist.
 */
inline TwistedDistribution boundary_deterministic(ComplexPtr cyc, const Cochain2& beta,
                                                  const std::vector<int>& a)
{
    TwistedDistribution p(cyc, beta);
    for (TriangleId t = 0; t < cyc->triangle_count(); ++t) {
        OutcomeTable tab;
        tab.p.fill(Rational(0));
        tab.at(a[t] & 1, 0) = Rational(1, 2);
        tab.at(a[t] & 1, 1) = Rational(1, 2);
        p.table(t) = tab;
    }
    return p;
}

/** Twist and table equality for distributions on structurally equal spaces. */
inline bool tables_equal(const TwistedDistribution& a, const TwistedDistribution& b)
{
    if (a.space()->triangle_count() != b.space()->triangle_count() || !(a.twist() == b.twist()))
        return false;
    for (TriangleId t = 0; t < a.space()->triangle_count(); ++t)
        if (!(a.table(t) == b.table(t)))
            return false;
    return true;
}

inline Rational random_rational(std::mt19937& rng, int max_den = 16)
{
    std::uniform_int_distribution<int> den_d(1, max_den);
    const int den = den_d(rng);
    std::uniform_int_distribution<int> num_d(0, den);
    return Rational(num_d(rng), den);
}

/** Random convex combination of the given distributions (same space/twist). */
inline TwistedDistribution random_mixture(const std::vector<TwistedDistribution>& pts,
                                          std::mt19937& rng)
{
    std::vector<Rational> w(pts.size());
    Rational total = 0;
    for (auto& v : w) {
        v = random_rational(rng) + Rational(1, 97);
        total += v;
    }
    TwistedDistribution out(pts.front().space(), pts.front().twist());
    for (TriangleId t = 0; t < out.space()->triangle_count(); ++t)
        for (int i = 0; i < 4; ++i) {
            Rational acc = 0;
            for (std::size_t k = 0; k < pts.size(); ++k)
                acc += w[k] * pts[k].table(t).p[i];
            out.table(t).p[i] = acc / total;
        }
    return out;
}

}  // namespace sdist::testing

#endif
