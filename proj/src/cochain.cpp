#include "sdist/cochain.hpp"

#include <stdexcept>

#include "sdist/gf2.hpp"

namespace sdist {

void Cochain1::set(const SimplicialSet2& x, EdgeId e, int v)
{
    if (x.edge(e).degenerate) {
        if (v & 1)
            throw std::invalid_argument("normalized 1-cochain must vanish on degenerate edges");
        return;
    }
    val_[e] = static_cast<std::uint8_t>(v & 1);
}

Cochain1 Cochain1::operator+(const Cochain1& o) const
{
    if (val_.size() != o.val_.size())
        throw std::invalid_argument("cochain size mismatch");
    Cochain1 r;
    r.val_.resize(val_.size());
    for (std::size_t i = 0; i < val_.size(); ++i)
        r.val_[i] = val_[i] ^ o.val_[i];
    return r;
}

Cochain2 Cochain2::operator+(const Cochain2& o) const
{
    if (val_.size() != o.val_.size())
        throw std::invalid_argument("cochain size mismatch");
    Cochain2 r(static_cast<int>(val_.size()));
    for (std::size_t i = 0; i < val_.size(); ++i)
        r.val_[i] = val_[i] ^ o.val_[i];
    return r;
}

bool Cochain2::is_zero() const
{
    for (auto v : val_)
        if (v)
            return false;
    return true;
}

Cochain2 coboundary1(const SimplicialSet2& x, const Cochain1& s)
{
    Cochain2 out(x);
    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        int v = 0;
        for (int i = 0; i < 3; ++i)
            v ^= s(x.face(t, i));
        out.set(t, v);
    }
    return out;
}

namespace {

// Columns of the linear system are the non-degenerate edges of x.
Gf2Matrix coboundary_matrix(const SimplicialSet2& x, std::vector<int>& col_of_edge)
{
    const auto& cols = x.nondegenerate_edges();
    col_of_edge.assign(x.edge_count(), -1);
    for (std::size_t c = 0; c < cols.size(); ++c)
        col_of_edge[cols[c]] = static_cast<int>(c);
    Gf2Matrix a(x.triangle_count(), static_cast<int>(cols.size()));
    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        for (int i = 0; i < 3; ++i) {
            const EdgeId e = x.face(t, i);
            if (col_of_edge[e] >= 0)
                a.set(t, col_of_edge[e], a.get(t, col_of_edge[e]) ^ 1);
        }
    }
    return a;
}

Cochain1 from_column_values(const SimplicialSet2& x, const std::vector<std::uint8_t>& v)
{
    Cochain1 s(x);
    const auto& cols = x.nondegenerate_edges();
    for (std::size_t c = 0; c < cols.size(); ++c)
        s.set(x, cols[c], v[c]);
    return s;
}

}  // namespace

std::optional<Trivialization> trivialize_full(const SimplicialSet2& x, const Cochain2& beta)
{
    std::vector<int> col_of_edge;
    Gf2Matrix a = coboundary_matrix(x, col_of_edge);
    std::vector<std::uint8_t> rhs(x.triangle_count());
    for (TriangleId t = 0; t < x.triangle_count(); ++t)
        rhs[t] = static_cast<std::uint8_t>(beta(t));
    auto sol = gf2_solve(std::move(a), std::move(rhs));
    if (!sol)
        return std::nullopt;
    Trivialization tr;
    tr.particular = from_column_values(x, sol->particular);
    for (const auto& k : sol->kernel)
        tr.kernel.push_back(from_column_values(x, k));
    return tr;
}

std::optional<Cochain1> trivialize(const SimplicialSet2& x, const Cochain2& beta)
{
    auto tr = trivialize_full(x, beta);
    if (!tr)
        return std::nullopt;
    return tr->particular;
}

bool class_equal(const SimplicialSet2& x, const Cochain2& b1, const Cochain2& b2)
{
    return trivialize(x, b1 + b2).has_value();
}

namespace {

// delta of s extended by zero to all of X, with a support check.
Cochain2 coboundary_of_extension(const QuotientMap& q, const Cochain1& s)
{
    const SimplicialSet2& x = *q.source;
    for (EdgeId e : x.nondegenerate_edges())
        if (s(e) && !q.collapsed.contains_edge(e))
            throw std::invalid_argument("cochain is not supported on the collapsed subset");
    return coboundary1(x, s);
}

}  // namespace

Cochain2 zeta(const QuotientMap& q, const Cochain1& s)
{
    const Cochain2 delta = coboundary_of_extension(q, s);
    for (TriangleId t : q.collapsed.triangles())
        if (delta(t))
            throw RestrictionNotTrivializedError(
                "delta of the extension does not vanish on collapsed triangle " +
                q.source->triangle(t).name);
    Cochain2 out(*q.target);
    for (TriangleId t = 0; t < q.source->triangle_count(); ++t)
        if (q.triangle_map[t] >= 0)
            out.set(q.triangle_map[t], delta(t));
    return out;
}

Cochain2 descend_twist(const QuotientMap& q, const Cochain2& beta, const Cochain1& s)
{
    const Cochain2 delta = coboundary_of_extension(q, s);
    for (TriangleId t : q.collapsed.triangles())
        if (delta(t) != beta(t))
            throw RestrictionNotTrivializedError(
                "s does not trivialize the twist on collapsed triangle " +
                q.source->triangle(t).name);
    Cochain2 out(*q.target);
    for (TriangleId t = 0; t < q.source->triangle_count(); ++t)
        if (q.triangle_map[t] >= 0)
            out.set(q.triangle_map[t], beta(t) ^ delta(t));
    return out;
}

}  // namespace sdist
