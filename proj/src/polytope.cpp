#include "sdist/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sdist {

int m_entry(int slot, int a, int b, int beta)
{
    switch (slot) {
        case 0: return ((b + beta) % 2) ? -1 : 1;
        case 1: return ((a + b) % 2) ? -1 : 1;
        default: return (a % 2) ? -1 : 1;
    }
}

HPolytope build_m(ComplexPtr x, const Cochain2& beta)
{
    HPolytope h;
    h.space = x;
    h.twist = beta;
    h.columns = x->nondegenerate_edges();
    h.col_of_edge.assign(x->edge_count(), -1);
    for (std::size_t c = 0; c < h.columns.size(); ++c)
        h.col_of_edge[h.columns[c]] = static_cast<int>(c);

    const int m = 4 * x->triangle_count();
    const int d = static_cast<int>(h.columns.size());
    h.a.setZero(m, d);
    h.rhs.resize(m);
    for (TriangleId t = 0; t < x->triangle_count(); ++t) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const int row = HPolytope::row_index(t, a, b);
                Rational r = -1;
                for (int slot = 0; slot < 3; ++slot) {
                    const EdgeId e = x->face(t, slot);
                    const int sign = m_entry(slot, a, b, beta(t));
                    if (x->edge(e).degenerate)
                        r -= sign;  // c = 1 folded into the right-hand side
                    else
                        h.a(row, h.col_of_edge[e]) += sign;
                }
                h.rhs(row) = r;
            }
        }
    }
    return h;
}

VertexReport rank_of(const TwistedDistribution& p)
{
    const HPolytope h = build_m(p.space(), p.twist());
    VertexReport rep;
    rep.columns = static_cast<int>(h.columns.size());
    for (TriangleId t = 0; t < p.space()->triangle_count(); ++t)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (p.table(t).at(a, b) == 0)
                    rep.tight_rows.push_back(HPolytope::row_index(t, a, b));

    MatrixR tight(static_cast<int>(rep.tight_rows.size()), rep.columns);
    for (std::size_t i = 0; i < rep.tight_rows.size(); ++i)
        tight.row(static_cast<int>(i)) = h.a.row(rep.tight_rows[i]);
    rep.rank = rational_rank(std::move(tight));
    rep.is_vertex = (rep.rank == rep.columns);

    const SimplicialSubset zp = deterministic_subcomplex(p);
    rep.zp_edges.assign(zp.edges().begin(), zp.edges().end());
    rep.zp_triangles.assign(zp.triangles().begin(), zp.triangles().end());
    return rep;
}

// ---------------------------------------------------------------------------
// Double description

namespace {

struct Constraint {
    VectorR a;
    Rational b;
};

bool lex_less(const VectorR& u, const VectorR& v)
{
    for (int i = 0; i < u.size(); ++i) {
        if (u(i) != v(i))
            return u(i) < v(i);
    }
    return false;
}

struct DDState {
    int k = 0;
    std::vector<VectorR> verts;
    std::vector<std::vector<std::uint64_t>> tight;  // bit per processed constraint
    std::vector<Constraint> processed;

    void push_tight_bit(std::size_t vi, bool is_tight)
    {
        auto& mask = tight[vi];
        const std::size_t c = processed.size() - 1;
        if (mask.size() <= c / 64)
            mask.resize(c / 64 + 1, 0);
        if (is_tight)
            mask[c / 64] |= std::uint64_t(1) << (c % 64);
    }

    std::vector<std::uint64_t> full_mask(const VectorR& v) const
    {
        std::vector<std::uint64_t> mask((processed.size() + 63) / 64, 0);
        for (std::size_t c = 0; c < processed.size(); ++c) {
            Rational val = -processed[c].b;
            for (int i = 0; i < k; ++i)
                val += processed[c].a(i) * v(i);
            if (val == 0)
                mask[c / 64] |= std::uint64_t(1) << (c % 64);
        }
        return mask;
    }
};

int popcount_common(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b)
{
    int n = 0;
    const std::size_t w = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < w; ++i)
        n += __builtin_popcountll(a[i] & b[i]);
    return n;
}

bool adjacent(const DDState& st, std::size_t u, std::size_t w)
{
    const auto& mu = st.tight[u];
    const auto& mw = st.tight[w];
    if (popcount_common(mu, mw) < st.k - 1)
        return false;
    std::vector<int> rows;
    const std::size_t words = std::min(mu.size(), mw.size());
    for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t bits = mu[i] & mw[i];
        while (bits) {
            const int b = __builtin_ctzll(bits);
            rows.push_back(static_cast<int>(64 * i + b));
            bits &= bits - 1;
        }
    }
    MatrixR m(static_cast<int>(rows.size()), st.k);
    for (std::size_t i = 0; i < rows.size(); ++i)
        m.row(static_cast<int>(i)) = st.processed[rows[i]].a.transpose();
    return rational_rank(std::move(m)) == st.k - 1;
}

// Vertices of the intersection of [lo,hi]^k with the given halfspaces.
std::vector<VectorR> dd_core(int k, const Rational& lo, const Rational& hi,
                             const std::vector<Constraint>& constraints)
{
    DDState st;
    st.k = k;

    if (k == 0) {
        for (const auto& c : constraints)
            if (Rational(0) < c.b)
                return {};
        return {VectorR(0)};
    }

    // Start from the cube.
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
        VectorR v(k);
        for (int i = 0; i < k; ++i)
            v(i) = (mask & (std::uint64_t(1) << i)) ? hi : lo;
        st.verts.push_back(std::move(v));
        st.tight.emplace_back();
    }
    for (int i = 0; i < k; ++i) {
        for (int side = 0; side < 2; ++side) {
            Constraint c;
            c.a.setZero(k);
            c.a(i) = side ? -1 : 1;
            c.b = side ? -hi : lo;
            st.processed.push_back(std::move(c));
            for (std::size_t vi = 0; vi < st.verts.size(); ++vi) {
                const Rational val = side ? (hi - st.verts[vi](i)) : (st.verts[vi](i) - lo);
                st.push_tight_bit(vi, val == 0);
            }
        }
    }

    for (const auto& cons : constraints) {
        std::vector<Rational> val(st.verts.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t vi = 0; vi < st.verts.size(); ++vi) {
            Rational v = -cons.b;
            for (int i = 0; i < k; ++i)
                v += cons.a(i) * st.verts[vi](i);
            val[vi] = v;
            if (v > 0)
                pos.push_back(vi);
            else if (v < 0)
                neg.push_back(vi);
        }

        std::vector<VectorR> cuts;
        if (!neg.empty()) {
            for (const auto p : pos) {
                for (const auto m : neg) {
                    if (!adjacent(st, p, m))
                        continue;
                    const Rational t = val[p] / (val[p] - val[m]);
                    VectorR x = st.verts[p] + t * (st.verts[m] - st.verts[p]);
                    cuts.push_back(std::move(x));
                }
            }
        }

        st.processed.push_back(cons);
        if (neg.empty()) {
            for (std::size_t vi = 0; vi < st.verts.size(); ++vi)
                st.push_tight_bit(vi, val[vi] == 0);
            continue;
        }

        std::vector<VectorR> keep;
        std::vector<std::vector<std::uint64_t>> keep_tight;
        for (std::size_t vi = 0; vi < st.verts.size(); ++vi) {
            if (val[vi] < 0)
                continue;
            keep.push_back(std::move(st.verts[vi]));
            auto mask = std::move(st.tight[vi]);
            const std::size_t c = st.processed.size() - 1;
            if (mask.size() <= c / 64)
                mask.resize(c / 64 + 1, 0);
            if (val[vi] == 0)
                mask[c / 64] |= std::uint64_t(1) << (c % 64);
            keep_tight.push_back(std::move(mask));
        }
        st.verts = std::move(keep);
        st.tight = std::move(keep_tight);
        for (auto& x : cuts) {
            st.tight.push_back(st.full_mask(x));
            st.verts.push_back(std::move(x));
        }
    }

    std::sort(st.verts.begin(), st.verts.end(), lex_less);
    st.verts.erase(std::unique(st.verts.begin(), st.verts.end(),
                               [](const VectorR& u, const VectorR& v) { return u == v; }),
                   st.verts.end());
    return st.verts;
}

// Detect opposite-row equality pairs, eliminate by substitution, and return
// the reduced inequality system over the free columns.
struct ReducedSystem {
    bool infeasible = false;
    int k = 0;                      // number of free columns
    std::vector<int> free_cols;     // reduced index -> original column
    // original column -> affine expression over free columns (pivot columns
    // only); expr has size k+1, last entry the constant term.
    std::map<int, std::vector<Rational>> pivot_expr;
    std::vector<Constraint> constraints;
};

ReducedSystem reduce_equalities(const MatrixR& a, const VectorR& b, const Rational& lo, const Rational& hi)
{
    ReducedSystem rs;
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());

    // Equality rows from exactly-opposite pairs.
    std::vector<std::pair<VectorR, Rational>> eqs;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (b(i) + b(j) == 0 && a.row(i) == (-a.row(j))) {
                eqs.emplace_back(a.row(i).transpose(), b(i));
            }
        }
    }

    // Gaussian elimination of the equality system.
    MatrixR e(static_cast<int>(eqs.size()), n + 1);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        e.block(static_cast<int>(i), 0, 1, n) = eqs[i].first.transpose();
        e(static_cast<int>(i), n) = eqs[i].second;
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < e.rows(); ++col) {
        int pr = -1;
        for (int r = row; r < e.rows(); ++r)
            if (e(r, col) != 0) {
                pr = r;
                break;
            }
        if (pr < 0)
            continue;
        e.row(pr).swap(e.row(row));
        e.row(row) /= e(row, col);
        for (int r = 0; r < e.rows(); ++r)
            if (r != row && e(r, col) != 0)
                e.row(r) -= e(r, col) * e.row(row);
        pivot_col.push_back(col);
        ++row;
    }
    for (int r = row; r < e.rows(); ++r) {
        if (e(r, n) != 0) {
            rs.infeasible = true;
            return rs;
        }
    }

    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col)
        is_pivot[c] = true;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c])
            rs.free_cols.push_back(c);
    rs.k = static_cast<int>(rs.free_cols.size());
    std::vector<int> reduced_index(n, -1);
    for (int i = 0; i < rs.k; ++i)
        reduced_index[rs.free_cols[i]] = i;

    // x_pivot = const - sum coeff * x_free.
    for (int r = 0; r < row; ++r) {
        const int pc = pivot_col[r];
        std::vector<Rational> expr(rs.k + 1, Rational(0));
        expr[rs.k] = e(r, n);
        for (int c = 0; c < n; ++c)
            if (!is_pivot[c] && e(r, c) != 0)
                expr[reduced_index[c]] = -e(r, c);
        rs.pivot_expr.emplace(pc, std::move(expr));
    }

    auto substitute = [&](const VectorR& arow, const Rational& brow) -> std::optional<Constraint> {
        Constraint c;
        c.a.setZero(rs.k);
        c.b = brow;
        for (int col = 0; col < n; ++col) {
            if (arow(col) == 0)
                continue;
            if (!is_pivot[col]) {
                c.a(reduced_index[col]) += arow(col);
            } else {
                const auto& expr = rs.pivot_expr.at(col);
                c.b -= arow(col) * expr[rs.k];
                for (int i = 0; i < rs.k; ++i)
                    c.a(i) += arow(col) * expr[i];
            }
        }
        if (c.a.isZero(0)) {
            if (Rational(0) < c.b)
                rs.infeasible = true;
            return std::nullopt;
        }
        return c;
    };

    for (int i = 0; i < m; ++i) {
        auto c = substitute(a.row(i).transpose(), b(i));
        if (rs.infeasible)
            return rs;
        if (c)
            rs.constraints.push_back(std::move(*c));
    }
    // Cube bounds of eliminated columns become ordinary constraints.
    for (const auto& [col, expr] : rs.pivot_expr) {
        VectorR arow;
        arow.setZero(n);
        arow(col) = 1;
        if (auto c = substitute(arow, lo); c)
            rs.constraints.push_back(std::move(*c));
        if (rs.infeasible)
            return rs;
        arow(col) = -1;
        if (auto c = substitute(arow, -hi); c)
            rs.constraints.push_back(std::move(*c));
        if (rs.infeasible)
            return rs;
    }
    return rs;
}

std::vector<VectorR> dd_pipeline(const MatrixR& a, const VectorR& b, const Rational& lo,
                                 const Rational& hi, int max_free, const std::string& what)
{
    ReducedSystem rs = reduce_equalities(a, b, lo, hi);
    if (rs.infeasible)
        return {};
    if (rs.k > max_free) {
        std::ostringstream os;
        os << what << ": " << rs.k << " coordinates remain after equality elimination (cap "
           << max_free << ")";
        throw DimensionTooLargeError(os.str());
    }
    const auto reduced = dd_core(rs.k, lo, hi, rs.constraints);

    const int n = static_cast<int>(a.cols());
    std::vector<VectorR> out;
    out.reserve(reduced.size());
    for (const auto& rv : reduced) {
        VectorR full(n);
        for (int i = 0; i < rs.k; ++i)
            full(rs.free_cols[i]) = rv(i);
        for (const auto& [col, expr] : rs.pivot_expr) {
            Rational v = expr[rs.k];
            for (int i = 0; i < rs.k; ++i)
                v += expr[i] * rv(i);
            full(col) = v;
        }
        out.push_back(std::move(full));
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const VectorR& u, const VectorR& v) { return u == v; }),
              out.end());
    return out;
}

}  // namespace

std::vector<VectorR> dd_vertices(const MatrixR& a, const VectorR& b, const Rational& lo,
                                 const Rational& hi, int max_free_columns)
{
    return dd_pipeline(a, b, lo, hi, max_free_columns, "dd_vertices");
}

std::vector<TwistedDistribution> enumerate_vertices(ComplexPtr x, const Cochain2& beta, int max_columns)
{
    const HPolytope h = build_m(x, beta);
    if (static_cast<int>(h.columns.size()) > max_columns)
        throw DimensionTooLargeError("enumerate_vertices: " + std::to_string(h.columns.size()) +
                                     " correlation coordinates (cap " + std::to_string(max_columns) + ")");
    const auto points = dd_pipeline(h.a, h.rhs, Rational(-1), Rational(1), max_columns,
                                    "enumerate_vertices");
    std::vector<TwistedDistribution> out;
    out.reserve(points.size());
    for (const auto& pt : points) {
        CorrelationVector cv;
        cv.c.assign(x->edge_count(), Rational(1));
        for (std::size_t i = 0; i < h.columns.size(); ++i)
            cv.c[h.columns[i]] = pt(static_cast<int>(i));
        out.push_back(from_correlations(x, beta, cv));
    }
    return out;
}

int affine_dimension(const std::vector<TwistedDistribution>& points)
{
    if (points.empty())
        return -1;
    const auto& x = *points.front().space();
    const auto& cols = x.nondegenerate_edges();
    MatrixR diffs(static_cast<int>(points.size()) - 1, static_cast<int>(cols.size()));
    const CorrelationVector base = correlations(points.front());
    for (std::size_t i = 1; i < points.size(); ++i) {
        const CorrelationVector ci = correlations(points[i]);
        for (std::size_t j = 0; j < cols.size(); ++j)
            diffs(static_cast<int>(i) - 1, static_cast<int>(j)) = ci.c[cols[j]] - base.c[cols[j]];
    }
    return rational_rank(std::move(diffs));
}

}  // namespace sdist
