#include "sdist/signed_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "sdist/polytope.hpp"

namespace sdist {

namespace {

void require_shape_valid(const SimplicialSet2& x, const std::string& who)
{
    const ValidationReport rep = validate(x);
    if (!rep.shape_valid())
        throw ShapeViolationError(who + ": complex fails the boundary-shape assumption:\n" +
                                  rep.summary());
}

SignedBipartiteGraph build_graph(ComplexPtr xp, const Cochain2& beta,
                                 const std::vector<std::vector<std::pair<int, int>>>& outcomes_of_tri)
{
    const SimplicialSet2& x = *xp;
    SignedBipartiteGraph g;
    g.edge_vertices = x.nondegenerate_edges();
    std::vector<int> vertex_of_edge(x.edge_count(), -1);
    for (std::size_t i = 0; i < g.edge_vertices.size(); ++i)
        vertex_of_edge[g.edge_vertices[i]] = static_cast<int>(i);

    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        for (const auto& [a, b] : outcomes_of_tri[t]) {
            const int ov = static_cast<int>(g.outcome_vertices.size());
            g.outcome_vertices.push_back({t, a, b});
            for (int slot = 0; slot < 3; ++slot) {
                const EdgeId e = x.face(t, slot);
                if (x.edge(e).degenerate)
                    continue;
                g.arcs.push_back({vertex_of_edge[e], ov, m_entry(slot, a, b, beta(t))});
            }
        }
    }
    return g;
}

}  // namespace

SignedBipartiteGraph gamma_graph(ComplexPtr x, const Cochain2& beta)
{
    require_shape_valid(*x, "gamma_graph");
    std::vector<std::vector<std::pair<int, int>>> all(x->triangle_count());
    for (auto& v : all)
        v = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    return build_graph(x, beta, all);
}

SignedBipartiteGraph support_graph(const TwistedDistribution& p)
{
    require_shape_valid(*p.space(), "support_graph");
    std::vector<std::vector<std::pair<int, int>>> zeros(p.space()->triangle_count());
    for (TriangleId t = 0; t < p.space()->triangle_count(); ++t)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (p.table(t).at(a, b) == 0)
                    zeros[t].emplace_back(a, b);
    return build_graph(p.space(), p.twist(), zeros);
}

ReducedGraph reduced_graph(const TwistedDistribution& p)
{
    const SimplicialSet2& x = *p.space();
    require_shape_valid(x, "reduced_graph");

    for (EdgeId e : x.nondegenerate_edges()) {
        if (x.incidences(e).empty())
            continue;
        const Rational m = p.edge_marginal0(e);
        if (m == 0 || m == 1)
            throw DeterministicSimplexPresentError("edge " + x.edge(e).name + " is deterministic");
    }
    for (TriangleId t = 0; t < x.triangle_count(); ++t)
        if (p.table(t).is_point_mass())
            throw DeterministicSimplexPresentError("triangle " + x.triangle(t).name +
                                                   " is deterministic");

    ReducedGraph rg;
    std::vector<std::vector<std::pair<int, int>>> kept(x.triangle_count());
    rg.kept.resize(x.triangle_count());
    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        std::vector<std::pair<int, int>> zeros;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (p.table(t).at(a, b) == 0)
                    zeros.emplace_back(a, b);
        if (zeros.empty())
            throw NoZeroOutcomeError("triangle " + x.triangle(t).name + " has no zero outcome");

        const auto nd = x.boundary_nondegenerate(t);
        if (nd.size() == 3) {
            if (zeros.size() != 1)
                throw DeterministicSimplexPresentError(
                    "triangle " + x.triangle(t).name +
                    " has several zero outcomes; two zeros force a deterministic face");
            kept[t] = {zeros.front()};
        } else {
            // Degenerate face: exactly the forced pair vanishes.  Keep the
            // a = 0 member when the pair has one (d0- or d1-degenerate); the
            // d2-degenerate pair shares a = 1 and either choice differs by a
            // switching only.
            if (zeros.size() != 2)
                throw DeterministicSimplexPresentError("triangle " + x.triangle(t).name +
                                                       " does not carry the forced zero pair");
            kept[t] = {zeros.front()};  // zeros are in lexicographic order
        }
        rg.kept[t] = kept[t].front();
    }
    rg.graph = build_graph(p.space(), p.twist(), kept);
    return rg;
}

// ---------------------------------------------------------------------------
// Balance

BalanceReport balanced_components(const SignedGraph& g)
{
    BalanceReport rep;
    rep.component_of.assign(g.n, -1);
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);  // (neighbor, edge index)
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        adj[g.edges[i].u].emplace_back(g.edges[i].v, static_cast<int>(i));
        adj[g.edges[i].v].emplace_back(g.edges[i].u, static_cast<int>(i));
    }

    std::vector<int> mu(g.n, 0);  // switching labels, +1/-1
    for (int start = 0; start < g.n; ++start) {
        if (rep.component_of[start] >= 0)
            continue;
        const int comp = rep.components++;
        bool balanced = true;
        std::queue<int> bfs;
        bfs.push(start);
        rep.component_of[start] = comp;
        mu[start] = 1;
        while (!bfs.empty()) {
            const int v = bfs.front();
            bfs.pop();
            for (const auto& [w, ei] : adj[v]) {
                const int sign = g.edges[ei].sign;
                if (rep.component_of[w] < 0) {
                    rep.component_of[w] = comp;
                    mu[w] = mu[v] * sign;
                    bfs.push(w);
                } else if (mu[w] != mu[v] * sign) {
                    balanced = false;  // a negative circle through this edge
                }
            }
        }
        rep.component_balanced.push_back(balanced);
        if (balanced)
            ++rep.balanced;
    }
    return rep;
}

BidirectedGraph hat(const SignedBipartiteGraph& g)
{
    BidirectedGraph h;
    h.n = static_cast<int>(g.outcome_vertices.size());
    std::vector<std::vector<std::pair<int, int>>> inc(g.edge_vertices.size());  // (outcome vertex, sign)
    for (const auto& arc : g.arcs)
        inc[arc.edge_vertex].emplace_back(arc.outcome_vertex, arc.sign);
    for (std::size_t e = 0; e < inc.size(); ++e) {
        if (inc[e].size() != 2)
            throw DegreeViolationError("edge-side vertex " + std::to_string(e) + " has degree " +
                                       std::to_string(inc[e].size()) + ", need exactly 2");
        h.edges.push_back({inc[e][0].first, inc[e][1].first, inc[e][0].second, inc[e][1].second});
    }
    return h;
}

SignedGraph underlying_signed(const BidirectedGraph& g)
{
    SignedGraph s;
    s.n = g.n;
    for (const auto& e : g.edges)
        s.edges.push_back({e.u, e.v, -e.eta_u * e.eta_v});
    return s;
}

IncidenceRank incidence_rank(const BidirectedGraph& g)
{
    IncidenceRank r;
    r.vertices = g.n;
    MatrixR h;
    h.setZero(g.n, static_cast<int>(g.edges.size()));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        h(g.edges[e].u, static_cast<int>(e)) += g.edges[e].eta_u;
        h(g.edges[e].v, static_cast<int>(e)) += g.edges[e].eta_v;
    }
    r.direct_rank = rational_rank(std::move(h));
    r.balanced = balanced_components(underlying_signed(g)).balanced;
    if (r.direct_rank != r.via_balance())
        throw std::logic_error("incidence rank " + std::to_string(r.direct_rank) +
                               " disagrees with |V|-b = " + std::to_string(r.via_balance()));
    return r;
}

// ---------------------------------------------------------------------------
// Rank formula

std::string render_graph(const SignedBipartiteGraph& g, const SimplicialSet2& x)
{
    std::ostringstream os;
    for (const auto& arc : g.arcs) {
        const auto& ov = g.outcome_vertices[arc.outcome_vertex];
        os << x.edge(g.edge_vertices[arc.edge_vertex]).name << " -- " << x.triangle(ov.tri).name
           << "[" << ov.a << ov.b << "] : " << (arc.sign > 0 ? "+" : "-") << "\n";
    }
    return os.str();
}

std::string render_bidirected(const BidirectedGraph& g)
{
    std::ostringstream os;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        os << "e" << e << ": v" << ed.u << "(" << (ed.eta_u > 0 ? "+" : "-") << ") -- v" << ed.v
           << "(" << (ed.eta_v > 0 ? "+" : "-") << ")\n";
    }
    return os.str();
}

RankFormulaResult rank_formula(const TwistedDistribution& p)
{
    const SimplicialSet2& x = *p.space();
    require_shape_valid(x, "rank_formula");
    std::ostringstream trace;

    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        bool has_zero = false;
        for (const auto& v : p.table(t).p)
            if (v == 0)
                has_zero = true;
        if (!has_zero)
            throw HypothesisViolationError("zero-outcome",
                                           "triangle " + x.triangle(t).name + " has no zero outcome");
    }

    PhiResult ph = phi(p);
    RankFormulaResult res;
    res.zp_edge_count = ph.zp.nondegenerate_edge_count();
    res.quotient = ph.q.target;
    res.beta_bar = ph.beta_bar;
    res.quotient_triangle_count = res.quotient->triangle_count();

    trace << "Z_p: " << res.zp_edge_count << " edges";
    if (!ph.zp.edges().empty()) {
        trace << " {";
        bool first = true;
        for (EdgeId e : ph.zp.edges()) {
            trace << (first ? "" : ", ") << x.edge(e).name;
            first = false;
        }
        trace << "}";
    }
    trace << ", " << ph.zp.triangle_count() << " triangles";
    if (!ph.zp.triangles().empty()) {
        trace << " {";
        bool first = true;
        for (TriangleId t : ph.zp.triangles()) {
            trace << (first ? "" : ", ") << x.triangle(t).name;
            first = false;
        }
        trace << "}";
    }
    trace << "\n";

    const SimplicialSet2& xbar = *res.quotient;
    if (!ph.q.target_report.structurally_valid())
        throw HypothesisViolationError("quotient-structure", "quotient is not a valid complex:\n" +
                                                                 ph.q.target_report.summary());

    trace << "quotient: " << xbar.nondegenerate_edge_count() << " edges, "
          << xbar.triangle_count() << " triangles, twist [";
    for (TriangleId t = 0; t < xbar.triangle_count(); ++t)
        trace << res.beta_bar(t);
    trace << "]\n";
    if (xbar.nondegenerate_edge_count() != xbar.triangle_count())
        trace << "note: |Xbar_1| = " << xbar.nondegenerate_edge_count()
              << " differs from |Xbar_2| = " << xbar.triangle_count() << "\n";

    if (xbar.triangle_count() == 0) {
        // Fully deterministic distribution: the graph stages are empty.
        res.balanced = 0;
        res.rank = res.zp_edge_count;
        trace << "empty quotient; rank = |Z_p|_1 = " << res.rank << "\n";
        res.trace = trace.str();
        return res;
    }

    for (TriangleId t = 0; t < xbar.triangle_count(); ++t) {
        const auto nd = xbar.boundary_nondegenerate(t);
        if (nd.size() != 2)
            throw HypothesisViolationError(
                "triangle-degree",
                "quotient triangle " + xbar.triangle(t).name + " has " +
                    std::to_string(nd.size()) +
                    " non-degenerate faces; the kept vertex must have degree 2");
    }
    for (EdgeId e : xbar.nondegenerate_edges()) {
        if (xbar.incidences(e).size() != 2)
            throw HypothesisViolationError(
                "two-triangle",
                "quotient edge " + xbar.edge(e).name + " lies in " +
                    std::to_string(xbar.incidences(e).size()) + " triangles, need exactly 2");
    }

    res.gamma0 = reduced_graph(ph.image);
    res.sigma_hat = hat(res.gamma0.graph);
    const IncidenceRank ir = incidence_rank(res.sigma_hat);
    res.balanced = ir.balanced;
    res.rank = res.zp_edge_count + res.quotient_triangle_count - res.balanced;

    trace << "Gamma^0:\n" << render_graph(res.gamma0.graph, xbar);
    trace << "Sigma-hat:\n" << render_bidirected(res.sigma_hat);
    trace << "b = " << res.balanced << " balanced of "
          << balanced_components(underlying_signed(res.sigma_hat)).components << " components\n";
    trace << "rank = " << res.zp_edge_count << " + " << res.quotient_triangle_count << " - "
          << res.balanced << " = " << res.rank << "\n";
    res.trace = trace.str();
    return res;
}

}  // namespace sdist
