#include "sdist/simplicial_set.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sdist {

// ---------------------------------------------------------------------------
// SimplicialSet2

void SimplicialSet2::freeze()
{
    nondeg_edges_.clear();
    degenerate_at_.assign(vertex_count(), -1);
    for (EdgeId e = 0; e < edge_count(); ++e) {
        if (edges_[e].degenerate)
            degenerate_at_[edges_[e].src] = e;
        else
            nondeg_edges_.push_back(e);
    }
    incidences_.assign(edge_count(), {});
    for (TriangleId t = 0; t < triangle_count(); ++t)
        for (int i = 0; i < 3; ++i)
            incidences_[triangles_[t].face[i]].emplace_back(t, i);
}

std::optional<EdgeId> SimplicialSet2::degenerate_edge_at(VertexId v) const
{
    if (v < 0 || v >= vertex_count() || degenerate_at_[v] < 0)
        return std::nullopt;
    return degenerate_at_[v];
}

std::vector<EdgeId> SimplicialSet2::boundary_set(TriangleId t) const
{
    std::vector<EdgeId> b(triangles_[t].face.begin(), triangles_[t].face.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

std::vector<EdgeId> SimplicialSet2::boundary_nondegenerate(TriangleId t) const
{
    std::vector<EdgeId> b = boundary_set(t);
    b.erase(std::remove_if(b.begin(), b.end(), [&](EdgeId e) { return edges_[e].degenerate; }), b.end());
    return b;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::structurally_valid() const
{
    for (const auto& i : issues)
        if (i.kind == ValidationIssue::Kind::IdentityViolation)
            return false;
    return true;
}

std::string ValidationReport::summary() const
{
    std::ostringstream os;
    for (const auto& i : issues) {
        switch (i.kind) {
            case ValidationIssue::Kind::IdentityViolation: os << "IdentityViolation"; break;
            case ValidationIssue::Kind::BoundaryShapeViolation: os << "BoundaryShapeViolation"; break;
            case ValidationIssue::Kind::IsolatedEdge: os << "IsolatedEdge"; break;
        }
        os << ": " << i.detail << "\n";
    }
    return os.str();
}

ValidationReport validate(const SimplicialSet2& x)
{
    ValidationReport rep;
    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        const auto& tri = x.triangle(t);
        const Edge& d0 = x.edge(tri.face[0]);
        const Edge& d1 = x.edge(tri.face[1]);
        const Edge& d2 = x.edge(tri.face[2]);

        auto identity = [&](bool ok, const std::string& what) {
            if (!ok)
                rep.issues.push_back({ValidationIssue::Kind::IdentityViolation, t, -1,
                                      "triangle " + tri.name + ": " + what});
        };
        identity(d2.dst == d0.src, "target(d2) != source(d0)");
        identity(d2.src == d1.src, "source(d2) != source(d1)");
        identity(d0.dst == d1.dst, "target(d0) != target(d1)");

        // Degenerate edges must be loops at their vertex.
        for (int i = 0; i < 3; ++i) {
            const Edge& e = x.edge(tri.face[i]);
            if (e.degenerate && e.src != e.dst)
                rep.issues.push_back({ValidationIssue::Kind::IdentityViolation, t, tri.face[i],
                                      "degenerate edge " + e.name + " with distinct endpoints"});
        }

        std::vector<EdgeId> nd = x.boundary_nondegenerate(t);
        int degen_slots = 0;
        for (int i = 0; i < 3; ++i)
            if (x.edge(tri.face[i]).degenerate)
                ++degen_slots;
        const bool three_distinct = nd.size() == 3 && degen_slots == 0;
        const bool two_plus_degen = nd.size() == 2 && degen_slots == 1;
        if (!three_distinct && !two_plus_degen) {
            std::ostringstream os;
            os << "triangle " << tri.name << ": boundary has " << nd.size()
               << " distinct non-degenerate edges and " << degen_slots << " degenerate face slots";
            rep.issues.push_back({ValidationIssue::Kind::BoundaryShapeViolation, t, -1, os.str()});
        }
    }
    for (EdgeId e : x.nondegenerate_edges()) {
        if (x.incidences(e).empty())
            rep.issues.push_back({ValidationIssue::Kind::IsolatedEdge, -1, e,
                                  "edge " + x.edge(e).name + " belongs to no triangle"});
    }
    return rep;
}

int dimension(const SimplicialSet2& x)
{
    int d = x.nondegenerate_edge_count();
    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        const auto all = x.boundary_set(t);
        const auto nd = x.boundary_nondegenerate(t);
        d -= static_cast<int>(all.size() - nd.size());
    }
    return d;
}

// ---------------------------------------------------------------------------
// SimplicialSubset

SimplicialSubset::SimplicialSubset(ComplexPtr parent, std::set<EdgeId> edges, std::set<TriangleId> triangles)
    : parent_(std::move(parent)), edges_(std::move(edges)), triangles_(std::move(triangles))
{
    for (auto it = edges_.begin(); it != edges_.end();) {
        if (parent_->edge(*it).degenerate)
            it = edges_.erase(it);  // implicit members, keyed by vertex
        else
            ++it;
    }
    for (EdgeId e : edges_) {
        vertices_.insert(parent_->edge(e).src);
        vertices_.insert(parent_->edge(e).dst);
    }
    for (TriangleId t : triangles_)
        for (int i = 0; i < 3; ++i) {
            const Edge& f = parent_->edge(parent_->face(t, i));
            vertices_.insert(f.src);
            vertices_.insert(f.dst);
        }
    check_face_closed();
}

void SimplicialSubset::check_face_closed()
    const
{
    for (TriangleId t : triangles_) {
        for (int i = 0; i < 3; ++i) {
            const EdgeId f = parent_->face(t, i);
            if (!parent_->edge(f).degenerate && !edges_.count(f))
                throw NotFaceClosedError("face " + parent_->edge(f).name + " of triangle " +
                                         parent_->triangle(t).name + " is not a member edge");
        }
    }
}

SimplicialSubset SimplicialSubset::generated_by(ComplexPtr parent, const std::set<EdgeId>& edges,
                                                const std::set<TriangleId>& triangles)
{
    std::set<EdgeId> es = edges;
    for (TriangleId t : triangles)
        for (int i = 0; i < 3; ++i) {
            const EdgeId f = parent->face(t, i);
            if (!parent->edge(f).degenerate)
                es.insert(f);
        }
    return SimplicialSubset(std::move(parent), std::move(es), triangles);
}

bool SimplicialSubset::contains_edge(EdgeId e) const
{
    const Edge& ed = parent_->edge(e);
    if (ed.degenerate)
        return vertices_.count(ed.src) > 0;
    return edges_.count(e) > 0;
}

// ---------------------------------------------------------------------------
// Quotient

QuotientMap quotient(ComplexPtr x, const SimplicialSubset& z)
{
    if (z.parent().get() != x.get())
        throw InvalidParameterError("quotient: subset does not belong to the complex");

    QuotientMap q(x, z);
    auto target = std::make_shared<SimplicialSet2>();

    // Vertices: one basepoint absorbs every Z-vertex (also materialized when
    // Z is empty but some collapsed simplex would need it -- i.e. never).
    q.vertex_map.assign(x->vertex_count(), -1);
    const bool has_z = !z.vertices().empty() || !z.edges().empty() || !z.triangles().empty();
    if (has_z) {
        q.basepoint = 0;
        target->vertex_names_.push_back("*");
    }
    for (VertexId v = 0; v < x->vertex_count(); ++v) {
        if (has_z && z.vertices().count(v)) {
            q.vertex_map[v] = q.basepoint;
        } else {
            q.vertex_map[v] = static_cast<VertexId>(target->vertex_names_.size());
            target->vertex_names_.push_back(x->vertex_name(v));
        }
    }

    // Degenerate edges of the target are created on demand, one per vertex.
    std::map<VertexId, EdgeId> degen_of;
    auto degen_edge = [&](VertexId tv) {
        auto it = degen_of.find(tv);
        if (it != degen_of.end())
            return it->second;
        Edge e;
        e.src = e.dst = tv;
        e.degenerate = true;
        e.name = "s0_" + target->vertex_names_[tv];
        const EdgeId id = static_cast<EdgeId>(target->edges_.size());
        target->edges_.push_back(e);
        degen_of.emplace(tv, id);
        return id;
    };
    if (has_z)
        q.basepoint_edge = degen_edge(q.basepoint);

    q.edge_map.assign(x->edge_count(), -1);
    for (EdgeId e = 0; e < x->edge_count(); ++e) {
        const Edge& ed = x->edge(e);
        if (z.contains_edge(e)) {
            q.edge_map[e] = q.basepoint_edge;
        } else if (ed.degenerate) {
            q.edge_map[e] = degen_edge(q.vertex_map[ed.src]);
        } else {
            Edge ne;
            ne.src = q.vertex_map[ed.src];
            ne.dst = q.vertex_map[ed.dst];
            ne.degenerate = false;
            ne.name = ed.name;
            q.edge_map[e] = static_cast<EdgeId>(target->edges_.size());
            target->edges_.push_back(ne);
        }
    }

    q.triangle_map.assign(x->triangle_count(), -1);
    for (TriangleId t = 0; t < x->triangle_count(); ++t) {
        if (z.triangles().count(t))
            continue;
        Triangle nt;
        nt.name = x->triangle(t).name;
        for (int i = 0; i < 3; ++i)
            nt.face[i] = q.edge_map[x->face(t, i)];
        q.triangle_map[t] = static_cast<TriangleId>(target->triangles_.size());
        target->triangles_.push_back(nt);
    }

    target->freeze();
    q.target = target;
    q.target_report = validate(*target);
    return q;
}

// ---------------------------------------------------------------------------
// ComplexBuilder

int ComplexBuilder::vfind(int v)
{
    while (vparent_[v] != v)
        v = vparent_[v] = vparent_[vparent_[v]];
    return v;
}

int ComplexBuilder::efind(int e)
{
    while (eparent_[e] != e)
        e = eparent_[e] = eparent_[eparent_[e]];
    return e;
}

void ComplexBuilder::vunion(int a, int b)
{
    a = vfind(a);
    b = vfind(b);
    if (a != b)
        vparent_[std::max(a, b)] = std::min(a, b);
}

void ComplexBuilder::eunion(int a, int b)
{
    a = efind(a);
    b = efind(b);
    if (a == b)
        return;
    const int keep = std::min(a, b), drop = std::max(a, b);
    collapsed_[keep] = collapsed_[keep] || collapsed_[drop];
    edges_[keep].declared_degenerate = edges_[keep].declared_degenerate || edges_[drop].declared_degenerate;
    eparent_[drop] = keep;
}

VertexId ComplexBuilder::add_vertex(const std::string& name)
{
    vertices_.push_back(name);
    vparent_.push_back(static_cast<int>(vparent_.size()));
    return static_cast<VertexId>(vertices_.size() - 1);
}

EdgeId ComplexBuilder::add_edge(const std::string& name, VertexId src, VertexId dst)
{
    edges_.push_back({name, src, dst, false});
    eparent_.push_back(static_cast<int>(eparent_.size()));
    collapsed_.push_back(false);
    return static_cast<EdgeId>(edges_.size() - 1);
}

EdgeId ComplexBuilder::add_degenerate_edge(const std::string& name, VertexId v)
{
    edges_.push_back({name, v, v, true});
    eparent_.push_back(static_cast<int>(eparent_.size()));
    collapsed_.push_back(false);
    return static_cast<EdgeId>(edges_.size() - 1);
}

TriangleId ComplexBuilder::add_triangle(const std::string& name, EdgeId d0, EdgeId d1, EdgeId d2)
{
    Triangle t;
    t.name = name;
    t.face = {d0, d1, d2};
    triangles_.push_back(t);
    return static_cast<TriangleId>(triangles_.size() - 1);
}

void ComplexBuilder::glue(EdgeId a, EdgeId b)
{
    vunion(edges_[a].src, edges_[b].src);
    vunion(edges_[a].dst, edges_[b].dst);
    eunion(a, b);
}

void ComplexBuilder::collapse(EdgeId e)
{
    vunion(edges_[e].src, edges_[e].dst);
    collapsed_[efind(e)] = true;
}

ComplexBuilder::Result ComplexBuilder::build()
{
    // Gluing can merge endpoints transitively; iterate until endpoint classes
    // stabilize (two edges glued earlier may force further vertex unions).
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const int r = efind(static_cast<int>(e));
            if (r == static_cast<int>(e))
                continue;
            const int s1 = vfind(edges_[e].src), s2 = vfind(edges_[r].src);
            const int t1 = vfind(edges_[e].dst), t2 = vfind(edges_[r].dst);
            if (s1 != s2) {
                vunion(s1, s2);
                changed = true;
            }
            if (t1 != t2) {
                vunion(t1, t2);
                changed = true;
            }
        }
        // Degeneracy propagates: a collapsed or degenerate class pins its
        // endpoints together.
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const int r = efind(static_cast<int>(e));
            if ((collapsed_[r] || edges_[r].declared_degenerate) &&
                vfind(edges_[e].src) != vfind(edges_[e].dst)) {
                vunion(edges_[e].src, edges_[e].dst);
                changed = true;
            }
        }
    }

    auto cx = std::make_shared<SimplicialSet2>();
    Result res;

    res.vertex_map.assign(vertices_.size(), -1);
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        const int r = vfind(static_cast<int>(v));
        if (res.vertex_map[r] < 0) {
            res.vertex_map[r] = static_cast<VertexId>(cx->vertex_names_.size());
            cx->vertex_names_.push_back(vertices_[r]);
        }
        res.vertex_map[v] = res.vertex_map[r];
    }

    // Degenerate edge per final vertex, created lazily.
    std::map<VertexId, EdgeId> degen_of;
    auto degen_edge = [&](VertexId v) {
        auto it = degen_of.find(v);
        if (it != degen_of.end())
            return it->second;
        Edge e;
        e.src = e.dst = v;
        e.degenerate = true;
        e.name = "s0_" + cx->vertex_names_[v];
        const EdgeId id = static_cast<EdgeId>(cx->edges_.size());
        cx->edges_.push_back(e);
        degen_of.emplace(v, id);
        return id;
    };

    res.edge_map.assign(edges_.size(), -1);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const int r = efind(static_cast<int>(e));
        if (res.edge_map[r] < 0) {
            if (collapsed_[r] || edges_[r].declared_degenerate) {
                res.edge_map[r] = degen_edge(res.vertex_map[vfind(edges_[r].src)]);
            } else {
                Edge ne;
                ne.src = res.vertex_map[vfind(edges_[r].src)];
                ne.dst = res.vertex_map[vfind(edges_[r].dst)];
                ne.degenerate = false;
                ne.name = edges_[r].name;
                res.edge_map[r] = static_cast<EdgeId>(cx->edges_.size());
                cx->edges_.push_back(ne);
            }
        }
        res.edge_map[e] = res.edge_map[r];
    }

    res.triangle_map.assign(triangles_.size(), -1);
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        Triangle nt;
        nt.name = triangles_[t].name;
        for (int i = 0; i < 3; ++i)
            nt.face[i] = res.edge_map[triangles_[t].face[i]];
        res.triangle_map[t] = static_cast<TriangleId>(cx->triangles_.size());
        cx->triangles_.push_back(nt);
    }

    cx->freeze();
    res.complex = cx;
    return res;
}

// ---------------------------------------------------------------------------
// Built-ins

ComplexPtr builtin_delta2()
{
    ComplexBuilder b;
    const auto v0 = b.add_vertex("0"), v1 = b.add_vertex("1"), v2 = b.add_vertex("2");
    const auto x = b.add_edge("x", v0, v1);
    const auto z = b.add_edge("z", v0, v2);
    const auto y = b.add_edge("y", v1, v2);
    b.add_triangle("s", y, z, x);
    return b.build().complex;
}

ComplexPtr builtin_cycle(int n)
{
    if (n < 2)
        throw InvalidParameterError("cycle(N) needs N >= 2");
    ComplexBuilder b;
    const auto c = b.add_vertex("c");
    std::vector<VertexId> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = b.add_vertex("v" + std::to_string(i + 1));
    std::vector<EdgeId> x(n), z(n);
    for (int i = 0; i < n; ++i) {
        x[i] = b.add_edge("x" + std::to_string(i + 1), v[i], v[(i + 1) % n]);
        z[i] = b.add_edge("z" + std::to_string(i + 1), v[i], c);
    }
    for (int i = 0; i < n; ++i)
        b.add_triangle("s" + std::to_string(i + 1), z[(i + 1) % n], z[i], x[i]);
    return b.build().complex;
}

ComplexPtr builtin_disk(int n)
{
    if (n < 1)
        throw InvalidParameterError("disk(N) needs N >= 1");
    ComplexBuilder b;
    const auto c = b.add_vertex("c");
    std::vector<VertexId> v(n + 1);
    for (int i = 0; i <= n; ++i)
        v[i] = b.add_vertex("v" + std::to_string(i + 1));
    std::vector<EdgeId> spoke(n + 1), outer(n);
    for (int i = 0; i <= n; ++i)
        spoke[i] = b.add_edge("r" + std::to_string(i + 1), c, v[i]);
    for (int i = 0; i < n; ++i)
        outer[i] = b.add_edge("o" + std::to_string(i + 1), v[i], v[i + 1]);
    for (int i = 0; i < n; ++i)
        b.add_triangle("s" + std::to_string(i + 1), outer[i], spoke[i + 1], spoke[i]);
    return b.build().complex;
}

ComplexPtr builtin_tetrahedron()
{
    ComplexBuilder b;
    std::array<VertexId, 4> v;
    for (int i = 0; i < 4; ++i)
        v[i] = b.add_vertex(std::to_string(i));
    std::map<std::pair<int, int>, EdgeId> e;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            e[{i, j}] = b.add_edge("e" + std::to_string(i) + std::to_string(j), v[i], v[j]);
    auto tri = [&](int i, int j, int k) {
        b.add_triangle("t" + std::to_string(i) + std::to_string(j) + std::to_string(k),
                       e[{j, k}], e[{i, k}], e[{i, j}]);
    };
    tri(0, 1, 2);
    tri(0, 1, 3);
    tri(0, 2, 3);
    tri(1, 2, 3);
    return b.build().complex;
}

ComplexPtr builtin_mermin_torus()
{
    // A 3x1 row of squares cut by diagonals, glued cyclically left-right and
    // (with a one-step cyclic shift) top-bottom.  Vertices u0,u1,u2; edges
    // h_i, v_i: u_i -> u_{i+1} and diagonals g_i: u_i -> u_{i+2}; each g_i is
    // shared by the lower/upper triangle pair of column i.
    ComplexBuilder b;
    std::array<VertexId, 3> u;
    for (int i = 0; i < 3; ++i)
        u[i] = b.add_vertex("u" + std::to_string(i));
    std::array<EdgeId, 3> h, v, g;
    for (int i = 0; i < 3; ++i) {
        h[i] = b.add_edge("h" + std::to_string(i), u[i], u[(i + 1) % 3]);
        v[i] = b.add_edge("v" + std::to_string(i), u[i], u[(i + 1) % 3]);
        g[i] = b.add_edge("g" + std::to_string(i), u[i], u[(i + 2) % 3]);
    }
    for (int i = 0; i < 3; ++i)  // lower triangles s1..s3
        b.add_triangle("s" + std::to_string(i + 1), v[(i + 1) % 3], g[i], h[i]);
    for (int i = 0; i < 3; ++i)  // upper triangles s4..s6
        b.add_triangle("s" + std::to_string(i + 4), h[(i + 1) % 3], g[i], v[i]);
    return b.build().complex;
}

ComplexPtr builtin_by_name(const std::string& kind, int n)
{
    if (kind == "delta2")
        return builtin_delta2();
    if (kind == "cycle")
        return builtin_cycle(n);
    if (kind == "disk")
        return builtin_disk(n);
    if (kind == "tetrahedron")
        return builtin_tetrahedron();
    if (kind == "mermin_torus")
        return builtin_mermin_torus();
    throw InvalidParameterError("unknown builtin kind: " + kind);
}

}  // namespace sdist
