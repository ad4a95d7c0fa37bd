/**
 * Finite 2-dimensional simplicial sets.
 *
 * A complex is a directed graph (vertices, edges with source/target, one
 * optional degenerate edge per vertex) together with generating triangles
 * whose faces d0, d1, d2 name edges subject to the simplicial identities
 *
 *     target(d2 s) = source(d0 s),
 *     source(d2 s) = source(d1 s),
 *     target(d0 s) = target(d1 s).
 *
 * Gluings are resolved at build time by union-find on edge ids; collapsing
 * an edge merges its endpoints and turns the edge into the degenerate edge
 * of the merged vertex.  Complexes are immutable once built and are shared
 * through ComplexPtr; all downstream objects (cochains, distributions,
 * polytopes, graphs) reference them read-only.
 */

#ifndef SDIST_SIMPLICIAL_SET_HPP
#define SDIST_SIMPLICIAL_SET_HPP

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdist {

using VertexId = int;
using EdgeId = int;
using TriangleId = int;

struct Edge {
    VertexId src = -1;
    VertexId dst = -1;
    bool degenerate = false;  // s0 of a vertex; implies src == dst
    std::string name;
};

struct Triangle {
    std::array<EdgeId, 3> face{{-1, -1, -1}};  // face[i] = d_i
    std::string name;
};

class SimplicialSet2;
class SimplicialSubset;
struct QuotientMap;
using ComplexPtr = std::shared_ptr<const SimplicialSet2>;

class SimplicialSet2 {
public:
    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const Triangle& triangle(TriangleId t) const { return triangles_[t]; }
    EdgeId face(TriangleId t, int i) const { return triangles_[t].face[i]; }

    /** Ids of non-degenerate edges (X_1 degrees-of-freedom), ascending. */
    const std::vector<EdgeId>& nondegenerate_edges() const { return nondeg_edges_; }
    int nondegenerate_edge_count() const { return static_cast<int>(nondeg_edges_.size()); }

    std::optional<EdgeId> degenerate_edge_at(VertexId v) const;

    /** Distinct edges in the boundary of a triangle (the set ∂s). */
    std::vector<EdgeId> boundary_set(TriangleId t) const;
    /** Distinct non-degenerate edges in the boundary (the set ∂s°). */
    std::vector<EdgeId> boundary_nondegenerate(TriangleId t) const;

    /** (triangle, face slot) incidences of an edge, ascending. */
    const std::vector<std::pair<TriangleId, int>>& incidences(EdgeId e) const { return incidences_[e]; }

private:
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<Triangle> triangles_;
    std::vector<EdgeId> nondeg_edges_;
    std::vector<EdgeId> degenerate_at_;  // by vertex; -1 when absent
    std::vector<std::vector<std::pair<TriangleId, int>>> incidences_;

    void freeze();
    friend class ComplexBuilder;
    friend QuotientMap quotient(ComplexPtr x, const SimplicialSubset& z);
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationIssue {
    enum class Kind {
        IdentityViolation,       // a simplicial identity fails on a triangle
        BoundaryShapeViolation,  // |∂s°| not in {2,3}, repeated non-degenerate
                                 // face, or |∂s°|=2 without a degenerate face
        IsolatedEdge,            // non-degenerate edge in no triangle
    };
    Kind kind;
    TriangleId tri = -1;
    EdgeId edge = -1;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    /** Simplicial identities hold; the complex is a meaningful object. */
    bool structurally_valid() const;
    /**
     * Additionally satisfies the standing boundary-shape assumption (every
     * triangle has three distinct non-degenerate faces, or two plus one
     * degenerate face) and is generated by its triangles.  Required by the
     * signed-graph machinery; distributions/polytopes only need structure.
     */
    bool shape_valid() const { return issues.empty(); }
    std::string summary() const;
};

ValidationReport validate(const SimplicialSet2& x);

/** Polytope dimension count d(X) = |X_1°| - sum_s |∂s - ∂s°|. */
int dimension(const SimplicialSet2& x);

// ---------------------------------------------------------------------------
// Subsets and quotients

class NotFaceClosedError : public std::runtime_error {
public:
    explicit NotFaceClosedError(const std::string& what) : std::runtime_error(what) {}
};

class InvalidParameterError : public std::runtime_error {
public:
    explicit InvalidParameterError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A face-closed subset of a complex.  Degenerate edges are implicit: s0(v)
 * belongs to the subset exactly when v does.
 */
class SimplicialSubset {
public:
    SimplicialSubset(ComplexPtr parent, std::set<EdgeId> edges, std::set<TriangleId> triangles);

    /** Close the given generators under faces and endpoints. */
    static SimplicialSubset generated_by(ComplexPtr parent, const std::set<EdgeId>& edges,
                                         const std::set<TriangleId>& triangles);

    const ComplexPtr& parent() const { return parent_; }
    const std::set<VertexId>& vertices() const { return vertices_; }
    const std::set<EdgeId>& edges() const { return edges_; }  // non-degenerate members
    const std::set<TriangleId>& triangles() const { return triangles_; }

    bool contains_edge(EdgeId e) const;
    bool empty() const { return vertices_.empty() && edges_.empty() && triangles_.empty(); }

    int nondegenerate_edge_count() const { return static_cast<int>(edges_.size()); }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }

private:
    ComplexPtr parent_;
    std::set<VertexId> vertices_;
    std::set<EdgeId> edges_;
    std::set<TriangleId> triangles_;
    void check_face_closed() const;
};

/**
 * X -> X/Z collapsing a face-closed subset to a basepoint.  Non-degenerate
 * simplices of the target are in bijection with those of the source that lie
 * outside Z; Z-edges map to the degenerate edge at the basepoint and
 * Z-triangles map to (degenerate) nothing, encoded as -1.
 */
struct QuotientMap {
    ComplexPtr source;
    ComplexPtr target;
    SimplicialSubset collapsed;
    VertexId basepoint = -1;
    EdgeId basepoint_edge = -1;             // s0(basepoint) in the target
    std::vector<VertexId> vertex_map;       // source vertex -> target vertex
    std::vector<EdgeId> edge_map;           // source edge -> target edge
    std::vector<TriangleId> triangle_map;   // source triangle -> target (-1 if killed)
    ValidationReport target_report;

    QuotientMap(ComplexPtr src, SimplicialSubset z) : source(std::move(src)), collapsed(std::move(z)) {}
};

QuotientMap quotient(ComplexPtr x, const SimplicialSubset& z);

// ---------------------------------------------------------------------------
// Builder

class ComplexBuilder {
public:
    VertexId add_vertex(const std::string& name);
    EdgeId add_edge(const std::string& name, VertexId src, VertexId dst);
    EdgeId add_degenerate_edge(const std::string& name, VertexId v);
    TriangleId add_triangle(const std::string& name, EdgeId d0, EdgeId d1, EdgeId d2);

    /** Identify two edges (and hence their endpoints pairwise). */
    void glue(EdgeId a, EdgeId b);
    /** Collapse an edge: merge its endpoints, edge becomes degenerate. */
    void collapse(EdgeId e);

    struct Result {
        ComplexPtr complex;
        std::vector<VertexId> vertex_map;  // builder id -> final id
        std::vector<EdgeId> edge_map;
        std::vector<TriangleId> triangle_map;
    };
    Result build();

private:
    struct RawEdge {
        std::string name;
        VertexId src, dst;
        bool declared_degenerate = false;
    };
    std::vector<std::string> vertices_;
    std::vector<RawEdge> edges_;
    std::vector<Triangle> triangles_;
    std::vector<int> vparent_, eparent_;
    std::vector<bool> collapsed_;
    int vfind(int v);
    int efind(int e);
    void vunion(int a, int b);
    void eunion(int a, int b);
};

// ---------------------------------------------------------------------------
// Built-in scenarios

ComplexPtr builtin_delta2();
ComplexPtr builtin_cycle(int n);        // n >= 2
ComplexPtr builtin_disk(int n);         // n >= 1, fan triangulation
ComplexPtr builtin_tetrahedron();
ComplexPtr builtin_mermin_torus();

/** Names: delta2, cycle, disk, tetrahedron, mermin_torus. */
ComplexPtr builtin_by_name(const std::string& kind, int n);

}  // namespace sdist

#endif  // SDIST_SIMPLICIAL_SET_HPP
