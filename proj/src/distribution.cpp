#include "sdist/distribution.hpp"

#include <sstream>
#include <stdexcept>

#include "sdist/lp.hpp"

namespace sdist {

// ---------------------------------------------------------------------------
// OutcomeTable

bool OutcomeTable::is_point_mass() const
{
    int ones = 0, zeros = 0;
    for (const auto& v : p) {
        if (v == 1)
            ++ones;
        else if (v == 0)
            ++zeros;
    }
    return ones == 1 && zeros == 3;
}

std::pair<int, int> OutcomeTable::point() const
{
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (at(a, b) == 1)
                return {a, b};
    throw std::logic_error("table is not a point mass");
}

OutcomeTable OutcomeTable::uniform()
{
    OutcomeTable t;
    t.p.fill(Rational(1, 4));
    return t;
}

OutcomeTable OutcomeTable::delta(int a, int b)
{
    OutcomeTable t;
    t.p.fill(Rational(0));
    t.at(a & 1, b & 1) = 1;
    return t;
}

OutcomeTable OutcomeTable::convolve(const OutcomeTable& o) const
{
    OutcomeTable r;
    r.p.fill(Rational(0));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    r.at(a ^ c, b ^ d) += at(a, b) * o.at(c, d);
    return r;
}

Rational face_marginal0(const OutcomeTable& t, int slot, int beta)
{
    switch (slot) {
        case 0: return t.at(0, beta & 1) + t.at(1, beta & 1);
        case 1: return t.at(0, 0) + t.at(1, 1);
        case 2: return t.at(0, 0) + t.at(0, 1);
        default: throw std::invalid_argument("face slot out of range");
    }
}

Rational TwistedDistribution::edge_marginal0(EdgeId e) const
{
    const Edge& ed = space_->edge(e);
    if (ed.degenerate)
        return Rational(1);
    const auto& inc = space_->incidences(e);
    if (inc.empty())
        throw std::logic_error("edge " + ed.name + " belongs to no triangle");
    const auto [t, slot] = inc.front();
    return face_marginal0(tables_[t], slot, twist_(t));
}

// ---------------------------------------------------------------------------
// Validation

std::string DistReport::summary() const
{
    std::ostringstream os;
    for (const auto& i : issues) {
        switch (i.kind) {
            case DistIssue::Kind::Negativity: os << "Negativity"; break;
            case DistIssue::Kind::NormalizationFailure: os << "NormalizationFailure"; break;
            case DistIssue::Kind::MarginalMismatch: os << "MarginalMismatch"; break;
            case DistIssue::Kind::DegenerateFaceViolation: os << "DegenerateFaceViolation"; break;
        }
        os << ": " << i.detail << "\n";
    }
    return os.str();
}

DistReport validate_dist(const TwistedDistribution& p)
{
    DistReport rep;
    const SimplicialSet2& x = *p.space();

    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        const OutcomeTable& tab = p.table(t);
        Rational sum = 0;
        bool negative = false;
        for (const auto& v : tab.p) {
            sum += v;
            if (v < 0)
                negative = true;
        }
        if (negative)
            rep.issues.push_back({DistIssue::Kind::Negativity, t, -1, -1,
                                  "triangle " + x.triangle(t).name + " has a negative entry"});
        if (sum != 1)
            rep.issues.push_back({DistIssue::Kind::NormalizationFailure, t, -1, -1,
                                  "triangle " + x.triangle(t).name + " sums to " + to_string(sum)});
    }

    // Shared faces: all incidences of an edge must induce the same marginal.
    for (EdgeId e : x.nondegenerate_edges()) {
        const auto& inc = x.incidences(e);
        if (inc.size() < 2)
            continue;
        const auto [t0, s0] = inc.front();
        const Rational m0 = face_marginal0(p.table(t0), s0, p.twist()(t0));
        for (std::size_t k = 1; k < inc.size(); ++k) {
            const auto [t, s] = inc[k];
            if (face_marginal0(p.table(t), s, p.twist()(t)) != m0) {
                rep.issues.push_back({DistIssue::Kind::MarginalMismatch, t, e, s,
                                      "edge " + x.edge(e).name + " marginal differs between " +
                                          x.triangle(t0).name + " and " + x.triangle(t).name});
                break;
            }
        }
    }

    // Degenerate faces must marginalize to delta^0.
    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        for (int slot = 0; slot < 3; ++slot) {
            const EdgeId e = x.face(t, slot);
            if (!x.edge(e).degenerate)
                continue;
            if (face_marginal0(p.table(t), slot, p.twist()(t)) != 1) {
                std::ostringstream os;
                os << "triangle " << x.triangle(t).name << " face d" << slot
                   << " is degenerate but does not marginalize to delta^0";
                rep.issues.push_back({DistIssue::Kind::DegenerateFaceViolation, t, e, slot, os.str()});
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Correlations

CorrelationVector correlations(const TwistedDistribution& p)
{
    const SimplicialSet2& x = *p.space();
    CorrelationVector cv;
    cv.c.assign(x.edge_count(), Rational(1));
    for (EdgeId e : x.nondegenerate_edges())
        cv.c[e] = 2 * p.edge_marginal0(e) - 1;
    return cv;
}

namespace {

inline int slot_sign(int slot, int a, int b, int beta)
{
    switch (slot) {
        case 0: return ((b + beta) % 2) ? -1 : 1;
        case 1: return ((a + b) % 2) ? -1 : 1;
        default: return (a % 2) ? -1 : 1;
    }
}

}  // namespace

TwistedDistribution from_correlations(ComplexPtr x, const Cochain2& beta, const CorrelationVector& cv)
{
    TwistedDistribution p(x, beta);
    for (TriangleId t = 0; t < x->triangle_count(); ++t) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                Rational q = 1;
                for (int slot = 0; slot < 3; ++slot) {
                    const EdgeId e = x->face(t, slot);
                    const Rational c = x->edge(e).degenerate ? Rational(1) : cv.c[e];
                    q += slot_sign(slot, a, b, beta(t)) * c;
                }
                if (q < 0) {
                    std::ostringstream os;
                    os << "entry (" << a << "," << b << ") of triangle " << x->triangle(t).name
                       << " would be " << to_string(q / 4);
                    throw InfeasibleCorrelationsError(os.str());
                }
                p.table(t).at(a, b) = q / 4;
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Convolution

TwistedDistribution convolve(const TwistedDistribution& p, const TwistedDistribution& q)
{
    if (p.space().get() != q.space().get())
        throw MismatchedComplexError("convolve: distributions live on different complexes");
    TwistedDistribution r(p.space(), p.twist() + q.twist());
    for (TriangleId t = 0; t < p.space()->triangle_count(); ++t)
        r.table(t) = p.table(t).convolve(q.table(t));
    return r;
}

// ---------------------------------------------------------------------------
// Deterministic distributions

TwistedDistribution deterministic_distribution(ComplexPtr x, const Cochain2& beta, const Cochain1& s)
{
    TwistedDistribution d(x, beta);
    for (TriangleId t = 0; t < x->triangle_count(); ++t)
        d.table(t) = OutcomeTable::delta(s(x->face(t, 2)), s(x->face(t, 0)) ^ beta(t));
    return d;
}

std::vector<Cochain1> deterministic_all(const SimplicialSet2& x, const Cochain2& beta, int max_log2)
{
    auto tr = trivialize_full(x, beta);
    if (!tr)
        return {};
    const int k = static_cast<int>(tr->kernel.size());
    if (k > max_log2) {
        std::ostringstream os;
        os << "solution space has dimension " << k << " (cap 2^" << max_log2 << ")";
        throw SolutionSpaceTooLargeError(os.str());
    }
    std::vector<Cochain1> out;
    out.reserve(std::size_t(1) << k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
        Cochain1 s = tr->particular;
        for (int i = 0; i < k; ++i)
            if (mask & (std::uint64_t(1) << i))
                s = s + tr->kernel[i];
        out.push_back(std::move(s));
    }
    return out;
}

TwistedDistribution theta(ComplexPtr x, const Cochain2& beta,
                          const std::vector<std::pair<Cochain1, Rational>>& weights)
{
    TwistedDistribution out(x, beta);
    Rational total = 0;
    for (const auto& [s, w] : weights) {
        if (w < 0)
            throw std::invalid_argument("theta: negative weight");
        if (!(coboundary1(*x, s) == beta))
            throw std::invalid_argument("theta: weight on a non-section (delta s != beta)");
        total += w;
        const TwistedDistribution d = deterministic_distribution(x, beta, s);
        for (TriangleId t = 0; t < x->triangle_count(); ++t)
            for (int i = 0; i < 4; ++i)
                out.table(t).p[i] += w * d.table(t).p[i];
    }
    if (total != 1)
        throw std::invalid_argument("theta: weights sum to " + to_string(total));
    return out;
}

ContextualityResult is_contextual(const TwistedDistribution& p)
{
    ContextualityResult res;
    const SimplicialSet2& x = *p.space();
    const auto sections = deterministic_all(x, p.twist());
    if (sections.empty()) {
        res.contextual = true;
        res.empty_deterministic_set = true;
        return res;
    }

    const int m = 4 * x.triangle_count();
    const int n = static_cast<int>(sections.size());
    MatrixR a(m, n);
    a.setZero();
    VectorR b(m);
    for (int j = 0; j < n; ++j) {
        const TwistedDistribution d = deterministic_distribution(p.space(), p.twist(), sections[j]);
        for (TriangleId t = 0; t < x.triangle_count(); ++t) {
            const auto [pa, pb] = d.table(t).point();
            a(4 * t + 2 * pa + pb, j) = 1;
        }
    }
    for (TriangleId t = 0; t < x.triangle_count(); ++t)
        for (int i = 0; i < 4; ++i)
            b(4 * t + i) = p.table(t).p[i];

    const LpFeasibility lp = lp_feasible(a, b);
    res.contextual = !lp.feasible;
    if (lp.feasible)
        for (int j = 0; j < n; ++j)
            if (lp.solution[j] > 0)
                res.certificate.emplace_back(sections[j], lp.solution[j]);
    return res;
}

// ---------------------------------------------------------------------------
// Z_p and phi

SimplicialSubset deterministic_subcomplex(const TwistedDistribution& p)
{
    const SimplicialSet2& x = *p.space();
    std::set<EdgeId> edges;
    std::set<TriangleId> tris;
    for (EdgeId e : x.nondegenerate_edges()) {
        if (x.incidences(e).empty())
            continue;
        const Rational m = p.edge_marginal0(e);
        if (m == 0 || m == 1)
            edges.insert(e);
    }
    for (TriangleId t = 0; t < x.triangle_count(); ++t)
        if (p.table(t).is_point_mass())
            tris.insert(t);
    return SimplicialSubset::generated_by(p.space(), edges, tris);
}

Cochain1 deterministic_outcomes(const TwistedDistribution& p)
{
    const SimplicialSet2& x = *p.space();
    Cochain1 s(x);
    for (EdgeId e : x.nondegenerate_edges()) {
        if (x.incidences(e).empty())
            continue;
        if (p.edge_marginal0(e) == 0)
            s.set(x, e, 1);
    }
    return s;
}

namespace {

// Point of the table of delta^{s~} on triangle t: (s(d2 t), s(d0 t) + delta s~(t)).
std::pair<int, int> shift_point(const SimplicialSet2& x, const Cochain1& s, TriangleId t)
{
    const int ds = s(x.face(t, 0)) ^ s(x.face(t, 1)) ^ s(x.face(t, 2));
    return {s(x.face(t, 2)), s(x.face(t, 0)) ^ ds};
}

OutcomeTable shifted_table(const OutcomeTable& tab, int c, int d)
{
    OutcomeTable out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            out.at(a, b) = tab.at(a ^ c, b ^ d);
    return out;
}

}  // namespace

PhiResult phi_along(const TwistedDistribution& p, const SimplicialSubset& z, const Cochain1& s)
{
    const SimplicialSet2& x = *p.space();
    for (EdgeId e : x.nondegenerate_edges()) {
        if (!z.contains_edge(e)) {
            if (s(e))
                throw RestrictionNotDeterministicError(
                    "section assigns an outcome outside the collapsed subset (edge " +
                    x.edge(e).name + ")");
            continue;
        }
        const Rational m = p.edge_marginal0(e);
        if (m != 0 && m != 1)
            throw RestrictionNotDeterministicError("p is not deterministic on edge " +
                                                   x.edge(e).name);
        if (s(e) != ((m == 0) ? 1 : 0))
            throw RestrictionNotDeterministicError("section disagrees with p on edge " +
                                                   x.edge(e).name);
    }
    for (TriangleId t : z.triangles())
        if (!p.table(t).is_point_mass())
            throw RestrictionNotDeterministicError("p is not deterministic on triangle " +
                                                   x.triangle(t).name);

    QuotientMap q = quotient(p.space(), z);
    Cochain2 beta_bar = descend_twist(q, p.twist(), s);

    TwistedDistribution image(q.target, beta_bar);
    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        const TriangleId tt = q.triangle_map[t];
        if (tt < 0)
            continue;
        const auto [c, d] = shift_point(x, s, t);
        image.table(tt) = shifted_table(p.table(t), c, d);
    }
    return PhiResult{z, std::move(q), s, std::move(beta_bar), std::move(image)};
}

PhiResult phi(const TwistedDistribution& p, const Cochain1& s)
{
    return phi_along(p, deterministic_subcomplex(p), s);
}

PhiResult phi(const TwistedDistribution& p)
{
    return phi(p, deterministic_outcomes(p));
}

TwistedDistribution phi_inverse(const QuotientMap& q, const Cochain1& s, const Cochain2& beta_source,
                                const TwistedDistribution& pbar)
{
    if (pbar.space().get() != q.target.get())
        throw MismatchedComplexError("phi_inverse: distribution does not live on the quotient");
    const SimplicialSet2& x = *q.source;
    TwistedDistribution p(q.source, beta_source);
    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        const TriangleId tt = q.triangle_map[t];
        if (tt < 0) {
            p.table(t) = OutcomeTable::delta(s(x.face(t, 2)), s(x.face(t, 0)) ^ beta_source(t));
        } else {
            const auto [c, d] = shift_point(x, s, t);
            p.table(t) = shifted_table(pbar.table(tt), c, d);
        }
    }
    return p;
}

}  // namespace sdist
