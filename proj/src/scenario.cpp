#include "sdist/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "sdist/rational.hpp"

namespace sdist {

namespace {

struct Token {
    std::string text;
    int line;
    int col;
};

// Whitespace-separated tokens; '{', '}', '=', ':' stand alone.
std::vector<Token> tokenize(const std::string& text)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::string cur;
    int cur_col = 0;
    auto flush = [&]() {
        if (!cur.empty()) {
            out.push_back({cur, line, cur_col});
            cur.clear();
        }
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '#') {
            flush();
            while (i + 1 < text.size() && text[i + 1] != '\n')
                ++i;
            continue;
        }
        if (c == '\n') {
            flush();
            out.push_back({"\n", line, col});
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
            ++col;
            continue;
        }
        if (c == '{' || c == '}' || c == '=' || c == ':') {
            flush();
            out.push_back({std::string(1, c), line, col});
            ++col;
            continue;
        }
        if (cur.empty())
            cur_col = col;
        cur += c;
        ++col;
    }
    flush();
    out.push_back({"\n", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}
    ScenarioFile run();

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    bool at_end() const { return pos_ + 1 >= toks_.size(); }
    Token next() { return toks_[pos_++]; }
    void skip_newlines()
    {
        while (!at_end() && peek().text == "\n")
            ++pos_;
    }
    bool at_newline() const { return peek().text == "\n"; }

    [[noreturn]] void syntax(const Token& t, const std::string& msg) const
    {
        throw ScenarioError(ScenarioError::Kind::Syntax, t.line, t.col, msg);
    }
    [[noreturn]] void unresolved(const Token& t, const std::string& msg) const
    {
        throw ScenarioError(ScenarioError::Kind::UnresolvedReference, t.line, t.col, msg);
    }
    [[noreturn]] void invalid(const Token& t, const std::string& msg) const
    {
        throw ScenarioError(ScenarioError::Kind::Validation, t.line, t.col, msg);
    }

    Token expect_word(const std::string& what)
    {
        const Token t = next();
        if (t.text == "\n" || t.text == "{" || t.text == "}" || t.text == "=" || t.text == ":")
            syntax(t, "expected " + what);
        return t;
    }
    void expect_literal(const std::string& lit)
    {
        const Token t = next();
        if (t.text != lit)
            syntax(t, "expected '" + lit + "', got '" + t.text + "'");
    }
    void expect_eol()
    {
        const Token t = next();
        if (t.text != "\n")
            syntax(t, "unexpected trailing token '" + t.text + "'");
    }

    // Declaration-time state (builder ids).
    ComplexBuilder builder_;
    std::map<std::string, VertexId> vname_;
    std::map<std::string, EdgeId> ename_;
    std::map<std::string, TriangleId> tname_;
    std::vector<std::array<EdgeId, 3>> tri_faces_;  // builder edge ids per declared triangle

    struct RawCocycle {
        Token name;
        std::vector<std::pair<Token, int>> entries;
    };
    struct RawDist {
        Token name;
        Token twist;
        std::vector<std::pair<Token, std::array<Rational, 4>>> entries;
    };
    struct RawSubset {
        Token name;
        std::vector<Token> members;
    };
    std::vector<RawCocycle> raw_cocycles_;
    std::vector<RawDist> raw_dists_;
    std::vector<RawSubset> raw_subsets_;
    std::string scenario_name_;

    VertexId vertex_ref(const Token& t)
    {
        const auto it = vname_.find(t.text);
        if (it == vname_.end())
            unresolved(t, "unknown vertex '" + t.text + "'");
        return it->second;
    }
    EdgeId edge_ref(const Token& t)
    {
        const auto it = ename_.find(t.text);
        if (it == ename_.end())
            unresolved(t, "unknown edge '" + t.text + "'");
        return it->second;
    }
    TriangleId triangle_ref(const Token& t)
    {
        const auto it = tname_.find(t.text);
        if (it == tname_.end())
            unresolved(t, "unknown triangle '" + t.text + "'");
        return it->second;
    }

    void parse_vertex_line();
    void parse_edge_line();
    void parse_triangle_line();
    void parse_glue_line();
    void parse_collapse_line();
    void parse_cocycle_block();
    void parse_distribution_block();
    void parse_subset_line();
};

void Parser::parse_vertex_line()
{
    bool any = false;
    while (!at_newline()) {
        const Token t = expect_word("vertex name");
        if (vname_.count(t.text))
            syntax(t, "vertex '" + t.text + "' declared twice");
        vname_[t.text] = builder_.add_vertex(t.text);
        any = true;
    }
    if (!any)
        syntax(peek(), "empty vertex declaration");
    expect_eol();
}

void Parser::parse_edge_line()
{
    const Token name = expect_word("edge name");
    if (ename_.count(name.text))
        syntax(name, "edge '" + name.text + "' declared twice");
    expect_literal(":");
    const Token first = expect_word("source vertex or collapsed(V)");
    if (first.text.rfind("collapsed(", 0) == 0 && first.text.back() == ')') {
        Token v = first;
        v.text = first.text.substr(10, first.text.size() - 11);
        v.col += 10;
        ename_[name.text] = builder_.add_degenerate_edge(name.text, vertex_ref(v));
        expect_eol();
        return;
    }
    const VertexId src = vertex_ref(first);
    expect_literal("->");
    const Token dst = expect_word("target vertex");
    ename_[name.text] = builder_.add_edge(name.text, src, vertex_ref(dst));
    expect_eol();
}

void Parser::parse_triangle_line()
{
    const Token name = expect_word("triangle name");
    if (tname_.count(name.text))
        syntax(name, "triangle '" + name.text + "' declared twice");
    expect_literal(":");
    std::array<EdgeId, 3> face{{-1, -1, -1}};
    for (int k = 0; k < 3; ++k) {
        const Token slot = expect_word("face slot dI");
        if (slot.text.size() != 2 || slot.text[0] != 'd' || slot.text[1] < '0' || slot.text[1] > '2')
            syntax(slot, "expected face slot d0, d1 or d2");
        const int i = slot.text[1] - '0';
        if (face[i] >= 0)
            syntax(slot, "face d" + std::to_string(i) + " given twice");
        expect_literal("=");
        face[i] = edge_ref(expect_word("edge name"));
    }
    tname_[name.text] = builder_.add_triangle(name.text, face[0], face[1], face[2]);
    tri_faces_.push_back(face);
    expect_eol();
}

void Parser::parse_glue_line()
{
    auto face_ref = [&](const Token& t) -> EdgeId {
        const auto dot = t.text.find('.');
        if (dot == std::string::npos)
            syntax(t, "expected TRIANGLE.dI");
        Token tri = t;
        tri.text = t.text.substr(0, dot);
        const std::string slot = t.text.substr(dot + 1);
        if (slot.size() != 2 || slot[0] != 'd' || slot[1] < '0' || slot[1] > '2')
            syntax(t, "expected face slot d0, d1 or d2");
        return tri_faces_[triangle_ref(tri)][slot[1] - '0'];
    };
    const Token lhs = expect_word("TRIANGLE.dI");
    expect_literal("=");
    const Token rhs = expect_word("TRIANGLE.dJ");
    builder_.glue(face_ref(lhs), face_ref(rhs));
    expect_eol();
}

void Parser::parse_collapse_line()
{
    const Token e = expect_word("edge name");
    builder_.collapse(edge_ref(e));
    expect_eol();
}

void Parser::parse_cocycle_block()
{
    RawCocycle c;
    c.name = expect_word("cocycle name");
    expect_literal("{");
    while (true) {
        skip_newlines();
        if (at_end())
            syntax(peek(), "unterminated cocycle block");
        if (peek().text == "}") {
            next();
            break;
        }
        const Token tri = expect_word("triangle name");
        expect_literal("=");
        const Token bit = expect_word("0 or 1");
        if (bit.text != "0" && bit.text != "1")
            syntax(bit, "cocycle values are 0 or 1");
        c.entries.emplace_back(tri, bit.text == "1" ? 1 : 0);
    }
    expect_eol();
    raw_cocycles_.push_back(std::move(c));
}

void Parser::parse_distribution_block()
{
    RawDist d;
    d.name = expect_word("distribution name");
    expect_literal("twist");
    d.twist = expect_word("cocycle name");
    expect_literal("{");
    while (true) {
        skip_newlines();
        if (at_end())
            syntax(peek(), "unterminated distribution block");
        if (peek().text == "}") {
            next();
            break;
        }
        const Token tri = expect_word("triangle name");
        expect_literal("=");
        std::array<Rational, 4> q;
        for (int i = 0; i < 4; ++i) {
            const Token v = expect_word("rational entry");
            const auto r = parse_rational(v.text);
            if (!r)
                syntax(v, "malformed rational '" + v.text + "'");
            q[i] = *r;
        }
        d.entries.emplace_back(tri, q);
    }
    expect_eol();
    raw_dists_.push_back(std::move(d));
}

void Parser::parse_subset_line()
{
    RawSubset s;
    s.name = expect_word("subset name");
    expect_literal(":");
    while (!at_newline())
        s.members.push_back(expect_word("edge or triangle name"));
    expect_eol();
    raw_subsets_.push_back(std::move(s));
}

ScenarioFile Parser::run()
{
    skip_newlines();
    {
        const Token kw = expect_word("'scenario'");
        if (kw.text != "scenario")
            syntax(kw, "file must start with 'scenario NAME'");
        scenario_name_ = expect_word("scenario name").text;
        expect_eol();
    }
    while (true) {
        skip_newlines();
        if (at_end())
            break;
        const Token kw = expect_word("directive");
        if (kw.text == "vertex")
            parse_vertex_line();
        else if (kw.text == "edge")
            parse_edge_line();
        else if (kw.text == "triangle")
            parse_triangle_line();
        else if (kw.text == "glue")
            parse_glue_line();
        else if (kw.text == "collapse")
            parse_collapse_line();
        else if (kw.text == "cocycle")
            parse_cocycle_block();
        else if (kw.text == "distribution")
            parse_distribution_block();
        else if (kw.text == "subset")
            parse_subset_line();
        else
            syntax(kw, "unknown directive '" + kw.text + "'");
    }

    ScenarioFile sf;
    sf.name = scenario_name_;
    const auto built = builder_.build();
    sf.complex = built.complex;
    sf.report = validate(*sf.complex);

    if (!sf.report.structurally_valid())
        throw ScenarioError(ScenarioError::Kind::Validation, 0, 0,
                            "complex violates simplicial identities:\n" + sf.report.summary());
    for (const auto& issue : sf.report.issues)
        if (issue.kind == ValidationIssue::Kind::IsolatedEdge)
            throw ScenarioError(ScenarioError::Kind::Validation, 0, 0,
                                "scenario spaces must be generated by triangles: " + issue.detail);

    for (const auto& [n, id] : ename_)
        sf.edge_names[n] = built.edge_map[id];
    for (const auto& [n, id] : tname_)
        sf.triangle_names[n] = built.triangle_map[id];

    for (const auto& raw : raw_cocycles_) {
        if (sf.find_cocycle(raw.name.text))
            syntax(raw.name, "cocycle '" + raw.name.text + "' declared twice");
        Cochain2 beta(*sf.complex);
        for (const auto& [tok, bit] : raw.entries) {
            const auto it = tname_.find(tok.text);
            if (it == tname_.end())
                unresolved(tok, "unknown triangle '" + tok.text + "'");
            const TriangleId t = built.triangle_map[it->second];
            beta.set(t, beta(t) ^ bit);
        }
        sf.cocycles.emplace_back(raw.name.text, std::move(beta));
    }

    for (const auto& raw : raw_dists_) {
        if (sf.find_distribution(raw.name.text))
            syntax(raw.name, "distribution '" + raw.name.text + "' declared twice");
        const Cochain2* beta = sf.find_cocycle(raw.twist.text);
        if (!beta)
            unresolved(raw.twist, "unknown cocycle '" + raw.twist.text + "'");
        TwistedDistribution dist(sf.complex, *beta);
        std::vector<bool> seen(sf.complex->triangle_count(), false);
        for (const auto& [tok, q] : raw.entries) {
            const auto it = tname_.find(tok.text);
            if (it == tname_.end())
                unresolved(tok, "unknown triangle '" + tok.text + "'");
            const TriangleId t = built.triangle_map[it->second];
            if (seen[t])
                syntax(tok, "table for triangle '" + tok.text + "' given twice");
            seen[t] = true;
            for (int i = 0; i < 4; ++i)
                dist.table(t).p[i] = q[i];
        }
        for (TriangleId t = 0; t < sf.complex->triangle_count(); ++t)
            if (!seen[t])
                invalid(raw.name, "distribution '" + raw.name.text + "' misses a table for triangle '" +
                                      sf.complex->triangle(t).name + "'");
        const DistReport rep = validate_dist(dist);
        if (!rep.ok())
            invalid(raw.name, "distribution '" + raw.name.text + "' is invalid:\n" + rep.summary());
        sf.distributions.push_back({raw.name.text, raw.twist.text, std::move(dist)});
    }

    for (const auto& raw : raw_subsets_) {
        std::set<EdgeId> es;
        std::set<TriangleId> ts;
        for (const auto& tok : raw.members) {
            if (const auto it = ename_.find(tok.text); it != ename_.end())
                es.insert(built.edge_map[it->second]);
            else if (const auto jt = tname_.find(tok.text); jt != tname_.end())
                ts.insert(built.triangle_map[jt->second]);
            else
                unresolved(tok, "unknown edge or triangle '" + tok.text + "'");
        }
        sf.subsets.emplace_back(raw.name.text, SimplicialSubset::generated_by(sf.complex, es, ts));
    }
    return sf;
}

}  // namespace

const Cochain2* ScenarioFile::find_cocycle(const std::string& n) const
{
    for (const auto& [name, c] : cocycles)
        if (name == n)
            return &c;
    return nullptr;
}

const ScenarioFile::NamedDist* ScenarioFile::find_distribution(const std::string& n) const
{
    for (const auto& d : distributions)
        if (d.name == n)
            return &d;
    return nullptr;
}

ScenarioFile parse_scenario(const std::string& text)
{
    return Parser(text).run();
}

std::string print_scenario(const ScenarioFile& sf)
{
    const SimplicialSet2& x = *sf.complex;
    std::ostringstream os;
    os << "scenario " << sf.name << "\n";

    os << "vertex";
    for (VertexId v = 0; v < x.vertex_count(); ++v)
        os << " " << x.vertex_name(v);
    os << "\n";

    for (EdgeId e = 0; e < x.edge_count(); ++e) {
        const Edge& ed = x.edge(e);
        if (ed.degenerate)
            os << "edge " << ed.name << " : collapsed(" << x.vertex_name(ed.src) << ")\n";
        else
            os << "edge " << ed.name << " : " << x.vertex_name(ed.src) << " -> "
               << x.vertex_name(ed.dst) << "\n";
    }
    for (TriangleId t = 0; t < x.triangle_count(); ++t) {
        const Triangle& tr = x.triangle(t);
        os << "triangle " << tr.name << " : d0=" << x.edge(tr.face[0]).name
           << " d1=" << x.edge(tr.face[1]).name << " d2=" << x.edge(tr.face[2]).name << "\n";
    }
    for (const auto& [name, beta] : sf.cocycles) {
        os << "cocycle " << name << " {";
        for (TriangleId t = 0; t < x.triangle_count(); ++t)
            if (beta(t))
                os << " " << x.triangle(t).name << "=1";
        os << " }\n";
    }
    for (const auto& d : sf.distributions) {
        os << "distribution " << d.name << " twist " << d.twist << " {\n";
        for (TriangleId t = 0; t < x.triangle_count(); ++t) {
            os << "  " << x.triangle(t).name << " =";
            for (int i = 0; i < 4; ++i)
                os << " " << to_string(d.dist.table(t).p[i]);
            os << "\n";
        }
        os << "}\n";
    }
    for (const auto& [name, sub] : sf.subsets) {
        os << "subset " << name << " :";
        for (EdgeId e : sub.edges())
            os << " " << x.edge(e).name;
        for (TriangleId t : sub.triangles())
            os << " " << x.triangle(t).name;
        os << "\n";
    }
    return os.str();
}

bool structurally_equal(const ScenarioFile& a, const ScenarioFile& b)
{
    const SimplicialSet2& xa = *a.complex;
    const SimplicialSet2& xb = *b.complex;
    if (xa.vertex_count() != xb.vertex_count() || xa.edge_count() != xb.edge_count() ||
        xa.triangle_count() != xb.triangle_count())
        return false;
    for (EdgeId e = 0; e < xa.edge_count(); ++e) {
        const Edge& ea = xa.edge(e);
        const Edge& eb = xb.edge(e);
        if (ea.src != eb.src || ea.dst != eb.dst || ea.degenerate != eb.degenerate)
            return false;
    }
    for (TriangleId t = 0; t < xa.triangle_count(); ++t)
        if (xa.triangle(t).face != xb.triangle(t).face)
            return false;
    if (a.cocycles.size() != b.cocycles.size() || a.distributions.size() != b.distributions.size())
        return false;
    for (std::size_t i = 0; i < a.cocycles.size(); ++i)
        if (a.cocycles[i].first != b.cocycles[i].first || !(a.cocycles[i].second == b.cocycles[i].second))
            return false;
    for (std::size_t i = 0; i < a.distributions.size(); ++i) {
        const auto& da = a.distributions[i];
        const auto& db = b.distributions[i];
        if (da.name != db.name || da.twist != db.twist || !(da.dist.twist() == db.dist.twist()))
            return false;
        for (TriangleId t = 0; t < xa.triangle_count(); ++t)
            if (!(da.dist.table(t) == db.dist.table(t)))
                return false;
    }
    return true;
}

ScenarioFile scenario_from_builtin(const std::string& kind, int n)
{
    ScenarioFile sf;
    sf.complex = builtin_by_name(kind, n);
    sf.name = (kind == "cycle" || kind == "disk") ? kind + std::to_string(n) : kind;
    sf.report = validate(*sf.complex);
    const SimplicialSet2& x = *sf.complex;
    for (EdgeId e = 0; e < x.edge_count(); ++e)
        if (!x.edge(e).degenerate)
            sf.edge_names[x.edge(e).name] = e;
    for (TriangleId t = 0; t < x.triangle_count(); ++t)
        sf.triangle_names[x.triangle(t).name] = t;
    sf.cocycles.emplace_back("zero", Cochain2(x));
    Cochain2 odd(x);
    odd.set(0, 1);
    sf.cocycles.emplace_back("odd", std::move(odd));
    return sf;
}

}  // namespace sdist
