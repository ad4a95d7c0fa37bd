#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "sdist/distribution.hpp"
#include "sdist/polytope.hpp"
#include "sdist/scenario.hpp"
#include "sdist/signed_graph.hpp"

using namespace sdist;
using namespace sdist::testing;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kScenarioDir = "scenarios";

std::string scenario_path(const std::string& name)
{
    // Tests run from the build directory; the scenarios live in the source tree.
    for (const std::string prefix : {"", "../", "../../"}) {
        std::ifstream probe(prefix + kScenarioDir + "/" + name);
        if (probe)
            return prefix + kScenarioDir + "/" + name;
    }
    return std::string(kScenarioDir) + "/" + name;
}

}  // namespace

TEST_CASE("chsh file parses to the builtin cycle(4)")
{
    const ScenarioFile sf = parse_scenario(slurp(scenario_path("chsh.sdist")));
    const auto cyc = builtin_cycle(4);
    REQUIRE(sf.complex->vertex_count() == cyc->vertex_count());
    REQUIRE(sf.complex->edge_count() == cyc->edge_count());
    REQUIRE(sf.complex->triangle_count() == cyc->triangle_count());
    for (EdgeId e = 0; e < cyc->edge_count(); ++e) {
        CHECK(sf.complex->edge(e).src == cyc->edge(e).src);
        CHECK(sf.complex->edge(e).dst == cyc->edge(e).dst);
        CHECK(sf.complex->edge(e).name == cyc->edge(e).name);
    }
    for (TriangleId t = 0; t < cyc->triangle_count(); ++t)
        CHECK(sf.complex->triangle(t).face == cyc->triangle(t).face);

    REQUIRE(sf.find_cocycle("zero") != nullptr);
    CHECK(sf.find_cocycle("zero")->is_zero());
    const auto* pr = sf.find_distribution("pr");
    REQUIRE(pr != nullptr);
    CHECK(is_contextual(pr->dist).contextual);
    CHECK(rank_of(pr->dist).rank == 8);
    REQUIRE(sf.subsets.size() == 1);
    CHECK(sf.subsets.front().second.nondegenerate_edge_count() == 4);
}

TEST_CASE("all shipped files parse, validate and round trip")
{
    for (const auto* name : {"chsh.sdist", "tetrahedron.sdist", "mermin_torus.sdist",
                             "delta2.sdist", "disk3.sdist", "glued_triangle.sdist"}) {
        INFO(name);
        const ScenarioFile sf = parse_scenario(slurp(scenario_path(name)));
        const std::string printed = print_scenario(sf);
        const ScenarioFile again = parse_scenario(printed);
        CHECK(structurally_equal(sf, again));
        // The canonical form is a fixed point.
        CHECK(print_scenario(again) == printed);
    }
}

TEST_CASE("unresolved references are rejected")
{
    const std::string text =
        "scenario bad\n"
        "vertex a b c\n"
        "edge x : a -> b\n"
        "edge y : b -> c\n"
        "triangle t : d0=y d1=ghost d2=x\n";
    try {
        parse_scenario(text);
        FAIL("expected UnresolvedReference");
    } catch (const ScenarioError& e) {
        CHECK(e.kind == ScenarioError::Kind::UnresolvedReference);
        CHECK(e.line == 5);
    }
}

TEST_CASE("distributions failing validation are rejected")
{
    const std::string text =
        "scenario bad\n"
        "vertex 0 1 2\n"
        "edge x : 0 -> 1\n"
        "edge z : 0 -> 2\n"
        "edge y : 1 -> 2\n"
        "triangle s : d0=y d1=z d2=x\n"
        "cocycle zero { }\n"
        "distribution p twist zero {\n"
        "  s = 1/4 1/4 1/4 0\n"
        "}\n";
    try {
        parse_scenario(text);
        FAIL("expected ValidationError");
    } catch (const ScenarioError& e) {
        CHECK(e.kind == ScenarioError::Kind::Validation);
        CHECK(std::string(e.what()).find("NormalizationFailure") != std::string::npos);
    }
}

TEST_CASE("syntax errors carry line and column")
{
    try {
        parse_scenario("scenario s\nvertex a\nedge e : a => a\n");
        FAIL("expected SyntaxError");
    } catch (const ScenarioError& e) {
        CHECK(e.kind == ScenarioError::Kind::Syntax);
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_scenario("vertex a\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("scenario s\ncocycle c { t=2 }\n"), ScenarioError);
}

TEST_CASE("identity violations and isolated edges do not parse")
{
    const std::string bad_identity =
        "scenario bad\n"
        "vertex a b c\n"
        "edge e0 : a -> b\n"
        "edge e1 : a -> b\n"
        "edge e2 : a -> b\n"
        "triangle t : d0=e0 d1=e1 d2=e2\n";
    try {
        parse_scenario(bad_identity);
        FAIL("expected ValidationError");
    } catch (const ScenarioError& e) {
        CHECK(e.kind == ScenarioError::Kind::Validation);
    }

    const std::string isolated =
        "scenario bad\n"
        "vertex 0 1 2\n"
        "edge x : 0 -> 1\n"
        "edge z : 0 -> 2\n"
        "edge y : 1 -> 2\n"
        "edge lone : 0 -> 1\n"
        "triangle s : d0=y d1=z d2=x\n";
    try {
        parse_scenario(isolated);
        FAIL("expected ValidationError");
    } catch (const ScenarioError& e) {
        CHECK(e.kind == ScenarioError::Kind::Validation);
    }
}

TEST_CASE("glue and collapse directives build quotient scenarios")
{
    const ScenarioFile sf = parse_scenario(slurp(scenario_path("glued_triangle.sdist")));
    CHECK(sf.complex->nondegenerate_edge_count() == 2);
    CHECK(sf.report.structurally_valid());
    CHECK(!sf.report.shape_valid());  // repeated face, tolerated with warnings
    const auto* boxy = sf.find_distribution("boxy");
    REQUIRE(boxy != nullptr);
    CHECK(is_contextual(boxy->dist).contextual);
    const auto* mix = sf.find_distribution("mix");
    REQUIRE(mix != nullptr);
    CHECK(!is_contextual(mix->dist).contextual);

    const std::string collapsed =
        "scenario c\n"
        "vertex 0 1 2\n"
        "edge x : 0 -> 1\n"
        "edge z : 0 -> 2\n"
        "edge y : 1 -> 2\n"
        "triangle s : d0=y d1=z d2=x\n"
        "collapse y\n";
    const ScenarioFile cf = parse_scenario(collapsed);
    CHECK(cf.complex->nondegenerate_edge_count() == 2);
    CHECK(cf.report.shape_valid());
    // Printing writes the collapsed edge and reparses identically.
    const ScenarioFile cf2 = parse_scenario(print_scenario(cf));
    CHECK(structurally_equal(cf, cf2));
}

TEST_CASE("shipped vertex distributions are what they claim")
{
    const ScenarioFile tet = parse_scenario(slurp(scenario_path("tetrahedron.sdist")));
    const auto* ve = tet.find_distribution("vertex_edges");
    REQUIRE(ve != nullptr);
    const VertexReport rep = rank_of(ve->dist);
    CHECK(rep.rank == 6);
    CHECK(rep.is_vertex);
    CHECK(rank_formula(ve->dist).rank == 6);

    const ScenarioFile tor = parse_scenario(slurp(scenario_path("mermin_torus.sdist")));
    const auto* tv = tor.find_distribution("vertex_edges");
    REQUIRE(tv != nullptr);
    const VertexReport trep = rank_of(tv->dist);
    CHECK(trep.rank == 9);
    CHECK(trep.is_vertex);
    CHECK(trep.zp_edges.size() == 3);
    CHECK(rank_formula(tv->dist).rank == 9);

    const ScenarioFile chsh = parse_scenario(slurp(scenario_path("chsh.sdist")));
    CHECK(rank_of(chsh.find_distribution("even")->dist).rank == 7);
    CHECK(rank_of(chsh.find_distribution("det0")->dist).rank == 8);
}
