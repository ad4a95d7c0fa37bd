/**
 * Scenario text format: a named complex with optional named cocycles,
 * distributions, and subsets.  Line-oriented, '#' comments:
 *
 *   scenario NAME
 *   vertex ID+
 *   edge ID : SRC -> DST
 *   edge ID : collapsed(V)
 *   triangle ID : d0=E d1=E d2=E
 *   glue T.dI = T.dJ
 *   collapse E
 *   cocycle NAME { T=0|1 ... }          # unlisted triangles are 0
 *   distribution NAME twist NAME { T = q q q q ... }
 *   subset NAME : ID+                   # edges/triangles, closed under faces
 *
 * Rationals are "num/den" or integers; outcome order is p00 p01 p10 p11.
 * Printing emits a canonical resolved form (gluings applied) that reparses
 * to a structurally identical file.
 */

#ifndef SDIST_SCENARIO_HPP
#define SDIST_SCENARIO_HPP

#include <map>
#include <string>
#include <vector>

#include "sdist/distribution.hpp"
#include "sdist/simplicial_set.hpp"

namespace sdist {

class ScenarioError : public std::runtime_error {
public:
    enum class Kind { Syntax, UnresolvedReference, Validation };

    ScenarioError(Kind kind_, int line_, int col_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                             ": " + message),
          kind(kind_),
          line(line_),
          col(col_)
    {
    }

    Kind kind;
    int line;
    int col;
};

struct ScenarioFile {
    std::string name;
    ComplexPtr complex;
    ValidationReport report;  // shape warnings survive parsing; identity errors do not

    std::map<std::string, EdgeId> edge_names;
    std::map<std::string, TriangleId> triangle_names;

    std::vector<std::pair<std::string, Cochain2>> cocycles;
    struct NamedDist {
        std::string name;
        std::string twist;
        TwistedDistribution dist;
    };
    std::vector<NamedDist> distributions;
    std::vector<std::pair<std::string, SimplicialSubset>> subsets;

    const Cochain2* find_cocycle(const std::string& n) const;
    const NamedDist* find_distribution(const std::string& n) const;
};

ScenarioFile parse_scenario(const std::string& text);
std::string print_scenario(const ScenarioFile& sf);

/** Same complex/cocycle/distribution content up to renaming-free identity. */
bool structurally_equal(const ScenarioFile& a, const ScenarioFile& b);

/** Builtin wrapped as a scenario with cocycles "zero" and "odd". */
ScenarioFile scenario_from_builtin(const std::string& kind, int n);

}  // namespace sdist

#endif  // SDIST_SCENARIO_HPP
