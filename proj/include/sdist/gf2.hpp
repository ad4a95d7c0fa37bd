/**
 * Dense GF(2) linear algebra: row reduction, solving Ax = b, kernel bases.
 *
 * Systems here are tiny (rows = triangles, columns = non-degenerate edges),
 * so rows are plain bit-packed words and elimination is straightforward.
 */

#ifndef SDIST_GF2_HPP
#define SDIST_GF2_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace sdist {

class Gf2Matrix {
public:
    Gf2Matrix(int rows, int cols);

    void set(int r, int c, int v);
    int get(int r, int c) const;
    void xor_rows(int dst, int src);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int rows_, cols_, words_;
    std::vector<std::uint64_t> data_;
    friend struct Gf2SolveResult;
    friend std::optional<struct Gf2SolveResult> gf2_solve(Gf2Matrix, std::vector<std::uint8_t>);
    friend int gf2_rank(Gf2Matrix);
};

struct Gf2SolveResult {
    std::vector<std::uint8_t> particular;             // one solution of Ax = b
    std::vector<std::vector<std::uint8_t>> kernel;    // basis of the null space
};

/** Solve Ax = b over GF(2); nullopt when the system is inconsistent. */
std::optional<Gf2SolveResult> gf2_solve(Gf2Matrix a, std::vector<std::uint8_t> b);

int gf2_rank(Gf2Matrix a);

}  // namespace sdist

#endif  // SDIST_GF2_HPP
