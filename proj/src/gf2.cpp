#include "sdist/gf2.hpp"

#include <stdexcept>

namespace sdist {

Gf2Matrix::Gf2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(static_cast<std::size_t>(rows) * words_, 0)
{
}

void Gf2Matrix::set(int r, int c, int v)
{
    auto& w = data_[static_cast<std::size_t>(r) * words_ + c / 64];
    const std::uint64_t bit = std::uint64_t(1) << (c % 64);
    if (v & 1)
        w |= bit;
    else
        w &= ~bit;
}

int Gf2Matrix::get(int r, int c) const
{
    return static_cast<int>((data_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1);
}

void Gf2Matrix::xor_rows(int dst, int src)
{
    for (int w = 0; w < words_; ++w)
        data_[static_cast<std::size_t>(dst) * words_ + w] ^= data_[static_cast<std::size_t>(src) * words_ + w];
}

std::optional<Gf2SolveResult> gf2_solve(Gf2Matrix a, std::vector<std::uint8_t> b)
{
    const int m = a.rows(), n = a.cols();
    if (static_cast<int>(b.size()) != m)
        throw std::invalid_argument("gf2_solve: rhs size mismatch");

    std::vector<int> pivot_col_of_row;
    std::vector<int> pivot_row_of_col(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pr = -1;
        for (int r = row; r < m; ++r) {
            if (a.get(r, col)) {
                pr = r;
                break;
            }
        }
        if (pr < 0)
            continue;
        if (pr != row) {
            a.xor_rows(row, pr);
            a.xor_rows(pr, row);
            a.xor_rows(row, pr);
            std::swap(b[row], b[pr]);
        }
        for (int r = 0; r < m; ++r) {
            if (r != row && a.get(r, col)) {
                a.xor_rows(r, row);
                b[r] ^= b[row];
            }
        }
        pivot_row_of_col[col] = row;
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (int r = row; r < m; ++r)
        if (b[r])
            return std::nullopt;

    Gf2SolveResult res;
    res.particular.assign(n, 0);
    for (int r = 0; r < row; ++r)
        res.particular[pivot_col_of_row[r]] = b[r];

    for (int col = 0; col < n; ++col) {
        if (pivot_row_of_col[col] >= 0)
            continue;
        std::vector<std::uint8_t> k(n, 0);
        k[col] = 1;
        for (int pc = 0; pc < n; ++pc) {
            const int pr = pivot_row_of_col[pc];
            if (pr >= 0 && a.get(pr, col))
                k[pc] = 1;
        }
        res.kernel.push_back(std::move(k));
    }
    return res;
}

int gf2_rank(Gf2Matrix a)
{
    const int m = a.rows(), n = a.cols();
    int rank = 0;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pr = -1;
        for (int r = row; r < m; ++r) {
            if (a.get(r, col)) {
                pr = r;
                break;
            }
        }
        if (pr < 0)
            continue;
        if (pr != row) {
            a.xor_rows(row, pr);
            a.xor_rows(pr, row);
            a.xor_rows(row, pr);
        }
        for (int r = 0; r < m; ++r)
            if (r != row && a.get(r, col))
                a.xor_rows(r, row);
        ++rank;
        ++row;
    }
    return rank;
}

}  // namespace sdist
