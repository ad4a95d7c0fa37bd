/**
 * Exact rational scalar type and small helpers shared across the library.
 *
 * All arithmetic in decision paths (marginals, ranks, vertex enumeration,
 * feasibility) is exact; no floating point is used anywhere.
 */

#ifndef SDIST_RATIONAL_HPP
#define SDIST_RATIONAL_HPP

#include <optional>
#include <sstream>
#include <string>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

namespace sdist {

// Expression templates are disabled: plain value semantics compose safely
// with Eigen expressions and deduced (auto/lambda) return types.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using MatrixR = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorR = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/** Canonical text form: "num" when the denominator is 1, otherwise "num/den". */
inline std::string to_string(const Rational& q)
{
    std::ostringstream os;
    os << q;
    return os.str();
}

/** Parse "num" or "num/den"; returns nothing on malformed input or den == 0. */
inline std::optional<Rational> parse_rational(const std::string& tok)
{
    auto is_int = [](const std::string& s) {
        if (s.empty())
            return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                return false;
        return true;
    };
    const auto slash = tok.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(tok))
                return std::nullopt;
            return Rational(tok);
        }
        const std::string num = tok.substr(0, slash);
        const std::string den = tok.substr(slash + 1);
        if (!is_int(num) || !is_int(den))
            return std::nullopt;
        const Rational d(den);
        if (d == 0)
            return std::nullopt;
        return Rational(num) / d;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

/** Exact rank of a rational matrix by Gaussian elimination. */
inline int rational_rank(MatrixR m)
{
    const Eigen::Index rows = m.rows(), cols = m.cols();
    int rank = 0;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = row; r < rows; ++r) {
            if (m(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            continue;
        m.row(pivot).swap(m.row(row));
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r != row && m(r, col) != 0) {
                const Rational f = m(r, col) / m(row, col);
                m.row(r) -= f * m.row(row);
            }
        }
        ++rank;
        ++row;
    }
    return rank;
}

}  // namespace sdist

#endif  // SDIST_RATIONAL_HPP
