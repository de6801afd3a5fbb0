#ifndef PFORMS_LINALG_HPP
#define PFORMS_LINALG_HPP

#include <optional>
#include <vector>

#include "pforms/rational.hpp"

namespace pforms {

using Vec = std::vector<RationalFunction>;
using Mat = std::vector<Vec>;

// Unique reduced row echelon form over F: pivots are 1, pivot columns are
// otherwise zero, zero rows are dropped, rows ordered by pivot column.
struct Echelon {
    Mat rows;
    std::vector<int> pivots;
    int ncols = 0;
    int rank() const { return static_cast<int>(rows.size()); }
};

// Forward elimination runs fraction-free (Bareiss single-step divisions stay
// exact) after clearing row denominators; back substitution then normalizes
// over F to the reduced form.
Echelon rref(Mat rows, int ncols);

int rank(const Mat& rows, int ncols);

// Basis of {x : A x = 0}, one vector per free column, deterministic order.
std::vector<Vec> kernel_basis(const Mat& rows, int ncols, const ContextPtr& ctx);

// A particular solution of A x = b, or nullopt.
std::optional<Vec> solve(const Mat& rows, const Vec& b);

// Reduce v against echelon rows in place; returns true when v reduces to 0.
bool reduce_against(const Echelon& ech, Vec& v);

} // namespace pforms

#endif
