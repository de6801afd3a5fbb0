#include "pforms/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace pforms {

namespace {

ContextPtr matrix_context(const Mat& rows) {
    for (const auto& r : rows)
        if (!r.empty()) return r.front().context();
    throw std::invalid_argument("empty matrix needs no elimination");
}

// Row scaled to polynomial entries (numerators after clearing denominators).
std::vector<Polynomial> clear_denominators(const Vec& row) {
    const ContextPtr& ctx = row.front().context();
    Polynomial l = Polynomial::constant(ctx, 1);
    for (const auto& e : row)
        if (!e.den().is_one()) l = *div_exact(l * e.den(), gcd(l, e.den()));
    std::vector<Polynomial> out;
    out.reserve(row.size());
    for (const auto& e : row) out.push_back(e.num() * *div_exact(l, e.den()));
    return out;
}

std::size_t poly_size(const Polynomial& p) { return p.terms().size(); }

} // namespace

Echelon rref(Mat rows, int ncols) {
    Echelon out;
    out.ncols = ncols;
    // drop zero rows up front
    Mat nz;
    for (auto& r : rows) {
        if (static_cast<int>(r.size()) != ncols) throw std::invalid_argument("ragged matrix");
        for (const auto& e : r)
            if (!e.is_zero()) {
                nz.push_back(std::move(r));
                break;
            }
    }
    if (nz.empty()) return out;

    const ContextPtr ctx = matrix_context(nz);
    const Polynomial one = Polynomial::constant(ctx, 1);

    std::vector<std::vector<Polynomial>> m;
    m.reserve(nz.size());
    for (const auto& r : nz) m.push_back(clear_denominators(r));

    // Bareiss forward elimination to row echelon form.
    Polynomial prev = one;
    std::size_t rank = 0;
    std::vector<int> pivots;
    for (int c = 0; c < ncols && rank < m.size(); ++c) {
        std::size_t best = m.size();
        for (std::size_t i = rank; i < m.size(); ++i)
            if (!m[i][c].is_zero() && (best == m.size() || poly_size(m[i][c]) < poly_size(m[best][c])))
                best = i;
        if (best == m.size()) continue;
        std::swap(m[rank], m[best]);
        const Polynomial piv = m[rank][c];
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            if (m[i][c].is_zero()) {
                // still rescale to keep the Bareiss invariant uniform
                for (int j = c + 1; j < ncols; ++j) {
                    auto q = div_exact(m[i][j] * piv, prev);
                    if (!q) throw std::logic_error("fraction-free elimination lost exactness");
                    m[i][j] = *q;
                }
            } else {
                for (int j = c + 1; j < ncols; ++j) {
                    auto q = div_exact(m[i][j] * piv - m[i][c] * m[rank][j], prev);
                    if (!q) throw std::logic_error("fraction-free elimination lost exactness");
                    m[i][j] = *q;
                }
                m[i][c] = Polynomial::zero(ctx);
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++rank;
    }
    m.resize(rank);

    // Back substitution over F for the reduced form.
    Mat rrows;
    for (std::size_t i = 0; i < rank; ++i) {
        Vec r;
        r.reserve(ncols);
        RationalFunction inv =
            RationalFunction::one(ctx) / RationalFunction::from_poly(m[i][pivots[i]]);
        for (int j = 0; j < ncols; ++j)
            r.push_back(RationalFunction::from_poly(m[i][j]) * inv);
        rrows.push_back(std::move(r));
    }
    for (std::size_t i = rank; i-- > 0;) {
        for (std::size_t k = 0; k < i; ++k) {
            const RationalFunction f = rrows[k][pivots[i]];
            if (f.is_zero()) continue;
            for (int j = 0; j < ncols; ++j) rrows[k][j] = rrows[k][j] - f * rrows[i][j];
        }
    }
    out.rows = std::move(rrows);
    out.pivots = std::move(pivots);
    return out;
}

int rank(const Mat& rows, int ncols) { return rref(rows, ncols).rank(); }

std::vector<Vec> kernel_basis(const Mat& rows, int ncols, const ContextPtr& ctx) {
    if (ncols == 0) return {};
    Echelon ech = rows.empty() ? Echelon{{}, {}, ncols} : rref(rows, ncols);

    std::vector<bool> is_pivot(ncols, false);
    for (int pc : ech.pivots) is_pivot[pc] = true;
    std::vector<Vec> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(ncols, RationalFunction::zero(ctx));
        v[f] = RationalFunction::one(ctx);
        for (std::size_t i = 0; i < ech.rows.size(); ++i) v[ech.pivots[i]] = -ech.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Mat& rows, const Vec& b) {
    const int n = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    Mat aug;
    aug.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Vec r = rows[i];
        r.push_back(b[i]);
        aug.push_back(std::move(r));
    }
    Echelon ech = rref(std::move(aug), n + 1);
    const ContextPtr ctx = b.empty() ? ContextPtr{} : b.front().context();
    Vec x(n, RationalFunction::zero(ctx));
    for (std::size_t i = 0; i < ech.rows.size(); ++i) {
        if (ech.pivots[i] == n) return std::nullopt; // inconsistent
        x[ech.pivots[i]] = ech.rows[i][n];
    }
    return x;
}

bool reduce_against(const Echelon& ech, Vec& v) {
    for (std::size_t i = 0; i < ech.rows.size(); ++i) {
        const RationalFunction c = v[ech.pivots[i]];
        if (c.is_zero()) continue;
        for (int j = 0; j < ech.ncols; ++j) v[j] = v[j] - c * ech.rows[i][j];
    }
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

} // namespace pforms
