#ifndef PFORMS_TESTS_GF2_HPP
#define PFORMS_TESTS_GF2_HPP

// Dense GF(2) linear algebra on bit-packed rows, used by the exactness
// cross-check: the space of 1-forms with bounded-degree F_2 polynomial
// coefficients is a finite F_2 vector space, so closedness, the Cartier
// kernel, and the image of d can all be compared by ranks of 0/1 matrices.

#include <cstdint>
#include <vector>

namespace pforms::testing {

using Bits = std::vector<std::uint64_t>;

inline Bits bits_make(std::size_t ncols) { return Bits((ncols + 63) / 64, 0); }
inline void bits_set(Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t{1} << (i % 64)); }
inline bool bits_get(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
inline void bits_xor(Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}
inline bool bits_zero(const Bits& b) {
    for (auto w : b)
        if (w) return false;
    return true;
}

struct GF2Echelon {
    std::vector<Bits> rows;   // reduced echelon rows
    std::vector<std::size_t> pivots;
    std::size_t ncols = 0;

    std::size_t rank() const { return rows.size(); }

    // Reduce v against the echelon in place; true when it lands on zero
    // (i.e. v lies in the row space).
    bool reduce(Bits& v) const {
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (bits_get(v, pivots[r])) bits_xor(v, rows[r]);
        return bits_zero(v);
    }

    // Insert v if independent; true when the rank grew.
    bool add(Bits v) {
        if (reduce(v)) return false;
        std::size_t piv = 0;
        for (std::size_t i = 0; i < ncols; ++i)
            if (bits_get(v, i)) { piv = i; break; }
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (bits_get(rows[r], piv)) bits_xor(rows[r], v);
        std::size_t at = 0;
        while (at < pivots.size() && pivots[at] < piv) ++at;
        rows.insert(rows.begin() + at, std::move(v));
        pivots.insert(pivots.begin() + at, piv);
        return true;
    }
};

inline GF2Echelon gf2_echelon(const std::vector<Bits>& rows, std::size_t ncols) {
    GF2Echelon e;
    e.ncols = ncols;
    for (const auto& r : rows) e.add(r);
    return e;
}

// Basis of { x : for every row r, <r, x> has the row-as-equation reading
// sum_j r_j x_j = 0 } -- kernel of the matrix whose rows are equations.
inline std::vector<Bits> gf2_kernel(const std::vector<Bits>& rows, std::size_t ncols) {
    GF2Echelon e = gf2_echelon(rows, ncols);
    std::vector<char> is_pivot(ncols, 0);
    for (auto p : e.pivots) is_pivot[p] = 1;
    std::vector<Bits> basis;
    for (std::size_t j = 0; j < ncols; ++j) {
        if (is_pivot[j]) continue;
        Bits v = bits_make(ncols);
        bits_set(v, j);
        for (std::size_t r = 0; r < e.rows.size(); ++r)
            if (bits_get(e.rows[r], j)) bits_set(v, e.pivots[r]);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace pforms::testing

#endif
