#ifndef PFORMS_PSTRUCTURE_HPP
#define PFORMS_PSTRUCTURE_HPP

#include <map>
#include <optional>
#include <vector>

#include "pforms/forms.hpp"
#include "pforms/linalg.hpp"

namespace pforms {

// The differentials of a p-independent family are F-linearly independent and
// conversely, so the Jacobian rank over F decides everything here.

bool is_p_independent(const std::vector<RationalFunction>& elems);

// log_p [F^p(S) : F^p]
int p_degree(const std::vector<RationalFunction>& elems);

// Greedy maximal p-independent subfamily in input order.
std::vector<RationalFunction> extract_p_basis(const std::vector<RationalFunction>& elems);

// Coordinates (as indices) completing a p-independent family to a p-basis of
// F, chosen greedily in coordinate order.  Throws invalid_argument when the
// input is p-dependent.  An empty input completes to all coordinates; the
// overload without a context cannot see one, so it rejects empty input.
std::vector<int> complete_to_p_basis(const ContextPtr& ctx,
                                     const std::vector<RationalFunction>& indep);
std::vector<int> complete_to_p_basis(const std::vector<RationalFunction>& indep);

// Coefficients lambda with d(a) = sum_i lambda_i d(gens_i), when they exist.
std::optional<Vec> p_span_coordinates(const RationalFunction& a,
                                      const std::vector<RationalFunction>& gens);

// a in F^p(b_1,...,b_k), decided via d(a) in span_F{d(b_i)}.
bool in_p_span(const RationalFunction& a, const std::vector<RationalFunction>& gens);

// Membership in F^(p^t)(x_{g_1},...,x_{g_r}) for coordinate generators:
// every numerator monomial of b = M / D^(p^t) must have non-generator
// exponents divisible by p^t.
bool in_power_subfield(const RationalFunction& b, const std::vector<int>& gen_vars, int t);

// General generators: solve b = sum_{i in [0,p^t)^r} x_i^(p^t) * gens^i for
// the coefficients x_i in F.  Returns the full coefficient map (zero entries
// dropped) or nullopt when b lies outside F^(p^t)(gens).
std::optional<std::map<std::vector<int>, RationalFunction>>
power_span_solve(const RationalFunction& b, const std::vector<RationalFunction>& gens, int t);

bool in_power_span(const RationalFunction& b, const std::vector<RationalFunction>& gens, int t);

// b = sum over classes i of x_i^(p^t) * gens^i, with t maximal below the cap.
struct PowerDecomposition {
    int t = 0;
    // class tuple (length = #generators, entries < p^t) -> nonzero coefficient x_i
    std::map<std::vector<int>, RationalFunction> coeffs;
    bool modular_signal = false; // b lies in F^(p^cap)(gens): no maximal t below cap exists
};

// Maximal t in [1, cap) with b in F^(p^t)(gens), plus the class coefficients
// at that t.  When membership holds at cap itself the decomposition is not
// needed and modular_signal is set instead.  Preconditions: b in
// F^p(gens) \ F^p, cap >= 1.  Coordinate generators use a direct monomial
// test; general generators go through power_span_solve.
PowerDecomposition max_power_decomposition(const RationalFunction& b,
                                           const std::vector<RationalFunction>& gens, int cap);

// Recombine (testing hook; inverse of max_power_decomposition).
RationalFunction recompose_power(const ContextPtr& ctx, const PowerDecomposition& d,
                                 const std::vector<RationalFunction>& gens);

} // namespace pforms

#endif
