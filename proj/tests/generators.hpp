#ifndef PFORMS_TESTS_GENERATORS_HPP
#define PFORMS_TESTS_GENERATORS_HPP

// Shared random-instance machinery for the test suite.  Instances are built
// coordinate-aligned (where the closed-form answers are transparent) and then
// pushed through a random triangular change of variables, which is an
// F_p-algebra automorphism of the rational function field and therefore
// preserves every structural property under test.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "pforms/annihilators.hpp"
#include "pforms/forms.hpp"
#include "pforms/pstructure.hpp"
#include "pforms/rational.hpp"

namespace pforms::testing {

inline std::vector<std::string> var_names(int m) {
    static const char* names[] = {"a", "b", "c", "u", "v", "w", "s", "t"};
    std::vector<std::string> out;
    for (int i = 0; i < m; ++i) out.emplace_back(names[i]);
    return out;
}

// Random monomial in the variables listed in `allowed`, total degree <= maxdeg.
inline RationalFunction random_monomial(std::mt19937_64& rng, const ContextPtr& ctx,
                                        const std::vector<int>& allowed, int maxdeg) {
    RationalFunction f = RationalFunction::constant(ctx, 1);
    if (allowed.empty() || maxdeg <= 0) return f;
    std::uniform_int_distribution<int> degd(0, maxdeg);
    int deg = degd(rng);
    std::uniform_int_distribution<std::size_t> vard(0, allowed.size() - 1);
    for (int i = 0; i < deg; ++i) f = f * RationalFunction::variable(ctx, allowed[vard(rng)]);
    return f;
}

// Random polynomial (possibly zero) supported on `allowed`, <= terms monomials.
inline RationalFunction random_poly(std::mt19937_64& rng, const ContextPtr& ctx,
                                    const std::vector<int>& allowed, int maxdeg, int terms) {
    RationalFunction f = RationalFunction::zero(ctx);
    std::uniform_int_distribution<int> termd(0, terms);
    std::uniform_int_distribution<int> coefd(1, ctx->p() - 1);
    int k = termd(rng);
    for (int i = 0; i < k; ++i)
        f = f + random_monomial(rng, ctx, allowed, maxdeg) *
                    RationalFunction::constant(ctx, coefd(rng));
    return f;
}

inline RationalFunction random_nonzero_poly(std::mt19937_64& rng, const ContextPtr& ctx,
                                            const std::vector<int>& allowed, int maxdeg,
                                            int terms) {
    for (int tries = 0; tries < 64; ++tries) {
        RationalFunction f = random_poly(rng, ctx, allowed, maxdeg, terms);
        if (!f.is_zero()) return f;
    }
    return RationalFunction::constant(ctx, 1);
}

inline std::vector<int> all_vars(const ContextPtr& ctx) {
    std::vector<int> v(ctx->nvars());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Random nonzero rational function with small numerator and denominator.
inline RationalFunction random_rational(std::mt19937_64& rng, const ContextPtr& ctx, int maxdeg,
                                        int terms) {
    RationalFunction num = random_nonzero_poly(rng, ctx, all_vars(ctx), maxdeg, terms);
    RationalFunction den = random_nonzero_poly(rng, ctx, all_vars(ctx), maxdeg, terms);
    return num / den;
}

// Triangular change of variables x_i -> c_i*x_i + q_i(x_{i+1},...,x_m) with
// nonzero c_i: always invertible, so it induces a field automorphism.
inline std::vector<RationalFunction> triangular_substitution(std::mt19937_64& rng,
                                                             const ContextPtr& ctx, int maxdeg = 2,
                                                             int terms = 1) {
    const int m = ctx->nvars();
    std::uniform_int_distribution<int> coefd(1, ctx->p() - 1);
    std::vector<RationalFunction> images;
    images.reserve(m);
    for (int i = 0; i < m; ++i) {
        std::vector<int> later;
        for (int j = i + 1; j < m; ++j) later.push_back(j);
        RationalFunction img = RationalFunction::variable(ctx, i) *
                               RationalFunction::constant(ctx, coefd(rng));
        img = img + random_poly(rng, ctx, later, maxdeg, terms);
        images.push_back(img);
    }
    return images;
}

inline std::vector<RationalFunction> substitute_all(const std::vector<RationalFunction>& elems,
                                                    const std::vector<RationalFunction>& images) {
    std::vector<RationalFunction> out;
    out.reserve(elems.size());
    for (const auto& e : elems) out.push_back(substitute(e, images));
    return out;
}

// Redundant slot padding: an extra element inside the coordinate block's
// p-span (coefficient from the p-th powers of the full field).  Leaves the
// slot's p-degree and its annihilators unchanged.
inline RationalFunction span_redundant(std::mt19937_64& rng, const ContextPtr& ctx,
                                       const std::vector<int>& block) {
    const int p = ctx->p();
    RationalFunction acc = RationalFunction::zero(ctx);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int j : block) {
        if (coin(rng) == 0) continue;
        RationalFunction c = random_poly(rng, ctx, all_vars(ctx), 1, 1);
        acc = acc + c.frobenius_pow(p) * RationalFunction::variable(ctx, j);
    }
    if (acc.is_zero() && !block.empty())
        acc = RationalFunction::variable(ctx, block.front());
    return acc;
}

// Partition a random subset of {0,...,m-1} into r disjoint nonempty blocks.
inline std::vector<std::vector<int>> random_disjoint_blocks(std::mt19937_64& rng, int m, int r) {
    std::vector<int> pool(m);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::vector<int>> blocks(r);
    std::size_t used = r; // at least one variable per block
    std::uniform_int_distribution<std::size_t> extrad(r, m);
    used = std::min<std::size_t>(extrad(rng), pool.size());
    for (std::size_t i = 0; i < used; ++i)
        blocks[i < static_cast<std::size_t>(r) ? i : rng() % r].push_back(pool[i]);
    return blocks;
}

// Unordered r-fold self-wedge targets for a single slot (multiset picks);
// spanning the same target set as the full Cartesian enumeration.
inline std::vector<DifferentialForm> self_wedge_targets(const ContextPtr& ctx,
                                                        const std::vector<RationalFunction>& S,
                                                        int r) {
    std::vector<DifferentialForm> out;
    std::vector<std::size_t> pick(r, 0);
    while (true) {
        DifferentialForm w = DifferentialForm::scalar(RationalFunction::constant(ctx, 1));
        for (int i = 0; i < r; ++i) w = wedge(w, differential(S[pick[i]]));
        if (!w.is_zero()) out.push_back(std::move(w));
        // next nondecreasing tuple
        int j = r - 1;
        while (j >= 0 && pick[j] == S.size() - 1) --j;
        if (j < 0) break;
        ++pick[j];
        for (int k = j + 1; k < r; ++k) pick[k] = pick[j];
    }
    return out;
}

} // namespace pforms::testing

#endif
