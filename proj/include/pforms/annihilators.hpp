#ifndef PFORMS_ANNIHILATORS_HPP
#define PFORMS_ANNIHILATORS_HPP

#include <random>
#include <vector>

#include "pforms/pstructure.hpp"
#include "pforms/subspace.hpp"

namespace pforms {

// Finite generating sets S_1,...,S_r; the family stands for the set of all
// elementary wedge products d(s_1)^...^d(s_r) with one factor per slot.
struct GeneratorFamily {
    std::vector<std::vector<RationalFunction>> slots;
};

// Every elementary product as a form of degree = #slots (zero products kept out).
std::vector<DifferentialForm> elementary_products(const GeneratorFamily& U);

// All forms of degree n wedging every target to zero, by exact linear algebra.
FormSubspace ann_bruteforce(const ContextPtr& ctx, const std::vector<DifferentialForm>& targets,
                            int n);
FormSubspace ann_bruteforce(const ContextPtr& ctx, const GeneratorFamily& U, int n);

// Closed form for slots whose p-degrees add up across the union
// (independent blocks): sum over i of da_{i1}^...^da_{ik_i} ^ Omega^{n-k_i}
// for p-bases {a_ij} extracted from each slot.  Rejects overlapping blocks.
FormSubspace ann_disjoint(const ContextPtr& ctx,
                          const std::vector<std::vector<RationalFunction>>& slots, int n);

// Closed form for the r-fold self-wedge of one slot S with p-degree k:
// with t = k-r+1, the sum over all t-subsets of a p-basis of F^p(S) of
// da_{i_1}^...^da_{i_t} ^ Omega^{n-t}; the whole space when r > k.
FormSubspace ann_power(const ContextPtr& ctx, const std::vector<RationalFunction>& S, int r,
                       int n);

// Closed form for r slots of p-degree one plus one arbitrary final slot:
// sum of da_i ^ Omega^{n-1} plus de_1^...^de_l ^ Omega^{n-l}, where the a_i
// represent the rank-one slots and the e_j extend them inside the last slot.
// Rejects degenerate families (p-dependent a_i or final slot inside their span).
FormSubspace ann_mixed(const ContextPtr& ctx,
                       const std::vector<std::vector<RationalFunction>>& rank_one_slots,
                       const std::vector<RationalFunction>& last_slot, int n);

// Two-sided bounds for arbitrary slots from an incremental basis walk:
// lower uses full slot p-bases, upper only each slot's new directions.
struct AnnBounds {
    FormSubspace lower;
    FormSubspace upper;
};
AnnBounds ann_bounds(const ContextPtr& ctx,
                     const std::vector<std::vector<RationalFunction>>& slots, int n);

// Replace every slot by an extracted p-basis; annihilator-invariant.
GeneratorFamily reduce_family(const GeneratorFamily& U);

// Symbolic description of an additively generated subgroup of the
// logarithmic-form group: each summand is
//   [ dlog(y_1)^...^dlog(y_t) | y_i in F^p(G)^* ] ^ nu_{n-t}(F).
struct NuSummand {
    int slot_degree = 0;                      // t
    std::vector<RationalFunction> slot_gens;  // G
    int residual_degree = 0;                  // n - t
};
struct NuGeneratedSet {
    ContextPtr ctx;
    int degree = 0;  // n
    bool full = false;
    std::vector<NuSummand> summands;
};

// The logarithmic-form annihilators matching ann_mixed / ann_power.  These
// constructions are only valid when every element of F is a (p-1)-th power,
// which holds automatically just for p = 2; other characteristics require
// the caller to assert that closure explicitly.
NuGeneratedSet nu_ann_mixed(const ContextPtr& ctx,
                            const std::vector<std::vector<RationalFunction>>& rank_one_slots,
                            const std::vector<RationalFunction>& last_slot, int n,
                            bool assume_pm1_closed = false);
NuGeneratedSet nu_ann_power(const ContextPtr& ctx, const std::vector<RationalFunction>& S, int r,
                            int n, bool assume_pm1_closed = false);

// Random element of the generated set: draws slot elements from the stated
// subfields (p-th-power coefficients on generator monomials) and logarithmic
// residual factors from the pool.  May return the zero form after retries.
DifferentialForm sample_nu_generator(const NuGeneratedSet& set, std::mt19937_64& rng,
                                     const std::vector<RationalFunction>& pool);

} // namespace pforms

#endif
