#include "pforms/annihilators.hpp"

#include <algorithm>
#include <stdexcept>

#include "pforms/errors.hpp"

namespace pforms {

namespace {

void check_family(const ContextPtr& ctx, const std::vector<std::vector<RationalFunction>>& slots) {
    for (const auto& slot : slots) {
        if (slot.empty()) throw std::invalid_argument("generator slots must be nonempty");
        for (const auto& s : slot) require_same_context(ctx, s.context());
    }
}

// d(v_1) ^ ... ^ d(v_k); the empty product is the scalar 1.
DifferentialForm wedge_of_differentials(const ContextPtr& ctx,
                                        const std::vector<RationalFunction>& v) {
    DifferentialForm w = DifferentialForm::scalar(RationalFunction::one(ctx));
    for (const auto& f : v) w = wedge(w, differential(f));
    return w;
}

// Greedy scan of `pool` for elements enlarging the span of d(base ∪ picked).
std::vector<RationalFunction> greedy_extension(const std::vector<RationalFunction>& base,
                                               const std::vector<RationalFunction>& pool) {
    std::vector<RationalFunction> all = base;
    std::vector<RationalFunction> picked;
    int r = p_degree(all);
    for (const auto& x : pool) {
        all.push_back(x);
        const int r2 = p_degree(all);
        if (r2 > r) {
            picked.push_back(x);
            r = r2;
        } else {
            all.pop_back();
        }
    }
    return picked;
}

struct MixedData {
    std::vector<RationalFunction> a;  // one representative per rank-one slot
    std::vector<RationalFunction> e;  // new directions inside the last slot
};

MixedData mixed_data(const ContextPtr& ctx,
                     const std::vector<std::vector<RationalFunction>>& rank_one_slots,
                     const std::vector<RationalFunction>& last_slot) {
    check_family(ctx, rank_one_slots);
    check_family(ctx, {last_slot});
    MixedData d;
    for (const auto& slot : rank_one_slots) {
        auto basis = extract_p_basis(slot);
        if (basis.size() != 1)
            throw hypothesis_error("ann-mixed-slot-rank",
                                   "every leading slot must have p-degree exactly one");
        d.a.push_back(std::move(basis.front()));
    }
    if (!d.a.empty() && !is_p_independent(d.a))
        throw hypothesis_error(
            "ann-mixed-degenerate-wedge",
            "the leading slots are p-dependent, so every elementary product vanishes");
    d.e = greedy_extension(d.a, last_slot);
    if (d.e.empty())
        throw hypothesis_error("ann-mixed-degenerate-wedge",
                               "the final slot lies in the span of the leading slots, so every "
                               "elementary product vanishes");
    return d;
}

} // namespace

std::vector<DifferentialForm> elementary_products(const GeneratorFamily& U) {
    std::vector<DifferentialForm> out;
    if (U.slots.empty()) return out;
    for (const auto& slot : U.slots)
        if (slot.empty()) return out; // a choiceless slot admits no products
    ContextPtr ctx = U.slots.front().front().context();
    std::vector<std::size_t> idx(U.slots.size(), 0);
    while (true) {
        std::vector<RationalFunction> pick;
        pick.reserve(U.slots.size());
        for (std::size_t i = 0; i < U.slots.size(); ++i) pick.push_back(U.slots[i][idx[i]]);
        DifferentialForm w = wedge_of_differentials(ctx, pick);
        if (!w.is_zero()) out.push_back(std::move(w));
        std::size_t j = U.slots.size();
        while (j > 0 && ++idx[j - 1] == U.slots[j - 1].size()) idx[--j] = 0;
        if (j == 0) break;
    }
    return out;
}

FormSubspace ann_bruteforce(const ContextPtr& ctx, const std::vector<DifferentialForm>& targets,
                            int n) {
    const int m = ctx->nvars();
    const auto cols = index_tuples(m, n);
    std::vector<DifferentialForm> live;
    for (const auto& u : targets) {
        require_same_context(ctx, u.context());
        if (!u.is_zero()) live.push_back(u);
    }
    if (cols.empty() || live.empty()) return FormSubspace::full(ctx, n);

    Mat rows;
    const RationalFunction zero = RationalFunction::zero(ctx);
    for (const auto& u : live) {
        // Row block indexed by the coordinate basis of degree n + deg(u).
        std::map<IndexTuple, std::size_t> row_of;
        std::vector<Vec> block;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            DifferentialForm w = wedge(DifferentialForm::basis(ctx, cols[c]), u);
            for (const auto& [t, f] : w.coeffs()) {
                auto [it, fresh] = row_of.emplace(t, block.size());
                if (fresh) block.emplace_back(cols.size(), zero);
                block[it->second][c] = f;
            }
        }
        for (auto& r : block) rows.push_back(std::move(r));
    }
    if (rows.empty()) return FormSubspace::full(ctx, n);

    std::vector<DifferentialForm> gens;
    for (const auto& v : kernel_basis(rows, static_cast<int>(cols.size()), ctx)) {
        DifferentialForm w(ctx, n);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (!v[c].is_zero()) w.set_coeff(cols[c], v[c]);
        }
        gens.push_back(std::move(w));
    }
    return FormSubspace::span(ctx, n, gens);
}

FormSubspace ann_bruteforce(const ContextPtr& ctx, const GeneratorFamily& U, int n) {
    // Empty slots are legal here: reducing a slot of p-th powers leaves no
    // basis element, no elementary product survives, and the annihilator is
    // everything.  The closed-form constructions stay strict about them.
    for (const auto& slot : U.slots)
        for (const auto& s : slot) require_same_context(ctx, s.context());
    return ann_bruteforce(ctx, elementary_products(U), n);
}

FormSubspace ann_disjoint(const ContextPtr& ctx,
                          const std::vector<std::vector<RationalFunction>>& slots, int n) {
    check_family(ctx, slots);
    if (slots.empty()) throw std::invalid_argument("at least one slot is required");

    std::vector<std::vector<RationalFunction>> bases;
    std::vector<RationalFunction> united;
    int degree_sum = 0;
    for (const auto& slot : slots) {
        bases.push_back(extract_p_basis(slot));
        degree_sum += static_cast<int>(bases.back().size());
        united.insert(united.end(), bases.back().begin(), bases.back().end());
    }
    for (const auto& basis : bases) {
        if (basis.empty()) return FormSubspace::full(ctx, n); // slot differentials all vanish
    }
    if (p_degree(united) != degree_sum)
        throw hypothesis_error("ann-disjoint-overlap",
                               "the slot subfields overlap: the union's p-degree is smaller than "
                               "the sum of the slot p-degrees");

    FormSubspace acc = FormSubspace::zero(ctx, n);
    for (const auto& basis : bases) {
        acc = acc.sum(FormSubspace::wedge_extend(wedge_of_differentials(ctx, basis),
                                                 n - static_cast<int>(basis.size())));
    }
    return acc;
}

FormSubspace ann_power(const ContextPtr& ctx, const std::vector<RationalFunction>& S, int r,
                       int n) {
    check_family(ctx, {S});
    if (r < 1) throw std::invalid_argument("the wedge power must be at least 1");
    const auto basis = extract_p_basis(S);
    const int k = static_cast<int>(basis.size());
    if (k == 0 || r > k) return FormSubspace::full(ctx, n);

    const int t = k - r + 1;
    FormSubspace acc = FormSubspace::zero(ctx, n);
    for (const auto& subset : index_tuples(k, t)) {
        std::vector<RationalFunction> pick;
        pick.reserve(subset.size());
        for (int i : subset) pick.push_back(basis[static_cast<std::size_t>(i)]);
        acc = acc.sum(FormSubspace::wedge_extend(wedge_of_differentials(ctx, pick), n - t));
    }
    return acc;
}

FormSubspace ann_mixed(const ContextPtr& ctx,
                       const std::vector<std::vector<RationalFunction>>& rank_one_slots,
                       const std::vector<RationalFunction>& last_slot, int n) {
    const MixedData d = mixed_data(ctx, rank_one_slots, last_slot);
    FormSubspace acc = FormSubspace::zero(ctx, n);
    for (const auto& a : d.a) acc = acc.sum(FormSubspace::wedge_extend(differential(a), n - 1));
    acc = acc.sum(FormSubspace::wedge_extend(wedge_of_differentials(ctx, d.e),
                                             n - static_cast<int>(d.e.size())));
    return acc;
}

AnnBounds ann_bounds(const ContextPtr& ctx,
                     const std::vector<std::vector<RationalFunction>>& slots, int n) {
    check_family(ctx, slots);
    if (slots.empty()) throw std::invalid_argument("at least one slot is required");

    AnnBounds out{FormSubspace::zero(ctx, n), FormSubspace::zero(ctx, n)};
    std::vector<RationalFunction> prefix;
    for (const auto& slot : slots) {
        // New directions this slot adds over everything before it...
        std::vector<RationalFunction> fresh = greedy_extension(prefix, slot);
        // ...extended to a p-basis of the slot's own subfield.
        std::vector<RationalFunction> basis = fresh;
        for (const auto& extra : greedy_extension(basis, slot)) basis.push_back(extra);

        out.lower = out.lower.sum(FormSubspace::wedge_extend(
            wedge_of_differentials(ctx, basis), n - static_cast<int>(basis.size())));
        out.upper = out.upper.sum(FormSubspace::wedge_extend(
            wedge_of_differentials(ctx, fresh), n - static_cast<int>(fresh.size())));
        prefix.insert(prefix.end(), fresh.begin(), fresh.end());
    }
    return out;
}

GeneratorFamily reduce_family(const GeneratorFamily& U) {
    GeneratorFamily out;
    out.slots.reserve(U.slots.size());
    for (const auto& slot : U.slots) out.slots.push_back(extract_p_basis(slot));
    return out;
}

namespace {

void require_pm1_closure(const ContextPtr& ctx, bool assume_pm1_closed) {
    if (ctx->p() != 2 && !assume_pm1_closed)
        throw hypothesis_error(
            "nu-closure-missing",
            "this construction needs every field element to be a (p-1)-th power, which holds "
            "automatically only in characteristic 2; pass the explicit closure assertion to "
            "proceed at your own risk");
}

} // namespace

NuGeneratedSet nu_ann_mixed(const ContextPtr& ctx,
                            const std::vector<std::vector<RationalFunction>>& rank_one_slots,
                            const std::vector<RationalFunction>& last_slot, int n,
                            bool assume_pm1_closed) {
    require_pm1_closure(ctx, assume_pm1_closed);
    const MixedData d = mixed_data(ctx, rank_one_slots, last_slot);
    NuGeneratedSet set{ctx, n, false, {}};
    const int ell = static_cast<int>(d.e.size());
    // With a single extension direction the joint slot below already covers
    // every dlog(a_i) factor, so the per-direction summand is kept only when
    // it is not dominated.
    if (!d.a.empty() && n >= 1 && ell >= 2) set.summands.push_back({1, d.a, n - 1});
    if (n >= ell) {
        std::vector<RationalFunction> gens = d.a;
        gens.insert(gens.end(), d.e.begin(), d.e.end());
        set.summands.push_back({ell, std::move(gens), n - ell});
    }
    return set;
}

NuGeneratedSet nu_ann_power(const ContextPtr& ctx, const std::vector<RationalFunction>& S, int r,
                            int n, bool assume_pm1_closed) {
    require_pm1_closure(ctx, assume_pm1_closed);
    check_family(ctx, {S});
    if (r < 1) throw std::invalid_argument("the wedge power must be at least 1");
    NuGeneratedSet set{ctx, n, false, {}};
    const auto basis = extract_p_basis(S);
    const int k = static_cast<int>(basis.size());
    if (k == 0 || r > k) {
        set.full = true;
        return set;
    }
    const int t = k - r + 1;
    if (n >= t) set.summands.push_back({t, basis, n - t});
    return set;
}

namespace {

// Random element of F^p(G)^*: a short sum of p-th-power coefficients on
// monomials in the generators with exponents below p.
RationalFunction sample_subfield_element(const NuSummand& s, std::mt19937_64& rng,
                                         const ContextPtr& ctx,
                                         const std::vector<RationalFunction>& pool) {
    const int p = ctx->p();
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> expo(0, p - 1);
    std::uniform_int_distribution<std::size_t> pick(0, pool.empty() ? 0 : pool.size() - 1);
    std::uniform_int_distribution<int> unit(1, p - 1);

    for (int attempt = 0; attempt < 8; ++attempt) {
        RationalFunction y = RationalFunction::zero(ctx);
        const int parts = 1 + coin(rng);
        for (int j = 0; j < parts; ++j) {
            RationalFunction coeff = RationalFunction::constant(ctx, unit(rng));
            if (!pool.empty() && coin(rng)) coeff = coeff + pool[pick(rng)];
            RationalFunction term = coeff.frobenius_pow(p);
            for (const auto& g : s.slot_gens) term = term * g.pow(expo(rng));
            y = y + term;
        }
        if (!y.is_zero()) return y;
    }
    return RationalFunction::one(ctx);
}

} // namespace

DifferentialForm sample_nu_generator(const NuGeneratedSet& set, std::mt19937_64& rng,
                                     const std::vector<RationalFunction>& pool) {
    const ContextPtr& ctx = set.ctx;
    if (set.full) return sample_log_form(rng, ctx, set.degree, pool);
    if (set.summands.empty()) return DifferentialForm::zero(ctx, set.degree);

    std::uniform_int_distribution<std::size_t> pick(0, set.summands.size() - 1);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const NuSummand& s = set.summands[pick(rng)];
        DifferentialForm w = DifferentialForm::scalar(RationalFunction::one(ctx));
        for (int i = 0; i < s.slot_degree; ++i)
            w = wedge(w, dlog(sample_subfield_element(s, rng, ctx, pool)));
        w = wedge(w, sample_log_form(rng, ctx, s.residual_degree, pool));
        if (!w.is_zero()) return w;
    }
    return DifferentialForm::zero(ctx, set.degree);
}

} // namespace pforms
