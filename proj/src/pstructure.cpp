#include "pforms/pstructure.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace pforms {

namespace {

ContextPtr context_of(const std::vector<RationalFunction>& elems) {
    if (elems.empty()) throw std::invalid_argument("empty family has no field context");
    ContextPtr ctx = elems.front().context();
    for (const auto& e : elems) require_same_context(ctx, e.context());
    return ctx;
}

Vec gradient(const RationalFunction& f) {
    const int m = f.context()->nvars();
    Vec row;
    row.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) row.push_back(f.derivative(j));
    return row;
}

Mat jacobian(const std::vector<RationalFunction>& elems) {
    Mat rows;
    rows.reserve(elems.size());
    for (const auto& e : elems) rows.push_back(gradient(e));
    return rows;
}

// All class tuples in [0, q)^r, lexicographically.
std::vector<std::vector<int>> class_tuples(int r, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(r), 0);
    while (true) {
        out.push_back(cur);
        int j = r - 1;
        while (j >= 0 && cur[static_cast<std::size_t>(j)] == q - 1) {
            cur[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
        ++cur[static_cast<std::size_t>(j)];
    }
    return out;
}

bool all_coordinates(const std::vector<RationalFunction>& gens, std::vector<int>& vars_out) {
    vars_out.clear();
    for (const auto& g : gens) {
        const auto v = g.as_variable();
        if (!v) return false;
        vars_out.push_back(*v);
    }
    std::vector<int> sorted = vars_out;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("repeated generator coordinate");
    return true;
}

} // namespace

bool is_p_independent(const std::vector<RationalFunction>& elems) {
    if (elems.empty()) return true;
    const ContextPtr ctx = context_of(elems);
    return rank(jacobian(elems), ctx->nvars()) == static_cast<int>(elems.size());
}

int p_degree(const std::vector<RationalFunction>& elems) {
    if (elems.empty()) return 0;
    const ContextPtr ctx = context_of(elems);
    return rank(jacobian(elems), ctx->nvars());
}

std::vector<RationalFunction> extract_p_basis(const std::vector<RationalFunction>& elems) {
    if (elems.empty()) return {};
    const ContextPtr ctx = context_of(elems);
    const int m = ctx->nvars();
    std::vector<RationalFunction> kept;
    Mat rows;
    int r = 0;
    for (const auto& e : elems) {
        rows.push_back(gradient(e));
        const int r2 = rank(rows, m);
        if (r2 > r) {
            kept.push_back(e);
            r = r2;
        } else {
            rows.pop_back();
        }
    }
    return kept;
}

std::vector<int> complete_to_p_basis(const std::vector<RationalFunction>& indep) {
    if (indep.empty()) throw std::invalid_argument("cannot infer the field context from an empty family");
    return complete_to_p_basis(context_of(indep), indep);
}

std::vector<int> complete_to_p_basis(const ContextPtr& ctx,
                                     const std::vector<RationalFunction>& indep) {
    for (const auto& e : indep) require_same_context(ctx, e.context());
    const int m = ctx->nvars();
    Mat rows = jacobian(indep);
    int r = rank(rows, m);
    if (r != static_cast<int>(indep.size()))
        throw std::invalid_argument("family is not p-independent, so it extends to no p-basis");
    std::vector<int> added;
    for (int j = 0; j < m && r < m; ++j) {
        Vec unit(static_cast<std::size_t>(m), RationalFunction::zero(ctx));
        unit[static_cast<std::size_t>(j)] = RationalFunction::one(ctx);
        rows.push_back(std::move(unit));
        const int r2 = rank(rows, m);
        if (r2 > r) {
            added.push_back(j);
            r = r2;
        } else {
            rows.pop_back();
        }
    }
    return added;
}

std::optional<Vec> p_span_coordinates(const RationalFunction& a,
                                      const std::vector<RationalFunction>& gens) {
    const ContextPtr ctx = a.context();
    for (const auto& g : gens) require_same_context(ctx, g.context());
    const int m = ctx->nvars();
    const int k = static_cast<int>(gens.size());
    // One equation per coordinate: sum_i lambda_i * d(gens_i)/dx_j = d(a)/dx_j.
    Mat eqs;
    Vec rhs;
    eqs.reserve(static_cast<std::size_t>(m));
    rhs.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        Vec row;
        row.reserve(static_cast<std::size_t>(k));
        for (const auto& g : gens) row.push_back(g.derivative(j));
        eqs.push_back(std::move(row));
        rhs.push_back(a.derivative(j));
    }
    return solve(eqs, rhs);
}

bool in_p_span(const RationalFunction& a, const std::vector<RationalFunction>& gens) {
    return p_span_coordinates(a, gens).has_value();
}

bool in_power_subfield(const RationalFunction& b, const std::vector<int>& gen_vars, int t) {
    if (t < 0) throw std::invalid_argument("power-subfield exponent must be nonnegative");
    if (t == 0) return true;
    const ContextPtr ctx = b.context();
    const int m = ctx->nvars();
    std::array<bool, kMaxVars> is_gen{};
    for (int g : gen_vars) {
        if (g < 0 || g >= m) throw std::invalid_argument("generator coordinate out of range");
        is_gen[static_cast<std::size_t>(g)] = true;
    }
    const int q = pow_int(ctx->p(), t);
    // b = M / den^q with M = num * den^(q-1); membership holds exactly when
    // every monomial of M has all non-generator exponents divisible by q.
    Polynomial m_poly = b.num();
    if (!b.den().is_one()) {
        auto quot = div_exact(b.den().frobenius_pow(q), b.den());
        if (!quot) throw std::logic_error("denominator fails to divide its own power");
        m_poly = m_poly * *quot;
    }
    for (const auto& [mono, c] : m_poly.terms()) {
        (void)c;
        for (int j = 0; j < m; ++j) {
            if (is_gen[static_cast<std::size_t>(j)]) continue;
            if (mono.e[static_cast<std::size_t>(j)] % q != 0) return false;
        }
    }
    return true;
}

std::optional<std::map<std::vector<int>, RationalFunction>>
power_span_solve(const RationalFunction& b, const std::vector<RationalFunction>& gens, int t) {
    if (t < 1) throw std::invalid_argument("power-span exponent must be positive");
    const ContextPtr ctx = b.context();
    for (const auto& g : gens) require_same_context(ctx, g.context());
    const int r = static_cast<int>(gens.size());
    const int q = pow_int(ctx->p(), t);

    std::map<std::vector<int>, RationalFunction> out;
    if (r == 0) {
        if (!b.has_pth_root(q)) return std::nullopt;
        const RationalFunction root = b.pth_root(q);
        if (!root.is_zero()) out.emplace(std::vector<int>{}, root);
        return out;
    }

    // Guard the q^r search space.
    long long size = 1;
    for (int i = 0; i < r; ++i) {
        size *= q;
        if (size > 4096) throw std::invalid_argument("power-span class space too large to enumerate");
    }

    const auto tuples = class_tuples(r, q);
    // Equations are indexed by residue classes of the whole coordinate space:
    // writing every product gens^i and b in the basis {x^c | c in [0,q)^m}
    // over F^(p^t), membership means b's components are an F-linear
    // combination of the products' components.
    std::map<Monomial, std::size_t, GrlexLess> eq_index;
    Mat cols; // cols[i] = component vector of gens^i, grown as classes appear
    cols.reserve(tuples.size());
    const RationalFunction zero = RationalFunction::zero(ctx);

    auto component_vector = [&](const RationalFunction& f) {
        Vec v;
        for (auto& [cls, root] : frobenius_decompose(f, t)) {
            auto [it, fresh] = eq_index.emplace(cls, eq_index.size());
            if (fresh) {
                for (auto& col : cols) col.push_back(zero);
                v.resize(eq_index.size(), zero);
            }
            if (v.size() < eq_index.size()) v.resize(eq_index.size(), zero);
            v[it->second] = std::move(root);
        }
        v.resize(eq_index.size(), zero);
        return v;
    };

    for (const auto& tup : tuples) {
        RationalFunction prod = RationalFunction::one(ctx);
        for (int j = 0; j < r; ++j) prod = prod * gens[static_cast<std::size_t>(j)].pow(tup[static_cast<std::size_t>(j)]);
        cols.push_back(component_vector(prod));
    }
    Vec rhs = component_vector(b);
    for (auto& col : cols) col.resize(eq_index.size(), zero);

    // Transpose columns into equation rows.
    Mat eqs(eq_index.size(), Vec(tuples.size(), zero));
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t c = 0; c < eq_index.size(); ++c) eqs[c][i] = cols[i][c];

    auto sol = solve(eqs, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        if (!(*sol)[i].is_zero()) out.emplace(tuples[i], (*sol)[i]);
    }
    return out;
}

bool in_power_span(const RationalFunction& b, const std::vector<RationalFunction>& gens, int t) {
    if (t == 0) return true;
    std::vector<int> vars;
    if (all_coordinates(gens, vars)) return in_power_subfield(b, vars, t);
    return power_span_solve(b, gens, t).has_value();
}

PowerDecomposition max_power_decomposition(const RationalFunction& b,
                                           const std::vector<RationalFunction>& gens, int cap) {
    if (cap < 1) throw std::invalid_argument("power-decomposition cap must be at least 1");
    const ContextPtr ctx = b.context();
    if (in_power_span(b, {}, 1))
        throw std::invalid_argument("element is a p-th power, so no maximal exponent exists");
    if (!in_p_span(b, gens))
        throw std::invalid_argument("element lies outside the degree-p subfield over the generators");

    int t = 1;
    while (t < cap && in_power_span(b, gens, t + 1)) ++t;

    PowerDecomposition out;
    out.t = t;
    if (t == cap) {
        out.modular_signal = true;
        return out;
    }

    std::vector<int> vars;
    if (all_coordinates(gens, vars)) {
        const int m = ctx->nvars();
        std::array<bool, kMaxVars> is_gen{};
        for (int g : vars) is_gen[static_cast<std::size_t>(g)] = true;
        for (auto& [cls, root] : frobenius_decompose(b, t)) {
            for (int j = 0; j < m; ++j) {
                if (cls.e[static_cast<std::size_t>(j)] != 0 && !is_gen[static_cast<std::size_t>(j)])
                    throw std::logic_error("residue class escapes the generator coordinates");
            }
            std::vector<int> tuple;
            tuple.reserve(vars.size());
            for (int g : vars) tuple.push_back(static_cast<int>(cls.e[static_cast<std::size_t>(g)]));
            if (!root.is_zero()) out.coeffs.emplace(std::move(tuple), std::move(root));
        }
        return out;
    }

    auto sol = power_span_solve(b, gens, t);
    if (!sol) throw std::logic_error("membership test and coefficient solve disagree");
    out.coeffs = std::move(*sol);
    return out;
}

RationalFunction recompose_power(const ContextPtr& ctx, const PowerDecomposition& d,
                                 const std::vector<RationalFunction>& gens) {
    if (d.modular_signal)
        throw std::invalid_argument("no explicit decomposition is stored past the cap");
    const int q = pow_int(ctx->p(), d.t);
    RationalFunction sum = RationalFunction::zero(ctx);
    for (const auto& [tuple, coeff] : d.coeffs) {
        if (tuple.size() != gens.size())
            throw std::invalid_argument("class tuple length does not match the generator count");
        RationalFunction term = coeff.frobenius_pow(q);
        for (std::size_t k = 0; k < gens.size(); ++k) term = term * gens[k].pow(tuple[k]);
        sum = sum + term;
    }
    return sum;
}

} // namespace pforms
