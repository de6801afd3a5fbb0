#include "pforms/extensions.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "pforms/errors.hpp"
#include "pforms/linalg.hpp"
#include "pforms/pstructure.hpp"

namespace pforms {

namespace {

long long safe_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    return binomial(n, k);
}

RootTuple add_tuples(const RootTuple& a, const RootTuple& b) {
    RootTuple out{};
    for (std::size_t i = 0; i < out.size(); ++i) {
        unsigned int s = static_cast<unsigned int>(a[i]) + static_cast<unsigned int>(b[i]);
        if (s > 0xffffu) throw std::overflow_error("root exponent overflow");
        out[i] = static_cast<std::uint16_t>(s);
    }
    return out;
}

// Merge two increasing index tuples; returns the sign of the sorting
// permutation, or 0 when they share an index.
int merge_tuples(const IndexTuple& a, const IndexTuple& b, IndexTuple& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    long long swaps = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] crosses the remaining entries of a
            swaps += static_cast<long long>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return (swaps % 2 == 0) ? 1 : -1;
}

} // namespace

// ---------------------------------------------------------------------------
// TowerElement

bool TowerElement::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == RootTuple{};
}

RationalFunction TowerElement::constant_part() const {
    auto it = terms_.find(RootTuple{});
    return it == terms_.end() ? RationalFunction::zero(ctx_) : it->second;
}

void TowerElement::add_term(const RootTuple& t, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        terms_.emplace(t, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TowerElement TowerElement::operator+(const TowerElement& o) const {
    require_same_context(ctx_, o.ctx_);
    TowerElement out(ctx_);
    out.terms_ = terms_;
    for (const auto& [t, c] : o.terms_) out.add_term(t, c);
    return out;
}

TowerElement TowerElement::operator-(const TowerElement& o) const { return *this + (-o); }

TowerElement TowerElement::operator-() const {
    TowerElement out(ctx_);
    for (const auto& [t, c] : terms_) out.terms_.emplace(t, -c);
    return out;
}

TowerElement TowerElement::operator*(const RationalFunction& f) const {
    TowerElement out(ctx_);
    if (f.is_zero()) return out;
    for (const auto& [t, c] : terms_) out.add_term(t, c * f);
    return out;
}

bool TowerElement::operator==(const TowerElement& o) const {
    require_same_context(ctx_, o.ctx_);
    return terms_ == o.terms_;
}

// ---------------------------------------------------------------------------
// ExtensionTower

ExtensionTower::ExtensionTower(ContextPtr base) : ctx_(std::move(base)) {
    if (!ctx_) throw std::invalid_argument("tower requires a field context");
    for (int j = 0; j < ctx_->nvars(); ++j) free_.push_back(j);
}

int ExtensionTower::root_index(const std::string& name) const {
    for (std::size_t i = 0; i < steps_.size(); ++i)
        if (steps_[i].name == name) return static_cast<int>(i);
    return -1;
}

long long ExtensionTower::degree() const {
    long long d = 1;
    for (const auto& st : steps_) d *= st.q;
    return d;
}

std::vector<RootTuple> ExtensionTower::basis_tuples() const {
    long long d = degree();
    if (d > 4096) throw std::invalid_argument("tower degree too large for dense enumeration");
    std::vector<RootTuple> out;
    out.reserve(static_cast<std::size_t>(d));
    RootTuple cur{};
    const int k = steps();
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0) {
            if (++cur[static_cast<std::size_t>(i)] <
                static_cast<std::uint16_t>(steps_[static_cast<std::size_t>(i)].q))
                break;
            cur[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

TowerElement ExtensionTower::embed(const RationalFunction& f) const {
    TowerElement out(ctx_);
    out.add_term(RootTuple{}, f);
    return out;
}

TowerElement ExtensionTower::root(int i) const {
    if (i < 0 || i >= steps()) throw std::out_of_range("no such tower step");
    RootTuple t{};
    t[static_cast<std::size_t>(i)] = 1;
    TowerElement out(ctx_);
    out.add_term(t, RationalFunction::one(ctx_));
    return out;
}

TowerElement ExtensionTower::reduce(std::map<RootTuple, RationalFunction>&& raw) const {
    TowerElement out(ctx_);
    std::map<RootTuple, RationalFunction> work(std::move(raw));
    while (!work.empty()) {
        auto node = work.extract(work.begin());
        const RootTuple t = node.key();
        const RationalFunction c = std::move(node.mapped());
        if (c.is_zero()) continue;
        // rewrite the highest out-of-range root power; its defining element
        // only involves earlier roots, so this terminates
        int hit = -1;
        for (int i = steps() - 1; i >= 0; --i) {
            if (t[static_cast<std::size_t>(i)] >=
                static_cast<std::uint16_t>(steps_[static_cast<std::size_t>(i)].q)) {
                hit = i;
                break;
            }
        }
        if (hit < 0) {
            out.add_term(t, c);
            continue;
        }
        const auto& st = steps_[static_cast<std::size_t>(hit)];
        const int e = t[static_cast<std::size_t>(hit)];
        const int dq = e / st.q;
        RootTuple rem = t;
        rem[static_cast<std::size_t>(hit)] = static_cast<std::uint16_t>(e % st.q);
        TowerElement factor = pow(st.g, dq);
        for (const auto& [ft, fc] : factor.terms()) {
            RootTuple nt = add_tuples(rem, ft);
            auto it = work.find(nt);
            if (it == work.end()) {
                work.emplace(nt, c * fc);
            } else {
                it->second = it->second + c * fc;
                if (it->second.is_zero()) work.erase(it);
            }
        }
    }
    return out;
}

TowerElement ExtensionTower::mul(const TowerElement& a, const TowerElement& b) const {
    require_same_context(a.context(), ctx_);
    require_same_context(b.context(), ctx_);
    std::map<RootTuple, RationalFunction> acc;
    for (const auto& [ta, ca] : a.terms()) {
        for (const auto& [tb, cb] : b.terms()) {
            RootTuple t = add_tuples(ta, tb);
            RationalFunction prod = ca * cb;
            auto it = acc.find(t);
            if (it == acc.end()) {
                acc.emplace(t, std::move(prod));
            } else {
                it->second = it->second + prod;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    }
    return reduce(std::move(acc));
}

TowerElement ExtensionTower::pow(const TowerElement& a, long long e) const {
    if (e < 0) return pow(inverse(a), -e);
    TowerElement acc = one();
    TowerElement base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return acc;
}

TowerElement ExtensionTower::inverse(const TowerElement& a) const {
    require_same_context(a.context(), ctx_);
    if (a.is_zero()) throw std::domain_error("division by zero in the tower");
    if (a.is_constant()) return embed(RationalFunction::one(ctx_) / a.constant_part());
    long long d = degree();
    if (d > 512) throw std::invalid_argument("tower degree too large for dense inversion");
    std::vector<RootTuple> tuples = basis_tuples();
    std::map<RootTuple, int> index;
    for (std::size_t i = 0; i < tuples.size(); ++i) index.emplace(tuples[i], static_cast<int>(i));
    const std::size_t n = tuples.size();
    Mat eqs(n, Vec(n, RationalFunction::zero(ctx_)));
    for (std::size_t v = 0; v < n; ++v) {
        TowerElement mono(ctx_);
        mono.add_term(tuples[v], RationalFunction::one(ctx_));
        TowerElement col = mul(a, mono);
        for (const auto& [t, c] : col.terms())
            eqs[static_cast<std::size_t>(index.at(t))][v] = c;
    }
    Vec rhs(n, RationalFunction::zero(ctx_));
    rhs[static_cast<std::size_t>(index.at(RootTuple{}))] = RationalFunction::one(ctx_);
    std::optional<Vec> sol = solve(eqs, rhs);
    if (!sol) throw std::logic_error("tower inversion failed; the presentation is inconsistent");
    TowerElement out(ctx_);
    for (std::size_t v = 0; v < n; ++v) out.add_term(tuples[v], (*sol)[v]);
    return out;
}

ExtensionTower::EVec ExtensionTower::raw_differential(const TowerElement& u) const {
    EVec out(static_cast<std::size_t>(gen_count()), TowerElement::zero(ctx_));
    const int m = nvars();
    const int pr = ctx_->p();
    for (const auto& [t, c] : u.terms()) {
        for (int j = 0; j < m; ++j) {
            RationalFunction pd = c.derivative(j);
            if (!pd.is_zero()) out[static_cast<std::size_t>(j)].add_term(t, pd);
        }
        for (int i = 0; i < steps(); ++i) {
            int e = t[static_cast<std::size_t>(i)] % pr;
            if (e == 0) continue;
            RootTuple lower = t;
            --lower[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(m + i)].add_term(
                lower, c * RationalFunction::constant(ctx_, e));
        }
    }
    return out;
}

ExtensionTower::EVec ExtensionTower::substitute_pivots(EVec v) const {
    // every rule expansion only references free generators, so one pass does
    for (const auto& rule : rules_) {
        TowerElement c = v[static_cast<std::size_t>(rule.pivot)];
        if (c.is_zero()) continue;
        v[static_cast<std::size_t>(rule.pivot)] = TowerElement::zero(ctx_);
        for (const auto& [j, coef] : rule.expansion)
            v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] + mul(c, coef);
    }
    return v;
}

void ExtensionTower::add_step(const std::string& name, int s, const TowerElement& g) {
    if (steps() >= kMaxSteps) throw std::invalid_argument("tower supports at most 6 steps");
    if (s < 1 || s > 9) throw std::invalid_argument("root exponent must be between 1 and 9");
    require_same_context(g.context(), ctx_);
    if (name.empty()) throw std::invalid_argument("root name must not be empty");
    if (ctx_->var_index(name) >= 0 || root_index(name) >= 0)
        throw std::invalid_argument("root name '" + name + "' is already in use");
    long long q = 1;
    for (int i = 0; i < s; ++i) q *= ctx_->p();
    if (q > 512) throw std::invalid_argument("step degree p^s too large");
    for (const auto& [t, c] : g.terms()) {
        (void)c;
        for (int i = steps(); i < kMaxSteps; ++i)
            if (t[static_cast<std::size_t>(i)] != 0)
                throw std::invalid_argument("defining element references roots not in the tower");
    }
    TowerElement gr = reduce(std::map<RootTuple, RationalFunction>(g.terms()));
    if (gr.is_zero()) throw std::invalid_argument("defining element must be nonzero");

    EVec row = substitute_pivots(raw_differential(gr));
    int pivot = -1;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (!row[j].is_zero()) {
            pivot = static_cast<int>(j);
            break;
        }
    }
    if (pivot < 0)
        throw hypothesis_error("tower-step-collapses",
                               "defining element of step '" + name +
                                   "' is a p-th power in the field built so far, so the step "
                                   "cannot have the stated degree");

    TowerElement inv = inverse(row[static_cast<std::size_t>(pivot)]);
    Rule rule;
    rule.pivot = pivot;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (static_cast<int>(j) == pivot || row[j].is_zero()) continue;
        rule.expansion.emplace(static_cast<int>(j), -mul(inv, row[j]));
    }
    // keep older rules expressed over the new free set
    for (auto& old : rules_) {
        auto it = old.expansion.find(pivot);
        if (it == old.expansion.end()) continue;
        TowerElement c = it->second;
        old.expansion.erase(it);
        for (const auto& [j, coef] : rule.expansion) {
            auto jt = old.expansion.find(j);
            if (jt == old.expansion.end())
                jt = old.expansion.emplace(j, TowerElement::zero(ctx_)).first;
            jt->second = jt->second + mul(c, coef);
            if (jt->second.is_zero()) old.expansion.erase(jt);
        }
    }

    steps_.push_back(TowerStep{name, s, static_cast<int>(q), gr});
    rules_.push_back(std::move(rule));
    pivots_.clear();
    for (const auto& r : rules_) pivots_.push_back(r.pivot);
    std::sort(pivots_.begin(), pivots_.end());
    free_.clear();
    for (int j = 0; j < gen_count(); ++j)
        if (!std::binary_search(pivots_.begin(), pivots_.end(), j)) free_.push_back(j);
}

ExtensionTower::EVec ExtensionTower::generator_image(int j) const {
    if (j < 0 || j >= gen_count()) throw std::out_of_range("no such generator");
    EVec out(static_cast<std::size_t>(gen_count()), TowerElement::zero(ctx_));
    for (const auto& rule : rules_) {
        if (rule.pivot != j) continue;
        for (const auto& [jj, coef] : rule.expansion) out[static_cast<std::size_t>(jj)] = coef;
        return out;
    }
    out[static_cast<std::size_t>(j)] = one();
    return out;
}

ExtensionTower::EVec ExtensionTower::d(const TowerElement& u) const {
    return substitute_pivots(raw_differential(u));
}

ExtensionTower::EForm ExtensionTower::restrict_form(const DifferentialForm& w) const {
    require_same_context(w.context(), ctx_);
    std::map<int, EVec> images;
    auto image = [&](int j) -> const EVec& {
        auto it = images.find(j);
        if (it == images.end()) it = images.emplace(j, generator_image(j)).first;
        return it->second;
    };
    EForm out;
    for (const auto& [T, f] : w.coeffs()) {
        EForm cur;
        cur.emplace(IndexTuple{}, embed(f));
        for (int j : T) {
            const EVec& img = image(j);
            EForm next;
            for (const auto& [tau, c] : cur) {
                if (c.is_zero()) continue;
                for (int fg : free_) {
                    const TowerElement& comp = img[static_cast<std::size_t>(fg)];
                    if (comp.is_zero()) continue;
                    // insert fg into the increasing tuple tau
                    auto pos = std::lower_bound(tau.begin(), tau.end(), fg);
                    if (pos != tau.end() && *pos == fg) continue;
                    IndexTuple nt;
                    nt.reserve(tau.size() + 1);
                    nt.insert(nt.end(), tau.begin(), pos);
                    nt.push_back(fg);
                    nt.insert(nt.end(), pos, tau.end());
                    bool negate = ((tau.end() - pos) % 2) != 0;
                    TowerElement add = mul(c, comp);
                    if (negate) add = -add;
                    auto it = next.find(nt);
                    if (it == next.end())
                        it = next.emplace(nt, TowerElement::zero(ctx_)).first;
                    it->second = it->second + add;
                    if (it->second.is_zero()) next.erase(it);
                }
            }
            cur = std::move(next);
            if (cur.empty()) break;
        }
        for (const auto& [tau, c] : cur) {
            if (c.is_zero()) continue;
            auto it = out.find(tau);
            if (it == out.end()) it = out.emplace(tau, TowerElement::zero(ctx_)).first;
            it->second = it->second + c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

ExtensionTower::EForm ExtensionTower::wedge_eforms(const EForm& a, const EForm& b) const {
    EForm out;
    for (const auto& [ta, ca] : a) {
        if (ca.is_zero()) continue;
        for (const auto& [tb, cb] : b) {
            if (cb.is_zero()) continue;
            IndexTuple merged;
            int sign = merge_tuples(ta, tb, merged);
            if (sign == 0) continue;
            TowerElement prod = mul(ca, cb);
            if (sign < 0) prod = -prod;
            auto it = out.find(merged);
            if (it == out.end()) it = out.emplace(merged, TowerElement::zero(ctx_)).first;
            it->second = it->second + prod;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

bool ExtensionTower::eform_is_zero(const EForm& a) {
    for (const auto& [t, c] : a) {
        (void)t;
        if (!c.is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// kernels

FormSubspace kernel_bruteforce(const ExtensionTower& E, int n) {
    const ContextPtr& ctx = E.context();
    if (n < 0) throw std::invalid_argument("form degree must be nonnegative");
    const int m = ctx->nvars();
    std::vector<IndexTuple> cols = index_tuples(m, n);
    if (cols.empty()) return FormSubspace::full(ctx, n);
    // one equation per (free-generator tuple, root monomial) pair
    std::map<std::pair<IndexTuple, RootTuple>, std::size_t> row_of;
    Mat rows;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        ExtensionTower::EForm img = E.restrict_form(DifferentialForm::basis(ctx, cols[c]));
        for (const auto& [tau, te] : img) {
            for (const auto& [beta, rf] : te.terms()) {
                auto key = std::make_pair(tau, beta);
                auto it = row_of.find(key);
                if (it == row_of.end()) {
                    it = row_of.emplace(key, rows.size()).first;
                    rows.emplace_back(cols.size(), RationalFunction::zero(ctx));
                }
                rows[it->second][c] = rf;
            }
        }
    }
    std::vector<Vec> null = kernel_basis(rows, static_cast<int>(cols.size()), ctx);
    std::vector<DifferentialForm> gens;
    gens.reserve(null.size());
    for (const Vec& v : null) {
        DifferentialForm w = DifferentialForm::zero(ctx, n);
        for (std::size_t c = 0; c < cols.size(); ++c) w.set_coeff(cols[c], v[c]);
        gens.push_back(std::move(w));
    }
    return FormSubspace::span(ctx, n, gens);
}

FormSubspace kernel_modular(const ContextPtr& ctx, const std::vector<RationalFunction>& gens,
                            int n) {
    if (gens.empty()) throw std::invalid_argument("modular kernel needs at least one generator");
    for (const auto& g : gens) require_same_context(g.context(), ctx);
    if (!is_p_independent(gens))
        throw hypothesis_error("modular-generators-p-dependent",
                               "the root tower generators must be p-independent over F");
    FormSubspace out = FormSubspace::zero(ctx, n);
    for (const auto& g : gens)
        out = out.sum(FormSubspace::wedge_extend(differential(g), n - 1));
    return out;
}

FormSubspace kernel_simple(const ContextPtr& ctx, const std::vector<RationalFunction>& coeffs,
                           bool separable, int n) {
    if (n < 0) throw std::invalid_argument("form degree must be nonnegative");
    if (separable) return FormSubspace::zero(ctx, n);
    if (coeffs.empty())
        throw std::invalid_argument("inseparable simple extension needs minimal polynomial "
                                    "coefficients");
    for (const auto& c : coeffs) require_same_context(c.context(), ctx);
    return ann_power(ctx, coeffs, 1, n);
}

namespace {

struct DependentRootData {
    PowerDecomposition decomp;
};

DependentRootData validate_dependent_root(const ContextPtr& ctx,
                                          const std::vector<RationalFunction>& gens,
                                          const std::vector<int>& exps, const RationalFunction& b,
                                          int m, bool enforce_exponent_bound) {
    if (gens.empty()) throw std::invalid_argument("need at least one tower generator");
    if (gens.size() != exps.size())
        throw std::invalid_argument("generator and exponent lists differ in length");
    for (int e : exps)
        if (e < 1) throw std::invalid_argument("root exponents must be at least 1");
    if (m < 1) throw std::invalid_argument("the dependent root exponent must be at least 1");
    for (const auto& g : gens) require_same_context(g.context(), ctx);
    require_same_context(b.context(), ctx);

    if (!is_p_independent(gens))
        throw hypothesis_error("dependent-root-generators-p-dependent",
                               "the root tower generators must be p-independent over F");
    if (b.has_pth_root(ctx->p()))
        throw hypothesis_error("dependent-root-element-pth-power",
                               "the dependent element must not be a p-th power in F");
    std::optional<Vec> lambda = p_span_coordinates(b, gens);
    if (!lambda)
        throw hypothesis_error("dependent-root-element-outside-span",
                               "the dependent element must lie in F^p adjoined the generators");
    if (enforce_exponent_bound) {
        int min_exp = *std::min_element(exps.begin(), exps.end());
        if (m > min_exp) {
            std::string msg =
                "the dependent root exponent must not exceed any generator exponent";
            bool all_nonzero = true;
            for (const auto& l : *lambda)
                if (l.is_zero()) all_nonzero = false;
            if (all_nonzero)
                msg += "; note: every generator carries a nonzero coefficient in d(b), so "
                       "exchanging b with a generator yields an equivalent tower that meets "
                       "the constraint";
            throw hypothesis_error("dependent-root-exponent-bound", msg);
        }
    }
    DependentRootData out;
    out.decomp = max_power_decomposition(b, gens, m);
    return out;
}

std::vector<RationalFunction> decomposition_values(const PowerDecomposition& d) {
    std::vector<RationalFunction> out;
    out.reserve(d.coeffs.size());
    for (const auto& [cls, x] : d.coeffs) {
        (void)cls;
        out.push_back(x);
    }
    return out;
}

std::vector<std::vector<RationalFunction>> singleton_slots(
    const std::vector<RationalFunction>& gens) {
    std::vector<std::vector<RationalFunction>> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back({g});
    return out;
}

} // namespace

DependentRootKernel kernel_dependent_root(const ContextPtr& ctx,
                                          const std::vector<RationalFunction>& gens,
                                          const std::vector<int>& exps, const RationalFunction& b,
                                          int m, int n, bool enforce_exponent_bound) {
    DependentRootData data =
        validate_dependent_root(ctx, gens, exps, b, m, enforce_exponent_bound);
    DependentRootKernel out{FormSubspace::zero(ctx, n), false, 0, {}};
    if (data.decomp.modular_signal) {
        out.kernel = kernel_modular(ctx, gens, n);
        out.modular_case = true;
        out.t = m;
        return out;
    }
    out.t = data.decomp.t;
    out.decomposition_coeffs = decomposition_values(data.decomp);
    out.kernel = ann_mixed(ctx, singleton_slots(gens), out.decomposition_coeffs, n);
    return out;
}

NuGeneratedSet nu_kernel_modular(const ContextPtr& ctx, const std::vector<RationalFunction>& gens,
                                 int n, bool assume_pm1_closed) {
    if (gens.empty()) throw std::invalid_argument("modular kernel needs at least one generator");
    for (const auto& g : gens) require_same_context(g.context(), ctx);
    if (ctx->p() != 2 && !assume_pm1_closed)
        throw hypothesis_error("nu-closure-missing",
                               "logarithmic kernels need every element of F to be a (p-1)-st "
                               "power; pass the closure flag to assert this");
    if (!is_p_independent(gens))
        throw hypothesis_error("modular-generators-p-dependent",
                               "the root tower generators must be p-independent over F");
    NuGeneratedSet out{ctx, n, false, {}};
    if (n >= 1) out.summands.push_back(NuSummand{1, gens, n - 1});
    return out;
}

DependentRootNu nu_kernel_dependent_root(const ContextPtr& ctx,
                                         const std::vector<RationalFunction>& gens,
                                         const std::vector<int>& exps, const RationalFunction& b,
                                         int m, int n, bool assume_pm1_closed,
                                         bool enforce_exponent_bound) {
    if (ctx->p() != 2 && !assume_pm1_closed)
        throw hypothesis_error("nu-closure-missing",
                               "logarithmic kernels need every element of F to be a (p-1)-st "
                               "power; pass the closure flag to assert this");
    DependentRootData data =
        validate_dependent_root(ctx, gens, exps, b, m, enforce_exponent_bound);
    DependentRootNu out{NuGeneratedSet{ctx, n, false, {}}, false, 0};
    if (data.decomp.modular_signal) {
        out.set = nu_kernel_modular(ctx, gens, n, assume_pm1_closed);
        out.modular_case = true;
        out.t = m;
        return out;
    }
    out.t = data.decomp.t;
    out.set = nu_ann_mixed(ctx, singleton_slots(gens), decomposition_values(data.decomp), n,
                           assume_pm1_closed);
    return out;
}

ExtensionTower build_modular_tower(const ContextPtr& ctx,
                                   const std::vector<RationalFunction>& gens,
                                   const std::vector<int>& exps) {
    if (gens.size() != exps.size())
        throw std::invalid_argument("generator and exponent lists differ in length");
    ExtensionTower E(ctx);
    for (std::size_t i = 0; i < gens.size(); ++i)
        E.add_step("z" + std::to_string(i + 1), exps[i], E.embed(gens[i]));
    return E;
}

ExtensionTower build_dependent_root_tower(const ContextPtr& ctx,
                                          const std::vector<RationalFunction>& gens,
                                          const std::vector<int>& exps, const RationalFunction& b,
                                          int m) {
    // validations as for the kernel, but without the exponent bound: the
    // field exists regardless, only the closed-form kernel needs the bound
    DependentRootData data = validate_dependent_root(ctx, gens, exps, b, m, false);
    ExtensionTower E = build_modular_tower(ctx, gens, exps);
    const int p = ctx->p();

    // exponent of the auxiliary root inside the tower
    int t = data.decomp.modular_signal ? m : data.decomp.t;
    std::map<std::vector<int>, RationalFunction> coeffs;
    if (data.decomp.modular_signal) {
        // membership holds at m itself; recompute the coefficients there
        std::optional<std::map<std::vector<int>, RationalFunction>> sol =
            power_span_solve(b, gens, m);
        if (!sol)
            throw std::logic_error("power membership reported at the root exponent but no "
                                   "decomposition was found");
        coeffs = std::move(*sol);
    } else {
        coeffs = data.decomp.coeffs;
    }

    // p^t-th root of b inside the tower: sum of x_i * prod z_j^(i_j * p^(s_j - t))
    TowerElement b0 = E.zero();
    for (const auto& [cls, x] : coeffs) {
        if (x.is_zero()) continue;
        TowerElement term = E.embed(x);
        for (std::size_t j = 0; j < cls.size(); ++j) {
            if (cls[j] == 0) continue;
            if (exps[j] < t)
                throw std::invalid_argument(
                    "the decomposition exponent exceeds a generator's root depth, so the "
                    "auxiliary root cannot be expressed in the tower");
            long long e = static_cast<long long>(cls[j]) * pow_int(p, exps[j] - t);
            term = E.mul(term, E.pow(E.root(static_cast<int>(j)), e));
        }
        b0 = b0 + term;
    }

    long long qt = 1;
    for (int i = 0; i < t; ++i) qt *= p;
    if (E.pow(b0, qt) != E.embed(b))
        throw std::logic_error("auxiliary root verification failed in the tower");

    if (!data.decomp.modular_signal) E.add_step("w", m - t, b0);
    return E;
}

DimensionCheck dimension_check(const ExtensionTower& E, int n) {
    DimensionCheck out;
    const int m = E.context()->nvars();
    std::vector<int> used;
    for (int i = 0; i < E.steps(); ++i) {
        const TowerElement& g = E.step(i).g;
        if (!g.is_constant()) return out;
        std::optional<int> v = g.constant_part().as_variable();
        if (!v) return out;
        if (std::find(used.begin(), used.end(), *v) != used.end()) return out;
        used.push_back(*v);
    }
    const int r = static_cast<int>(used.size());
    out.applicable = true;
    long long total = 0;
    for (int s = 0; s <= std::min(r, n); ++s)
        total += safe_binomial(r, s) * safe_binomial(m - r, n - s);
    out.expected = E.degree() * total;
    out.computed = E.degree() * safe_binomial(static_cast<int>(E.free_gens().size()), n);
    return out;
}

} // namespace pforms
