#include "pforms/forms.hpp"

#include <algorithm>
#include <stdexcept>

#include "pforms/linalg.hpp"

namespace pforms {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::vector<IndexTuple> index_tuples(int m, int n) {
    std::vector<IndexTuple> out;
    if (n < 0 || n > m) return out;
    IndexTuple t(n);
    for (int i = 0; i < n; ++i) t[i] = i;
    for (;;) {
        out.push_back(t);
        int i = n - 1;
        while (i >= 0 && t[i] == m - n + i) --i;
        if (i < 0) break;
        ++t[i];
        for (int j = i + 1; j < n; ++j) t[j] = t[j - 1] + 1;
    }
    return out;
}

DifferentialForm::DifferentialForm(ContextPtr ctx, int degree) : ctx_(std::move(ctx)), n_(degree) {}

DifferentialForm DifferentialForm::scalar(const RationalFunction& f) {
    DifferentialForm w(f.context(), 0);
    if (!f.is_zero()) w.c_.emplace(IndexTuple{}, f);
    return w;
}

DifferentialForm DifferentialForm::basis(const ContextPtr& ctx, const IndexTuple& t) {
    DifferentialForm w(ctx, static_cast<int>(t.size()));
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] >= t[i + 1]) throw std::invalid_argument("index tuple must increase strictly");
    if (!t.empty() && (t.front() < 0 || t.back() >= ctx->nvars()))
        throw std::out_of_range("index tuple out of range");
    w.c_.emplace(t, RationalFunction::one(ctx));
    return w;
}

RationalFunction DifferentialForm::coeff(const IndexTuple& t) const {
    auto it = c_.find(t);
    return it == c_.end() ? RationalFunction::zero(ctx_) : it->second;
}

void DifferentialForm::set_coeff(const IndexTuple& t, const RationalFunction& f) {
    if (static_cast<int>(t.size()) != n_) throw std::invalid_argument("tuple size must match degree");
    if (f.is_zero())
        c_.erase(t);
    else
        c_.insert_or_assign(t, f);
}

void DifferentialForm::add_coeff(const IndexTuple& t, const RationalFunction& f) {
    if (f.is_zero()) return;
    auto it = c_.find(t);
    if (it == c_.end()) {
        c_.emplace(t, f);
        return;
    }
    it->second = it->second + f;
    if (it->second.is_zero()) c_.erase(it);
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
    require_same_context(ctx_, o.ctx_);
    if (n_ != o.n_) throw std::invalid_argument("cannot add forms of different degree");
    DifferentialForm r = *this;
    for (const auto& [t, f] : o.c_) r.add_coeff(t, f);
    return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const { return *this + (-o); }

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm r(ctx_, n_);
    for (const auto& [t, f] : c_) r.c_.emplace(t, -f);
    return r;
}

DifferentialForm DifferentialForm::operator*(const RationalFunction& f) const {
    DifferentialForm r(ctx_, n_);
    if (f.is_zero()) return r;
    for (const auto& [t, g] : c_) {
        RationalFunction prod = g * f;
        if (!prod.is_zero()) r.c_.emplace(t, std::move(prod));
    }
    return r;
}

bool DifferentialForm::operator==(const DifferentialForm& o) const {
    require_same_context(ctx_, o.ctx_);
    return n_ == o.n_ && c_ == o.c_;
}

namespace {

// Merge two strictly increasing tuples; fails on a shared index.  The sign
// counts the transpositions moving b's entries into place.
std::optional<std::pair<IndexTuple, int>> merge_tuples(const IndexTuple& a, const IndexTuple& b) {
    IndexTuple m;
    m.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    int swaps = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return std::nullopt;
        if (a[i] < b[j]) {
            m.push_back(a[i++]);
        } else {
            m.push_back(b[j++]);
            swaps += static_cast<int>(a.size() - i);
        }
    }
    while (i < a.size()) m.push_back(a[i++]);
    while (j < b.size()) m.push_back(b[j++]);
    return std::make_pair(std::move(m), swaps % 2 == 0 ? 1 : -1);
}

} // namespace

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    require_same_context(a.context(), b.context());
    DifferentialForm r(a.context(), a.degree() + b.degree());
    if (r.degree() > a.context()->nvars()) return DifferentialForm::zero(a.context(), r.degree());
    for (const auto& [ta, fa] : a.coeffs())
        for (const auto& [tb, fb] : b.coeffs()) {
            auto merged = merge_tuples(ta, tb);
            if (!merged) continue;
            RationalFunction f = fa * fb;
            if (merged->second < 0) f = -f;
            r.add_coeff(merged->first, f);
        }
    return r;
}

DifferentialForm differential(const RationalFunction& f) {
    const ContextPtr& ctx = f.context();
    DifferentialForm r(ctx, 1);
    for (int i = 0; i < ctx->nvars(); ++i) r.add_coeff({i}, f.derivative(i));
    return r;
}

DifferentialForm differential(const DifferentialForm& w) {
    DifferentialForm r(w.context(), w.degree() + 1);
    for (const auto& [t, f] : w.coeffs()) {
        DifferentialForm df = differential(f);
        DifferentialForm dt(w.context(), w.degree());
        dt.set_coeff(t, RationalFunction::one(w.context()));
        r = r + wedge(df, dt);
    }
    return r;
}

DifferentialForm dlog(const RationalFunction& a) {
    if (a.is_zero()) throw std::domain_error("logarithmic slot of zero");
    return differential(a) * (RationalFunction::one(a.context()) / a);
}

std::map<IndexTuple, RationalFunction> to_log_basis(const DifferentialForm& w) {
    std::map<IndexTuple, RationalFunction> out;
    for (const auto& [t, f] : w.coeffs()) {
        RationalFunction g = f;
        for (int i : t) g = g * RationalFunction::variable(w.context(), i);
        out.emplace(t, std::move(g));
    }
    return out;
}

DifferentialForm from_log_basis(const ContextPtr& ctx, int degree,
                                const std::map<IndexTuple, RationalFunction>& logc) {
    DifferentialForm w(ctx, degree);
    for (const auto& [t, g] : logc) {
        RationalFunction f = g;
        for (int i : t) f = f / RationalFunction::variable(ctx, i);
        w.add_coeff(t, f);
    }
    return w;
}

std::optional<IndexTuple> max_multiindex(const DifferentialForm& w) {
    if (w.is_zero()) return std::nullopt;
    return w.coeffs().rbegin()->first;
}

DivisionWitness divide_form(const DifferentialForm& w, const DifferentialForm& u) {
    require_same_context(w.context(), u.context());
    const ContextPtr& ctx = w.context();
    const int m = ctx->nvars();
    const int k = u.degree() - w.degree();
    DivisionWitness out{false, DifferentialForm::zero(ctx, k)};
    if (u.is_zero()) {
        out.divides = true;
        return out;
    }
    if (w.is_zero() || k < 0 || k > m) return out;

    // linear system: coefficients of w ^ v against u over the target basis
    auto unknowns = index_tuples(m, k);
    auto targets = index_tuples(m, u.degree());
    std::vector<DifferentialForm> cols;
    cols.reserve(unknowns.size());
    for (const auto& t : unknowns) cols.push_back(wedge(w, DifferentialForm::basis(ctx, t)));

    Mat rows;
    Vec rhs;
    for (const auto& tgt : targets) {
        Vec row;
        row.reserve(unknowns.size());
        bool nonzero = false;
        for (const auto& col : cols) {
            RationalFunction e = col.coeff(tgt);
            nonzero = nonzero || !e.is_zero();
            row.push_back(std::move(e));
        }
        RationalFunction b = u.coeff(tgt);
        if (!nonzero && b.is_zero()) continue;
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
    }
    auto sol = solve(rows, rhs);
    if (!sol) return out;
    out.divides = true;
    for (std::size_t i = 0; i < unknowns.size(); ++i) out.quotient.add_coeff(unknowns[i], (*sol)[i]);
    return out;
}

bool is_closed(const DifferentialForm& w) { return differential(w).is_zero(); }

DifferentialForm cartier(const DifferentialForm& w) {
    if (!is_closed(w)) throw std::domain_error("Cartier operator needs a closed form");
    std::map<IndexTuple, RationalFunction> out;
    for (const auto& [t, g] : to_log_basis(w)) {
        auto parts = frobenius_decompose(g, 1);
        auto it = parts.find(Monomial::one());
        if (it != parts.end()) out.emplace(t, it->second);
    }
    return from_log_basis(w.context(), w.degree(), out);
}

bool is_exact(const DifferentialForm& w) {
    if (w.degree() == 0) return w.is_zero(); // no (-1)-forms to bound
    if (!is_closed(w)) return false;
    return cartier(w).is_zero();
}

DifferentialForm artin_schreier_rep(const DifferentialForm& w) {
    std::map<IndexTuple, RationalFunction> out;
    for (const auto& [t, g] : to_log_basis(w)) {
        RationalFunction img = g.frobenius_pow(w.p()) - g;
        if (!img.is_zero()) out.emplace(t, std::move(img));
    }
    return from_log_basis(w.context(), w.degree(), out);
}

bool is_nu_member(const DifferentialForm& w) {
    DifferentialForm rep = artin_schreier_rep(w);
    if (w.degree() == 0) {
        // nu_0 is the prime field: x^p - x must vanish outright
        return rep.is_zero();
    }
    return rep.is_zero() || is_exact(rep);
}

DifferentialForm sample_log_form(std::mt19937_64& rng, const ContextPtr& ctx, int n,
                                 const std::vector<RationalFunction>& pool) {
    if (pool.empty()) throw std::invalid_argument("empty sampling pool");
    if (n == 0) return DifferentialForm::scalar(RationalFunction::one(ctx));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int attempt = 0; attempt < 8; ++attempt) {
        DifferentialForm w = DifferentialForm::scalar(RationalFunction::one(ctx));
        for (int i = 0; i < n; ++i) {
            const RationalFunction& a = pool[pick(rng)];
            if (a.is_zero()) throw std::invalid_argument("sampling pool contains zero");
            w = wedge(w, dlog(a));
        }
        if (!w.is_zero()) return w;
    }
    return DifferentialForm::zero(ctx, n);
}

} // namespace pforms
