#include "pforms/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pforms {

Polynomial Polynomial::constant(const ContextPtr& ctx, long long c) {
    Polynomial r(ctx);
    r.add_term(Monomial::one(), c);
    return r;
}

Polynomial Polynomial::variable(const ContextPtr& ctx, int i) {
    if (i < 0 || i >= ctx->nvars()) throw std::out_of_range("variable index out of range");
    Polynomial r(ctx);
    r.add_term(Monomial::var(i), 1);
    return r;
}

Polynomial Polynomial::term(const ContextPtr& ctx, const Monomial& m, long long c) {
    Polynomial r(ctx);
    r.add_term(m, c);
    return r;
}

bool Polynomial::is_one() const {
    return t_.size() == 1 && t_.begin()->first.is_one() && t_.begin()->second == 1;
}

int Polynomial::total_degree() const {
    if (t_.empty()) return -1;
    return t_.rbegin()->first.deg(); // grlex: last term has maximal degree
}

int Polynomial::degree_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, static_cast<int>(m.e[var]));
    return d;
}

std::pair<Monomial, int> Polynomial::leading() const {
    if (t_.empty()) throw std::domain_error("leading term of zero polynomial");
    return *t_.rbegin();
}

void Polynomial::add_term(const Monomial& m, long long c) {
    int cc = fp_norm(c, p());
    if (cc == 0) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, cc);
    } else {
        it->second = fp_add(it->second, cc, p());
        if (it->second == 0) t_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_context(ctx_, o.ctx_);
    Polynomial r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    require_same_context(ctx_, o.ctx_);
    Polynomial r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, fp_neg(c, p()));
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ctx_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, fp_neg(c, p()));
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_context(ctx_, o.ctx_);
    Polynomial r(ctx_);
    for (const auto& [ma, ca] : t_)
        for (const auto& [mb, cb] : o.t_) r.add_term(ma * mb, fp_mul(ca, cb, p()));
    return r;
}

Polynomial Polynomial::operator*(int c) const {
    Polynomial r(ctx_);
    int cc = fp_norm(c, p());
    if (cc == 0) return r;
    for (const auto& [m, cv] : t_) r.t_.emplace(m, fp_mul(cv, cc, p()));
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    require_same_context(ctx_, o.ctx_);
    return t_ == o.t_;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative polynomial power");
    Polynomial acc = Polynomial::constant(ctx_, 1);
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = (k >>= 1) ? base * base : base;
    }
    return acc;
}

Polynomial Polynomial::frobenius_pow(int q) const {
    Polynomial r(ctx_);
    for (const auto& [m, c] : t_) r.t_.emplace(m.pow(q), c);
    return r;
}

Polynomial Polynomial::frobenius_root(int q) const {
    Polynomial r(ctx_);
    for (const auto& [m, c] : t_) {
        Monomial mr;
        for (int i = 0; i < kMaxVars; ++i) {
            assert(m.e[i] % q == 0);
            mr.e[i] = static_cast<std::uint16_t>(m.e[i] / q);
        }
        r.t_.emplace(mr, c);
    }
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial r(ctx_);
    for (const auto& [m, c] : t_) {
        int e = m.e[var];
        int cc = fp_mul(c, fp_norm(e, p()), p());
        if (e == 0 || cc == 0) continue;
        Monomial md = m;
        md.e[var] = static_cast<std::uint16_t>(e - 1);
        r.add_term(md, cc);
    }
    return r;
}

Polynomial Polynomial::monic() const {
    if (t_.empty()) return *this;
    return *this * fp_inv(leading_coeff(), p());
}

std::vector<int> Polynomial::variables_present() const {
    std::vector<int> out;
    for (int i = 0; i < ctx_->nvars(); ++i)
        for (const auto& [m, c] : t_)
            if (m.e[i]) {
                out.push_back(i);
                break;
            }
    return out;
}

std::optional<Polynomial> div_exact(const Polynomial& f, const Polynomial& g) {
    require_same_context(f.context(), g.context());
    if (g.is_zero()) throw std::domain_error("division by zero polynomial");
    const int p = f.p();
    Polynomial q(f.context());
    Polynomial r = f;
    auto [gm, gc] = g.leading();
    int gcinv = fp_inv(gc, p);
    while (!r.is_zero()) {
        auto [rm, rc] = r.leading();
        if (!gm.divides(rm)) return std::nullopt;
        Monomial d = rm / gm;
        int c = fp_mul(rc, gcinv, p);
        Polynomial t = Polynomial::term(f.context(), d, c);
        q = q + t;
        r = r - t * g;
    }
    return q;
}

namespace {

// --- gcd machinery ------------------------------------------------------

Monomial monomial_content(const Polynomial& f) {
    Monomial m = f.terms().begin()->first;
    for (const auto& [mm, c] : f.terms()) m = Monomial::gcd(m, mm);
    return m;
}

Polynomial divide_by_monomial(const Polynomial& f, const Monomial& m) {
    Polynomial r(f.context());
    for (const auto& [mm, c] : f.terms()) r.add_term(mm / m, c);
    return r;
}

// Coefficients of f viewed as univariate in `var`, indexed by var-degree.
std::map<int, Polynomial> coeffs_in(const Polynomial& f, int var) {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : f.terms()) {
        int d = m.e[var];
        Monomial mm = m;
        mm.e[var] = 0;
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, Polynomial::zero(f.context())).first;
        it->second.add_term(mm, c);
    }
    return out;
}

Polynomial lead_coeff_in(const Polynomial& f, int var) {
    int d = f.degree_in(var);
    Polynomial out(f.context());
    for (const auto& [m, c] : f.terms())
        if (m.e[var] == d) {
            Monomial mm = m;
            mm.e[var] = 0;
            out.add_term(mm, c);
        }
    return out;
}

Polynomial content_in(const Polynomial& f, int var) {
    Polynomial acc = Polynomial::zero(f.context());
    for (const auto& [d, c] : coeffs_in(f, var)) {
        acc = gcd(acc, c);
        if (acc.is_one()) break;
    }
    return acc;
}

// Dense Euclid for polynomials in a single variable.
Polynomial gcd_univariate(const Polynomial& a, const Polynomial& b, int var) {
    const int p = a.p();
    auto dense = [&](const Polynomial& f) {
        std::vector<int> v(f.degree_in(var) + 1, 0);
        for (const auto& [m, c] : f.terms()) v[m.e[var]] = c;
        return v;
    };
    auto deg = [](const std::vector<int>& v) {
        int d = static_cast<int>(v.size()) - 1;
        while (d >= 0 && v[d] == 0) --d;
        return d;
    };
    std::vector<int> u = dense(a), w = dense(b);
    int dw = deg(w);
    while (dw >= 0) {
        // u <- u mod w, then rotate
        int inv = fp_inv(w[dw], p);
        int du = deg(u);
        while (du >= dw) {
            int c = fp_mul(u[du], inv, p);
            for (int i = 0; i <= dw; ++i) u[du - dw + i] = fp_sub(u[du - dw + i], fp_mul(c, w[i], p), p);
            while (du >= 0 && u[du] == 0) --du;
        }
        std::swap(u, w);
        dw = deg(w);
    }
    Polynomial r(a.context());
    for (int i = 0; i <= deg(u); ++i)
        if (u[i]) r.add_term(Monomial::var(var, i), u[i]);
    return r;
}

// Lazy pseudo-remainder of f by g in `var` (g nonzero in var).
Polynomial prem_in(const Polynomial& f, const Polynomial& g, int var) {
    Polynomial r = f;
    const int dg = g.degree_in(var);
    const Polynomial lg = lead_coeff_in(g, var);
    while (!r.is_zero()) {
        int dr = r.degree_in(var);
        if (dr < dg) break;
        Polynomial lr = lead_coeff_in(r, var);
        Polynomial shift = Polynomial::term(r.context(), Monomial::var(var, dr - dg), 1);
        r = lg * r - lr * shift * g;
    }
    return r;
}

Polynomial gcd_core(const Polynomial& a, const Polynomial& b);

// Common divisor of two nonzero polynomials with trivial monomial content.
Polynomial gcd_core(const Polynomial& a, const Polynomial& b) {
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.context(), 1);

    auto va = a.variables_present(), vb = b.variables_present();
    int v = std::min(va.front(), vb.front());
    bool a_uni = va.size() == 1 && va.front() == v;
    bool b_uni = vb.size() == 1 && vb.front() == v;
    if (a_uni && b_uni) return gcd_univariate(a, b, v);

    if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
    if (b.degree_in(v) == 0) return gcd(b, content_in(a, v));

    Polynomial ca = content_in(a, v), cb = content_in(b, v);
    Polynomial c = gcd(ca, cb);
    Polynomial f = *div_exact(a, ca);
    Polynomial g = *div_exact(b, cb);
    if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);

    // primitive remainder sequence
    for (;;) {
        Polynomial r = prem_in(f, g, v);
        if (r.is_zero()) return c * g;
        if (r.degree_in(v) == 0) return c; // primitive inputs: v-free gcd is a unit
        f = g;
        g = *div_exact(r, content_in(r, v));
    }
}

} // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    require_same_context(a.context(), b.context());
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    Monomial ma = monomial_content(a), mb = monomial_content(b);
    Monomial m = Monomial::gcd(ma, mb);
    Polynomial core = gcd_core(divide_by_monomial(a, ma), divide_by_monomial(b, mb));
    return (core * Polynomial::term(a.context(), m, 1)).monic();
}

} // namespace pforms
