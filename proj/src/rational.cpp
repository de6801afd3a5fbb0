#include "pforms/rational.hpp"

#include <stdexcept>

namespace pforms {

int pow_int(int p, int t) {
    if (t < 0) throw std::invalid_argument("negative power");
    long long r = 1;
    while (t--) {
        r *= p;
        if (r > (1 << 20)) throw std::overflow_error("p^t out of supported range");
    }
    return static_cast<int>(r);
}

RationalFunction RationalFunction::make_canonical(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw std::domain_error("zero denominator");
    if (num.is_zero()) return RationalFunction(num.context());
    Polynomial g = gcd(num, den);
    if (!g.is_one()) {
        num = *div_exact(num, g);
        den = *div_exact(den, g);
    }
    int lc = den.leading_coeff();
    if (lc != 1) {
        int inv = fp_inv(lc, num.p());
        num = num * inv;
        den = den * inv;
    }
    RationalFunction r(num.context());
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(Polynomial::zero(num.context())), den_(Polynomial::constant(num.context(), 1)) {
    require_same_context(num.context(), den.context());
    *this = make_canonical(std::move(num), std::move(den));
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    require_same_context(context(), o.context());
    return make_canonical(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    require_same_context(context(), o.context());
    return make_canonical(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    require_same_context(context(), o.context());
    if (is_zero() || o.is_zero()) return zero(context());
    // cross-reduce before multiplying to keep the gcd calls small
    Polynomial g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    Polynomial n1 = g1.is_one() ? num_ : *div_exact(num_, g1);
    Polynomial d2 = g1.is_one() ? o.den_ : *div_exact(o.den_, g1);
    Polynomial n2 = g2.is_one() ? o.num_ : *div_exact(o.num_, g2);
    Polynomial d1 = g2.is_one() ? den_ : *div_exact(den_, g2);
    return make_canonical(n1 * n2, d1 * d2);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    return *this * make_canonical(o.den_, o.num_);
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    require_same_context(context(), o.context());
    return num_ == o.num_ && den_ == o.den_;
}

RationalFunction RationalFunction::pow(int k) const {
    if (k < 0) {
        if (is_zero()) throw std::domain_error("division by zero");
        return make_canonical(den_, num_).pow(-k);
    }
    RationalFunction acc = one(context());
    RationalFunction base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = (k >>= 1) ? base * base : base;
    }
    return acc;
}

RationalFunction RationalFunction::derivative(int var) const {
    // quotient rule; the constructor re-canonicalizes
    return RationalFunction(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

std::optional<int> RationalFunction::as_variable() const {
    if (!den_.is_one() || num_.is_zero()) return std::nullopt;
    const auto& terms = num_.terms();
    if (terms.size() != 1) return std::nullopt;
    const auto& [mono, c] = *terms.begin();
    if (c != 1 || mono.deg() != 1) return std::nullopt;
    for (int j = 0; j < context()->nvars(); ++j) {
        if (mono.e[static_cast<std::size_t>(j)] == 1) return j;
    }
    return std::nullopt;
}

RationalFunction RationalFunction::frobenius_pow(int q) const {
    RationalFunction r(context());
    r.num_ = num_.frobenius_pow(q);
    r.den_ = den_.frobenius_pow(q);
    return r; // already canonical: gcd of powers is power of gcd, lc fixed by Frobenius
}

std::map<Monomial, RationalFunction, GrlexLess> frobenius_decompose(const RationalFunction& f, int t) {
    if (t < 1) throw std::invalid_argument("decomposition exponent must be >= 1");
    const ContextPtr& ctx = f.context();
    const int q = pow_int(f.p(), t);
    std::map<Monomial, RationalFunction, GrlexLess> out;
    if (f.is_zero()) return out;

    // f = (num * den^(q-1)) / den^q and den^q is a q-th power, so classes of
    // the big numerator are classes of f.
    Polynomial big = f.num();
    if (!f.is_polynomial()) {
        Polynomial den_q = f.den().frobenius_pow(q);
        big = f.num() * *div_exact(den_q, f.den());
    }

    std::map<Monomial, Polynomial, GrlexLess> classes;
    for (const auto& [m, c] : big.terms()) {
        Monomial cls, rest;
        for (int i = 0; i < kMaxVars; ++i) {
            cls.e[i] = static_cast<std::uint16_t>(m.e[i] % q);
            rest.e[i] = static_cast<std::uint16_t>(m.e[i] / q);
        }
        auto it = classes.find(cls);
        if (it == classes.end()) it = classes.emplace(cls, Polynomial::zero(ctx)).first;
        it->second.add_term(rest, c); // coefficient roots are the identity on F_p
    }

    RationalFunction den = RationalFunction::from_poly(f.den());
    for (auto& [cls, root] : classes) {
        RationalFunction g = RationalFunction::from_poly(root) / den;
        if (!g.is_zero()) out.emplace(cls, std::move(g));
    }
    return out;
}

RationalFunction frobenius_recompose(const ContextPtr& ctx,
                                     const std::map<Monomial, RationalFunction, GrlexLess>& parts,
                                     int t) {
    const int q = pow_int(ctx->p(), t);
    RationalFunction acc = RationalFunction::zero(ctx);
    for (const auto& [cls, g] : parts) {
        RationalFunction mono = RationalFunction::from_poly(Polynomial::term(ctx, cls, 1));
        acc = acc + g.frobenius_pow(q) * mono;
    }
    return acc;
}

namespace {
int exact_log(int q, int p) {
    int t = 0;
    long long v = 1;
    while (v < q) {
        v *= p;
        ++t;
    }
    if (v != q || t < 1) throw std::invalid_argument("root index must be a positive power of p");
    return t;
}
} // namespace

bool RationalFunction::has_pth_root(int q) const {
    int t = exact_log(q, p());
    if (is_zero()) return true;
    auto full = frobenius_decompose(*this, t);
    return full.size() == 1 && full.begin()->first.is_one();
}

RationalFunction RationalFunction::pth_root(int q) const {
    int t = exact_log(q, p());
    if (is_zero()) return *this;
    auto full = frobenius_decompose(*this, t);
    if (full.size() != 1 || !full.begin()->first.is_one())
        throw std::domain_error("element has no p^t-th root");
    return full.begin()->second;
}

RationalFunction substitute(const RationalFunction& f, const std::vector<RationalFunction>& images) {
    const ContextPtr& src = f.context();
    if (static_cast<int>(images.size()) != src->nvars())
        throw std::invalid_argument("substitution needs one image per variable");
    const ContextPtr& dst = images.front().context();

    auto eval = [&](const Polynomial& poly) {
        RationalFunction acc = RationalFunction::zero(dst);
        for (const auto& [m, c] : poly.terms()) {
            RationalFunction term = RationalFunction::constant(dst, c);
            for (int i = 0; i < src->nvars(); ++i)
                if (m.e[i]) term = term * images[i].pow(m.e[i]);
            acc = acc + term;
        }
        return acc;
    };
    RationalFunction den = eval(f.den());
    if (den.is_zero()) throw std::domain_error("substitution makes the denominator vanish");
    return eval(f.num()) / den;
}

} // namespace pforms
