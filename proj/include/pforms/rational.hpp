#ifndef PFORMS_RATIONAL_HPP
#define PFORMS_RATIONAL_HPP

#include <map>
#include <optional>
#include <vector>

#include "pforms/polynomial.hpp"

namespace pforms {

// Element of F_p(x_1,...,x_m) kept in canonical form: numerator and
// denominator coprime, denominator monic under graded-lex.  Equality of
// values is therefore representation equality.
class RationalFunction {
public:
    explicit RationalFunction(ContextPtr ctx)
        : num_(Polynomial::zero(ctx)), den_(Polynomial::constant(ctx, 1)) {}
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction zero(const ContextPtr& ctx) { return RationalFunction(ctx); }
    static RationalFunction one(const ContextPtr& ctx) { return from_poly(Polynomial::constant(ctx, 1)); }
    static RationalFunction constant(const ContextPtr& ctx, long long c) {
        return from_poly(Polynomial::constant(ctx, c));
    }
    static RationalFunction variable(const ContextPtr& ctx, int i) {
        return from_poly(Polynomial::variable(ctx, i));
    }
    static RationalFunction from_poly(Polynomial p) {
        ContextPtr ctx = p.context();
        return RationalFunction(std::move(p), Polynomial::constant(ctx, 1));
    }

    const ContextPtr& context() const { return num_.context(); }
    int p() const { return num_.p(); }
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    // The coordinate index when this value is exactly one variable.
    std::optional<int> as_variable() const;

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    bool operator==(const RationalFunction& o) const;
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    RationalFunction pow(int k) const; // negative k inverts

    RationalFunction derivative(int var) const;

    // f^(p^t) and its inverse on images of that map.
    RationalFunction frobenius_pow(int q) const;

    bool has_pth_root(int q) const;
    RationalFunction pth_root(int q) const; // throws domain_error if no root

private:
    static RationalFunction make_canonical(Polynomial num, Polynomial den);

    Polynomial num_, den_;
};

// Unique decomposition f = sum_c g_c^(p^t) * x^c over exponent classes
// c in [0, p^t)^m; only nonzero g_c are listed.
std::map<Monomial, RationalFunction, GrlexLess> frobenius_decompose(const RationalFunction& f, int t);

// Recombine a decomposition (inverse of frobenius_decompose).
RationalFunction frobenius_recompose(const ContextPtr& ctx,
                                     const std::map<Monomial, RationalFunction, GrlexLess>& parts,
                                     int t);

// Image of f under x_i -> images[i]; throws domain_error if the denominator
// vanishes under the substitution.
RationalFunction substitute(const RationalFunction& f, const std::vector<RationalFunction>& images);

// p^t as int with overflow guard on desk-scale exponents.
int pow_int(int p, int t);

} // namespace pforms

#endif
