#ifndef PFORMS_POLYNOMIAL_HPP
#define PFORMS_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pforms/context.hpp"
#include "pforms/fp.hpp"
#include "pforms/monomial.hpp"

namespace pforms {

// Sparse multivariate polynomial over F_p with graded-lex term order.
// Terms are kept normalized: no zero coefficients, coefficients in [1, p).
class Polynomial {
public:
    using TermMap = std::map<Monomial, int, GrlexLess>;

    explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static Polynomial zero(const ContextPtr& ctx) { return Polynomial(ctx); }
    static Polynomial constant(const ContextPtr& ctx, long long c);
    static Polynomial variable(const ContextPtr& ctx, int i);
    static Polynomial term(const ContextPtr& ctx, const Monomial& m, long long c);

    const ContextPtr& context() const { return ctx_; }
    int p() const { return ctx_->p(); }
    const TermMap& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
    bool is_one() const;
    bool is_monomial() const { return t_.size() == 1; }

    int total_degree() const; // -1 for the zero polynomial
    int degree_in(int var) const;

    std::pair<Monomial, int> leading() const; // throws on zero
    int leading_coeff() const { return leading().second; }

    void add_term(const Monomial& m, long long c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(int c) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(int k) const;

    // f^(p^t): exponents scale by p^t, coefficients are fixed points of
    // Frobenius in F_p.
    Polynomial frobenius_pow(int q) const;

    // Root of the same map, assuming every exponent is divisible by q.
    Polynomial frobenius_root(int q) const;

    Polynomial derivative(int var) const;

    // Scaling by the inverse leading coefficient; zero stays zero.
    Polynomial monic() const;

    // Exact quotient or nullopt when the division does not come out even.
    friend std::optional<Polynomial> div_exact(const Polynomial& f, const Polynomial& g);

    // Monic gcd (primitive PRS with content recursion); gcd(0,0) = 0.
    friend Polynomial gcd(const Polynomial& a, const Polynomial& b);

    // Variables with a nonzero exponent somewhere in f.
    std::vector<int> variables_present() const;

private:
    ContextPtr ctx_;
    TermMap t_;
};

std::optional<Polynomial> div_exact(const Polynomial& f, const Polynomial& g);
Polynomial gcd(const Polynomial& a, const Polynomial& b);

} // namespace pforms

#endif
