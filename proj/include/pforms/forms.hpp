#ifndef PFORMS_FORMS_HPP
#define PFORMS_FORMS_HPP

#include <map>
#include <optional>
#include <random>
#include <vector>

#include "pforms/rational.hpp"

namespace pforms {

// Strictly increasing tuple of variable indices; the empty tuple is the
// degree-0 slot.  Ordered lexicographically (vector's default compare).
using IndexTuple = std::vector<int>;

// All increasing n-tuples over {0,...,m-1} in ascending lexicographic order.
std::vector<IndexTuple> index_tuples(int m, int n);

long long binomial(int n, int k);

// Differential n-form over F = F_p(x_1,...,x_m), stored sparsely on the
// coordinate basis dx_t = dx_{t1} ^ ... ^ dx_{tn}.  Degree 0 forms are
// scalars (the empty tuple).
class DifferentialForm {
public:
    DifferentialForm(ContextPtr ctx, int degree);

    static DifferentialForm zero(const ContextPtr& ctx, int degree) { return {ctx, degree}; }
    static DifferentialForm scalar(const RationalFunction& f);
    static DifferentialForm basis(const ContextPtr& ctx, const IndexTuple& t); // dx_t

    const ContextPtr& context() const { return ctx_; }
    int degree() const { return n_; }
    int p() const { return ctx_->p(); }
    const std::map<IndexTuple, RationalFunction>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    RationalFunction coeff(const IndexTuple& t) const;
    void set_coeff(const IndexTuple& t, const RationalFunction& f);
    void add_coeff(const IndexTuple& t, const RationalFunction& f);

    DifferentialForm operator+(const DifferentialForm& o) const;
    DifferentialForm operator-(const DifferentialForm& o) const;
    DifferentialForm operator-() const;
    DifferentialForm operator*(const RationalFunction& f) const; // scalar multiple
    bool operator==(const DifferentialForm& o) const;
    bool operator!=(const DifferentialForm& o) const { return !(*this == o); }

private:
    ContextPtr ctx_;
    int n_;
    std::map<IndexTuple, RationalFunction> c_;
};

// Exterior product with the usual sign bookkeeping; degrees add.  A wedge
// whose degree exceeds the variable count is identically zero.
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

// d on scalars and the extension d(f dx_t) = df ^ dx_t.
DifferentialForm differential(const RationalFunction& f);
DifferentialForm differential(const DifferentialForm& w);

// d(a)/a for nonzero a; throws domain_error on zero.
DifferentialForm dlog(const RationalFunction& a);

// Coefficients with respect to the logarithmic basis dx_t/x_t: the entry at
// tuple t is f_t * x_{t1} * ... * x_{tn}.
std::map<IndexTuple, RationalFunction> to_log_basis(const DifferentialForm& w);
DifferentialForm from_log_basis(const ContextPtr& ctx, int degree,
                                const std::map<IndexTuple, RationalFunction>& logc);

// Largest coordinate tuple carrying a nonzero coefficient (the form's level
// in the lexicographic filtration); nullopt for the zero form.
std::optional<IndexTuple> max_multiindex(const DifferentialForm& w);

// Solve u = w ^ v for v; yields the witness when one exists.
struct DivisionWitness {
    bool divides = false;
    DifferentialForm quotient;
};
DivisionWitness divide_form(const DifferentialForm& w, const DifferentialForm& u);

bool is_closed(const DifferentialForm& w);

// Cartier operator on closed forms: strips one Frobenius layer in the
// logarithmic basis (class-0 component root per slot).  Throws
// domain_error when the input is not closed.
DifferentialForm cartier(const DifferentialForm& w);

// Exactness decision: closed and annihilated by the Cartier operator.
bool is_exact(const DifferentialForm& w);

// Coordinate-basis representative of the Artin-Schreier image: logarithmic
// coefficients map through x -> x^p - x.
DifferentialForm artin_schreier_rep(const DifferentialForm& w);

// Membership in the additive group generated by logarithmic forms: the
// Artin-Schreier representative must be exact.
bool is_nu_member(const DifferentialForm& w);

// Random product of n logarithmic slots drawn from a pool of nonzero field
// elements; retries a few times to avoid the zero form but may return it.
DifferentialForm sample_log_form(std::mt19937_64& rng, const ContextPtr& ctx, int n,
                                 const std::vector<RationalFunction>& pool);

} // namespace pforms

#endif
