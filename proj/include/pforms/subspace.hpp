#ifndef PFORMS_SUBSPACE_HPP
#define PFORMS_SUBSPACE_HPP

#include <vector>

#include "pforms/forms.hpp"
#include "pforms/linalg.hpp"

namespace pforms {

// F-subspace of the n-forms, held as the unique reduced echelon basis over
// the ordered coordinate basis dx_t (tuples ascending lexicographically).
// Representation equality is therefore subspace equality.
class FormSubspace {
public:
    FormSubspace(ContextPtr ctx, int degree); // zero subspace

    static FormSubspace span(const ContextPtr& ctx, int degree,
                             const std::vector<DifferentialForm>& gens);
    static FormSubspace zero(const ContextPtr& ctx, int degree) { return {ctx, degree}; }
    static FormSubspace full(const ContextPtr& ctx, int degree);

    const ContextPtr& context() const { return ctx_; }
    int degree() const { return n_; }
    int dim() const { return static_cast<int>(ech_.rows.size()); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const;

    bool contains(const DifferentialForm& w) const;
    bool contains(const FormSubspace& o) const;
    bool operator==(const FormSubspace& o) const;
    bool operator!=(const FormSubspace& o) const { return !(*this == o); }

    FormSubspace sum(const FormSubspace& o) const;
    FormSubspace intersect(const FormSubspace& o) const;

    // span{ w ^ dx_t : t an increasing k-tuple }; k = 0 gives span{w} and
    // negative k the zero subspace (the residual space below degree 0).
    static FormSubspace wedge_extend(const DifferentialForm& w, int k);

    std::vector<DifferentialForm> basis_forms() const;
    const Echelon& echelon() const { return ech_; }
    const std::vector<IndexTuple>& columns() const { return cols_; }

private:
    Vec to_row(const DifferentialForm& w) const;
    DifferentialForm from_row(const Vec& v) const;

    ContextPtr ctx_;
    int n_;
    std::vector<IndexTuple> cols_;
    Echelon ech_;
};

} // namespace pforms

#endif
