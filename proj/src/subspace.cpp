#include "pforms/subspace.hpp"

#include <stdexcept>

namespace pforms {

FormSubspace::FormSubspace(ContextPtr ctx, int degree)
    : ctx_(std::move(ctx)), n_(degree), cols_(index_tuples(ctx_->nvars(), degree)) {
    ech_.ncols = static_cast<int>(cols_.size());
}

Vec FormSubspace::to_row(const DifferentialForm& w) const {
    Vec row;
    row.reserve(cols_.size());
    for (const auto& t : cols_) row.push_back(w.coeff(t));
    return row;
}

DifferentialForm FormSubspace::from_row(const Vec& v) const {
    DifferentialForm w(ctx_, n_);
    for (std::size_t i = 0; i < cols_.size(); ++i) w.add_coeff(cols_[i], v[i]);
    return w;
}

FormSubspace FormSubspace::span(const ContextPtr& ctx, int degree,
                                const std::vector<DifferentialForm>& gens) {
    FormSubspace s(ctx, degree);
    Mat rows;
    for (const auto& g : gens) {
        require_same_context(ctx, g.context());
        if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
        if (!g.is_zero()) rows.push_back(s.to_row(g));
    }
    if (!rows.empty()) s.ech_ = rref(std::move(rows), s.ech_.ncols);
    return s;
}

FormSubspace FormSubspace::full(const ContextPtr& ctx, int degree) {
    FormSubspace s(ctx, degree);
    std::vector<DifferentialForm> gens;
    for (const auto& t : s.cols_) gens.push_back(DifferentialForm::basis(ctx, t));
    return span(ctx, degree, gens);
}

bool FormSubspace::is_full() const { return dim() == static_cast<int>(cols_.size()); }

bool FormSubspace::contains(const DifferentialForm& w) const {
    require_same_context(ctx_, w.context());
    if (w.degree() != n_) throw std::invalid_argument("degree mismatch");
    if (w.is_zero()) return true;
    Vec row = to_row(w);
    return reduce_against(ech_, row);
}

bool FormSubspace::contains(const FormSubspace& o) const {
    for (const auto& w : o.basis_forms())
        if (!contains(w)) return false;
    return true;
}

bool FormSubspace::operator==(const FormSubspace& o) const {
    require_same_context(ctx_, o.ctx_);
    if (n_ != o.n_ || dim() != o.dim()) return false;
    return ech_.pivots == o.ech_.pivots && ech_.rows == o.ech_.rows;
}

FormSubspace FormSubspace::sum(const FormSubspace& o) const {
    require_same_context(ctx_, o.ctx_);
    if (n_ != o.n_) throw std::invalid_argument("degree mismatch");
    std::vector<DifferentialForm> gens = basis_forms();
    for (auto& w : o.basis_forms()) gens.push_back(std::move(w));
    return span(ctx_, n_, gens);
}

FormSubspace FormSubspace::intersect(const FormSubspace& o) const {
    require_same_context(ctx_, o.ctx_);
    if (n_ != o.n_) throw std::invalid_argument("degree mismatch");
    // Zassenhaus block trick: rows [u|u] for u in U, [v|0] for v in V; the
    // echelon rows with vanishing left half carry the intersection.
    const int nc = ech_.ncols;
    Mat rows;
    for (const auto& r : ech_.rows) {
        Vec row = r;
        row.insert(row.end(), r.begin(), r.end());
        rows.push_back(std::move(row));
    }
    const RationalFunction z = RationalFunction::zero(ctx_);
    for (const auto& r : o.ech_.rows) {
        Vec row = r;
        row.insert(row.end(), static_cast<std::size_t>(nc), z);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return zero(ctx_, n_);
    Echelon e = rref(std::move(rows), 2 * nc);
    std::vector<DifferentialForm> gens;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] < nc) continue;
        Vec right(e.rows[i].begin() + nc, e.rows[i].end());
        FormSubspace tmp(ctx_, n_);
        gens.push_back(tmp.from_row(right));
    }
    return span(ctx_, n_, gens);
}

FormSubspace FormSubspace::wedge_extend(const DifferentialForm& w, int k) {
    const ContextPtr& ctx = w.context();
    const int target = w.degree() + k;
    if (k < 0) return zero(ctx, target);
    std::vector<DifferentialForm> gens;
    if (k == 0) {
        gens.push_back(w);
    } else {
        for (const auto& t : index_tuples(ctx->nvars(), k))
            gens.push_back(wedge(w, DifferentialForm::basis(ctx, t)));
    }
    return span(ctx, target, gens);
}

std::vector<DifferentialForm> FormSubspace::basis_forms() const {
    std::vector<DifferentialForm> out;
    out.reserve(ech_.rows.size());
    for (const auto& r : ech_.rows) out.push_back(from_row(r));
    return out;
}

} // namespace pforms
