#ifndef PFORMS_EXTENSIONS_HPP
#define PFORMS_EXTENSIONS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pforms/annihilators.hpp"

namespace pforms {

constexpr int kMaxSteps = 6;

// Exponent tuple over the adjoined roots, zero-padded.
using RootTuple = std::array<std::uint16_t, kMaxSteps>;

// Element of a root tower over F, written on the monomial basis
// z_1^(e_1)...z_k^(e_k) with 0 <= e_i < p^(s_i) and coefficients in F.
// Pure data; products and inverses need the tower's relations and live on
// ExtensionTower.
class TowerElement {
public:
    explicit TowerElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static TowerElement zero(const ContextPtr& ctx) { return TowerElement(ctx); }

    const ContextPtr& context() const { return ctx_; }
    const std::map<RootTuple, RationalFunction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const; // lies in F (only the zero tuple appears)
    RationalFunction constant_part() const;

    void add_term(const RootTuple& t, const RationalFunction& c);

    TowerElement operator+(const TowerElement& o) const;
    TowerElement operator-(const TowerElement& o) const;
    TowerElement operator-() const;
    TowerElement operator*(const RationalFunction& f) const;
    bool operator==(const TowerElement& o) const;
    bool operator!=(const TowerElement& o) const { return !(*this == o); }

private:
    ContextPtr ctx_;
    std::map<RootTuple, RationalFunction> terms_;
};

struct TowerStep {
    std::string name;
    int s = 1;       // the step adjoins a p^s-th root
    int q = 0;       // p^s
    TowerElement g;  // defining element: z^(p^s) = g
};

// F(z_1, ..., z_k) with z_i^(p^(s_i)) = g_i, each g_i from the stage before
// it and not a p-th power there, so [E:F] = prod p^(s_i).  Also carries the
// differential module of E: free on d(x_j) and d(z_i) modulo one relation
// row d(g_i) = 0 per step, echelonized into rewrite rules with leftmost
// pivots.
class ExtensionTower {
public:
    explicit ExtensionTower(ContextPtr base);

    // Adjoin z with z^(p^s) = g.  Throws hypothesis_error
    // ("tower-step-collapses") when g is a p-th power in the field built so
    // far, i.e. when the step would not have degree p^s.
    void add_step(const std::string& name, int s, const TowerElement& g);

    const ContextPtr& context() const { return ctx_; }
    int nvars() const { return ctx_->nvars(); }
    int steps() const { return static_cast<int>(steps_.size()); }
    const TowerStep& step(int i) const { return steps_.at(static_cast<std::size_t>(i)); }
    int root_index(const std::string& name) const; // -1 when absent
    long long degree() const;                      // [E:F]
    std::vector<RootTuple> basis_tuples() const;   // monomial F-basis of E

    // element construction and arithmetic
    TowerElement zero() const { return TowerElement::zero(ctx_); }
    TowerElement one() const { return embed(RationalFunction::one(ctx_)); }
    TowerElement embed(const RationalFunction& f) const;
    TowerElement root(int i) const;
    TowerElement mul(const TowerElement& a, const TowerElement& b) const;
    TowerElement pow(const TowerElement& a, long long e) const;
    TowerElement inverse(const TowerElement& a) const;

    // differential module: generator j is d(x_j) for j < nvars() and
    // d(z_{j-nvars()}) otherwise
    int gen_count() const { return nvars() + steps(); }
    using EVec = std::vector<TowerElement>;
    const std::vector<int>& free_gens() const { return free_; }
    const std::vector<int>& pivot_gens() const { return pivots_; }

    // d(generator j) on the free generators.
    EVec generator_image(int j) const;
    // differential of an element, reduced to the free generators.
    EVec d(const TowerElement& u) const;

    // n-forms over E on increasing tuples of free generator indices.
    using EForm = std::map<IndexTuple, TowerElement>;
    EForm restrict_form(const DifferentialForm& w) const;
    EForm wedge_eforms(const EForm& a, const EForm& b) const;
    static bool eform_is_zero(const EForm& a);

private:
    TowerElement reduce(std::map<RootTuple, RationalFunction>&& raw) const;
    EVec raw_differential(const TowerElement& u) const;
    EVec substitute_pivots(EVec v) const;

    struct Rule {
        int pivot;
        std::map<int, TowerElement> expansion; // d(pivot) = sum expansion[j] * d(j)
    };

    ContextPtr ctx_;
    std::vector<TowerStep> steps_;
    std::vector<Rule> rules_;
    std::vector<int> free_, pivots_;
};

// Forms over F that restrict to zero over E, by exact linear algebra on the
// presented module.
FormSubspace kernel_bruteforce(const ExtensionTower& E, int n);

// Closed form for towers of p^(m_i)-th roots of p-independent elements of
// F: the kernel is sum of d(b_i) ^ Omega^(n-1), independent of the m_i.
FormSubspace kernel_modular(const ContextPtr& ctx, const std::vector<RationalFunction>& gens,
                            int n);

// Kernel of a simple extension F(alpha) from the nonzero coefficients of the
// minimal polynomial: zero for separable alpha, otherwise the annihilator of
// the coefficient set's differentials.
FormSubspace kernel_simple(const ContextPtr& ctx, const std::vector<RationalFunction>& coeffs,
                           bool separable, int n);

// Kernel for a modular tower extended by one dependent root: p^(m_i)-th
// roots of p-independent g_i plus a p^m-th root of b in F^p(g_1,...,g_r)\F^p
// with m <= min(m_i).  Splits on the maximal power membership of b: at m or
// beyond the extension collapses to the modular tower; below m the kernel is
// the mixed annihilator of the g_i and the decomposition coefficients.
struct DependentRootKernel {
    FormSubspace kernel;
    bool modular_case = false;
    int t = 0;                                       // membership exponent that decided the case
    std::vector<RationalFunction> decomposition_coeffs; // empty in the modular case
};
DependentRootKernel kernel_dependent_root(const ContextPtr& ctx,
                                          const std::vector<RationalFunction>& gens,
                                          const std::vector<int>& exps, const RationalFunction& b,
                                          int m, int n, bool enforce_exponent_bound = true);

// The matching logarithmic-form kernels.
NuGeneratedSet nu_kernel_modular(const ContextPtr& ctx, const std::vector<RationalFunction>& gens,
                                 int n, bool assume_pm1_closed = false);
struct DependentRootNu {
    NuGeneratedSet set;
    bool modular_case = false;
    int t = 0;
};
DependentRootNu nu_kernel_dependent_root(const ContextPtr& ctx,
                                         const std::vector<RationalFunction>& gens,
                                         const std::vector<int>& exps, const RationalFunction& b,
                                         int m, int n, bool assume_pm1_closed = false,
                                         bool enforce_exponent_bound = true);

// Field builders used by the oracle-side checks.
ExtensionTower build_modular_tower(const ContextPtr& ctx, const std::vector<RationalFunction>& gens,
                                   const std::vector<int>& exps);
// The dependent-root field itself: the modular tower plus the auxiliary root
// realizing the p^m-th root of b at the correct degree p^(m-t).  In the
// modular case no step is added (the root already lies in the tower; this is
// verified).
ExtensionTower build_dependent_root_tower(const ContextPtr& ctx,
                                          const std::vector<RationalFunction>& gens,
                                          const std::vector<int>& exps, const RationalFunction& b,
                                          int m);

// Consistency check of the presented module's rank against the direct-sum
// dimension count for towers whose defining elements are distinct base
// coordinates; other towers report applicable = false.
struct DimensionCheck {
    bool applicable = false;
    long long expected = 0;
    long long computed = 0;
};
DimensionCheck dimension_check(const ExtensionTower& E, int n);

} // namespace pforms

#endif
