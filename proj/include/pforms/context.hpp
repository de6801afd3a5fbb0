#ifndef PFORMS_CONTEXT_HPP
#define PFORMS_CONTEXT_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pforms {

constexpr int kMaxVars = 8;

// Fixed ground field F_p(x_1, ..., x_m): characteristic and named variables.
// Shared immutably by every value built over it.
class FieldContext {
public:
    FieldContext(int p, std::vector<std::string> vars) : p_(p), vars_(std::move(vars)) {
        if (p_ != 2 && p_ != 3 && p_ != 5)
            throw std::invalid_argument("characteristic must be one of 2, 3, 5");
        if (vars_.empty() || vars_.size() > kMaxVars)
            throw std::invalid_argument("variable count must be between 1 and 8");
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j])
                    throw std::invalid_argument("duplicate variable name: " + vars_[i]);
    }

    int p() const { return p_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::string& var(int i) const { return vars_.at(i); }
    const std::vector<std::string>& vars() const { return vars_; }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const FieldContext& o) const { return p_ == o.p_ && vars_ == o.vars_; }

private:
    int p_;
    std::vector<std::string> vars_;
};

using ContextPtr = std::shared_ptr<const FieldContext>;

inline ContextPtr make_context(int p, std::vector<std::string> vars) {
    return std::make_shared<const FieldContext>(p, std::move(vars));
}

inline void require_same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return;
    if (!a || !b || !(*a == *b))
        throw std::invalid_argument("operands belong to different field contexts");
}

} // namespace pforms

#endif
