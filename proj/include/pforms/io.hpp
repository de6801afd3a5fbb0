#ifndef PFORMS_IO_HPP
#define PFORMS_IO_HPP

#include <string>
#include <vector>

#include "pforms/extensions.hpp"

namespace pforms {

// Canonical text renderers.  Output reparses to the same value, and equal
// values render to equal strings, so the strings double as fingerprints.
std::string to_string(const Polynomial& f);
std::string to_string(const RationalFunction& f);
std::string to_string(const DifferentialForm& w);
std::string basis_tuple_string(const ContextPtr& ctx, const IndexTuple& t); // "d(a)^d(b)"
std::vector<std::string> basis_strings(const FormSubspace& s);
std::string to_string(const NuGeneratedSet& s);
std::string tower_element_string(const ExtensionTower& E, const TowerElement& u);

// Parsers.  Errors carry the 0-based character offset of the offending
// token.  Grammar, tightest first: d(...) and parentheses; integer powers
// f^k of degree-0 operands; * and / by degree-0 operands; ^ as the wedge;
// + and -.  Numbers are reduced mod p.  "d" acts as the differential only
// when directly followed by "(".
RationalFunction parse_rational(const ContextPtr& ctx, const std::string& text);
DifferentialForm parse_form(const ContextPtr& ctx, const std::string& text);

// Generator family: brace sets separated by ^, e.g. "{a, b} ^ {a*c + 1}".
std::vector<std::vector<RationalFunction>> parse_generator_family(const ContextPtr& ctx,
                                                                  const std::string& text);

// Root tower: comma-separated steps "name = root(expr, p^s)" (the "name ="
// prefix is optional, and the order may be written as a plain power of p).
// Builds the field step by step, so expr may use earlier root names and a
// step whose element is a p-th power in the field built so far is rejected.
ExtensionTower parse_tower(const ContextPtr& ctx, const std::string& text);

// The same grammar read as a plain specification: elements must lie in the
// base field and nothing is built, so specifications whose literal tower
// collapses (the modular case of the dependent-root kernel) still parse.
struct TowerSpecStep {
    std::string name;
    int s = 1;
    RationalFunction g;
};
std::vector<TowerSpecStep> parse_tower_spec(const ContextPtr& ctx, const std::string& text);

} // namespace pforms

#endif
