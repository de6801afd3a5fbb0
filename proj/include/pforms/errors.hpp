#ifndef PFORMS_ERRORS_HPP
#define PFORMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pforms {

// A closed-form construction was asked to run outside its hypotheses.
// `code` is a stable machine-readable tag; `what()` spells out the violated
// precondition in full.  CLI maps these to exit status 2.
class hypothesis_error : public std::runtime_error {
public:
    hypothesis_error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Malformed input expression; `pos` is a 0-based character offset.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t pos, const std::string& message)
        : std::runtime_error(message), pos_(pos) {}
    std::size_t pos() const { return pos_; }

private:
    std::size_t pos_;
};

} // namespace pforms

#endif
