#include "pforms/io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "pforms/errors.hpp"

namespace pforms {

// ---------------------------------------------------------------------------
// printing

namespace {

std::string monomial_string(const ContextPtr& ctx, const Monomial& mo, int coeff) {
    std::vector<std::string> parts;
    if (coeff != 1 || mo.is_one()) parts.push_back(std::to_string(coeff));
    for (int i = 0; i < ctx->nvars(); ++i) {
        int e = mo.e[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        if (e == 1)
            parts.push_back(ctx->var(i));
        else
            parts.push_back(ctx->var(i) + "^" + std::to_string(e));
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
    return out;
}

// true when the printed polynomial can stand to the right of '/' unbracketed:
// a bare number, a variable, or a variable power
bool atom_like(const ContextPtr& ctx, const Polynomial& f) {
    if (f.terms().size() != 1) return f.is_zero();
    const auto& [mo, c] = *f.terms().begin();
    int vars_used = 0;
    for (int i = 0; i < ctx->nvars(); ++i)
        if (mo.e[static_cast<std::size_t>(i)] != 0) ++vars_used;
    if (vars_used == 0) return true;     // a number
    return vars_used == 1 && c == 1;     // x or x^k
}

} // namespace

std::string to_string(const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    // descending graded-lex order
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        if (!out.empty()) out += " + ";
        out += monomial_string(f.context(), it->first, it->second);
    }
    return out;
}

std::string to_string(const RationalFunction& f) {
    std::string ns = to_string(f.num());
    if (f.den().is_one()) return ns;
    if (f.num().terms().size() > 1) ns = "(" + ns + ")";
    std::string ds = to_string(f.den());
    if (!atom_like(f.context(), f.den())) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

std::string basis_tuple_string(const ContextPtr& ctx, const IndexTuple& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += "^";
        out += "d(" + ctx->var(t[i]) + ")";
    }
    return out;
}

namespace {

// coefficient rendering in a '*'-context: parenthesized when it is a sum or
// carries a denominator
std::string coeff_string(const RationalFunction& f) {
    std::string s = to_string(f);
    if (f.num().terms().size() > 1 || !f.den().is_one()) s = "(" + s + ")";
    return s;
}

} // namespace

std::string to_string(const DifferentialForm& w) {
    if (w.degree() == 0) {
        auto it = w.coeffs().find(IndexTuple{});
        return it == w.coeffs().end() ? "0" : to_string(it->second);
    }
    if (w.is_zero()) return "0";
    std::string out;
    for (const auto& [t, c] : w.coeffs()) {
        if (!out.empty()) out += " + ";
        std::string ts = basis_tuple_string(w.context(), t);
        if (c.is_one())
            out += ts;
        else
            out += coeff_string(c) + "*" + ts;
    }
    return out;
}

std::vector<std::string> basis_strings(const FormSubspace& s) {
    std::vector<std::string> out;
    for (const auto& w : s.basis_forms()) out.push_back(to_string(w));
    return out;
}

std::string to_string(const NuGeneratedSet& s) {
    if (s.full) return "full";
    if (s.summands.empty()) return "0";
    std::string out;
    for (const auto& sm : s.summands) {
        if (!out.empty()) out += " + ";
        std::string gens;
        for (std::size_t i = 0; i < sm.slot_gens.size(); ++i) {
            if (i) gens += ", ";
            gens += to_string(sm.slot_gens[i]);
        }
        out += "dlog^" + std::to_string(sm.slot_degree) + "{" + gens + "} ^ nu^" +
               std::to_string(sm.residual_degree);
    }
    return out;
}

std::string tower_element_string(const ExtensionTower& E, const TowerElement& u) {
    if (u.is_zero()) return "0";
    std::string out;
    for (const auto& [t, c] : u.terms()) {
        if (!out.empty()) out += " + ";
        std::string roots;
        for (int i = 0; i < E.steps(); ++i) {
            int e = t[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            if (!roots.empty()) roots += "*";
            roots += E.step(i).name;
            if (e > 1) roots += "^" + std::to_string(e);
        }
        if (roots.empty()) {
            out += to_string(c);
        } else if (c.is_one()) {
            out += roots;
        } else {
            out += coeff_string(c) + "*" + roots;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// lexing

namespace {

enum class Tok {
    Ident,
    Number,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Equals,
    End
};

struct Token {
    Tok kind;
    std::string text;
    long long value = 0;
    std::size_t pos = 0;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t pos = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_'))
                ++j;
            out.push_back(Token{Tok::Ident, text.substr(i, j - i), 0, pos});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j - i > 18) throw parse_error(pos, "number literal too long");
            out.push_back(Token{Tok::Number, text.substr(i, j - i),
                                std::stoll(text.substr(i, j - i)), pos});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Equals; break;
            default:
                throw parse_error(pos, std::string("unexpected character '") + c + "'");
        }
        out.push_back(Token{k, std::string(1, c), 0, pos});
        ++i;
    }
    out.push_back(Token{Tok::End, "", 0, text.size()});
    return out;
}

// ---------------------------------------------------------------------------
// form / rational parser

class FormParser {
public:
    FormParser(ContextPtr ctx, std::vector<Token> toks)
        : ctx_(std::move(ctx)), toks_(std::move(toks)) {}

    DifferentialForm parse_all() {
        DifferentialForm w = parse_sum();
        expect_end();
        return w;
    }

    DifferentialForm parse_sum() {
        DifferentialForm a = parse_wedge();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            Token op = next();
            DifferentialForm b = parse_wedge();
            if (op.kind == Tok::Minus) b = -b;
            a = add_checked(a, b, op.pos);
        }
        return a;
    }

    // used by the family parser: one element, ending at ',' or '}'
    DifferentialForm parse_element() { return parse_sum(); }

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = idx_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    Token next() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }
    void expect(Tok k, const std::string& what) {
        if (peek().kind != k) throw parse_error(peek().pos, "expected " + what);
        next();
    }
    void expect_end() {
        if (peek().kind != Tok::End) throw parse_error(peek().pos, "unexpected trailing input");
    }

private:
    static DifferentialForm add_checked(const DifferentialForm& a, const DifferentialForm& b,
                                        std::size_t pos) {
        if (a.is_zero() && a.degree() != b.degree()) return b;
        if (b.is_zero() && a.degree() != b.degree()) return a;
        if (a.degree() != b.degree())
            throw parse_error(pos, "cannot add forms of degrees " + std::to_string(a.degree()) +
                                       " and " + std::to_string(b.degree()));
        return a + b;
    }

    RationalFunction scalar_of(const DifferentialForm& w, std::size_t pos,
                               const std::string& role) const {
        if (w.degree() != 0)
            throw parse_error(pos, role + " must have degree 0, not " +
                                       std::to_string(w.degree()));
        return w.coeff(IndexTuple{});
    }

    DifferentialForm parse_wedge() {
        DifferentialForm a = parse_scaled();
        while (peek().kind == Tok::Caret) {
            Token op = next();
            DifferentialForm b = parse_scaled();
            (void)op;
            a = wedge(a, b);
        }
        return a;
    }

    DifferentialForm parse_scaled() {
        DifferentialForm a = parse_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            Token op = next();
            DifferentialForm b = parse_unary();
            if (op.kind == Tok::Star) {
                if (b.degree() == 0) {
                    a = a * scalar_of(b, op.pos, "a multiplier");
                } else if (a.degree() == 0) {
                    a = b * scalar_of(a, op.pos, "a multiplier");
                } else {
                    throw parse_error(op.pos, "use ^ for the product of two forms");
                }
            } else {
                RationalFunction d = scalar_of(b, op.pos, "a divisor");
                if (d.is_zero()) throw parse_error(op.pos, "division by zero");
                a = a * (RationalFunction::one(ctx_) / d);
            }
        }
        return a;
    }

    DifferentialForm parse_unary() {
        if (peek().kind == Tok::Minus) {
            next();
            return -parse_unary();
        }
        return parse_power();
    }

    DifferentialForm parse_power() {
        DifferentialForm a = parse_prim();
        // integer power: '^' directly followed by a (possibly negated) number
        while (peek().kind == Tok::Caret &&
               (peek(1).kind == Tok::Number ||
                (peek(1).kind == Tok::Minus && peek(2).kind == Tok::Number))) {
            Token op = next();
            long long sign = 1;
            if (peek().kind == Tok::Minus) {
                next();
                sign = -1;
            }
            Token num = next();
            long long k = sign * num.value;
            if (k > 1000000 || k < -1000000)
                throw parse_error(num.pos, "exponent out of range");
            RationalFunction f = scalar_of(a, op.pos, "the base of an integer power");
            if (f.is_zero() && k < 0) throw parse_error(op.pos, "division by zero");
            a = DifferentialForm::scalar(f.pow(static_cast<int>(k)));
        }
        return a;
    }

    DifferentialForm parse_prim() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            next();
            return DifferentialForm::scalar(RationalFunction::constant(ctx_, t.value));
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "d" && peek(1).kind == Tok::LParen) {
                next();
                next();
                DifferentialForm inner = parse_sum();
                expect(Tok::RParen, "')'");
                return differential(inner);
            }
            int vi = ctx_->var_index(t.text);
            if (vi < 0) throw parse_error(t.pos, "unknown variable '" + t.text + "'");
            next();
            return DifferentialForm::scalar(RationalFunction::variable(ctx_, vi));
        }
        if (t.kind == Tok::LParen) {
            next();
            DifferentialForm inner = parse_sum();
            expect(Tok::RParen, "')'");
            return inner;
        }
        throw parse_error(t.pos, "expected a value");
    }

    ContextPtr ctx_;
    std::vector<Token> toks_;
    std::size_t idx_ = 0;
};

} // namespace

RationalFunction parse_rational(const ContextPtr& ctx, const std::string& text) {
    FormParser p(ctx, lex(text));
    DifferentialForm w = p.parse_all();
    if (w.degree() != 0)
        throw parse_error(0, "expected a scalar expression, got a form of degree " +
                                 std::to_string(w.degree()));
    return w.coeff(IndexTuple{});
}

DifferentialForm parse_form(const ContextPtr& ctx, const std::string& text) {
    FormParser p(ctx, lex(text));
    return p.parse_all();
}

std::vector<std::vector<RationalFunction>> parse_generator_family(const ContextPtr& ctx,
                                                                  const std::string& text) {
    FormParser p(ctx, lex(text));
    std::vector<std::vector<RationalFunction>> out;
    while (true) {
        p.expect(Tok::LBrace, "'{'");
        std::vector<RationalFunction> slot;
        while (true) {
            const Token& at = p.peek();
            DifferentialForm w = p.parse_element();
            if (w.degree() != 0)
                throw parse_error(at.pos, "family members must be scalar expressions");
            slot.push_back(w.coeff(IndexTuple{}));
            if (p.peek().kind == Tok::Comma) {
                p.next();
                continue;
            }
            break;
        }
        p.expect(Tok::RBrace, "'}'");
        out.push_back(std::move(slot));
        if (p.peek().kind == Tok::Caret) {
            p.next();
            continue;
        }
        break;
    }
    p.expect_end();
    return out;
}

// ---------------------------------------------------------------------------
// tower parser

namespace {

class TowerExprParser {
public:
    TowerExprParser(const ExtensionTower& E, FormParser& fp) : E_(E), fp_(fp) {}

    TowerElement parse_sum() {
        TowerElement a = parse_term();
        while (fp_.peek().kind == Tok::Plus || fp_.peek().kind == Tok::Minus) {
            Token op = fp_.next();
            TowerElement b = parse_term();
            a = op.kind == Tok::Plus ? a + b : a - b;
        }
        return a;
    }

private:
    TowerElement parse_term() {
        TowerElement a = parse_unary();
        while (fp_.peek().kind == Tok::Star || fp_.peek().kind == Tok::Slash) {
            Token op = fp_.next();
            TowerElement b = parse_unary();
            if (op.kind == Tok::Star) {
                a = E_.mul(a, b);
            } else {
                if (b.is_zero()) throw parse_error(op.pos, "division by zero");
                a = E_.mul(a, E_.inverse(b));
            }
        }
        return a;
    }

    TowerElement parse_unary() {
        if (fp_.peek().kind == Tok::Minus) {
            fp_.next();
            return -parse_unary();
        }
        return parse_power();
    }

    TowerElement parse_power() {
        TowerElement a = parse_atom();
        while (fp_.peek().kind == Tok::Caret &&
               (fp_.peek(1).kind == Tok::Number ||
                (fp_.peek(1).kind == Tok::Minus && fp_.peek(2).kind == Tok::Number))) {
            Token op = fp_.next();
            long long sign = 1;
            if (fp_.peek().kind == Tok::Minus) {
                fp_.next();
                sign = -1;
            }
            Token num = fp_.next();
            long long k = sign * num.value;
            if (k > 100000 || k < -100000) throw parse_error(num.pos, "exponent out of range");
            if (a.is_zero() && k < 0) throw parse_error(op.pos, "division by zero");
            a = E_.pow(a, k);
        }
        return a;
    }

    TowerElement parse_atom() {
        const Token& t = fp_.peek();
        if (t.kind == Tok::Number) {
            fp_.next();
            return E_.embed(RationalFunction::constant(E_.context(), t.value));
        }
        if (t.kind == Tok::Ident) {
            int vi = E_.context()->var_index(t.text);
            if (vi >= 0) {
                fp_.next();
                return E_.embed(RationalFunction::variable(E_.context(), vi));
            }
            int ri = E_.root_index(t.text);
            if (ri >= 0) {
                fp_.next();
                return E_.root(ri);
            }
            throw parse_error(t.pos, "unknown name '" + t.text + "'");
        }
        if (t.kind == Tok::LParen) {
            fp_.next();
            TowerElement inner = parse_sum();
            fp_.expect(Tok::RParen, "')'");
            return inner;
        }
        throw parse_error(t.pos, "expected a value");
    }

    const ExtensionTower& E_;
    FormParser& fp_;
};

} // namespace

ExtensionTower parse_tower(const ContextPtr& ctx, const std::string& text) {
    FormParser fp(ctx, lex(text));
    ExtensionTower E(ctx);
    int anon = 0;
    while (true) {
        // optional "name =" prefix; unnamed steps get z1, z2, ...
        std::string name;
        std::size_t namePos = fp.peek().pos;
        if (fp.peek().kind == Tok::Ident && fp.peek(1).kind == Tok::Equals) {
            name = fp.peek().text;
            fp.next();
            fp.next();
        }
        const Token& kw = fp.peek();
        if (kw.kind != Tok::Ident || kw.text != "root")
            throw parse_error(kw.pos, "expected 'root(element, order)'");
        fp.next();
        fp.expect(Tok::LParen, "'('");
        TowerExprParser te(E, fp);
        TowerElement g = te.parse_sum();
        fp.expect(Tok::Comma, "','");
        // order: either p^s or a plain power of p
        const Token& num = fp.peek();
        if (num.kind != Tok::Number)
            throw parse_error(num.pos, "the root order must be a power of p");
        long long first = num.value;
        fp.next();
        int s;
        if (fp.peek().kind == Tok::Caret) {
            fp.next();
            if (first != ctx->p())
                throw parse_error(num.pos, "the exponent base must be p = " +
                                               std::to_string(ctx->p()));
            const Token& se = fp.peek();
            if (se.kind != Tok::Number || se.value < 1 || se.value > 9)
                throw parse_error(se.pos, "the root exponent must be between 1 and 9");
            s = static_cast<int>(se.value);
            fp.next();
        } else {
            s = 0;
            long long q = first;
            while (q > 1 && q % ctx->p() == 0) {
                q /= ctx->p();
                ++s;
            }
            if (q != 1 || s < 1 || s > 9)
                throw parse_error(num.pos, "the root order must be p^s with p = " +
                                               std::to_string(ctx->p()) + " and 1 <= s <= 9");
        }
        fp.expect(Tok::RParen, "')'");
        if (name.empty()) name = "z" + std::to_string(++anon);
        try {
            E.add_step(name, s, g);
        } catch (const std::invalid_argument& e) {
            throw parse_error(namePos, e.what());
        }
        if (fp.peek().kind == Tok::Comma) {
            fp.next();
            continue;
        }
        break;
    }
    fp.expect_end();
    return E;
}

std::vector<TowerSpecStep> parse_tower_spec(const ContextPtr& ctx, const std::string& text) {
    FormParser fp(ctx, lex(text));
    std::vector<TowerSpecStep> out;
    int anon = 0;
    while (true) {
        std::string name;
        if (fp.peek().kind == Tok::Ident && fp.peek(1).kind == Tok::Equals) {
            name = fp.peek().text;
            fp.next();
            fp.next();
        }
        const Token& kw = fp.peek();
        if (kw.kind != Tok::Ident || kw.text != "root")
            throw parse_error(kw.pos, "expected 'root(element, order)'");
        fp.next();
        fp.expect(Tok::LParen, "'('");
        const Token& at = fp.peek();
        DifferentialForm w = fp.parse_sum();
        if (w.degree() != 0)
            throw parse_error(at.pos, "the defining element must be a scalar expression");
        RationalFunction g = w.coeff(IndexTuple{});
        fp.expect(Tok::Comma, "','");
        const Token& num = fp.peek();
        if (num.kind != Tok::Number)
            throw parse_error(num.pos, "the root order must be a power of p");
        long long first = num.value;
        fp.next();
        int s;
        if (fp.peek().kind == Tok::Caret) {
            fp.next();
            if (first != ctx->p())
                throw parse_error(num.pos, "the exponent base must be p = " +
                                               std::to_string(ctx->p()));
            const Token& se = fp.peek();
            if (se.kind != Tok::Number || se.value < 1 || se.value > 9)
                throw parse_error(se.pos, "the root exponent must be between 1 and 9");
            s = static_cast<int>(se.value);
            fp.next();
        } else {
            s = 0;
            long long q = first;
            while (q > 1 && q % ctx->p() == 0) {
                q /= ctx->p();
                ++s;
            }
            if (q != 1 || s < 1 || s > 9)
                throw parse_error(num.pos, "the root order must be p^s with p = " +
                                               std::to_string(ctx->p()) + " and 1 <= s <= 9");
        }
        fp.expect(Tok::RParen, "')'");
        if (name.empty()) name = "z" + std::to_string(++anon);
        out.push_back(TowerSpecStep{name, s, g});
        if (fp.peek().kind == Tok::Comma) {
            fp.next();
            continue;
        }
        break;
    }
    fp.expect_end();
    return out;
}

} // namespace pforms
