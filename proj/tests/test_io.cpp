#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "pforms/errors.hpp"
#include "pforms/io.hpp"

using namespace pforms;
using namespace pforms::testing;

namespace {

ContextPtr ctx2() { return make_context(2, {"a", "b", "c"}); }

RationalFunction rv(const ContextPtr& c, const char* name) {
    return RationalFunction::variable(c, c->var_index(name));
}

struct CaughtParse {
    bool threw = false;
    std::size_t pos = 0;
    std::string message;
};

CaughtParse catch_parse(const std::function<void()>& f) {
    try {
        f();
    } catch (const parse_error& e) {
        return {true, e.pos(), e.what()};
    }
    return {};
}

bool mentions(const std::string& message, const std::string& needle) {
    return message.find(needle) != std::string::npos;
}

// a random form of the given degree with a few random rational coefficients
DifferentialForm random_form(std::mt19937_64& rng, const ContextPtr& ctx, int n) {
    DifferentialForm w = DifferentialForm::zero(ctx, n);
    std::vector<IndexTuple> tuples = index_tuples(ctx->nvars(), n);
    for (const auto& t : tuples)
        if (rng() % 2 == 0) w.set_coeff(t, random_rational(rng, ctx, 2, 2));
    return w;
}

} // namespace

TEST_CASE("rendered scalars reparse to the same value") {
    std::mt19937_64 rng(81);
    int trips = 0;
    for (int p : {2, 3, 5}) {
        for (int m = 1; m <= 4; ++m) {
            auto c = make_context(p, var_names(m));
            for (int it = 0; it < 40; ++it) {
                RationalFunction f = random_rational(rng, c, 3, 3);
                std::string s = to_string(f);
                RationalFunction g = parse_rational(c, s);
                CHECK(g == f);
                // canonical strings are fingerprints: printing is idempotent
                CHECK(to_string(g) == s);
                ++trips;
            }
        }
    }
    CHECK(trips == 480);

    // equal values print equal strings even when built differently
    auto c = ctx2();
    auto a = rv(c, "a");
    auto b = rv(c, "b");
    CHECK(to_string((a + b) * (a + b)) == to_string(a * a + b * b));  // p = 2
    CHECK(to_string(a / (a * b)) == to_string(RationalFunction::one(c) / b));
}

TEST_CASE("rendered forms reparse to the same value") {
    std::mt19937_64 rng(82);
    int nonzero_trips = 0;
    for (int p : {2, 3}) {
        for (int m = 2; m <= 4; ++m) {
            auto c = make_context(p, var_names(m));
            for (int n = 0; n <= std::min(m, 3); ++n) {
                for (int it = 0; it < 25; ++it) {
                    DifferentialForm w = random_form(rng, c, n);
                    std::string s = to_string(w);
                    if (w.is_zero()) {
                        // the string "0" does not remember the degree
                        CHECK(parse_form(c, s).is_zero());
                        continue;
                    }
                    DifferentialForm back = parse_form(c, s);
                    CHECK(back == w);
                    CHECK(to_string(back) == s);
                    ++nonzero_trips;
                }
            }
        }
    }
    CHECK(nonzero_trips > 300);
}

TEST_CASE("worked rendering shapes") {
    auto c = ctx2();
    auto a = rv(c, "a");
    auto b = rv(c, "b");
    auto cc = rv(c, "c");
    auto one = RationalFunction::one(c);

    // scalars: descending graded-lex terms, sparing parentheses
    CHECK(to_string(a) == "a");
    CHECK(to_string(a.pow(2)) == "a^2");
    CHECK(to_string(a + b) == "a + b");
    CHECK(to_string(a * b + cc * cc) == "a*b + c^2");
    CHECK(to_string(one / a) == "1/a");
    CHECK(to_string((a + b) / (a * b)) == "(a + b)/(a*b)");
    CHECK(to_string(a / (a + b)) == "a/(a + b)");
    CHECK(to_string(RationalFunction::zero(c)) == "0");
    CHECK(to_string(one) == "1");

    // forms: ascending basis tuples, coefficients only when not 1
    CHECK(basis_tuple_string(c, IndexTuple{0, 1}) == "d(a)^d(b)");
    CHECK(to_string(wedge(differential(a), differential(b)) * cc +
                    wedge(differential(b), differential(cc))) ==
          "c*d(a)^d(b) + d(b)^d(c)");
    CHECK(to_string(differential(a) * (a + b)) == "(a + b)*d(a)");
    CHECK(to_string(DifferentialForm::scalar(a + b)) == "a + b");
    CHECK(to_string(DifferentialForm::zero(c, 2)) == "0");

    // subspaces render through their basis forms
    CHECK(basis_strings(FormSubspace::span(c, 1, {differential(a)})) ==
          std::vector<std::string>{"d(a)"});

    // symbolic logarithmic sets
    CHECK(to_string(NuGeneratedSet{c, 1, true, {}}) == "full");
    CHECK(to_string(NuGeneratedSet{c, 1, false, {}}) == "0");
    CHECK(to_string(NuGeneratedSet{c, 1, false, {NuSummand{1, {a, b}, 0}}}) ==
          "dlog^1{a, b} ^ nu^0");

    // tower elements on the root-monomial basis
    ExtensionTower E(c);
    E.add_step("y", 1, E.embed(a));
    E.add_step("z", 1, E.embed(b));
    CHECK(tower_element_string(E, E.zero()) == "0");
    CHECK(tower_element_string(E, E.root(0)) == "y");
    CHECK(tower_element_string(E, E.mul(E.root(0), E.root(0))) == "a");
    TowerElement u = E.one() + E.mul(E.mul(E.root(0), E.root(1)), E.embed(a + b));
    CHECK(tower_element_string(E, u) == "1 + (a + b)*y*z");
}

TEST_CASE("scalar grammar: precedence, powers, and reduction mod p") {
    auto c = ctx2();
    auto a = rv(c, "a");
    auto b = rv(c, "b");
    auto cc = rv(c, "c");
    auto one = RationalFunction::one(c);

    CHECK(parse_rational(c, "a^-1*b") == b / a);
    CHECK(parse_rational(c, "a/b/c") == a / (b * cc));
    CHECK(parse_rational(c, "a + b*c^2") == a + b * cc.pow(2));
    CHECK(parse_rational(c, "(a+b)^2") == (a + b).pow(2));
    CHECK(parse_rational(c, "a^0") == one);
    CHECK(parse_rational(c, "5") == one);  // numbers reduce mod p = 2
    CHECK(parse_rational(c, " a\t+ b ") == a + b);
    CHECK(parse_rational(c, "a - b") == a + b);  // char 2

    auto c3 = make_context(3, {"a", "b"});
    auto a3 = rv(c3, "a");
    CHECK(parse_rational(c3, "-a") == -a3);
    CHECK(parse_rational(c3, "2^3") == RationalFunction::constant(c3, 2));
    CHECK(parse_rational(c3, "1/2") == RationalFunction::constant(c3, 2));  // 2*2 = 1 mod 3
}

TEST_CASE("form grammar: differentials, wedges, scaling") {
    auto c = ctx2();
    auto a = rv(c, "a");
    auto b = rv(c, "b");
    auto cc = rv(c, "c");

    CHECK(parse_form(c, "d(a)") == differential(a));
    CHECK(parse_form(c, "d(a*b)") == differential(a * b));
    CHECK(parse_form(c, "d(a+b)") == differential(a) + differential(b));
    CHECK(parse_form(c, "d(a^2)").is_zero());  // d of a square in char 2
    CHECK(parse_form(c, "d(a)^d(b)") == wedge(differential(a), differential(b)));
    CHECK(parse_form(c, "a*d(b)") == differential(b) * a);
    CHECK(parse_form(c, "d(a)*c") == differential(a) * cc);
    CHECK(parse_form(c, "d(a)/b") == differential(a) * (RationalFunction::one(c) / b));
    CHECK(parse_form(c, "d(1)").is_zero());
    CHECK(parse_form(c, "d(a/b)") == differential(a / b));

    // scaling binds tighter than the wedge
    CHECK(parse_form(c, "a*d(b)^d(c)") == wedge(differential(b) * a, differential(cc)));
    CHECK(parse_form(c, "c*d(a)^d(b) + d(b)^d(c)") ==
          wedge(differential(a), differential(b)) * cc +
              wedge(differential(b), differential(cc)));

    // "d" is the differential only when directly followed by "("
    auto cd = make_context(2, {"d", "e"});
    CHECK(parse_rational(cd, "d*e") == rv(cd, "d") * rv(cd, "e"));
    CHECK(parse_form(cd, "d(e)") == differential(rv(cd, "e")));

    // integer powers apply to scalars only
    CaughtParse pw = catch_parse([&] { parse_form(c, "d(a)^2"); });
    CHECK(pw.threw);
    CHECK(pw.pos == 4);
    CHECK(mentions(pw.message, "degree 0"));
    // products of two forms must be written with the wedge
    CaughtParse st = catch_parse([&] { parse_form(c, "d(a)*d(b)"); });
    CHECK(st.threw);
    CHECK(st.pos == 4);
    CHECK(mentions(st.message, "use ^ for the product"));
    // sums must be homogeneous
    CaughtParse mix = catch_parse([&] { parse_form(c, "d(a) + b"); });
    CHECK(mix.threw);
    CHECK(mix.pos == 5);
    CHECK(mentions(mix.message, "degrees 1 and 0"));
}

TEST_CASE("parse errors carry character offsets") {
    auto c = ctx2();

    struct Case {
        const char* text;
        std::size_t pos;
        const char* needle;
    };
    const Case cases[] = {
        {"a + + b", 4, "expected a value"},
        {"a $ b", 2, "unexpected character '$'"},
        {"xyz + a", 0, "unknown variable 'xyz'"},
        {"(a", 2, "expected ')'"},
        {"a b", 2, "unexpected trailing input"},
        {"", 0, "expected a value"},
        {"a^2000000", 2, "exponent out of range"},
        {"1/0", 1, "division by zero"},
        {"0^-1", 1, "division by zero"},
        {"a^12345678901234567890", 2, "number literal too long"},
    };
    for (const auto& t : cases) {
        CAPTURE(t.text);
        CaughtParse got = catch_parse([&] { parse_rational(c, t.text); });
        CHECK(got.threw);
        CHECK(got.pos == t.pos);
        CHECK(mentions(got.message, t.needle));
    }

    // a form where a scalar was required
    CaughtParse deg = catch_parse([&] { parse_rational(c, "d(a)"); });
    CHECK(deg.threw);
    CHECK(mentions(deg.message, "expected a scalar expression"));
}

TEST_CASE("generator families parse as brace sets joined by ^") {
    auto c = ctx2();
    auto a = rv(c, "a");
    auto b = rv(c, "b");
    auto cc = rv(c, "c");

    auto fam = parse_generator_family(c, "{a, b} ^ {a*c + 1}");
    REQUIRE(fam.size() == 2);
    REQUIRE(fam[0].size() == 2);
    REQUIRE(fam[1].size() == 1);
    CHECK(fam[0][0] == a);
    CHECK(fam[0][1] == b);
    CHECK(fam[1][0] == a * cc + RationalFunction::one(c));

    auto single = parse_generator_family(c, "{ a }");
    REQUIRE(single.size() == 1);
    CHECK(single[0] == std::vector<RationalFunction>{a});

    CaughtParse nb = catch_parse([&] { parse_generator_family(c, "a"); });
    CHECK(nb.threw);
    CHECK(nb.pos == 0);
    CHECK(mentions(nb.message, "expected '{'"));

    CaughtParse nf = catch_parse([&] { parse_generator_family(c, "{d(a)}"); });
    CHECK(nf.threw);
    CHECK(nf.pos == 1);
    CHECK(mentions(nf.message, "scalar expressions"));

    CaughtParse tr = catch_parse([&] { parse_generator_family(c, "{a} * {b}"); });
    CHECK(tr.threw);
    CHECK(tr.pos == 4);
    CHECK(mentions(tr.message, "trailing"));

    CaughtParse dangling = catch_parse([&] { parse_generator_family(c, "{a} ^"); });
    CHECK(dangling.threw);
    CHECK(mentions(dangling.message, "expected '{'"));
}

TEST_CASE("tower parsing builds the field step by step") {
    auto c = ctx2();
    auto a = rv(c, "a");
    auto b = rv(c, "b");
    auto cc = rv(c, "c");

    ExtensionTower E = parse_tower(c, "y = root(a, 2), root(b, 2^1)");
    CHECK(E.steps() == 2);
    CHECK(E.degree() == 4);
    CHECK(E.root_index("y") == 0);
    CHECK(E.root_index("z1") == 1);  // unnamed steps are numbered

    // later defining elements may use earlier roots
    ExtensionTower T = parse_tower(c, "y = root(a, 4), w = root(y*b, 2)");
    CHECK(T.degree() == 8);
    CHECK(T.pow(T.root(1), 2) == T.mul(T.root(0), T.embed(b)));

    // a step that is a p-th power in the field built so far collapses
    CHECK_THROWS_AS(parse_tower(c, "root(a^2, 2)"), hypothesis_error);
    CHECK_THROWS_AS(parse_tower(c, "root(a, 4), root(a, 2)"), hypothesis_error);

    // bad names and orders are parse errors with positions
    CHECK(catch_parse([&] { parse_tower(c, "a = root(b, 2)"); }).pos == 0);
    CHECK(mentions(catch_parse([&] { parse_tower(c, "root(a, 6)"); }).message,
                   "the root order must be p^s"));
    CHECK(mentions(catch_parse([&] { parse_tower(c, "root(a, 3^1)"); }).message,
                   "the exponent base must be p = 2"));
    CHECK(mentions(catch_parse([&] { parse_tower(c, "root(a, 2^0)"); }).message,
                   "between 1 and 9"));
    CaughtParse unk = catch_parse([&] { parse_tower(c, "root(q, 2)"); });
    CHECK(unk.pos == 5);
    CHECK(mentions(unk.message, "unknown name 'q'"));
    CHECK(mentions(catch_parse([&] { parse_tower(c, "root(a 2)"); }).message, "expected ','"));
    CHECK(mentions(catch_parse([&] { parse_tower(c, "y = 2"); }).message,
                   "expected 'root(element, order)'"));

    // the spec reader records steps without building the field, so a
    // specification whose literal tower collapses still parses
    const std::string mixed = "root(a, 4), root(b, 2), root(c^4*a, 8)";
    CHECK_THROWS_AS(parse_tower(c, mixed), hypothesis_error);
    auto spec = parse_tower_spec(c, mixed);
    REQUIRE(spec.size() == 3);
    CHECK(spec[0].name == "z1");
    CHECK(spec[0].s == 2);
    CHECK(spec[0].g == a);
    CHECK(spec[1].name == "z2");
    CHECK(spec[1].s == 1);
    CHECK(spec[1].g == b);
    CHECK(spec[2].name == "z3");
    CHECK(spec[2].s == 3);
    CHECK(spec[2].g == cc.pow(4) * a);

    auto named = parse_tower_spec(c, "w = root(c^4*a, 2^3)");
    REQUIRE(named.size() == 1);
    CHECK(named[0].name == "w");
    CHECK(named[0].s == 3);

    // spec elements live in the base field
    CHECK(mentions(catch_parse([&] { parse_tower_spec(c, "root(d(a), 2)"); }).message,
                   "must be a scalar expression"));
    CHECK(mentions(catch_parse([&] { parse_tower_spec(c, "root(y, 2)"); }).message,
                   "unknown variable 'y'"));
}
