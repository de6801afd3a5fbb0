// Command-line front end: parses expressions, dispatches to the library, and
// renders results as text or a stable JSON schema.
#include <cctype>
#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pforms/errors.hpp"
#include "pforms/io.hpp"
#include "pforms/pstructure.hpp"

using nlohmann::ordered_json;
using namespace pforms;

namespace {

struct Common {
    int p = 2;
    std::string vars = "a,b,c";
    int n = 1;
    bool json = false;
    bool timings = false;
    bool assume_closure = false;
    unsigned long long seed = 0;
    std::string expr;
};

void add_common(CLI::App* cmd, Common& c, bool needs_expr) {
    cmd->add_option("--p", c.p, "field characteristic (2, 3, or 5)");
    cmd->add_option("--vars", c.vars, "comma-separated variable names");
    cmd->add_option("--n", c.n, "form degree");
    cmd->add_flag("--json", c.json, "emit JSON");
    cmd->add_flag("--timings", c.timings, "include wall-clock timings in the output");
    cmd->add_flag("--assume-closure", c.assume_closure,
                  "assert that every element of F is a (p-1)-st power (automatic at p = 2)");
    cmd->add_option("--seed", c.seed, "seed for sampling commands");
    if (needs_expr) cmd->add_option("expr", c.expr, "input expression (stdin when omitted)");
}

ContextPtr make_ctx(const Common& c) {
    std::vector<std::string> names;
    std::string cur;
    for (char ch : c.vars) {
        if (ch == ',') {
            names.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    names.push_back(cur);
    return make_context(c.p, names);
}

std::string get_expr(const Common& c) {
    if (!c.expr.empty()) return c.expr;
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

ordered_json context_json(const Common& c) {
    ordered_json j;
    j["p"] = c.p;
    ContextPtr ctx = make_ctx(c);
    ordered_json vars = ordered_json::array();
    for (const auto& v : ctx->vars()) vars.push_back(v);
    j["vars"] = vars;
    return j;
}

ordered_json result_header(const Common& c, const std::string& command,
                           const std::string& input) {
    ordered_json j;
    j["context"] = context_json(c);
    j["command"] = command;
    j["input"] = input;
    return j;
}

void finish(ordered_json& j, const Common& c, const Timer& t) {
    if (c.timings) {
        ordered_json tm;
        tm["total_ms"] = t.ms();
        j["timings"] = tm;
    }
    std::cout << j.dump(2) << "\n";
}

void emit_subspace(const Common& c, const Timer& t, const std::string& command,
                   const std::string& input, const std::string& method,
                   const ordered_json& case_tags, const FormSubspace& s) {
    std::vector<std::string> basis = basis_strings(s);
    if (c.json) {
        ordered_json j = result_header(c, command, input);
        j["n"] = c.n;
        j["method"] = method;
        j["case"] = case_tags;
        j["dim"] = s.dim();
        j["full"] = s.is_full();
        ordered_json b = ordered_json::array();
        for (const auto& line : basis) b.push_back(line);
        j["basis"] = b;
        finish(j, c, t);
        return;
    }
    std::cout << "method: " << method << "\n";
    std::cout << "dim: " << s.dim() << (s.is_full() ? " (full)" : "") << "\n";
    std::cout << "basis:\n";
    for (const auto& line : basis) std::cout << "  " << line << "\n";
    if (c.timings) std::cout << "total_ms: " << t.ms() << "\n";
}

// deterministic draws from a generated set, seeded by --seed; the pool of
// scalars fed to the sampler is the nonzero input data (or 1 when empty)
std::vector<std::string> nu_samples(const Common& c, const ContextPtr& ctx,
                                    const NuGeneratedSet& s,
                                    std::vector<RationalFunction> pool) {
    std::erase_if(pool, [](const RationalFunction& f) { return f.is_zero(); });
    if (pool.empty()) pool.push_back(RationalFunction::one(ctx));
    std::mt19937_64 rng(c.seed);
    std::vector<std::string> out;
    for (int i = 0; i < 3; ++i) out.push_back(to_string(sample_nu_generator(s, rng, pool)));
    return out;
}

void emit_nu(const Common& c, const Timer& t, const std::string& command,
             const std::string& input, const std::string& method, const ordered_json& case_tags,
             const NuGeneratedSet& s, const std::vector<std::string>& samples) {
    if (c.json) {
        ordered_json j = result_header(c, command, input);
        j["n"] = c.n;
        j["method"] = method;
        j["case"] = case_tags;
        j["full"] = s.full;
        ordered_json sm = ordered_json::array();
        for (const auto& x : s.summands) {
            ordered_json e;
            e["slot_degree"] = x.slot_degree;
            ordered_json g = ordered_json::array();
            for (const auto& v : x.slot_gens) g.push_back(to_string(v));
            e["slot_gens"] = g;
            e["residual_degree"] = x.residual_degree;
            sm.push_back(e);
        }
        j["summands"] = sm;
        j["text"] = to_string(s);
        ordered_json sa = ordered_json::array();
        for (const auto& line : samples) sa.push_back(line);
        j["seed"] = c.seed;
        j["samples"] = sa;
        finish(j, c, t);
        return;
    }
    std::cout << "method: " << method << "\n";
    std::cout << "generators: " << to_string(s) << "\n";
    for (const auto& line : samples) std::cout << "sample: " << line << "\n";
    if (c.timings) std::cout << "total_ms: " << t.ms() << "\n";
}

void emit_value(const Common& c, const Timer& t, const std::string& command,
                const std::string& input, const std::string& key, const ordered_json& value) {
    if (c.json) {
        ordered_json j = result_header(c, command, input);
        j[key] = value;
        finish(j, c, t);
        return;
    }
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
              << "\n";
    if (c.timings) std::cout << "total_ms: " << t.ms() << "\n";
}

bool slots_identical(const std::vector<std::vector<RationalFunction>>& slots) {
    for (std::size_t i = 1; i < slots.size(); ++i) {
        if (slots[i].size() != slots[0].size()) return false;
        for (std::size_t j = 0; j < slots[i].size(); ++j)
            if (!(slots[i][j] == slots[0][j])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// command bodies

int run_ann(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    FormSubspace s = FormSubspace::zero(ctx, c.n);
    ordered_json tags;
    std::size_t first = input.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && input[first] == '{') {
        GeneratorFamily fam{parse_generator_family(ctx, input)};
        s = ann_bruteforce(ctx, fam, c.n);
        tags["targets"] = elementary_products(fam).size();
    } else {
        DifferentialForm w = parse_form(ctx, input);
        s = ann_bruteforce(ctx, std::vector<DifferentialForm>{w}, c.n);
        tags["targets"] = 1;
    }
    emit_subspace(c, t, "ann", input, "bruteforce", tags, s);
    return 0;
}

int run_ann_closed(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    std::vector<std::vector<RationalFunction>> slots = parse_generator_family(ctx, input);
    if (slots_identical(slots)) {
        FormSubspace s = ann_power(ctx, slots[0], static_cast<int>(slots.size()), c.n);
        ordered_json tags;
        tags["power"] = slots.size();
        emit_subspace(c, t, "ann-closed", input, "self-wedge", tags, s);
        return 0;
    }
    try {
        FormSubspace s = ann_disjoint(ctx, slots, c.n);
        ordered_json tags;
        ordered_json pd = ordered_json::array();
        for (const auto& slot : slots) pd.push_back(p_degree(slot));
        tags["block_pdegs"] = pd;
        emit_subspace(c, t, "ann-closed", input, "disjoint-blocks", tags, s);
        return 0;
    } catch (const hypothesis_error&) {
        // fall through to the mixed case
    }
    bool prefix_rank_one = slots.size() >= 2;
    for (std::size_t i = 0; i + 1 < slots.size() && prefix_rank_one; ++i)
        if (p_degree(slots[i]) != 1) prefix_rank_one = false;
    if (prefix_rank_one) {
        std::vector<std::vector<RationalFunction>> prefix(slots.begin(), slots.end() - 1);
        FormSubspace s = ann_mixed(ctx, prefix, slots.back(), c.n);
        ordered_json tags;
        tags["rank_one_slots"] = prefix.size();
        emit_subspace(c, t, "ann-closed", input, "rank-one-plus-general", tags, s);
        return 0;
    }
    throw hypothesis_error("ann-closed-no-case",
                           "no closed form applies: the slots are neither identical, nor "
                           "p-independent blocks, nor rank-one slots plus one general slot");
}

int run_nu_ann(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    std::vector<std::vector<RationalFunction>> slots = parse_generator_family(ctx, input);
    std::vector<RationalFunction> pool;
    for (const auto& slot : slots) pool.insert(pool.end(), slot.begin(), slot.end());
    if (slots_identical(slots)) {
        NuGeneratedSet s = nu_ann_power(ctx, slots[0], static_cast<int>(slots.size()), c.n,
                                        c.assume_closure);
        ordered_json tags;
        tags["power"] = slots.size();
        emit_nu(c, t, "nu-ann", input, "self-wedge", tags, s, nu_samples(c, ctx, s, pool));
        return 0;
    }
    bool prefix_rank_one = slots.size() >= 2;
    for (std::size_t i = 0; i + 1 < slots.size() && prefix_rank_one; ++i)
        if (p_degree(slots[i]) != 1) prefix_rank_one = false;
    if (prefix_rank_one) {
        std::vector<std::vector<RationalFunction>> prefix(slots.begin(), slots.end() - 1);
        NuGeneratedSet s = nu_ann_mixed(ctx, prefix, slots.back(), c.n, c.assume_closure);
        ordered_json tags;
        tags["rank_one_slots"] = prefix.size();
        emit_nu(c, t, "nu-ann", input, "rank-one-plus-general", tags, s,
                nu_samples(c, ctx, s, pool));
        return 0;
    }
    throw hypothesis_error("nu-ann-no-case",
                           "no closed form applies: the slots are neither identical nor "
                           "rank-one slots plus one general slot");
}

int run_kernel(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    ExtensionTower E = parse_tower(ctx, input);
    FormSubspace s = kernel_bruteforce(E, c.n);
    ordered_json tags;
    tags["tower_degree"] = E.degree();
    tags["steps"] = E.steps();
    emit_subspace(c, t, "kernel", input, "bruteforce", tags, s);
    return 0;
}

// split a tower specification for the closed-form kernel commands
struct TowerShape {
    std::vector<RationalFunction> gens;
    std::vector<int> exps;
};

TowerShape tower_shape(const ContextPtr& ctx, const std::string& input) {
    TowerShape out;
    for (const auto& st : parse_tower_spec(ctx, input)) {
        out.gens.push_back(st.g);
        out.exps.push_back(st.s);
    }
    return out;
}

int run_kernel_closed(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    TowerShape shape = tower_shape(ctx, input);
    if (is_p_independent(shape.gens)) {
        FormSubspace s = kernel_modular(ctx, shape.gens, c.n);
        ordered_json tags;
        tags["modular"] = true;
        emit_subspace(c, t, "kernel-closed", input, "modular", tags, s);
        return 0;
    }
    std::vector<RationalFunction> gens(shape.gens.begin(), shape.gens.end() - 1);
    std::vector<int> exps(shape.exps.begin(), shape.exps.end() - 1);
    DependentRootKernel k =
        kernel_dependent_root(ctx, gens, exps, shape.gens.back(), shape.exps.back(), c.n);
    ordered_json tags;
    tags["modular"] = k.modular_case;
    tags["t"] = k.t;
    emit_subspace(c, t, "kernel-closed", input, "dependent-root", tags, k.kernel);
    return 0;
}

int run_nu_kernel(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    TowerShape shape = tower_shape(ctx, input);
    if (is_p_independent(shape.gens)) {
        NuGeneratedSet s = nu_kernel_modular(ctx, shape.gens, c.n, c.assume_closure);
        ordered_json tags;
        tags["modular"] = true;
        emit_nu(c, t, "nu-kernel", input, "modular", tags, s,
                nu_samples(c, ctx, s, shape.gens));
        return 0;
    }
    std::vector<RationalFunction> gens(shape.gens.begin(), shape.gens.end() - 1);
    std::vector<int> exps(shape.exps.begin(), shape.exps.end() - 1);
    DependentRootNu k = nu_kernel_dependent_root(ctx, gens, exps, shape.gens.back(),
                                                 shape.exps.back(), c.n, c.assume_closure);
    ordered_json tags;
    tags["modular"] = k.modular_case;
    tags["t"] = k.t;
    emit_nu(c, t, "nu-kernel", input, "dependent-root", tags, k.set,
            nu_samples(c, ctx, k.set, shape.gens));
    return 0;
}

int run_cartier(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    DifferentialForm w = parse_form(ctx, input);
    if (!is_closed(w))
        throw hypothesis_error("form-not-closed",
                               "the Cartier operator is defined on closed forms only");
    DifferentialForm cw = cartier(w);
    emit_value(c, t, "cartier", input, "result", to_string(cw));
    return 0;
}

int run_exact(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    DifferentialForm w = parse_form(ctx, input);
    emit_value(c, t, "exact", input, "value", is_exact(w));
    return 0;
}

int run_nu_member(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    DifferentialForm w = parse_form(ctx, input);
    emit_value(c, t, "nu-member", input, "value", is_nu_member(w));
    return 0;
}

int run_pbasis(const Common& c) {
    Timer t;
    ContextPtr ctx = make_ctx(c);
    std::string input = get_expr(c);
    std::vector<std::vector<RationalFunction>> slots = parse_generator_family(ctx, input);
    std::vector<RationalFunction> all;
    for (const auto& slot : slots) all.insert(all.end(), slot.begin(), slot.end());
    std::vector<RationalFunction> basis = extract_p_basis(all);
    if (c.json) {
        ordered_json j = result_header(c, "pbasis", input);
        ordered_json b = ordered_json::array();
        for (const auto& g : basis) b.push_back(to_string(g));
        j["basis"] = b;
        j["pdeg"] = basis.size();
        finish(j, c, t);
        return 0;
    }
    std::cout << "pdeg: " << basis.size() << "\n";
    std::cout << "basis:\n";
    for (const auto& g : basis) std::cout << "  " << to_string(g) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify-paper: reruns the two worked examples end to end

struct Check {
    std::string name;
    bool pass;
};

void worked_annihilator_checks(std::vector<Check>& out) {
    for (int p : {2, 3}) {
        ContextPtr ctx = make_context(p, {"a", "b", "c"});
        RationalFunction a = RationalFunction::variable(ctx, 0);
        RationalFunction b = RationalFunction::variable(ctx, 1);
        RationalFunction cc = RationalFunction::variable(ctx, 2);
        std::vector<std::vector<RationalFunction>> fam = {{a, b}, {a, cc}};
        std::vector<RationalFunction> all = {a, b, cc};
        std::string tag = "p" + std::to_string(p);
        for (int n = 0; n <= 3; ++n) {
            FormSubspace oracle = ann_bruteforce(ctx, GeneratorFamily{fam}, n);
            FormSubspace closed = ann_power(ctx, all, 2, n);
            out.push_back({"worked-annihilator-" + tag + "-n" + std::to_string(n),
                           oracle == closed});
            AnnBounds bounds = ann_bounds(ctx, fam, n);
            bool sandwich = oracle.contains(bounds.lower) && bounds.upper.contains(oracle);
            out.push_back(
                {"worked-annihilator-bounds-hold-" + tag + "-n" + std::to_string(n), sandwich});
        }
        // the sandwich is strict on one side at n = 1 and the other at n = 2
        AnnBounds b1 = ann_bounds(ctx, fam, 1);
        FormSubspace o1 = ann_bruteforce(ctx, GeneratorFamily{fam}, 1);
        out.push_back({"worked-annihilator-upper-strict-" + tag + "-n1", b1.upper != o1});
        AnnBounds b2 = ann_bounds(ctx, fam, 2);
        FormSubspace o2 = ann_bruteforce(ctx, GeneratorFamily{fam}, 2);
        out.push_back({"worked-annihilator-lower-strict-" + tag + "-n2", b2.lower != o2});
    }
}

void worked_kernel_checks(std::vector<Check>& out, bool quiet) {
    ContextPtr ctx = make_context(2, {"a", "b", "c"});
    RationalFunction a = RationalFunction::variable(ctx, 0);
    RationalFunction b = RationalFunction::variable(ctx, 1);
    RationalFunction cc = RationalFunction::variable(ctx, 2);
    RationalFunction c4a = cc.pow(4) * a;

    // the field: 4th root of a, square root of b, 8th root of c^4*a
    ExtensionTower E = build_dependent_root_tower(ctx, {a, b}, {2, 1}, c4a, 3);
    out.push_back({"worked-kernel-tower-degree-16", E.degree() == 16});
    FormSubspace oracle = kernel_bruteforce(E, 1);
    FormSubspace expected = FormSubspace::span(
        ctx, 1, {differential(a), differential(b)});
    out.push_back({"worked-kernel-oracle-span-da-db", oracle == expected});

    // both closed-form presentations violate the exponent bound
    bool rejected1 = false;
    try {
        kernel_dependent_root(ctx, {a, b}, {2, 1}, c4a, 3, 1);
    } catch (const hypothesis_error& e) {
        rejected1 = e.code() == "dependent-root-exponent-bound";
    }
    out.push_back({"worked-kernel-presentation-1-rejected", rejected1});
    bool rejected2 = false;
    try {
        kernel_dependent_root(ctx, {c4a, b}, {3, 1}, a, 2, 1);
    } catch (const hypothesis_error& e) {
        rejected2 = e.code() == "dependent-root-exponent-bound";
    }
    out.push_back({"worked-kernel-presentation-2-rejected", rejected2});

    // ignoring the bound gives answers that disagree with each other,
    // and the first also disagrees with the oracle
    DependentRootKernel naive1 = kernel_dependent_root(ctx, {a, b}, {2, 1}, c4a, 3, 1, false);
    DependentRootKernel naive2 = kernel_dependent_root(ctx, {c4a, b}, {3, 1}, a, 2, 1, false);
    out.push_back({"worked-kernel-naive-answers-differ", naive1.kernel != naive2.kernel});
    out.push_back({"worked-kernel-naive-1-wrong", naive1.kernel != oracle});
    if (!quiet && naive2.kernel == oracle)
        std::cerr << "note: the second presentation happens to agree with the oracle here; "
                     "it is rejected because the closed form is not justified, not because "
                     "its value is wrong\n";
}

int run_verify_paper(const Common& c) {
    Timer t;
    std::vector<Check> checks;
    worked_annihilator_checks(checks);
    worked_kernel_checks(checks, c.json);
    bool all = true;
    for (const auto& ch : checks) all = all && ch.pass;
    if (c.json) {
        ordered_json j;
        j["command"] = "verify-paper";
        ordered_json arr = ordered_json::array();
        for (const auto& ch : checks) {
            ordered_json e;
            e["name"] = ch.name;
            e["pass"] = ch.pass;
            arr.push_back(e);
        }
        j["checks"] = arr;
        j["pass"] = all;
        finish(j, c, t);
    } else {
        for (const auto& ch : checks)
            std::cout << (ch.pass ? "ok   " : "FAIL ") << ch.name << "\n";
        std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact annihilators of differential forms and restriction kernels over "
                 "F_p(x_1,...,x_m)"};
    app.require_subcommand(1);

    struct Cmd {
        const char* name;
        const char* desc;
        bool needs_expr;
        int (*fn)(const Common&);
    };
    const std::vector<Cmd> cmds = {
        {"ann", "annihilator of a form or generator family (exact oracle)", true, run_ann},
        {"ann-closed", "annihilator via the applicable closed form", true, run_ann_closed},
        {"nu-ann", "logarithmic-form annihilator via the closed form", true, run_nu_ann},
        {"kernel", "restriction kernel of a root tower (exact oracle)", true, run_kernel},
        {"kernel-closed", "restriction kernel via the applicable closed form", true,
         run_kernel_closed},
        {"nu-kernel", "logarithmic restriction kernel via the closed form", true, run_nu_kernel},
        {"cartier", "apply the Cartier operator to a closed form", true, run_cartier},
        {"exact", "test whether a form is exact", true, run_exact},
        {"nu-member", "test membership in the logarithmic subgroup", true, run_nu_member},
        {"pbasis", "p-basis and p-degree of a generator set", true, run_pbasis},
        {"verify-paper", "re-run the worked examples end to end", false, run_verify_paper},
    };

    std::vector<Common> opts(cmds.size());
    std::vector<CLI::App*> subs(cmds.size());
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        subs[i] = app.add_subcommand(cmds[i].name, cmds[i].desc);
        add_common(subs[i], opts[i], cmds[i].needs_expr);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < cmds.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        const Common& c = opts[i];
        try {
            return cmds[i].fn(c);
        } catch (const hypothesis_error& e) {
            if (c.json) {
                ordered_json j;
                j["error"] = {{"kind", "hypothesis"}, {"code", e.code()}, {"message", e.what()}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cerr << "hypothesis rejected [" << e.code() << "]: " << e.what() << "\n";
            }
            return 2;
        } catch (const parse_error& e) {
            if (c.json) {
                ordered_json j;
                j["error"] = {{"kind", "parse"},
                              {"pos", e.pos()},
                              {"message", e.what()}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cerr << "parse error at offset " << e.pos() << ": " << e.what() << "\n";
            }
            return 1;
        } catch (const std::exception& e) {
            if (c.json) {
                ordered_json j;
                j["error"] = {{"kind", "error"}, {"message", e.what()}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cerr << "error: " << e.what() << "\n";
            }
            return 1;
        }
    }
    return 1;
}
