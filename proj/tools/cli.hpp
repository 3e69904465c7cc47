#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "partcat/acceptance.hpp"
#include "partcat/certify.hpp"
#include "partcat/closure.hpp"
#include "partcat/functor_f.hpp"
#include "partcat/functor_u.hpp"
#include "partcat/generators.hpp"
#include "partcat/linear.hpp"
#include "partcat/relations.hpp"
#include "partcat/tensor_maps.hpp"

namespace partcat::cli {

// Bad flag combinations found after CLI11 parsing; reported like parse errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<long> n;
    bool linear = false;
    int points = 6;
    int slack = 4;
    std::string sign = "plus";
    std::uint64_t seed = AcceptanceOptions{}.seed;
    int jobs = 1;
    std::string format = "human";
    std::vector<std::string> gens;
    std::string gens_file;
    std::string regime;
    std::string sig;
    std::string side = "left", dir = "up";
    std::string w1, w2;
    std::string naming = "canonical";
    std::string kind;
    int k = 1;
    bool dotted = false, basis = false, matrix = false, normalize = false, adjoint = false;
    std::vector<std::string> inputs;
};

namespace detail {

inline bool is_spec(const std::string& s) { return !s.empty() && s[0] == '@'; }

inline Partition read_partition(const std::string& s) {
    return is_spec(s) ? generator_spec(std::string_view(s).substr(1)) : parse_partition(s);
}

inline long need_n(const Options& o, const char* why) {
    if (!o.n) throw UsageError(std::string("--N is required ") + why);
    return *o.n;
}

inline LinearCombination read_lincomb(const std::string& s, long n) {
    if (is_spec(s)) return LinearCombination::of(read_partition(s), n);
    return parse_lincomb(s, n);
}

// Inline generators plus the generator file; a file header N=<int> fills --N.
inline std::vector<std::string> gather_gens(Options& o) {
    std::vector<std::string> out = o.gens;
    if (o.gens_file.empty()) return out;
    std::ifstream in(o.gens_file);
    if (!in) throw UsageError("cannot read " + o.gens_file);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
        if (line.rfind("N=", 0) == 0) {
            long n = 0;
            try {
                n = std::stol(line.substr(2));
            } catch (const std::exception&) {
                throw UsageError("bad header '" + line + "'");
            }
            if (o.n && *o.n != n) throw Error(ErrorCode::context_mismatch, "--N differs from the file header");
            o.n = n;
            continue;
        }
        out.push_back(line);
    }
    return out;
}

inline std::vector<Partition> partitions_of(const std::vector<std::string>& v) {
    std::vector<Partition> out;
    for (const auto& s : v) out.push_back(read_partition(s));
    return out;
}

inline Regime pick_regime(const Options& o, const std::vector<Partition>& gens) {
    if (!o.regime.empty()) return parse_regime(o.regime);
    for (Regime r : {Regime::plain, Regime::extra, Regime::two_colored})
        if (std::all_of(gens.begin(), gens.end(), [&](const Partition& g) { return g.fits(r); })) return r;
    throw Error(ErrorCode::mixed_regime, "generators mix extra singletons and colored points");
}

inline Regime pick_regime(const Options& o, const Partition& q, const std::vector<Partition>& gens) {
    auto all = gens;
    all.push_back(q);
    return pick_regime(o, all);
}

inline const std::string& input(const Options& o, std::size_t i, std::size_t want) {
    if (o.inputs.size() != want)
        throw UsageError("expected " + std::to_string(want) + " input" + (want == 1 ? "" : "s") + ", got " +
                         std::to_string(o.inputs.size()));
    return o.inputs[i];
}

inline bool machine(const Options& o) { return o.format == "machine"; }

inline void print_composition(std::ostream& out, const Options& o, const Composition& c) {
    if (machine(o)) {
        out << "result " << to_string(c.result) << "\nloops " << c.loops << "\nextra_loops " << c.extra_loops << "\n";
        return;
    }
    out << to_string(c.result) << "\n";
    if (c.loops) out << "loops " << c.loops << "\n";
    if (c.extra_loops) out << "extra_loops " << c.extra_loops << "\n";
}

inline RelationStyle relation_style(const Options& o) {
    if (o.format == "latex") return RelationStyle::latex;
    if (o.format == "machine") return RelationStyle::machine;
    return RelationStyle::human;
}

inline Naming naming_of(const Options& o) {
    if (o.naming == "trel") return Naming::trel;
    if (o.naming == "compact") return Naming::compact;
    return Naming::canonical;
}

inline CategoryClosure run_closure(Options& o, std::vector<std::string> gens, std::optional<Regime> forced = {}) {
    if (o.linear) {
        const long n = need_n(o, "with --linear");
        std::vector<LinearCombination> lcs;
        std::vector<Partition> support;
        for (const auto& s : gens) {
            lcs.push_back(read_lincomb(s, n));
            for (const auto& [p, c] : lcs.back().terms()) support.push_back(p);
        }
        Regime r = forced ? *forced : pick_regime(o, support);
        return closure_linear(lcs, r, o.points, o.slack, n, o.jobs);
    }
    auto ps = partitions_of(gens);
    Regime r = forced ? *forced : pick_regime(o, ps);
    return closure(ps, r, o.points, o.slack, o.jobs);
}

using Handler = std::function<int(Options&, std::ostream&, std::ostream&)>;

struct Command {
    std::string name;
    std::string help;
    std::vector<std::string> flags;  // option groups to attach
    std::string inputs;              // positional description, empty for none
    Handler run;
};

inline int cmd_compose(Options& o, std::ostream& out, std::ostream&) {
    const auto& a = input(o, 0, 2);
    const auto& b = input(o, 1, 2);
    if (o.linear) {
        const long n = need_n(o, "with --linear");
        out << to_string(lin_compose(read_lincomb(a, n), read_lincomb(b, n))) << "\n";
        return 0;
    }
    print_composition(out, o, compose(read_partition(a), read_partition(b)));
    return 0;
}

inline int cmd_tensor(Options& o, std::ostream& out, std::ostream&) {
    const auto& a = input(o, 0, 2);
    const auto& b = input(o, 1, 2);
    if (o.linear) {
        const long n = need_n(o, "with --linear");
        out << to_string(lin_tensor(read_lincomb(a, n), read_lincomb(b, n))) << "\n";
    } else {
        out << to_string(tensor(read_partition(a), read_partition(b))) << "\n";
    }
    return 0;
}

inline int cmd_involute(Options& o, std::ostream& out, std::ostream&) {
    const auto& a = input(o, 0, 1);
    if (o.linear) out << to_string(lin_involute(read_lincomb(a, need_n(o, "with --linear")))) << "\n";
    else out << to_string(involute(read_partition(a))) << "\n";
    return 0;
}

inline int cmd_rotate(Options& o, std::ostream& out, std::ostream&) {
    Partition p = read_partition(input(o, 0, 1));
    out << to_string(rotate(p, o.side == "left" ? Side::left : Side::right,
                            o.dir == "up" ? Direction::up : Direction::down))
        << "\n";
    return 0;
}

inline int cmd_tp(Options& o, std::ostream& out, std::ostream&) {
    const long n = need_n(o, "for tp");
    LinearCombination lc = read_lincomb(input(o, 0, 1), n);
    out << dump_matrix(t_matrix(lc), lc.signature(), n);
    return 0;
}

inline int cmd_mordim(Options& o, std::ostream& out, std::ostream&) {
    if (o.sig.empty()) throw UsageError("--sig is required for mordim");
    auto gens = gather_gens(o);
    const long n = need_n(o, "for mordim");
    const Signature sig = Signature::parse(o.sig);
    std::vector<Partition> span;
    for (const auto& g : gens) {
        if (g == "all" || g == "pairs" || g == "nc" || g == "nc-pairs") {
            auto fam = named_family(g, sig);
            span.insert(span.end(), fam.begin(), fam.end());
        } else {
            span.push_back(read_partition(g));
        }
    }
    out << mor_dim(span, sig, n) << "\n";
    return 0;
}

inline int cmd_closure(Options& o, std::ostream& out, std::ostream& err) {
    auto gens = gather_gens(o);
    gens.insert(gens.end(), o.inputs.begin(), o.inputs.end());
    auto cl = run_closure(o, gens);
    cl.dump(out);
    err << cl.diagnostics() << "\n";
    return 0;
}

inline int cmd_contains(Options& o, std::ostream& out, std::ostream& err) {
    const auto& q = input(o, 0, 1);
    auto gens = gather_gens(o);
    if (o.linear) {
        auto cl = run_closure(o, gens, o.regime.empty() ? std::nullopt : std::optional(parse_regime(o.regime)));
        out << membership_name(cl.contains(read_lincomb(q, *o.n))) << "\n";
        err << cl.diagnostics() << "\n";
        return 0;
    }
    Partition p = read_partition(q);
    Regime r = pick_regime(o, p, partitions_of(gens));
    auto cl = run_closure(o, gens, r);
    out << membership_name(cl.contains(p)) << "\n";
    err << cl.diagnostics() << "\n";
    return 0;
}

inline int cmd_certify(Options& o, std::ostream& out, std::ostream&) {
    Partition p = read_partition(input(o, 0, 1));
    auto gens = partitions_of(gather_gens(o));
    Regime r = pick_regime(o, p, gens);
    auto cert = certify_exclusion(p, gens, r);
    if (!cert) {
        out << "NoCertificate\n";
        return 0;
    }
    if (machine(o)) out << "(excluded (invariant " << cert->invariant << ") (detail \"" << cert->detail << "\"))\n";
    else out << "Excluded " << cert->invariant << ": " << cert->detail << "\n";
    return 0;
}

inline int cmd_functor_f(Options& o, std::ostream& out, std::ostream&) {
    out << to_string(functor_f(read_partition(input(o, 0, 1)))) << "\n";
    return 0;
}

inline int cmd_preimage(Options& o, std::ostream& out, std::ostream&) {
    Partition p = read_partition(input(o, 0, 1));
    out << to_string(o.normalize ? preimage_normalize(p) : shortest_preimage(p)) << "\n";
    return 0;
}

inline int cmd_functor_u(Options& o, std::ostream& out, std::ostream&) {
    const long n = need_n(o, "for functor-u");
    if (o.matrix) {
        if (!o.inputs.empty()) throw UsageError("--matrix takes no input");
        out << dump_matrix(u_matrix(n, parse_sign(o.sign)).matrix(), Signature::parse("-;-"), n);
        return 0;
    }
    out << to_string(u_functor(read_lincomb(input(o, 0, 1), n))) << "\n";
    return 0;
}

inline int cmd_verify_u(Options& o, std::ostream& out, std::ostream&) {
    const long n = need_n(o, "for verify-u");
    const auto& s = input(o, 0, 1);
    LinearCombination lc = o.dotted ? dotted(read_partition(s), n) : read_lincomb(s, n);
    auto r = verify_theorem_u(lc, parse_sign(o.sign));
    out << (r.ok ? "PASS" : "FAIL") << (r.rhs_only ? " (rhs only)" : "") << ": " << r.detail << "\n";
    return r.ok ? 0 : 1;
}

inline int cmd_degree(Options& o, std::ostream& out, std::ostream& err) {
    auto gens = gather_gens(o);
    gens.insert(gens.end(), o.inputs.begin(), o.inputs.end());
    auto cl = run_closure(o, gens, Regime::two_colored);
    auto d = degree_of_reflection(cl.one_row_members(), o.points);
    if (machine(o)) out << "gcd " << d.gcd << "\nsample " << d.sample_size << "\nbound " << d.bound << "\n";
    else out << d.label() << "\n";
    err << cl.diagnostics() << "\n";
    return 0;
}

inline int cmd_dotted(Options& o, std::ostream& out, std::ostream&) {
    const long n = need_n(o, "for dotted");
    const auto& s = input(o, 0, 1);
    if (!o.basis) {
        out << to_string(dotted(read_partition(s), n)) << "\n";
        return 0;
    }
    // Coordinates in the dotted basis, written as c * P(q) for the dotted q.
    auto coeffs = to_dotted_basis(read_lincomb(s, n));
    if (coeffs.empty()) out << "0";
    bool first = true;
    for (const auto& [q, c] : coeffs) {
        out << (first ? "" : " + ") << c.str() << " * " << to_string(q);
        first = false;
    }
    out << "\n";
    return 0;
}

inline int cmd_sandwich(Options& o, std::ostream& out, std::ostream&) {
    const long n = need_n(o, "for sandwich");
    if (o.w1.empty() && o.w2.empty()) throw UsageError("--w1 and --w2 are required for sandwich");
    LinearCombination lc = read_lincomb(input(o, 0, 1), n);
    out << to_string(sandwich(lc, parse_dotted_word(o.w1), parse_dotted_word(o.w2))) << "\n";
    return 0;
}

inline int cmd_relations(Options& o, std::ostream& out, std::ostream&) {
    const auto& s = input(o, 0, 1);
    const RelationStyle style = relation_style(o);
    if (!o.w1.empty() || !o.w2.empty()) {
        Partition p = read_partition(s);
        auto sep = emit_separated_relation(p, parse_dotted_word(o.w1), parse_dotted_word(o.w2), o.n);
        if (sep.letter_form && style == RelationStyle::human) out << sep.str() << "\n";
        else out << render(sep.relation, style, naming_of(o)) << "\n";
        return 0;
    }
    Relation rel;
    if (o.linear) {
        LinearCombination lc = read_lincomb(s, need_n(o, "with --linear"));
        if (lc.is_zero()) throw Error(ErrorCode::bad_param, "the zero combination gives no relation");
        rel = emit_relation(lc, SymbolNames::for_partition(lc.terms().begin()->first));
    } else {
        rel = emit_relation(read_partition(s));
    }
    if (o.adjoint) rel = formal_adjoint(rel);
    out << render(rel, style, naming_of(o)) << "\n";
    return 0;
}

inline int cmd_presentation(Options& o, std::ostream& out, std::ostream&) {
    auto raw = gather_gens(o);
    raw.insert(raw.end(), o.inputs.begin(), o.inputs.end());
    auto gens = partitions_of(raw);
    const long n = need_n(o, "for presentation");
    out << emit_presentation(gens, pick_regime(o, gens), n, relation_style(o));
    return 0;
}

inline int cmd_products(Options& o, std::ostream& out, std::ostream&) {
    if (o.kind.empty()) throw UsageError("--kind is required for products");
    auto raw = gather_gens(o);
    raw.insert(raw.end(), o.inputs.begin(), o.inputs.end());
    for (const auto& g : product_generators(parse_product_kind(o.kind), partitions_of(raw), o.k))
        out << to_string(g) << "\n";
    return 0;
}

inline int cmd_selftest(Options& o, std::ostream& out, std::ostream&) {
    if (!o.inputs.empty()) throw UsageError("selftest takes no input");
    AcceptanceOptions ao;
    ao.seed = o.seed;
    ao.jobs = o.jobs;
    bool ok = true;
    run_acceptance(ao, [&](const CriterionResult& r) {
        out << r.line() << "\n" << std::flush;
        ok = ok && r.passed;
    });
    return ok ? 0 : 1;
}

inline const std::vector<Command>& commands() {
    static const std::vector<Command> cmds = {
        {"compose", "compose q after p (q's upper row meets p's lower row)", {"linear"}, "q p", cmd_compose},
        {"tensor", "horizontal concatenation", {"linear"}, "p q", cmd_tensor},
        {"involute", "reflect upside down", {"linear"}, "p", cmd_involute},
        {"rotate", "move one endpoint between rows", {"rotate"}, "p", cmd_rotate},
        {"tp", "dump the matrix of T_p", {"n"}, "p", cmd_tp},
        {"mordim", "rank of the span of T_p over given partitions of a signature", {"n", "gens", "sig"}, "",
         cmd_mordim},
        {"closure", "bounded category closure of generators", {"closure", "gens"}, "generators", cmd_closure},
        {"contains", "bounded membership test", {"closure", "gens"}, "p", cmd_contains},
        {"certify", "invariant certificate that p is outside the category", {"gens", "regime"}, "p", cmd_certify},
        {"functor-f", "apply F to an even-length extra-singleton partition", {}, "p", cmd_functor_f},
        {"preimage", "shortest F-preimage of a two-colored partition", {"preimage"}, "p", cmd_preimage},
        {"functor-u", "apply U to a combination of pair partitions", {"n", "sign", "umatrix"}, "p", cmd_functor_u},
        {"verify-u", "check T of the U-image against the conjugated T_p", {"n", "sign", "verify"}, "p",
         cmd_verify_u},
        {"degree", "sampled degree of reflection of a two-colored closure", {"closure", "gens"}, "generators",
         cmd_degree},
        {"dotted", "expand a dotted partition, or coordinates in the dotted basis", {"n", "dotted"}, "p",
         cmd_dotted},
        {"sandwich", "pi_w2 p pi_w1", {"n", "words"}, "p", cmd_sandwich},
        {"relations", "relation on the fundamental representation", {"n", "words", "relations", "linear"}, "p",
         cmd_relations},
        {"presentation", "relations of a generated category", {"n", "gens", "regime"}, "generators",
         cmd_presentation},
        {"products", "generators of a product with the dual of Z2", {"products", "gens"}, "base generators",
         cmd_products},
        {"selftest", "run the acceptance suite", {"selftest"}, "", cmd_selftest},
    };
    return cmds;
}

inline void attach(CLI::App* sub, const std::string& group, Options& o) {
    auto add_n = [&] {
        if (!sub->get_option_no_throw("--N"))
            sub->add_option("--N", o.n, "line dimension N")->check(CLI::Range(1L, 1L << 20));
    };
    auto add_regime = [&] {
        if (!sub->get_option_no_throw("--regime"))
            sub->add_option("--regime", o.regime, "plain, extra or two-colored (default: inferred)")
                ->check(CLI::IsMember({"plain", "extra", "two-colored"}));
    };
    auto add_jobs = [&] { sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256)); };
    if (group == "n") add_n();
    else if (group == "linear") {
        add_n();
        sub->add_flag("--linear", o.linear, "treat inputs as linear combinations");
    } else if (group == "rotate") {
        sub->add_option("--side", o.side, "left or right")->check(CLI::IsMember({"left", "right"}));
        sub->add_option("--dir", o.dir, "up or down")->check(CLI::IsMember({"up", "down"}));
    } else if (group == "gens") {
        sub->add_option("--gens", o.gens, "generator: P(...), @name[:k] or a family name")
            ->delimiter(',')
            ->expected(1)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        sub->add_option("--gens-file", o.gens_file, "file with one generator per line")->check(CLI::ExistingFile);
    } else if (group == "sig") {
        sub->add_option("--sig", o.sig, "signature, e.g. ';----' or 'ox;xo'");
    } else if (group == "regime") {
        add_regime();
    } else if (group == "closure") {
        add_n();
        add_regime();
        add_jobs();
        sub->add_flag("--linear", o.linear, "linear closure over Q(sqrt N)");
        sub->add_option("--points", o.points, "point bound P")->check(CLI::Range(1, 64));
        sub->add_option("--slack", o.slack, "extra points allowed in intermediate tensors")->check(CLI::Range(0, 32));
    } else if (group == "sign") {
        sub->add_option("--sign", o.sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
    } else if (group == "umatrix") {
        sub->add_flag("--matrix", o.matrix, "dump the matrix U instead");
    } else if (group == "verify") {
        sub->add_flag("--dotted", o.dotted, "use the dotted expansion of the partition");
    } else if (group == "preimage") {
        sub->add_flag("--normalize", o.normalize, "normal form of the F-fiber instead");
    } else if (group == "dotted") {
        sub->add_flag("--basis", o.basis, "coordinates of a combination in the dotted basis");
    } else if (group == "words") {
        sub->add_option("--w1", o.w1, "upper dotted word over o and s");
        sub->add_option("--w2", o.w2, "lower dotted word over o and s");
    } else if (group == "relations") {
        sub->add_option("--naming", o.naming, "canonical, trel or compact")
            ->check(CLI::IsMember({"canonical", "trel", "compact"}));
        sub->add_flag("--adjoint", o.adjoint, "formal adjoint of the relation");
    } else if (group == "products") {
        sub->add_option("--kind", o.kind, "free, tensor, trivial, times0, times2k, star_k or ctimes_k")
            ->check(CLI::IsMember({"free", "tensor", "trivial", "times0", "times2k", "star_k", "ctimes_k"}));
        sub->add_option("--k", o.k, "parameter k")->check(CLI::PositiveNumber);
    } else if (group == "selftest") {
        add_jobs();
        sub->add_option("--seed", o.seed, "seed for randomized checks");
        o.jobs = AcceptanceOptions{}.jobs;
    }
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partition categories: tensor maps, closures, functors and relations", "partcat"};
    app.require_subcommand(1);
    std::vector<std::pair<CLI::App*, const detail::Command*>> subs;
    std::vector<Options> per(detail::commands().size());
    for (std::size_t i = 0; i < detail::commands().size(); ++i) {
        const auto& c = detail::commands()[i];
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        Options& so = per[i];
        for (const auto& g : c.flags) detail::attach(sub, g, so);
        std::string fmt_help = c.name == "relations" || c.name == "presentation" ? "human, latex or machine"
                                                                                 : "human or machine";
        std::vector<std::string> fmts = {"human", "machine"};
        if (c.name == "relations" || c.name == "presentation") fmts.push_back("latex");
        sub->add_option("--format", so.format, fmt_help)->check(CLI::IsMember(fmts));
        if (!c.inputs.empty()) sub->add_option("inputs", so.inputs, c.inputs);
        subs.emplace_back(sub, &c);
    }

    std::vector<const char*> argv{"partcat"};
    for (const auto& a : args) argv.push_back(a.c_str());
    CLI::App* chosen = nullptr;
    auto synopsis = [&] { return chosen ? chosen->help() : app.help(); };
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        for (auto& [sub, c] : subs)
            if (sub->parsed()) chosen = sub;
        out << synopsis();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        for (auto& [sub, c] : subs)
            if (sub->parsed()) chosen = sub;
        err << "usage error: " << e.what() << "\n" << synopsis();
        return 2;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i].first->parsed()) continue;
        chosen = subs[i].first;
        try {
            return subs[i].second->run(per[i], out, err);
        } catch (const UsageError& e) {
            err << "usage error: " << e.what() << "\n" << synopsis();
            return 2;
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }
    err << synopsis();
    return 2;
}

}  // namespace partcat::cli
