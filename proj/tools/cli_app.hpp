#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "ciliate.hpp"

namespace ciliate::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParseError = 2,
    kNotLegal = 3,
    kNotRealistic = 4,
    kInvariant = 5,
};

inline constexpr int kDefaultKappaCap = 8;

/// Largest κ handled by exhaustive searches; CILIATE_KAPPA_CAP overrides it.
inline int kappa_cap_from_env() {
    const char* v = std::getenv("CILIATE_KAPPA_CAP");
    if (!v || !*v) return kDefaultKappaCap;
    char* end = nullptr;
    const long k = std::strtol(v, &end, 10);
    if (*end != '\0' || k < 2 || k > 20) throw parse_error("CILIATE_KAPPA_CAP must be an integer in 2..20");
    return static_cast<int>(k);
}

namespace detail {

inline std::string trim(std::string s) {
    const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

inline std::string slurp_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::istream& in;
    int kappa_cap = kDefaultKappaCap;

    int search_cap() const { return kappa_cap - 1; }

    /// "-" reads stdin, "@path" reads a file, anything else is literal.
    std::string source(const std::string& arg) const {
        if (arg == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        if (!arg.empty() && arg.front() == '@') return slurp_file(arg.substr(1));
        return arg;
    }

    /// Like source(), but a bare argument that does not look like JSON is a path.
    std::string json_source(const std::string& arg) const {
        const auto text = trim(source(arg));
        const bool literal = arg != "-" && (arg.empty() || arg.front() != '@');
        if (literal && !text.empty() && text.front() != '{') return slurp_file(text);
        return text;
    }
};

inline LegalString read_string(const Context& ctx, const std::string& arg) {
    return LegalString::parse(trim(ctx.source(arg)));
}

/// Either a pointer string or an overlap graph in JSON form.
struct GraphInput {
    OverlapGraph graph;
    std::optional<LegalString> string;
};

inline GraphInput read_graph_input(const Context& ctx, const std::string& arg) {
    const auto text = trim(ctx.source(arg));
    if (!text.empty() && text.front() == '{') return {parse_overlap_json(text), std::nullopt};
    auto u = LegalString::parse(text);
    return {overlap_graph(u), u};
}

inline bool input_is_realistic(const Context& ctx, const GraphInput& x) {
    if (x.string) return realistic_decode(*x.string).has_value();
    return is_realistic_overlap(x.graph, ctx.kappa_cap).has_value();
}

inline ordered_json members_json(const PointerSet& s) {
    auto j = ordered_json::array();
    for (int p : s.members()) j.push_back(p);
    return j;
}

inline std::string vertex_json(const ColouredGraph& g) {
    ordered_json j;
    j["vertices"] = ordered_json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        j["vertices"].push_back({{"id", g.name(static_cast<int>(v))}, {"label", g.labels[v]}});
    for (const char* colour : {"reality", "desire"}) {
        auto& edges = j[colour] = ordered_json::array();
        for (const Edge& e : std::string_view(colour) == "reality" ? g.reality : g.desire)
            edges.push_back({g.name(e.a), g.name(e.b)});
    }
    return j.dump();
}

inline std::string vertex_json(const LabelledGraph& g) {
    ordered_json j;
    j["vertices"] = ordered_json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        j["vertices"].push_back({{"id", g.name(static_cast<int>(v))}, {"label", g.labels[v]}});
    j["edges"] = ordered_json::array();
    for (const Edge& e : g.edges) j["edges"].push_back({g.name(e.a), g.name(e.b)});
    return j.dump();
}

inline std::string overlap_text(const OverlapGraph& g) {
    std::string out;
    for (int p : g.domain().members()) {
        out += std::to_string(p) + g.sign(p) + ":";
        for (int q : g.neighbours(p).members()) out += " " + std::to_string(q);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verbs
// ---------------------------------------------------------------------------

inline int cmd_validate(Context& ctx, const std::string& input, bool require_realistic, const std::string& format) {
    const auto u = read_string(ctx, input);
    const bool realistic = realistic_decode(u).has_value();
    if (format == "json") {
        ordered_json j;
        j["legal"] = true;
        j["realistic"] = realistic;
        j["domain"] = members_json(u.domain());
        j["positive"] = members_json(u.positive());
        ctx.out << j.dump() << '\n';
    } else {
        ctx.out << "legal\n" << (realistic ? "realistic" : "not realistic") << '\n';
    }
    return require_realistic && !realistic ? kNotRealistic : kOk;
}

inline int cmd_encode(Context& ctx, const std::string& input, const std::string& format) {
    const auto d = parse_arrangement(trim(ctx.source(input)));
    const auto u = pi_kappa(d);
    if (format == "json")
        ctx.out << ordered_json{{"arrangement", format_arrangement(d)}, {"string", format_pointer_string(u.letters())}}.dump()
                << '\n';
    else
        ctx.out << format_pointer_string(u.letters()) << '\n';
    return kOk;
}

inline int cmd_decode(Context& ctx, const std::string& input) {
    const auto d = realistic_decode(read_string(ctx, input));
    if (!d) {
        ctx.err << "not realistic\n";
        return kNotRealistic;
    }
    ctx.out << format_arrangement(*d) << '\n';
    return kOk;
}

inline int cmd_overlap(Context& ctx, const std::string& input, const std::string& format) {
    const auto g = overlap_graph(read_string(ctx, input));
    if (format == "dot")
        ctx.out << emit_dot(g);
    else if (format == "text")
        ctx.out << overlap_text(g);
    else
        ctx.out << emit_overlap_json(g) << '\n';
    return kOk;
}

inline int cmd_reduction_graph(Context& ctx, const std::string& input, const std::string& format) {
    const auto rg = reduction_graph(read_string(ctx, input));
    if (format == "json") {
        ctx.out << vertex_json(rg.graph()) << '\n';
    } else if (format == "text") {
        ctx.out << "vertices=" << rg.graph().vertex_count() << " reality=" << rg.reality_edges().size()
                << " desire=" << rg.desire_edges().size() << " components=" << component_count(rg)
                << " root_subgraphs=" << find_root_subgraphs(rg).size() << '\n';
    } else {
        ctx.out << emit_dot(rg);
    }
    return kOk;
}

inline int cmd_cps(Context& ctx, const std::string& input, const std::string& format) {
    const auto g = cps(reduction_graph(read_string(ctx, input)));
    if (format == "json")
        ctx.out << vertex_json(g) << '\n';
    else if (format == "dot")
        ctx.out << emit_dot(g);
    else
        ctx.out << canonical_labelled(g).to_string() << '\n';
    return kOk;
}

inline int cmd_direct(Context& ctx, const std::string& input, bool check_realism, const std::string& format) {
    const auto x = read_graph_input(ctx, input);
    if (check_realism && !input_is_realistic(ctx, x)) {
        ctx.err << "overlap graph is not realistic\n";
        return kNotRealistic;
    }
    const auto r = direct_reduction_graph(x.graph);
    if (format == "dot")
        ctx.out << emit_dot(r);
    else if (format == "text")
        ctx.out << canonical_labelled(r.graph).to_string() << '\n';
    else
        ctx.out << emit_direct_json(r) << '\n';
    return kOk;
}

/// A --direct argument holds either direct JSON ({"kappa":..}) or an
/// overlap graph ({"vertices":..}) whose direct graph is built here.
inline LabelledGraph read_direct_argument(const Context& ctx, const std::string& arg) {
    const auto text = ctx.json_source(arg);
    const auto j = ciliate::detail::parse_json_text(text);
    if (j.is_object() && j.contains("kappa")) return parse_direct_json(text).graph;
    return direct_reduction_graph(parse_overlap_json(text)).graph;
}

inline int cmd_iso_check(Context& ctx, const std::vector<std::string>& cps_inputs,
                         const std::vector<std::string>& direct_inputs, const std::string& format) {
    std::vector<LabelledGraph> graphs;
    for (const auto& s : cps_inputs) graphs.push_back(cps(reduction_graph(read_string(ctx, s))));
    for (const auto& s : direct_inputs) graphs.push_back(read_direct_argument(ctx, s));
    if (graphs.size() != 2) throw CLI::ValidationError("iso-check needs exactly two graphs (--cps / --direct)");
    const auto a = canonical_labelled(graphs[0]), b = canonical_labelled(graphs[1]);
    if (format == "json") {
        ctx.out << ordered_json{{"isomorphic", a == b}, {"left", a.to_string()}, {"right", b.to_string()}}.dump()
                << '\n';
    } else {
        ctx.out << (a == b ? "isomorphic" : "not isomorphic") << '\n';
    }
    return kOk;
}

inline int cmd_components(Context& ctx, const std::string& input, bool list, const std::string& format) {
    const auto rg = reduction_graph(read_string(ctx, input));
    const auto comps = components(rg);
    if (format == "json") {
        ordered_json j;
        j["count"] = comps.size();
        j["components"] = ordered_json::array();
        for (const auto& c : comps) {
            auto ids = ordered_json::array();
            for (int v : c) ids.push_back(rg.graph().name(v));
            j["components"].push_back(ids);
        }
        ctx.out << j.dump() << '\n';
        return kOk;
    }
    ctx.out << comps.size() << '\n';
    if (list)
        for (const auto& c : comps) {
            for (std::size_t i = 0; i < c.size(); ++i) ctx.out << (i ? " " : "") << rg.graph().name(c[i]);
            ctx.out << '\n';
        }
    return kOk;
}

inline std::string count_list(NegativeCountMask mask) {
    std::string out;
    for (int c : mask_members(mask)) out += (out.empty() ? "" : ",") + std::to_string(c);
    return "{" + out + "}";
}

inline int cmd_count_negative(Context& ctx, const std::string& input, bool verify) {
    const auto x = read_graph_input(ctx, input);
    int predicted = 0;
    NegativeCountMask observed = 0;
    if (x.string) {
        predicted = predicted_negative_rule_count(*x.string);
        if (verify) observed = string_negative_counts(*x.string, RuleSet::all(), ctx.search_cap());
    } else {
        if (!is_realistic_overlap(x.graph, ctx.kappa_cap)) {
            ctx.err << "the graph-side count needs a realistic overlap graph\n";
            return kNotRealistic;
        }
        predicted = predicted_negative_rule_count(x.graph);
        if (verify) observed = graph_negative_counts(x.graph, RuleSet::all(), ctx.search_cap());
    }
    ctx.out << predicted << '\n';
    if (!verify) return kOk;
    ctx.out << "observed=" << count_list(observed) << '\n';
    if (observed != NegativeCountMask{1} << predicted) {
        ctx.err << "invariant violated: successful reductions use " << count_list(observed)
                << " negative rules, predicted " << predicted << '\n';
        return kInvariant;
    }
    return kOk;
}

inline int cmd_classify(Context& ctx, const std::string& input, const std::string& method, const std::string& format) {
    const auto x = read_graph_input(ctx, input);
    const bool closed = method != "search", search = method != "closed";
    if (closed && !input_is_realistic(ctx, x)) {
        ctx.err << "the closed-form classifier needs a realistic overlap graph (try --method search)\n";
        return kNotRealistic;
    }
    auto rows = ordered_json::array();
    bool disagreement = false;
    for (RuleSet s : all_rule_sets()) {
        const bool a = closed ? successful_in_closed_form(x.graph, s) : false;
        const bool b = search ? successful_in(x.graph, s, ctx.search_cap()) : a;
        if (closed && search && a != b) disagreement = true;
        const bool answer = closed ? a : b;
        if (format == "json")
            rows.push_back({{"S", s.to_string('G')}, {"successful", answer}});
        else
            ctx.out << s.to_string('G') << ' ' << (answer ? "yes" : "no") << (a != b ? " (search disagrees)" : "")
                    << '\n';
    }
    if (format == "json") ctx.out << rows.dump() << '\n';
    if (disagreement) {
        ctx.err << "invariant violated: closed form and exhaustive search disagree\n";
        return kInvariant;
    }
    return kOk;
}

inline int cmd_check_realism(Context& ctx, const std::string& input) {
    const auto x = read_graph_input(ctx, input);
    const auto d = x.string ? realistic_decode(*x.string) : is_realistic_overlap(x.graph, ctx.kappa_cap);
    if (!d) {
        ctx.out << "not realistic\n";
        return kNotRealistic;
    }
    ctx.out << "realistic\n" << format_arrangement(*d) << '\n';
    return kOk;
}

inline int cmd_random(Context& ctx, std::uint64_t seed, int kappa, int count, const std::string& format) {
    if (kappa < 2) throw CLI::ValidationError("--kappa must be >= 2");
    auto rows = ordered_json::array();
    for (int i = 0; i < count; ++i) {
        Rng rng = trial_rng(seed, i);
        const auto d = random_arrangement(rng, kappa);
        const auto u = format_pointer_string(pi_kappa(d).letters());
        if (format == "json")
            rows.push_back({{"arrangement", format_arrangement(d)}, {"string", u}});
        else
            ctx.out << format_arrangement(d) << '\t' << u << '\n';
    }
    if (format == "json") ctx.out << rows.dump() << '\n';
    return kOk;
}

inline int cmd_crossval(Context& ctx, std::uint64_t seed, int trials, int kappa) {
    CrossvalOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.max_kappa = kappa;
    opt.string_cap = opt.graph_cap = ctx.search_cap();
    int failures = 0;
    for (const auto& s : crossval(opt)) {
        ctx.out << s.to_string() << '\n';
        failures += s.failures;
    }
    return failures ? kInvariant : kOk;
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    detail::Context ctx{out, err, in};
    CLI::App app{"Pointer strings, overlap graphs and reduction graphs of gene assembly", "ciliate"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every verb");

    std::string input, method = "closed";
    std::deque<std::string> formats;  // one slot per verb, stable addresses
    bool flag = false;
    std::vector<std::string> cps_inputs, direct_inputs;
    std::uint64_t seed = 0;
    int kappa = 6, trials = 100, count = 1;
    int code = kOk;

    auto add_input = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", input, what)->required();
    };
    auto add_format = [&](CLI::App* sub, std::vector<std::string> choices) -> const std::string& {
        auto& format = formats.emplace_back(choices.front());
        sub->add_option("--format,-f", format, "Output format (default " + choices.front() + ")")
            ->check(CLI::IsMember(choices));
        return format;
    };
    const char* kStringHelp = "Pointer string, '-' for stdin, '@file' to read a file";
    const char* kGraphHelp = "Pointer string or overlap-graph JSON; '-' for stdin, '@file' to read a file";

    auto* validate = app.add_subcommand("validate", "Check that a pointer string is legal (and realistic)");
    add_input(validate, kStringHelp);
    validate->add_flag("--require-realistic", flag, "Exit 4 unless the string is realistic");
    const auto& validate_format = add_format(validate, {"text", "json"});
    validate->callback([&] { code = detail::cmd_validate(ctx, input, flag, validate_format); });

    auto* encode = app.add_subcommand("encode", "Encode a micronuclear arrangement as its pointer string");
    add_input(encode, "Arrangement such as \"M3 -M1 M2\"");
    const auto& encode_format = add_format(encode, {"text", "json"});
    encode->callback([&] { code = detail::cmd_encode(ctx, input, encode_format); });

    auto* decode = app.add_subcommand("decode", "Recover the arrangement of a realistic string");
    add_input(decode, kStringHelp);
    decode->callback([&] { code = detail::cmd_decode(ctx, input); });

    auto* overlap = app.add_subcommand("overlap", "Overlap graph of a legal string");
    add_input(overlap, kStringHelp);
    const auto& overlap_format = add_format(overlap, {"json", "dot", "text"});
    overlap->callback([&] { code = detail::cmd_overlap(ctx, input, overlap_format); });

    auto* rgraph = app.add_subcommand("reduction-graph", "Reduction graph of a legal string");
    add_input(rgraph, kStringHelp);
    const auto& rgraph_format = add_format(rgraph, {"dot", "json", "text"});
    rgraph->callback([&] { code = detail::cmd_reduction_graph(ctx, input, rgraph_format); });

    auto* cps_cmd = app.add_subcommand("cps", "Compressed reduction graph (canonical form by default)");
    add_input(cps_cmd, kStringHelp);
    const auto& cps_cmd_format = add_format(cps_cmd, {"text", "json", "dot"});
    cps_cmd->callback([&] { code = detail::cmd_cps(ctx, input, cps_cmd_format); });

    auto* direct = app.add_subcommand("direct", "Reduction graph built directly from an overlap graph");
    add_input(direct, kGraphHelp);
    direct->add_flag("--check-realism", flag, "Exit 4 unless the overlap graph is realistic");
    const auto& direct_format = add_format(direct, {"json", "dot", "text"});
    direct->callback([&] { code = detail::cmd_direct(ctx, input, flag, direct_format); });

    auto* iso = app.add_subcommand("iso-check", "Compare two graphs up to label-preserving isomorphism");
    iso->add_option("--cps", cps_inputs, "Pointer string whose compressed reduction graph is compared");
    iso->add_option("--direct", direct_inputs, "Direct-graph or overlap-graph JSON (inline or a file path)");
    const auto& iso_format = add_format(iso, {"text", "json"});
    iso->callback([&] { code = detail::cmd_iso_check(ctx, cps_inputs, direct_inputs, iso_format); });

    auto* comps = app.add_subcommand("components", "Number of connected components of the reduction graph");
    add_input(comps, kStringHelp);
    comps->add_flag("--list", flag, "Also print the vertices of each component");
    const auto& comps_format = add_format(comps, {"text", "json"});
    comps->callback([&] { code = detail::cmd_components(ctx, input, flag, comps_format); });

    auto* negative = app.add_subcommand("count-negative", "Negative rules used by every successful reduction");
    add_input(negative, kGraphHelp);
    negative->add_flag("--verify", flag, "Confirm by exhaustive search; exit 5 on a mismatch");
    negative->callback([&] { code = detail::cmd_count_negative(ctx, input, flag); });

    auto* classify = app.add_subcommand("classify", "Successfulness of the overlap graph in all 8 rule sets");
    add_input(classify, kGraphHelp);
    classify->add_option("--method", method, "closed, search, or both (exit 5 on disagreement)")
        ->check(CLI::IsMember({"closed", "search", "both"}));
    const auto& classify_format = add_format(classify, {"text", "json"});
    classify->callback([&] { code = detail::cmd_classify(ctx, input, method, classify_format); });

    auto* realism = app.add_subcommand("check-realism", "Find an arrangement realising a string or overlap graph");
    add_input(realism, kGraphHelp);
    realism->callback([&] { code = detail::cmd_check_realism(ctx, input); });

    auto* random = app.add_subcommand("random", "Seeded random micronuclear arrangements");
    random->add_option("--seed", seed, "RNG seed")->required();
    random->add_option("--kappa,-k", kappa, "Number of MDSs (default 6)")->check(CLI::Range(2, 255));
    random->add_option("--count,-n", count, "How many arrangements (default 1)")->check(CLI::NonNegativeNumber);
    const auto& random_format = add_format(random, {"text", "json"});
    random->callback([&] { code = detail::cmd_random(ctx, seed, kappa, count, random_format); });

    auto* xval = app.add_subcommand("crossval", "Randomized check of the structural theorems");
    xval->add_option("--seed", seed, "RNG seed")->required();
    xval->add_option("--trials,-t", trials, "Number of random arrangements (default 100)")
        ->check(CLI::NonNegativeNumber);
    xval->add_option("--kappa,-k", kappa, "Largest kappa sampled (default 6)")->check(CLI::Range(2, 64));
    xval->callback([&] { code = detail::cmd_crossval(ctx, seed, trials, kappa); });

    try {
        ctx.kappa_cap = kappa_cap_from_env();
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        return code;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseError;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const not_legal_error& e) {
        err << "not legal: " << e.what() << '\n';
        return kNotLegal;
    } catch (const not_realistic_error& e) {
        err << "not realistic: " << e.what() << '\n';
        return kNotRealistic;
    } catch (const invariant_error& e) {
        err << "invariant violated: " << e.what() << '\n';
        return kInvariant;
    } catch (const cap_exceeded_error& e) {
        err << "cap exceeded: " << e.what() << " (raise CILIATE_KAPPA_CAP)\n";
        return kFailure;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kParseError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace ciliate::cli
