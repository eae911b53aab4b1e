#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "lamv/classify.hpp"
#include "lamv/golden.hpp"
#include "lamv/labelling.hpp"
#include "lamv/order.hpp"
#include "lamv/solvability.hpp"
#include "lamv/srs.hpp"
#include "lamv/strategy.hpp"
#include "lamv/theory_v.hpp"

namespace lamv::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Term parse_arg(const std::string& what, const std::string& text) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw UsageError(what + ": " + e.what());
    }
}

Context context_file(const std::string& path) {
    try {
        return parse_context(read_file(path));
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Strategy strategy_arg(const std::string& s) {
    auto st = strategy_from_string(s);
    if (!st) throw UsageError("unknown strategy " + s);
    return *st;
}

Calculus calculus_arg(const std::string& s) {
    if (s == "K") return Calculus::K;
    if (s == "V") return Calculus::V;
    throw UsageError("calculus must be K or V");
}

struct Options {
    std::size_t fuel = 10000;
    std::string format = "text";
    std::string pool_file;
    std::string annotate_file;
    bool fold = false;

    // subcommand arguments
    std::string term, term_b, target, context, strategy = "vno", kind = "ch", calculus = "V", order, xs, file;
    bool trace = false, explain = false, omega_yk = false, function_context = false;
    std::size_t max_operands = 3, probe_fuel = 500;
};

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    bool json_mode() const { return o_.format == "json"; }
    std::string show(const Term& t) const { return o_.fold ? render_folded(t) : render(t); }

    void emit(const json& j) { out_ << j.dump() << "\n"; }

    std::vector<Term> pool() const { return o_.pool_file.empty() ? default_pool() : parse_pool(read_file(o_.pool_file)); }

    std::vector<Annotation> annotations() const {
        return o_.annotate_file.empty() ? std::vector<Annotation>{} : parse_annotations(read_file(o_.annotate_file));
    }

    OmegaChoice choice() const { return o_.omega_yk ? OmegaChoice::YK : OmegaChoice::Canonical; }

    UnsolvabilityOracle oracle() const {
        OracleConfig cfg;
        cfg.pool = pool();
        return make_cycle_oracle(cfg, annotations());
    }

    int parse_cmd() {
        Term t = parse_arg("term", o_.term);
        if (json_mode())
            emit({{"term", show(t)}, {"closed", is_closed(t)}, {"size", t.size()}});
        else
            out_ << show(t) << "\n";
        return kOk;
    }

    int classify_cmd() {
        Term t = parse_arg("term", o_.term);
        auto cs = classify(t);
        if (json_mode()) {
            json arr = json::array();
            for (auto c : cs) arr.push_back(to_string(c));
            emit({{"term", show(t)}, {"classes", arr}});
        } else {
            for (auto c : cs) out_ << to_string(c) << "\n";
        }
        return kOk;
    }

    int reduce_cmd() {
        Term t = parse_arg("term", o_.term);
        auto r = reduce(t, strategy_arg(o_.strategy), o_.fuel);
        bool lines = o_.trace || json_mode();
        for (std::size_t k = 0; k < r.steps.size(); ++k) {
            auto& s = r.steps[k];
            if (o_.trace)
                emit({{"step", k + 1}, {"rule", to_string(s.rule)}, {"path", s.path.str()}, {"term", show(s.term)}});
            else if (!lines)
                out_ << k + 1 << " " << to_string(s.rule) << " " << (s.path.is_root() ? "." : s.path.str()) << " "
                     << show(s.term) << "\n";
        }
        if (lines) {
            json j{{"outcome", to_string(r.outcome)}, {"term", show(r.final_term())}};
            if (r.outcome == Outcome::CycleDetected) j["cycle_index"] = r.cycle_index;
            emit(j);
        } else {
            out_ << "outcome: " << to_string(r.outcome) << "\n";
            if (r.outcome == Outcome::CycleDetected) out_ << "revisits: " << r.cycle_index << "\n";
            out_ << "term: " << show(r.final_term()) << "\n";
        }
        return r.outcome == Outcome::FuelExhausted ? kUnknown : kOk;
    }

    int order_cmd() {
        Term t = parse_arg("term", o_.term);
        auto v = order(t, o_.fuel);
        if (json_mode())
            emit({{"term", show(t)}, {"verdict", v.str()}, {"exact", v.exact()}, {"steps", v.steps}});
        else
            out_ << v.str() << "\n";
        return v.exact() ? kOk : kUnknown;
    }

    int certify_cmd() {
        Term t = parse_arg("term", o_.term);
        auto c = certify_unsolvable(t, o_.fuel, pool(), {o_.max_operands, o_.probe_fuel});
        if (json_mode()) {
            json j{{"term", show(t)}, {"verdict", c.str()}};
            if (c.context) j["context"] = render(*c.context);
            if (c.normal_form) j["normal_form"] = show(*c.normal_form);
            emit(j);
        } else {
            out_ << c.str() << "\n";
            if (c.context) out_ << "context: " << render(*c.context) << "\n";
            if (c.normal_form) out_ << "normal form: " << show(*c.normal_form) << "\n";
        }
        return c.kind == Certification::Kind::Unknown ? kUnknown : kOk;
    }

    int underline_cmd() {
        Term t = parse_arg("term", o_.term);
        Underline kind;
        if (o_.kind == "bv") kind = Underline::bv;
        else if (o_.kind == "ch") kind = Underline::ch;
        else if (o_.kind == "rc") kind = Underline::rc;
        else if (o_.kind == "bn") kind = Underline::bn;
        else if (o_.kind == "he") kind = Underline::he;
        else if (o_.kind == "hs") kind = Underline::hs;
        else throw UsageError("unknown underlining " + o_.kind);
        auto marks = underline(t, kind);
        auto rs = underlined_redexes(t, kind);
        json jm = json::array(), jr = json::array();
        for (auto& p : marks) jm.push_back(p.str());
        for (auto& p : rs) jr.push_back(p.str());
        if (json_mode()) {
            emit({{"term", show(t)}, {"underlined", jm}, {"redexes", jr}});
        } else {
            out_ << "underlined:";
            for (auto& p : marks) out_ << " " << (p.is_root() ? "." : p.str());
            out_ << "\nredexes:";
            for (auto& p : rs) out_ << " " << (p.is_root() ? "." : p.str());
            out_ << "\n";
        }
        return kOk;
    }

    int active_cmd() {
        Term t = parse_arg("term", o_.term);
        auto ac = active_components(t, calculus_arg(o_.calculus));
        json arr = json::array();
        for (auto& [p, s] : ac) {
            if (json_mode())
                arr.push_back({{"path", p.str()}, {"term", show(s)}});
            else
                out_ << (p.is_root() ? "." : p.str()) << " " << show(s) << "\n";
        }
        if (json_mode()) emit({{"term", show(t)}, {"components", arr}});
        return kOk;
    }

    int solve_cmd() {
        Term m = parse_arg("term", o_.term);
        Term x = parse_arg("target", o_.target);
        Calculus calc = calculus_arg(o_.calculus);
        if (o_.function_context) {
            auto f = function_context_for_target(m, x, o_.fuel);
            if (!f) {
                out_ << "no normal form within fuel\n";
                return kUnknown;
            }
            if (json_mode())
                emit({{"context", render(*f)}});
            else
                out_ << render(*f) << "\n";
            return kOk;
        }
        std::vector<Term> ops;
        try {
            ops = solve_to_target(m, x, calc, o_.fuel);
        } catch (const NoNormalForm& e) {
            out_ << e.what() << "\n";
            return kUnknown;
        }
        json arr = json::array();
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (json_mode())
                arr.push_back(show(ops[i]));
            else
                out_ << "X" << i + 1 << " = " << show(ops[i]) << "\n";
        }
        if (json_mode()) emit({{"operands", arr}});
        return kOk;
    }

    int close_context_cmd() {
        Context f = context_file(o_.context);
        Term m = parse_arg("term", o_.term);
        Term n = parse_arg("target", o_.target);
        auto h = head_context_from_function_context(f, m, n, o_.fuel);
        json counts = h.operand_counts;
        if (json_mode()) {
            emit({{"context", render(h.context)},
                  {"normal_form", show(h.closed_normal_form)},
                  {"free_of_target", h.free_of_target},
                  {"operand_counts", counts},
                  {"extra_vars", h.extra_vars}});
        } else {
            out_ << "context: " << render(h.context) << "\n";
            out_ << "normal form: " << show(h.closed_normal_form) << "\n";
            out_ << "operand counts: " << counts.dump() << "\n";
        }
        return kOk;
    }

    int label_trace_cmd() {
        Context c = context_file(o_.context);
        Term m = parse_arg("mark", o_.term);
        TraceReport rep;
        try {
            rep = trace_report(c, m, strategy_arg(o_.strategy), o_.fuel, default_order_oracle(o_.fuel));
        } catch (const std::invalid_argument& e) {
            out_ << e.what() << "\n";
            return kUnknown;
        }
        auto& tr = rep.trace;
        for (std::size_t k = 0; k < tr.terms.size(); ++k) {
            std::string path = k == 0 ? "" : tr.paths[k - 1].str();
            if (json_mode()) {
                json j{{"step", k}, {"term", render(tr.terms[k])}};
                if (k > 0) j["path"] = path;
                emit(j);
            } else {
                out_ << k << " " << (k == 0 ? "-" : path.empty() ? "." : path) << " " << render(tr.terms[k]) << "\n";
            }
        }
        if (json_mode()) {
            json vs = json::array();
            for (auto& v : rep.violations)
                vs.push_back({{"step", v.step}, {"path", v.path.str()}, {"count", v.count}, {"reason", v.reason}});
            emit({{"outcome", to_string(tr.outcome)},
                  {"order", rep.n0.str()},
                  {"max_count", rep.max_count},
                  {"checks", rep.checks},
                  {"unverified", rep.unverified},
                  {"violations", vs}});
        } else {
            out_ << "outcome: " << to_string(tr.outcome) << "\n";
            out_ << "order: " << rep.n0.str() << "\n";
            out_ << "max count: " << (rep.any_count ? std::to_string(rep.max_count) : "none") << "\n";
            out_ << "checks: " << rep.checks << ", unverified: " << rep.unverified << "\n";
            for (auto& v : rep.violations)
                out_ << "violation at step " << v.step << " " << v.path.str() << ": " << v.reason << "\n";
            out_ << "invariant: " << (rep.holds() ? "holds" : "violated") << "\n";
        }
        if (!rep.holds()) return kNegative;
        return rep.unverified ? kUnknown : kOk;
    }

    int genericity_cmd() {
        Context c = context_file(o_.context);
        Term m = parse_arg("term", o_.term);
        auto n0 = parse_ordinal(o_.order);
        if (!n0) throw UsageError("order must be a number or omega");
        std::vector<Term> xs;
        try {
            xs = parse_sequence(read_file(o_.xs));
        } catch (const ParseError& e) {
            throw UsageError(o_.xs + ": " + e.what());
        }
        auto rep = genericity_experiment(c, m, *n0, xs, calculus_arg(o_.calculus), o_.fuel);
        if (!rep.applicable) {
            if (json_mode())
                emit({{"applicable", false}});
            else
                out_ << "inapplicable: the plugged term has no normal form within fuel\n";
            return kUnknown;
        }
        json rows = json::array();
        for (auto& r : rep.rows) {
            if (json_mode())
                rows.push_back({{"x", show(r.x)}, {"order", r.order.str()}, {"verdict", to_string(r.verdict)}});
            else
                out_ << show(r.x) << " | " << r.order.str() << " | " << to_string(r.verdict) << "\n";
        }
        if (json_mode())
            emit({{"applicable", true}, {"normal_form", show(*rep.normal_form)}, {"rows", rows}});
        else
            out_ << "normal form: " << show(*rep.normal_form) << "\n";
        if (rep.violated()) return kNegative;
        return rep.unverified() ? kUnknown : kOk;
    }

    int omega_nf_cmd() {
        Term t = parse_arg("term", o_.term);
        auto n = omega_nf(t, oracle(), choice());
        if (json_mode()) {
            json j{{"term", show(t)}};
            j["omega_nf"] = n ? json(show(*n)) : json(nullptr);
            emit(j);
        } else {
            out_ << (n ? show(*n) : std::string("unknown")) << "\n";
        }
        return n ? kOk : kUnknown;
    }

    int vtheory_eq_cmd() {
        Term a = parse_arg("first term", o_.term);
        Term b = parse_arg("second term", o_.term_b);
        auto v = v_theory_equal(a, b, oracle(), o_.fuel, choice());
        if (json_mode())
            emit({{"verdict", to_string(v.kind)}, {"evidence", v.evidence}});
        else
            out_ << to_string(v.kind) << "\n" << v.evidence << "\n";
        switch (v.kind) {
            case VEquality::Kind::Provable: return kOk;
            case VEquality::Kind::Refuted: return kNegative;
            default: return kUnknown;
        }
    }

    int srs_check_cmd() {
        std::vector<Term> seq;
        try {
            seq = parse_sequence(read_file(o_.file));
        } catch (const ParseError& e) {
            throw UsageError(o_.file + ": " + e.what());
        }
        if (seq.empty()) throw UsageError(o_.file + " holds no terms");
        auto r = is_standard_sequence(seq);
        std::string verdict = r.standard() ? "standard"
                              : r.kind == SrsResult::Kind::IllegalSequence ? "illegal"
                                                                           : "not standard";
        if (json_mode()) {
            json j{{"verdict", verdict}};
            if (r.kind == SrsResult::Kind::IllegalSequence) j["illegal_at"] = r.illegal_at;
            if (o_.explain) j["explanation"] = r.derivation ? render(*r.derivation) : r.explanation;
            emit(j);
        } else {
            out_ << verdict;
            if (r.kind == SrsResult::Kind::IllegalSequence)
                out_ << ": term " << r.illegal_at << " does not βV-step to term " << r.illegal_at + 1;
            out_ << "\n";
            if (o_.explain) out_ << (r.derivation ? render(*r.derivation) : r.explanation) << "\n";
        }
        return r.standard() ? kOk : kNegative;
    }

    int paper_suite_cmd() {
        auto cases = run_golden_suite();
        std::size_t failed = 0;
        for (auto& g : cases) {
            failed += !g.pass;
            if (json_mode())
                emit({{"case", g.name}, {"pass", g.pass}, {"detail", g.detail}});
            else
                out_ << (g.pass ? "[PASS] " : "[FAIL] ") << g.name << (g.pass ? "" : ": " + g.detail) << "\n";
        }
        if (!json_mode()) out_ << cases.size() - failed << "/" << cases.size() << " golden cases pass\n";
        return failed ? kNegative : kOk;
    }

private:
    const Options& o_;
    std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"lambda-value calculus workbench", "lamv"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    if (const char* env = std::getenv("LAMV_FUEL")) {
        std::string_view text(env);
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), o.fuel);
        if (ec != std::errc() || end != text.data() + text.size() || o.fuel == 0) {
            err << "error: LAMV_FUEL must be a positive integer\n";
            return kUsage;
        }
    }
    app.add_option("--fuel", o.fuel, "reduction steps allowed (LAMV_FUEL)")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "output mode")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--pool", o.pool_file, "operand pool file, one term per line");
    app.add_option("--annotate", o.annotate_file, "trusted unsolvability annotations, '<term> : <order>' per line");
    app.add_flag("--fold", o.fold, "print closed combinators by name");

    Runner runner(o, out);
    std::function<int()> action;
    auto sub = [&](const char* name, const char* about, int (Runner::*fn)()) {
        auto* s = app.add_subcommand(name, about);
        s->callback([&action, &runner, fn] { action = [&runner, fn] { return (runner.*fn)(); }; });
        return s;
    };
    auto term = [&](CLI::App* s) { s->add_option("term", o.term, "lambda term")->required(); };
    const auto strategies = CLI::IsMember({"cbn", "head", "no", "cbv", "chest", "ribcage", "vno", "gamma_p"});

    term(sub("parse", "parse and print a term", &Runner::parse_cmd));
    term(sub("classify", "list the term classes, one per line", &Runner::classify_cmd));

    auto* red = sub("reduce", "reduce under a strategy", &Runner::reduce_cmd);
    red->add_option("--strategy", o.strategy)->required()->check(strategies);
    red->add_flag("--trace", o.trace, "one JSON object per step");
    term(red);

    term(sub("order", "order of a term", &Runner::order_cmd));

    auto* cert = sub("certify", "solvable witness or unsolvability certificate", &Runner::certify_cmd);
    cert->add_option("--max-operands", o.max_operands)->check(CLI::NonNegativeNumber);
    cert->add_option("--probe-fuel", o.probe_fuel)->check(CLI::PositiveNumber);
    term(cert);

    auto* und = sub("underline", "underlined positions and redexes", &Runner::underline_cmd);
    und->add_option("--kind", o.kind)->check(CLI::IsMember({"bv", "ch", "rc", "bn", "he", "hs"}));
    term(und);

    auto* act = sub("active", "active components", &Runner::active_cmd);
    act->add_option("--calculus", o.calculus)->check(CLI::IsMember({"K", "V"}));
    term(act);

    auto* sol = sub("solve", "operands or function context reaching a target", &Runner::solve_cmd);
    sol->add_option("--calculus", o.calculus)->check(CLI::IsMember({"K", "V"}));
    sol->add_option("--target", o.target)->required();
    sol->add_flag("--function-context", o.function_context, "print a function context instead of operands");
    term(sol);

    auto* cc = sub("close-context", "head context from a function context", &Runner::close_context_cmd);
    cc->add_option("--context", o.context, "file holding the function context")->required();
    cc->add_option("--term", o.term)->required();
    cc->add_option("--target", o.target)->required();

    auto* lt = sub("label-trace", "labelled reduction with the count invariant", &Runner::label_trace_cmd);
    lt->add_option("--context", o.context, "file holding the context")->required();
    lt->add_option("--mark", o.term, "term placed in the hole with count 0")->required();
    lt->add_option("--strategy", o.strategy)->check(strategies);

    auto* gen = sub("genericity", "partial genericity experiment", &Runner::genericity_cmd);
    gen->add_option("--context", o.context, "file holding the context")->required();
    gen->add_option("--term", o.term)->required();
    gen->add_option("--order", o.order)->required();
    gen->add_option("--xs", o.xs, "file with one replacement term per line")->required();
    gen->add_option("--calculus", o.calculus)->check(CLI::IsMember({"K", "V"}));

    auto* onf = sub("omega-nf", "replace unsolvable subterms by omega terms", &Runner::omega_nf_cmd);
    onf->add_flag("--omega-yk", o.omega_yk, "use Y K as the omega-order representative");
    term(onf);

    auto* veq = sub("vtheory-eq", "equality in the theory V", &Runner::vtheory_eq_cmd);
    veq->add_flag("--omega-yk", o.omega_yk, "use Y K as the omega-order representative");
    veq->add_option("first", o.term)->required();
    veq->add_option("second", o.term_b)->required();

    auto* srs = sub("srs-check", "standardness of a reduction sequence", &Runner::srs_check_cmd);
    srs->add_flag("--explain", o.explain, "print the derivation or the failure frontier");
    srs->add_option("file", o.file, "one term per line")->required();

    sub("paper-suite", "run every golden case", &Runner::paper_suite_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        auto subs = app.get_subcommands();
        err << "error: " << e.what() << "\n" << (subs.empty() ? app.help() : subs.front()->help());
        return kUsage;
    }

    auto usage = [&](const std::exception& e) {
        err << "error: " << e.what() << "\n" << app.get_subcommands().front()->help();
        return kUsage;
    };
    try {
        return action();
    } catch (const UsageError& e) {
        return usage(e);
    } catch (const ParseError& e) {
        return usage(e);
    } catch (const std::invalid_argument& e) {
        return usage(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace lamv::cli
