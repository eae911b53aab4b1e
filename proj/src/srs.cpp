#include "lamv/srs.hpp"

#include <map>
#include <sstream>

#include "lamv/classify.hpp"
#include "lamv/strategy.hpp"

namespace lamv {

std::string to_string(SrsDerivation::Clause c) {
    switch (c) {
        case SrsDerivation::Clause::Variable: return "variable";
        case SrsDerivation::Clause::CbvPrefix: return "cbv-prefix";
        case SrsDerivation::Clause::Lambda: return "lambda";
        case SrsDerivation::Clause::Application: return "application";
    }
    return "?";
}

bool is_betav_step(const Term& a, const Term& b) {
    for (const auto& p : redexes(a, Calculus::V))
        if (alpha_eq(contract(a, p, Calculus::V), b)) return true;
    return false;
}

std::vector<Term> parse_sequence(std::string_view text) {
    std::vector<Term> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == ';') continue;
        out.push_back(parse(line));
    }
    return out;
}

namespace {

using Seq = std::vector<Term>;

class Decider {
public:
    std::optional<SrsDerivation> decide(const Seq& seq) {
        std::string key;
        for (const auto& t : seq) key += alpha_key(t) + "|";
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto r = compute(seq);
        memo_.emplace(key, r);
        return r;
    }

    // Why no clause applies to seq, one line per clause.
    std::string explain(const Seq& seq) {
        std::ostringstream os;
        if (seq.size() == 1 && seq[0].is_var()) return "variable";
        if (seq.size() >= 2) {
            auto s = step(seq[0], Strategy::cbv);
            if (!s) {
                os << "cbv-prefix: first term has no call-by-value redex\n";
            } else if (!alpha_eq(s->term, seq[1])) {
                os << "cbv-prefix: first step is not the call-by-value step (which contracts at '" << s->path.str()
                   << "')\n";
            } else {
                os << "cbv-prefix: remaining sequence is not standard\n";
            }
        } else {
            os << "cbv-prefix: needs at least two terms\n";
        }
        bool all_abs = true, all_app = true;
        for (const auto& t : seq) {
            all_abs = all_abs && t.is_abs();
            all_app = all_app && t.is_app();
        }
        if (!all_abs) {
            os << "lambda: not every term is an abstraction\n";
        } else {
            os << "lambda: bodies do not form a standard sequence\n";
        }
        if (!all_app) {
            os << "application: not every term is an application\n";
        } else {
            bool any_split = false;
            for (std::size_t s = 0; s < seq.size(); ++s) {
                if (!alpha_eq(seq[s].arg(), seq[0].arg())) break;
                bool ops_fixed = true;
                for (std::size_t i = s; i < seq.size(); ++i) ops_fixed = ops_fixed && alpha_eq(seq[i].fun(), seq[s].fun());
                if (!ops_fixed) continue;
                any_split = true;
                os << "application: split at " << s << " fails (" << (decide(operators(seq, s)) ? "" : "operators ")
                   << (decide(operands(seq, s)) ? "" : "operands") << ")\n";
            }
            if (!any_split)
                os << "application: no split where the operand stays fixed and then the operator stays fixed\n";
        }
        return os.str();
    }

    static Seq operators(const Seq& seq, std::size_t s) {
        Seq out;
        for (std::size_t i = 0; i <= s; ++i) out.push_back(seq[i].fun());
        return out;
    }

    static Seq operands(const Seq& seq, std::size_t s) {
        Seq out;
        for (std::size_t i = s; i < seq.size(); ++i) out.push_back(seq[i].arg());
        return out;
    }

private:
    std::map<std::string, std::optional<SrsDerivation>> memo_;

    std::optional<SrsDerivation> compute(const Seq& seq) {
        SrsDerivation d;
        d.sequence = seq;
        if (seq.size() == 1 && seq[0].is_var()) {
            d.clause = SrsDerivation::Clause::Variable;
            return d;
        }
        if (seq.size() >= 2) {
            auto s = step(seq[0], Strategy::cbv);
            if (s && alpha_eq(s->term, seq[1])) {
                if (auto rest = decide(Seq(seq.begin() + 1, seq.end()))) {
                    d.clause = SrsDerivation::Clause::CbvPrefix;
                    d.premises.push_back(*rest);
                    return d;
                }
            }
        }
        bool all_abs = true, all_app = true;
        for (const auto& t : seq) {
            all_abs = all_abs && t.is_abs();
            all_app = all_app && t.is_app();
        }
        if (all_abs) {
            std::string x = seq[0].name();
            bool shared = true;
            for (const auto& t : seq) shared = shared && (t.name() == x || !occurs_free(x, t.body()));
            if (!shared) {
                std::set<std::string> avoid;
                for (const auto& t : seq) {
                    auto fv = free_vars(t.body());
                    avoid.insert(fv.begin(), fv.end());
                }
                x = fresh_name(x, avoid);
            }
            Seq bodies;
            for (const auto& t : seq)
                bodies.push_back(t.name() == x ? t.body() : substitute(Term::var(x), t.name(), t.body()));
            if (auto b = decide(bodies)) {
                d.clause = SrsDerivation::Clause::Lambda;
                d.binder = x;
                d.premises.push_back(*b);
                return d;
            }
        }
        if (all_app) {
            for (std::size_t s = 0; s < seq.size(); ++s) {
                if (!alpha_eq(seq[s].arg(), seq[0].arg())) break;
                bool ops_fixed = true;
                for (std::size_t i = s + 1; i < seq.size() && ops_fixed; ++i)
                    ops_fixed = alpha_eq(seq[i].fun(), seq[s].fun());
                if (!ops_fixed) continue;
                auto ops = decide(operators(seq, s));
                if (!ops) continue;
                auto args = decide(operands(seq, s));
                if (!args) continue;
                d.clause = SrsDerivation::Clause::Application;
                d.split = s;
                d.premises = {*ops, *args};
                return d;
            }
        }
        return std::nullopt;
    }
};

}  // namespace

SrsResult is_standard_sequence(const std::vector<Term>& seq) {
    SrsResult r;
    if (seq.empty()) throw std::invalid_argument("empty reduction sequence");
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (!is_betav_step(seq[i], seq[i + 1])) {
            r.kind = SrsResult::Kind::IllegalSequence;
            r.illegal_at = i;
            r.explanation = "term " + std::to_string(i) + " does not betaV-reduce in one step to term " +
                            std::to_string(i + 1);
            return r;
        }
    }
    Decider dec;
    r.derivation = dec.decide(seq);
    if (r.derivation) {
        r.kind = SrsResult::Kind::Standard;
        r.explanation = render(*r.derivation);
    } else {
        r.kind = SrsResult::Kind::NotStandard;
        r.explanation = dec.explain(seq);
    }
    return r;
}

std::vector<Term> replay(const SrsDerivation& d) {
    switch (d.clause) {
        case SrsDerivation::Clause::Variable:
            return d.sequence;
        case SrsDerivation::Clause::CbvPrefix: {
            Seq out{d.sequence.front()};
            auto rest = replay(d.premises.at(0));
            out.insert(out.end(), rest.begin(), rest.end());
            return out;
        }
        case SrsDerivation::Clause::Lambda: {
            Seq out;
            for (const auto& b : replay(d.premises.at(0))) out.push_back(Term::abs(d.binder, b));
            return out;
        }
        case SrsDerivation::Clause::Application: {
            auto ops = replay(d.premises.at(0));
            auto args = replay(d.premises.at(1));
            Seq out;
            for (const auto& m : ops) out.push_back(Term::app(m, args.front()));
            for (std::size_t i = 1; i < args.size(); ++i) out.push_back(Term::app(ops.back(), args[i]));
            return out;
        }
    }
    return {};
}

std::string render(const SrsDerivation& d, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    std::string out = pad + to_string(d.clause);
    if (d.clause == SrsDerivation::Clause::Lambda) out += " " + d.binder;
    if (d.clause == SrsDerivation::Clause::Application) out += " split=" + std::to_string(d.split);
    out += ":";
    for (const auto& t : d.sequence) out += " [" + render(t) + "]";
    out += "\n";
    for (const auto& p : d.premises) out += render(p, indent + 1);
    return out;
}

}  // namespace lamv
