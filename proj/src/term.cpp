#include "lamv/term.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "lamv/combinators.hpp"
#include "lamv/context.hpp"

namespace lamv {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::size_t sat_add(std::size_t a, std::size_t b) {
    constexpr auto max = std::numeric_limits<std::size_t>::max();
    return a > max - b ? max : a + b;
}

constexpr ClassBits kValueClasses =
    bit(TermClass::Val) | bit(TermClass::VWNF);

}  // namespace

Term Term::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Var;
    n->name = std::move(name);
    n->hash = mix(1);
    n->classes = kValueClasses | bit(TermClass::NF) | bit(TermClass::HNF) | bit(TermClass::VNF) |
                 bit(TermClass::CHNF);
    return Term(std::move(n));
}

Term Term::abs(std::string binder, Term body) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Abs;
    n->name = std::move(binder);
    n->size = sat_add(body.size(), 1);
    n->hash = mix(body.shape_hash() ^ 0x5bd1e995ULL);
    ClassBits c = kValueClasses;
    for (auto k : {TermClass::NF, TermClass::HNF, TermClass::VNF, TermClass::CHNF})
        if (body.in(k)) c |= bit(k);
    n->classes = c;
    n->a = std::move(body);
    return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::App;
    n->size = sat_add(sat_add(fun.size(), arg.size()), 1);
    n->hash = mix(fun.shape_hash() * 31 + mix(arg.shape_hash() + 7));

    const Term& m = fun;
    const Term& a = arg;
    bool mv = m.is_var(), ma = m.is_abs(), mp = m.is_app();
    bool neu = mv || (mp && m.in(TermClass::Neu));
    bool nf = (mv || (mp && m.in(TermClass::NF))) && a.in(TermClass::NF);
    bool neuv = mv || (ma && a.in(TermClass::NeuV)) || (mp && m.in(TermClass::NeuV));
    bool block = ma && a.in(TermClass::NeuV);
    bool block_nf = ma && m.in(TermClass::VNF) && a.in(TermClass::Stuck);
    bool stuck = a.in(TermClass::VNF) && (mv || block_nf || (mp && m.in(TermClass::Stuck)));
    if (ma) stuck = block_nf;
    bool neuw = (mv && a.in(TermClass::VWNF)) || (ma && a.in(TermClass::NeuW)) ||
                (mp && m.in(TermClass::NeuW) && a.in(TermClass::VWNF));

    ClassBits c = 0;
    if (neu) c |= bit(TermClass::Neu) | bit(TermClass::HNF);
    if (nf) c |= bit(TermClass::NF);
    if (neuv) c |= bit(TermClass::NeuV);
    if (block) c |= bit(TermClass::Block);
    if (block_nf) c |= bit(TermClass::BlockNF);
    if (stuck) c |= bit(TermClass::Stuck) | bit(TermClass::VNF);
    if (neuw) c |= bit(TermClass::NeuW) | bit(TermClass::VWNF) | bit(TermClass::CHNF);
    n->classes = c;
    n->a = std::move(fun);
    n->b = std::move(arg);
    return Term(std::move(n));
}

// ---- Path ----

Path::Path(std::string steps) : steps_(std::move(steps)) {
    for (char c : steps_)
        if (c != 'L' && c != 'R' && c != 'B') throw std::invalid_argument("bad path step: " + std::string(1, c));
}

Path Path::child(char dir) const {
    Path p = *this;
    p.steps_.push_back(dir);
    return p;
}

Path Path::concat(const Path& tail) const {
    Path p = *this;
    p.steps_ += tail.steps_;
    return p;
}

bool Path::is_prefix_of(const Path& other) const {
    return other.steps_.size() >= steps_.size() && other.steps_.compare(0, steps_.size(), steps_) == 0;
}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at offset " + std::to_string(pos)), position(pos) {}

// ---- parser ----

namespace {

class Parser {
public:
    Parser(std::string_view s, bool allow_hole) : s_(s), allow_hole_(allow_hole) {}

    Term parse_all() {
        Term t = term();
        skip_ws();
        if (i_ != s_.size()) throw ParseError("unexpected input", i_);
        return t;
    }

    int holes = 0;

private:
    std::string_view s_;
    std::size_t i_ = 0;
    bool allow_hole_;

    void skip_ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
    }

    bool at_lambda() {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == '\\') return true;
        return s_.substr(i_, 2) == "\xCE\xBB";
    }

    void eat_lambda() { i_ += s_[i_] == '\\' ? 1 : 2; }

    static bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
    static bool ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '\'';
    }

    std::string ident() {
        skip_ws();
        if (i_ >= s_.size() || !ident_start(s_[i_])) throw ParseError("expected identifier", i_);
        std::size_t b = i_;
        while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
        return std::string(s_.substr(b, i_ - b));
    }

    Term term() {
        if (at_lambda()) {
            eat_lambda();
            std::vector<std::string> binders;
            binders.push_back(ident());
            skip_ws();
            while (i_ < s_.size() && ident_start(s_[i_])) {
                binders.push_back(ident());
                skip_ws();
            }
            if (i_ >= s_.size() || s_[i_] != '.') throw ParseError("expected '.'", i_);
            ++i_;
            return abstract(binders, term());
        }
        return application();
    }

    bool atom_start() {
        skip_ws();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return ident_start(c) || c == '(' || c == '#' || (c == '[' && allow_hole_);
    }

    Term application() {
        if (!atom_start()) throw ParseError("expected term", i_);
        Term t = atom();
        for (;;) {
            if (atom_start()) {
                t = Term::app(t, atom());
            } else if (at_lambda()) {
                t = Term::app(t, term());
                break;
            } else {
                break;
            }
        }
        return t;
    }

    Term atom() {
        skip_ws();
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Term t = term();
            skip_ws();
            if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
            ++i_;
            return t;
        }
        if (c == '#') {
            std::size_t b = ++i_;
            while (i_ < s_.size() && ((s_[i_] >= 'A' && s_[i_] <= 'Z') || (s_[i_] >= '0' && s_[i_] <= '9') ||
                                      s_[i_] == '_'))
                ++i_;
            std::string name(s_.substr(b, i_ - b));
            auto t = comb::lookup(name);
            if (!t) throw ParseError("unknown combinator #" + name, b - 1);
            return *t;
        }
        if (c == '[') {
            if (s_.substr(i_, 2) != "[]") throw ParseError("expected '[]'", i_);
            i_ += 2;
            ++holes;
            return Term::var(Context::placeholder());
        }
        return Term::var(ident());
    }
};

}  // namespace

Term parse(std::string_view text) {
    Parser p(text, false);
    return p.parse_all();
}

Context parse_context(std::string_view text) {
    Parser p(text, true);
    Term t = p.parse_all();
    if (p.holes != 1) throw ParseError("context must contain exactly one hole", 0);
    for (auto& [path, s] : subterms_preorder(t))
        if (s.is_var() && s.name() == Context::placeholder()) return Context::at(t, path);
    throw ParseError("hole not found", 0);
}

// ---- rendering ----

namespace {

void render_into(const Term& t, std::string& out, const std::function<bool(const Term&, std::string&)>& fold);

void render_operand(const Term& t, std::string& out, const std::function<bool(const Term&, std::string&)>& fold) {
    std::string folded;
    if (fold && fold(t, folded)) {
        out += folded;
    } else if (t.is_var()) {
        out += t.name();
    } else {
        out += '(';
        render_into(t, out, fold);
        out += ')';
    }
}

void render_into(const Term& t, std::string& out, const std::function<bool(const Term&, std::string&)>& fold) {
    std::string folded;
    if (fold && fold(t, folded)) {
        out += folded;
        return;
    }
    switch (t.kind()) {
        case TermKind::Var:
            out += t.name();
            break;
        case TermKind::Abs:
            out += '\\';
            out += t.name();
            out += '.';
            render_into(t.body(), out, fold);
            break;
        case TermKind::App: {
            const Term& f = t.fun();
            if (f.is_abs()) {
                render_operand(f, out, fold);
            } else {
                render_into(f, out, fold);
            }
            out += ' ';
            render_operand(t.arg(), out, fold);
            break;
        }
    }
}

std::optional<unsigned> omega_prefix(const Term& t) {
    unsigned n = 0;
    Term cur = t;
    while (cur.is_abs()) {
        cur = cur.body();
        ++n;
    }
    if (n > 0 && alpha_eq(cur, comb::Omega())) return n;
    return std::nullopt;
}

std::optional<unsigned> k_power(const Term& t) {
    if (!t.is_abs()) return std::nullopt;
    const std::string& x = t.name();
    Term cur = t.body();
    unsigned m = 0;
    while (cur.is_app() && alpha_eq(cur.fun(), comb::K())) {
        cur = cur.arg();
        ++m;
    }
    if (m > 0 && cur.is_var() && cur.name() == x) return m;
    return std::nullopt;
}

}  // namespace

std::string render(const Term& t) {
    std::string out;
    render_into(t, out, nullptr);
    return out;
}

std::string render_folded(const Term& t) {
    static const std::vector<std::pair<std::string, Term>> table = {
        {"#I", comb::I()},         {"#K", comb::K()},     {"#DELTA", comb::Delta()}, {"#OMEGA", comb::Omega()},
        {"#OMEGA_W", comb::Omega_w()}, {"#U", comb::U()}, {"#Y", comb::Y()},
    };
    auto fold = [](const Term& s, std::string& out) {
        if (s.size() > 64 || !is_closed(s)) return false;
        for (auto& [name, c] : table) {
            if (s.shape_hash() == c.shape_hash() && alpha_eq(s, c)) {
                out = name;
                return true;
            }
        }
        if (auto n = omega_prefix(s)) {
            out = "#OMEGA_" + std::to_string(*n);
            return true;
        }
        if (auto m = k_power(s)) {
            out = "#K_" + std::to_string(*m);
            return true;
        }
        return false;
    };
    std::string out;
    render_into(t, out, fold);
    return out;
}

// ---- variables ----

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (t.kind()) {
        case TermKind::Var:
            if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
            break;
        case TermKind::Abs:
            bound.push_back(t.name());
            collect_free(t.body(), bound, out);
            bound.pop_back();
            break;
        case TermKind::App:
            collect_free(t.fun(), bound, out);
            collect_free(t.arg(), bound, out);
            break;
    }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(t, bound, out);
    return out;
}

std::vector<std::string> free_vars_ordered(const Term& t) {
    std::vector<std::string> out;
    std::vector<std::string> bound;
    std::function<void(const Term&)> walk = [&](const Term& s) {
        switch (s.kind()) {
            case TermKind::Var:
                if (std::find(bound.begin(), bound.end(), s.name()) == bound.end() &&
                    std::find(out.begin(), out.end(), s.name()) == out.end())
                    out.push_back(s.name());
                break;
            case TermKind::Abs:
                bound.push_back(s.name());
                walk(s.body());
                bound.pop_back();
                break;
            case TermKind::App:
                walk(s.fun());
                walk(s.arg());
                break;
        }
    };
    walk(t);
    return out;
}

bool occurs_free(const std::string& x, const Term& t) {
    switch (t.kind()) {
        case TermKind::Var:
            return t.name() == x;
        case TermKind::Abs:
            return t.name() != x && occurs_free(x, t.body());
        case TermKind::App:
            return occurs_free(x, t.fun()) || occurs_free(x, t.arg());
    }
    return false;
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

namespace {

// index of name counted from the innermost binder, or -1 when free
long bound_index(const std::vector<const std::string*>& env, const std::string& x) {
    for (std::size_t i = env.size(); i-- > 0;)
        if (*env[i] == x) return static_cast<long>(env.size() - 1 - i);
    return -1;
}

bool alpha_rec(const Term& a, const Term& b, std::vector<const std::string*>& ea,
               std::vector<const std::string*>& eb) {
    if (a.kind() != b.kind() || a.size() != b.size() || a.shape_hash() != b.shape_hash()) return false;
    switch (a.kind()) {
        case TermKind::Var: {
            long ia = bound_index(ea, a.name()), ib = bound_index(eb, b.name());
            if (ia != ib) return false;
            return ia >= 0 || a.name() == b.name();
        }
        case TermKind::Abs: {
            ea.push_back(&a.name());
            eb.push_back(&b.name());
            bool r = alpha_rec(a.body(), b.body(), ea, eb);
            ea.pop_back();
            eb.pop_back();
            return r;
        }
        case TermKind::App:
            return alpha_rec(a.fun(), b.fun(), ea, eb) && alpha_rec(a.arg(), b.arg(), ea, eb);
    }
    return false;
}

void key_rec(const Term& t, std::vector<const std::string*>& env, std::string& out) {
    switch (t.kind()) {
        case TermKind::Var: {
            long i = bound_index(env, t.name());
            if (i >= 0) {
                out += '#';
                out += std::to_string(i);
            } else {
                out += '$';
                out += t.name();
            }
            out += ' ';
            break;
        }
        case TermKind::Abs:
            out += "\\ ";
            env.push_back(&t.name());
            key_rec(t.body(), env, out);
            env.pop_back();
            break;
        case TermKind::App:
            out += "@ ";
            key_rec(t.fun(), env, out);
            key_rec(t.arg(), env, out);
            break;
    }
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
    if (a.same_node(b)) return true;
    std::vector<const std::string*> ea, eb;
    return alpha_rec(a, b, ea, eb);
}

std::string alpha_key(const Term& t) {
    std::vector<const std::string*> env;
    std::string out;
    key_rec(t, env, out);
    return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string c = base + "'";
    while (avoid.count(c)) c += "'";
    return c;
}

namespace {

struct Substituter {
    const Term& n;
    const std::string& x;
    std::set<std::string> fv_n;

    Term run(const Term& m) {
        switch (m.kind()) {
            case TermKind::Var:
                return m.name() == x ? n : m;
            case TermKind::Abs: {
                const std::string& y = m.name();
                if (y == x) return m;
                if (!occurs_free(x, m.body())) return m;
                if (fv_n.count(y)) {
                    std::set<std::string> avoid = fv_n;
                    auto fb = free_vars(m.body());
                    avoid.insert(fb.begin(), fb.end());
                    std::string z = fresh_name(y, avoid);
                    Term renamed = substitute(Term::var(z), y, m.body());
                    return Term::abs(z, run(renamed));
                }
                Term b = run(m.body());
                return b.same_node(m.body()) ? m : Term::abs(y, b);
            }
            case TermKind::App: {
                Term f = run(m.fun());
                Term a = run(m.arg());
                if (f.same_node(m.fun()) && a.same_node(m.arg())) return m;
                return Term::app(f, a);
            }
        }
        return m;
    }
};

}  // namespace

Term substitute(const Term& n, const std::string& x, const Term& m) {
    Substituter s{n, x, free_vars(n)};
    return s.run(m);
}

// ---- positions ----

std::optional<Term> subterm_at(const Term& t, const Path& p) {
    Term cur = t;
    for (std::size_t i = 0; i < p.length(); ++i) {
        char d = p[i];
        if (d == 'B' && cur.is_abs()) {
            cur = cur.body();
        } else if (d == 'L' && cur.is_app()) {
            cur = cur.fun();
        } else if (d == 'R' && cur.is_app()) {
            cur = cur.arg();
        } else {
            return std::nullopt;
        }
    }
    return cur;
}

namespace {

Term replace_rec(const Term& t, const Path& p, std::size_t i, const Term& s) {
    if (i == p.length()) return s;
    char d = p[i];
    if (d == 'B' && t.is_abs()) return Term::abs(t.name(), replace_rec(t.body(), p, i + 1, s));
    if (d == 'L' && t.is_app()) return Term::app(replace_rec(t.fun(), p, i + 1, s), t.arg());
    if (d == 'R' && t.is_app()) return Term::app(t.fun(), replace_rec(t.arg(), p, i + 1, s));
    throw std::invalid_argument("path " + p.str() + " does not address a subterm");
}

void preorder_rec(const Term& t, const Path& p, std::vector<std::pair<Path, Term>>& out) {
    out.emplace_back(p, t);
    if (t.is_abs()) {
        preorder_rec(t.body(), p.child('B'), out);
    } else if (t.is_app()) {
        preorder_rec(t.fun(), p.child('L'), out);
        preorder_rec(t.arg(), p.child('R'), out);
    }
}

}  // namespace

Term replace_at(const Term& t, const Path& p, const Term& s) { return replace_rec(t, p, 0, s); }

std::vector<std::pair<Path, Term>> subterms_preorder(const Term& t) {
    std::vector<std::pair<Path, Term>> out;
    preorder_rec(t, Path(), out);
    return out;
}

Term spine_head(const Term& t) {
    Term cur = t;
    while (cur.is_app()) cur = cur.fun();
    return cur;
}

std::vector<Term> spine_args(const Term& t) {
    std::vector<Term> args;
    Term cur = t;
    while (cur.is_app()) {
        args.push_back(cur.arg());
        cur = cur.fun();
    }
    std::reverse(args.begin(), args.end());
    return args;
}

Term apply_all(Term head, const std::vector<Term>& args) {
    for (const auto& a : args) head = Term::app(head, a);
    return head;
}

Term abstract(const std::vector<std::string>& binders, Term body) {
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::abs(*it, body);
    return body;
}

}  // namespace lamv
