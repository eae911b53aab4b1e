#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lamv {

enum class TermKind : std::uint8_t { Var, Abs, App };

// Syntactic classes, in the order the classifier reports them.
enum class TermClass : std::uint8_t {
    Val,
    Neu,
    NF,
    HNF,
    NeuV,
    Block,
    VNF,
    Stuck,
    BlockNF,
    CHNF,
    VWNF,
    NeuW,
};
inline constexpr int kTermClassCount = 12;

using ClassBits = std::uint16_t;

inline constexpr ClassBits bit(TermClass c) { return static_cast<ClassBits>(1u << static_cast<unsigned>(c)); }

// Immutable term with shared subterms. Class membership, size and a
// name-insensitive shape hash are computed once at construction.
class Term {
public:
    static Term var(std::string name);
    static Term abs(std::string binder, Term body);
    static Term app(Term fun, Term arg);

    TermKind kind() const;
    bool is_var() const { return kind() == TermKind::Var; }
    bool is_abs() const { return kind() == TermKind::Abs; }
    bool is_app() const { return kind() == TermKind::App; }

    // variable name, or binder of an abstraction
    const std::string& name() const;
    const Term& body() const;
    const Term& fun() const;
    const Term& arg() const;

    std::size_t size() const;
    std::uint64_t shape_hash() const;
    ClassBits classes() const;
    bool in(TermClass c) const { return (classes() & bit(c)) != 0; }

    bool same_node(const Term& o) const { return node_ == o.node_; }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    Term() = default;
    std::shared_ptr<const Node> node_;
};

struct Term::Node {
    TermKind kind{};
    std::string name;
    Term a;
    Term b;
    std::size_t size = 1;
    std::uint64_t hash = 0;
    ClassBits classes = 0;
};

inline TermKind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const Term& Term::body() const { return node_->a; }
inline const Term& Term::fun() const { return node_->a; }
inline const Term& Term::arg() const { return node_->b; }
inline std::size_t Term::size() const { return node_->size; }
inline std::uint64_t Term::shape_hash() const { return node_->hash; }
inline ClassBits Term::classes() const { return node_->classes; }

// Position of a subterm: B descends into an abstraction body, L/R into the
// operator/operand of an application. Ordering is preorder with L before R.
class Path {
public:
    Path() = default;
    explicit Path(std::string steps);

    const std::string& str() const { return steps_; }
    bool is_root() const { return steps_.empty(); }
    std::size_t length() const { return steps_.size(); }
    char operator[](std::size_t i) const { return steps_[i]; }

    Path child(char dir) const;
    Path concat(const Path& tail) const;
    bool is_prefix_of(const Path& other) const;

    auto operator<=>(const Path&) const = default;
    bool operator==(const Path&) const = default;

private:
    std::string steps_;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos);
    std::size_t position;
};

// term ::= lam | app ; lam ::= ('\'|'λ') ident+ '.' term ; app ::= atom+
// atom ::= ident | '(' term ')' | '#'NAME
Term parse(std::string_view text);

std::string render(const Term& t);
// Closed combinators are printed by table name where recognised.
std::string render_folded(const Term& t);

std::set<std::string> free_vars(const Term& t);
// Free variables in order of first occurrence, left to right.
std::vector<std::string> free_vars_ordered(const Term& t);
bool occurs_free(const std::string& x, const Term& t);
bool is_closed(const Term& t);

bool alpha_eq(const Term& a, const Term& b);
// Canonical nameless key: equal iff alpha-equivalent.
std::string alpha_key(const Term& t);

// Smallest primed variant of base that is not in avoid.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Capture-avoiding substitution [n/x]m.
Term substitute(const Term& n, const std::string& x, const Term& m);

std::optional<Term> subterm_at(const Term& t, const Path& p);
Term replace_at(const Term& t, const Path& p, const Term& s);
std::vector<std::pair<Path, Term>> subterms_preorder(const Term& t);

// Spine decomposition: t = head a1 ... ak.
Term spine_head(const Term& t);
std::vector<Term> spine_args(const Term& t);
Term apply_all(Term head, const std::vector<Term>& args);
Term abstract(const std::vector<std::string>& binders, Term body);

}  // namespace lamv
