#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lamv/context.hpp"
#include "lamv/order.hpp"
#include "lamv/strategy.hpp"
#include "lamv/term.hpp"

namespace lamv {

// ε is the empty optional.
using Label = std::optional<std::uint64_t>;

std::string label_str(const Label& l);

class LabeledTerm {
public:
    static LabeledTerm var(std::string name, Label l = {});
    static LabeledTerm abs(std::string binder, LabeledTerm body, Label l = {});
    static LabeledTerm app(LabeledTerm fun, LabeledTerm arg, Label l = {});

    TermKind kind() const;
    bool is_var() const { return kind() == TermKind::Var; }
    bool is_abs() const { return kind() == TermKind::Abs; }
    bool is_app() const { return kind() == TermKind::App; }
    const std::string& name() const;
    const LabeledTerm& body() const;
    const LabeledTerm& fun() const;
    const LabeledTerm& arg() const;
    const Label& label() const;

    LabeledTerm with_label(Label l) const;
    bool same_node(const LabeledTerm& o) const { return node_ == o.node_; }

private:
    struct Node;
    explicit LabeledTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    LabeledTerm() = default;
    std::shared_ptr<const Node> node_;
};

struct LabeledTerm::Node {
    TermKind kind{};
    std::string name;
    LabeledTerm a;
    LabeledTerm b;
    Label label;
};

inline TermKind LabeledTerm::kind() const { return node_->kind; }
inline const std::string& LabeledTerm::name() const { return node_->name; }
inline const LabeledTerm& LabeledTerm::body() const { return node_->a; }
inline const LabeledTerm& LabeledTerm::fun() const { return node_->a; }
inline const LabeledTerm& LabeledTerm::arg() const { return node_->b; }
inline const Label& LabeledTerm::label() const { return node_->label; }

// Every node labelled ε.
LabeledTerm lift(const Term& t);
Term erase(const LabeledTerm& t);
// Count 0 on m, ε elsewhere.
LabeledTerm select(const Context& c, const Term& m);

std::string render(const LabeledTerm& t);
bool labeled_eq(const LabeledTerm& a, const LabeledTerm& b);

std::optional<LabeledTerm> labeled_subterm_at(const LabeledTerm& t, const Path& p);
LabeledTerm labeled_replace_at(const LabeledTerm& t, const Path& p, const LabeledTerm& s);

// Subterms carrying a count, preorder.
std::vector<std::pair<Path, LabeledTerm>> traces(const LabeledTerm& t);
std::optional<std::uint64_t> max_count(const LabeledTerm& t);

struct LabelConflict : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throw reports disagreeing βc alternatives; FirstBranch keeps the first
// applicable alternative and flags the step.
enum class ConflictPolicy { Throw, FirstBranch };

LabeledTerm labeled_substitute(const LabeledTerm& n, const std::string& x, const LabeledTerm& m,
                               ConflictPolicy policy = ConflictPolicy::Throw, bool* conflict = nullptr);

LabeledTerm labeled_contract(const LabeledTerm& t, const Path& p, Calculus calc,
                             ConflictPolicy policy = ConflictPolicy::Throw, bool* conflict = nullptr);

struct LabeledStep {
    LabeledTerm term;
    Path path;
    bool conflict = false;
};

// Contracts the redex chosen by the strategy on the erased term.
std::optional<LabeledStep> labeled_step(const LabeledTerm& t, Strategy s,
                                        ConflictPolicy policy = ConflictPolicy::Throw);

struct LabeledTrace {
    std::vector<LabeledTerm> terms;
    std::vector<Path> paths;
    Outcome outcome = Outcome::NormalForm;
    std::size_t cycle_index = 0;
    std::size_t conflicts = 0;
};

LabeledTrace labeled_reduce(const LabeledTerm& t, Strategy s, std::size_t fuel,
                            ConflictPolicy policy = ConflictPolicy::Throw, std::size_t max_size = 20000);

struct TraceViolation {
    std::size_t step;
    Path path;
    std::uint64_t count;
    std::string term;
    std::string reason;
};

struct TraceReport {
    Ordinal n0;
    LabeledTrace trace;
    std::uint64_t max_count = 0;
    bool any_count = false;
    std::size_t checks = 0;
    std::size_t unverified = 0;
    std::vector<TraceViolation> violations;

    bool holds() const { return violations.empty(); }
};

// Follows select(c, m) and checks n0 = count + order at every trace of every
// step. The oracle must certify the order of m exactly.
TraceReport trace_report(const Context& c, const Term& m, Strategy s, std::size_t fuel, const OrderOracle& oracle);

}  // namespace lamv
