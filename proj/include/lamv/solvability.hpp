#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lamv/classify.hpp"
#include "lamv/context.hpp"
#include "lamv/order.hpp"
#include "lamv/term.hpp"

namespace lamv {

// Operands tried when searching for a solving function context.
std::vector<Term> default_pool();
std::vector<Term> parse_pool(std::string_view text);

struct CertifyOptions {
    std::size_t max_operands = 3;
    std::size_t probe_fuel = 500;
};

struct Certification {
    enum class Kind { SolvableWitness, UnsolvableOfOrder, Unknown };
    Kind kind = Kind::Unknown;
    // SolvableWitness: F with F[t] reducing to normal_form
    std::optional<Context> context;
    std::optional<Term> normal_form;
    // UnsolvableOfOrder
    Ordinal order;
    OrderVerdict order_evidence;
    std::size_t probes = 0;

    std::string str() const;
};

Certification certify_unsolvable(const Term& t, std::size_t fuel, const std::vector<Term>& pool,
                                 const CertifyOptions& opts = {});

struct NoNormalForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands X1...Xk with m X1 ... Xk =β x, for closed m with a β-normal form.
std::vector<Term> solve_to_target(const Term& m, const Term& x, Calculus calc, std::size_t fuel);

// Function context F with F[m] =β x, or nullopt when m has no β-normal form
// within fuel.
std::optional<Context> function_context_for_target(const Term& m, const Term& x, std::size_t fuel);

struct HeadContext {
    Context context;
    // normal form of H[m], alpha-equal to the normal form of n with the
    // tuple terms substituted
    Term closed_normal_form;
    std::vector<std::string> free_of_target;
    std::vector<unsigned> operand_counts;
    std::vector<std::string> extra_vars;
};

// Closes F[m] =β n into a head context H with H[m] reducing to a closed
// β-normal form.
HeadContext head_context_from_function_context(const Context& f, const Term& m, const Term& n, std::size_t fuel);

struct GenericityRow {
    enum class Verdict {
        // order >= n0 (or calculus K) and c[x] reached the same normal form
        Holds,
        // reached a different normal form, or certainly diverges
        Violated,
        // order or reduction not settled within fuel
        Unverified,
        // order < n0: c[x] did not reach the normal form
        BelowOrderFailed,
        // order < n0: c[x] still reached the normal form
        BelowOrderReached,
    };
    Term x;
    OrderVerdict order;
    Verdict verdict = Verdict::Unverified;
    std::optional<Term> result;
};

std::string to_string(GenericityRow::Verdict v);

struct GenericityReport {
    bool applicable = false;
    std::optional<Term> normal_form;
    std::vector<GenericityRow> rows;

    bool violated() const;
    bool unverified() const;
};

GenericityReport genericity_experiment(const Context& c, const Term& m, Ordinal n0, const std::vector<Term>& xs,
                                       Calculus calc, std::size_t fuel);

}  // namespace lamv
