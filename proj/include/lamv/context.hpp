#pragma once

#include "lamv/term.hpp"

namespace lamv {

// A term with exactly one hole. The hole is stored as a placeholder
// variable whose name cannot be produced by the parser.
class Context {
public:
    static Context hole();
    static Context abs(std::string binder, const Context& inner);
    static Context app_left(const Context& inner, Term arg);
    static Context app_right(Term fun, const Context& inner);
    // Punches a hole at p.
    static Context at(const Term& t, const Path& p);

    Term plug(const Term& m) const;
    const Path& hole_path() const { return hole_; }
    // Underlying term with the placeholder at the hole.
    const Term& frame() const { return frame_; }
    // Binders enclosing the hole, outermost first.
    std::vector<std::string> binders_over_hole() const;

    static const std::string& placeholder();

private:
    Context(Term frame, Path hole) : frame_(std::move(frame)), hole_(std::move(hole)) {}
    Term frame_;
    Path hole_;
};

Context parse_context(std::string_view text);
std::string render(const Context& c);
std::set<std::string> free_vars(const Context& c);

}  // namespace lamv
