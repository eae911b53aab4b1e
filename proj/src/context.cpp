#include "lamv/context.hpp"

namespace lamv {

const std::string& Context::placeholder() {
    static const std::string name = "[]";
    return name;
}

Context Context::hole() { return Context(Term::var(placeholder()), Path()); }

Context Context::abs(std::string binder, const Context& inner) {
    return Context(Term::abs(std::move(binder), inner.frame_), Path("B").concat(inner.hole_));
}

Context Context::app_left(const Context& inner, Term arg) {
    return Context(Term::app(inner.frame_, std::move(arg)), Path("L").concat(inner.hole_));
}

Context Context::app_right(Term fun, const Context& inner) {
    return Context(Term::app(std::move(fun), inner.frame_), Path("R").concat(inner.hole_));
}

Context Context::at(const Term& t, const Path& p) {
    if (!subterm_at(t, p)) throw std::invalid_argument("path " + p.str() + " does not address a subterm");
    return Context(replace_at(t, p, Term::var(placeholder())), p);
}

Term Context::plug(const Term& m) const { return replace_at(frame_, hole_, m); }

std::vector<std::string> Context::binders_over_hole() const {
    std::vector<std::string> out;
    Term cur = frame_;
    for (std::size_t i = 0; i < hole_.length(); ++i) {
        switch (hole_[i]) {
            case 'B':
                out.push_back(cur.name());
                cur = cur.body();
                break;
            case 'L':
                cur = cur.fun();
                break;
            default:
                cur = cur.arg();
                break;
        }
    }
    return out;
}

std::string render(const Context& c) { return render(c.frame()); }

std::set<std::string> free_vars(const Context& c) {
    auto fv = free_vars(c.frame());
    fv.erase(Context::placeholder());
    return fv;
}

}  // namespace lamv
