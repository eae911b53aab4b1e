#include "lamv/combinators.hpp"

#include <cctype>

namespace lamv::comb {

namespace {

Term v(const char* n) { return Term::var(n); }
Term lam(const char* x, Term b) { return Term::abs(x, std::move(b)); }
Term ap(Term f, Term a) { return Term::app(std::move(f), std::move(a)); }

std::optional<unsigned> suffix_number(const std::string& name, const std::string& prefix) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    unsigned n = 0;
    for (std::size_t i = prefix.size(); i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        n = n * 10 + static_cast<unsigned>(name[i] - '0');
        if (n > 4096) return std::nullopt;
    }
    return n;
}

}  // namespace

Term I() { return lam("x", v("x")); }

Term K() { return lam("x", lam("y", v("x"))); }

Term K_m(unsigned m) {
    Term body = v("x");
    for (unsigned i = 0; i < m; ++i) body = ap(K(), body);
    return lam("x", body);
}

Term Delta() { return lam("x", ap(v("x"), v("x"))); }

Term Omega() { return ap(Delta(), Delta()); }

Term Omega_n(unsigned n) {
    Term t = Omega();
    for (unsigned i = n; i > 0; --i) t = Term::abs("x" + std::to_string(i), t);
    return t;
}

Term Omega_w() {
    Term h = lam("x", lam("y", ap(v("x"), v("x"))));
    return ap(h, h);
}

Term B() { return ap(ap(lam("y", Delta()), ap(v("x"), I())), Delta()); }

Term U() { return lam("x", B()); }

Term T1() { return ap(B(), ap(v("x"), lam("x", Omega()))); }

Term T2() { return ap(B(), lam("x", Omega())); }

Term Y() {
    Term w = lam("x", ap(v("f"), ap(v("x"), v("x"))));
    return lam("f", ap(w, w));
}

Term YK() { return ap(Y(), K()); }

std::optional<Term> lookup(const std::string& name) {
    if (name == "I") return I();
    if (name == "K") return K();
    if (name == "DELTA") return Delta();
    if (name == "OMEGA") return Omega();
    if (name == "OMEGA_W") return Omega_w();
    if (name == "B") return B();
    if (name == "U") return U();
    if (name == "T1") return T1();
    if (name == "T2") return T2();
    if (name == "Y") return Y();
    if (name == "YK") return YK();
    if (auto n = suffix_number(name, "OMEGA_")) return Omega_n(*n);
    if (auto m = suffix_number(name, "K_")) return K_m(*m);
    return std::nullopt;
}

std::vector<std::string> table_names() {
    return {"I", "K", "K_<m>", "DELTA", "OMEGA", "OMEGA_<n>", "OMEGA_W", "B", "U", "T1", "T2", "Y", "YK"};
}

}  // namespace lamv::comb
