#include "lamv/classify.hpp"

namespace lamv {

std::string to_string(TermClass c) {
    switch (c) {
        case TermClass::Val: return "Val";
        case TermClass::Neu: return "Neu";
        case TermClass::NF: return "NF";
        case TermClass::HNF: return "HNF";
        case TermClass::NeuV: return "NeuV";
        case TermClass::Block: return "Block";
        case TermClass::VNF: return "VNF";
        case TermClass::Stuck: return "Stuck";
        case TermClass::BlockNF: return "BlockNF";
        case TermClass::CHNF: return "CHNF";
        case TermClass::VWNF: return "VWNF";
        case TermClass::NeuW: return "NeuW";
    }
    return "?";
}

std::string to_string(Calculus c) { return c == Calculus::K ? "K" : "V"; }

std::string to_string(Underline u) {
    switch (u) {
        case Underline::bv: return "bv";
        case Underline::ch: return "ch";
        case Underline::rc: return "rc";
        case Underline::bn: return "bn";
        case Underline::he: return "he";
        case Underline::hs: return "hs";
    }
    return "?";
}

std::vector<TermClass> classify(const Term& t) {
    std::vector<TermClass> out;
    for (int i = 0; i < kTermClassCount; ++i) {
        auto c = static_cast<TermClass>(i);
        if (t.in(c)) out.push_back(c);
    }
    return out;
}

bool is_beta_redex(const Term& t) { return t.is_app() && t.fun().is_abs(); }

bool is_betav_redex(const Term& t) { return is_beta_redex(t) && t.arg().in(TermClass::Val); }

std::vector<Path> redexes(const Term& t, Calculus calc) {
    std::vector<Path> out;
    for (auto& [p, s] : subterms_preorder(t))
        if (calc == Calculus::K ? is_beta_redex(s) : is_betav_redex(s)) out.push_back(p);
    return out;
}

namespace {

void mark(const Term& t, const Path& p, Underline k, std::set<Path>& out);

// The base underlinings that recursive cases fall back to.
void mark_bv(const Term& t, const Path& p, std::set<Path>& out) {
    switch (t.kind()) {
        case TermKind::Var:
        case TermKind::Abs:
            out.insert(p);
            break;
        case TermKind::App:
            mark_bv(t.fun(), p.child('L'), out);
            mark_bv(t.arg(), p.child('R'), out);
            break;
    }
}

void mark_bn(const Term& t, const Path& p, std::set<Path>& out) {
    switch (t.kind()) {
        case TermKind::Var:
        case TermKind::Abs:
            out.insert(p);
            break;
        case TermKind::App:
            mark_bn(t.fun(), p.child('L'), out);
            break;
    }
}

void mark(const Term& t, const Path& p, Underline k, std::set<Path>& out) {
    if (k == Underline::bv) return mark_bv(t, p, out);
    if (k == Underline::bn) return mark_bn(t, p, out);
    switch (t.kind()) {
        case TermKind::Var:
            out.insert(p);
            break;
        case TermKind::Abs:
            out.insert(p);
            mark(t.body(), p.child('B'), k, out);
            break;
        case TermKind::App:
            switch (k) {
                case Underline::ch:
                    mark_bv(t.fun(), p.child('L'), out);
                    mark_bv(t.arg(), p.child('R'), out);
                    break;
                case Underline::rc:
                    mark(t.fun(), p.child('L'), k, out);
                    mark_bv(t.arg(), p.child('R'), out);
                    break;
                case Underline::he:
                    mark_bn(t.fun(), p.child('L'), out);
                    break;
                case Underline::hs:
                    mark(t.fun(), p.child('L'), k, out);
                    break;
                default:
                    break;
            }
            break;
    }
}

bool value_kind(Underline k) { return k == Underline::bv || k == Underline::ch || k == Underline::rc; }

}  // namespace

std::set<Path> underline(const Term& t, Underline kind) {
    std::set<Path> out;
    mark(t, Path(), kind, out);
    return out;
}

std::vector<Path> underlined_redexes(const Term& t, Underline kind) {
    auto marked = underline(t, kind);
    std::vector<Path> out;
    for (auto& [p, s] : subterms_preorder(t)) {
        bool redex = value_kind(kind) ? is_betav_redex(s) : is_beta_redex(s);
        if (redex && marked.count(p.child('L'))) out.push_back(p);
    }
    return out;
}

namespace {

void active_rec(const Term& t, const Path& p, TermClass normal, std::vector<std::pair<Path, Term>>& out) {
    if (!t.in(normal)) {
        out.emplace_back(p, t);
        return;
    }
    if (t.is_abs()) {
        active_rec(t.body(), p.child('B'), normal, out);
    } else if (t.is_app()) {
        active_rec(t.fun(), p.child('L'), normal, out);
        active_rec(t.arg(), p.child('R'), normal, out);
    }
}

}  // namespace

std::vector<std::pair<Path, Term>> active_components(const Term& t, Calculus calc) {
    std::vector<std::pair<Path, Term>> out;
    active_rec(t, Path(), calc == Calculus::V ? TermClass::CHNF : TermClass::HNF, out);
    return out;
}

}  // namespace lamv
