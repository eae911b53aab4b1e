#pragma once

#include <set>
#include <string>
#include <vector>

#include "lamv/term.hpp"

namespace lamv {

enum class Calculus { K, V };

std::string to_string(TermClass c);
std::string to_string(Calculus c);

// Every class the term belongs to, in enum order.
std::vector<TermClass> classify(const Term& t);

bool is_beta_redex(const Term& t);
bool is_betav_redex(const Term& t);
// Positions of all redexes of the calculus, preorder.
std::vector<Path> redexes(const Term& t, Calculus calc);

enum class Underline { bv, ch, rc, bn, he, hs };
std::string to_string(Underline u);

// Positions of the underlined variables and lambdas.
std::set<Path> underline(const Term& t, Underline kind);

// Redexes whose operator lambda is underlined; bv/ch/rc select βV-redexes,
// bn/he/hs select β-redexes.
std::vector<Path> underlined_redexes(const Term& t, Underline kind);
inline std::vector<Path> chest_redexes(const Term& t) { return underlined_redexes(t, Underline::ch); }
inline std::vector<Path> ribcage_redexes(const Term& t) { return underlined_redexes(t, Underline::rc); }
inline std::vector<Path> head_redexes(const Term& t) { return underlined_redexes(t, Underline::he); }
inline std::vector<Path> head_spine_redexes(const Term& t) { return underlined_redexes(t, Underline::hs); }

// Maximal subterms outside chnf (V) or hnf (K), left to right.
std::vector<std::pair<Path, Term>> active_components(const Term& t, Calculus calc);

}  // namespace lamv
