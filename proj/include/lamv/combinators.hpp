#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamv/term.hpp"

namespace lamv::comb {

Term I();
Term K();
// K^m = λx.K(...(K x)...) with m copies of K; K^0 is I.
Term K_m(unsigned m);
Term Delta();
Term Omega();
// λx1...xn.ΔΔ
Term Omega_n(unsigned n);
// (λx.λy.x x)(λx.λy.x x)
Term Omega_w();
Term B();
Term U();
Term T1();
Term T2();
Term Y();
Term YK();

// Resolves a #NAME reference (without the '#').
std::optional<Term> lookup(const std::string& name);
std::vector<std::string> table_names();

}  // namespace lamv::comb
