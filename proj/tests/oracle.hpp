#pragma once

// Reference implementations used to check the engine. Nothing here calls the
// engine's substitution, classification or strategies.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lamv/term.hpp"

namespace oracle {

// Nameless terms: bound variables are de Bruijn indices, free ones keep names.
struct DB;
using DBp = std::shared_ptr<const DB>;

struct DB {
    enum class K { Bound, Free, Abs, App } k;
    long index = 0;
    std::string name;
    DBp a, b;
};

DBp from_term(const lamv::Term& t);
std::string key(const DBp& t);
bool equal(const DBp& a, const DBp& b);
bool is_value(const DBp& t);
std::size_t size(const DBp& t);

// Every one-step reduct; value_only restricts operands to values.
std::vector<DBp> reducts(const DBp& t, bool value_only);

struct Search {
    std::optional<DBp> normal_form;
    bool exhausted = false;  // reachable set fully explored
};

// Breadth-first search for a normal form.
Search bfs_normal_form(const DBp& t, bool value_only, std::size_t depth, std::size_t cap);

// Direct readings of the grammars.
bool val(const lamv::Term& t);
bool neu(const lamv::Term& t);
bool nf(const lamv::Term& t);
bool hnf(const lamv::Term& t);
bool neuv(const lamv::Term& t);
bool block(const lamv::Term& t);
bool vnf(const lamv::Term& t);
bool stuck(const lamv::Term& t);
bool block_nf(const lamv::Term& t);
bool chnf(const lamv::Term& t);
bool vwnf(const lamv::Term& t);
bool neuw(const lamv::Term& t);

}  // namespace oracle
