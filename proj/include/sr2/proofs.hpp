#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sr2/term.hpp"

// Checker for equational derivations: explicit rewrite chains from named
// axiom sets, applied modulo commutative addition and associative
// multiplication. Steps carry their full witness (substitution and site),
// so checking is deterministic; a bounded breadth-first search can fill
// in small derivations but claims no completeness.

namespace sr2 {

struct Axiom {
    std::string id;
    Identity identity;
};

class AxiomRegistry {
public:
    static const AxiomRegistry& instance();
    const Axiom& get(const std::string& id) const;                   // throws std::invalid_argument
    const std::vector<std::string>& named_set(const std::string&) const;  // throws std::invalid_argument
    const std::vector<Axiom>& all() const { return axioms_; }
    std::vector<std::string> set_names() const;

private:
    AxiomRegistry();
    std::vector<Axiom> axioms_;
    std::map<std::string, int> by_id_;
    std::map<std::string, std::vector<std::string>> sets_;
};

struct RewriteStep {
    std::string axiom;
    bool forward = true;
    std::map<Variable, TermSum> subst;
    // Indices into the canonical summand expansion (multiset listed with
    // repetition in monomial order) of the sum being rewritten.
    std::vector<int> summands;
    // Letter range [first, second) within the single selected summand;
    // only valid when the axiom instance is monomial-shaped.
    std::optional<std::pair<int, int>> span;
};

struct ProofScript {
    Identity goal;
    std::string axiom_set;
    std::vector<RewriteStep> steps;
};

struct StepError : std::runtime_error {
    std::string diff;
    StepError(const std::string& msg, std::string d = {})
        : std::runtime_error(msg), diff(std::move(d)) {}
};

// Canonical form modulo commutative + and associative *: the multiset
// representation ordered by the monomial order. Idempotent.
TermSum ac_normal(const TermSum&);

// Summand list with repetition, in canonical order.
std::vector<Monomial> expanded_summands(const TermSum&);

TermSum apply_step(const TermSum&, const RewriteStep&);

struct Verdict {
    bool accepted = false;
    int failed_step = -1;  // index of the offending step; steps.size() = final mismatch
    std::string message;
    std::vector<TermSum> trace;  // lhs, after step 1, ..., after step n
};
Verdict check_script(const ProofScript&);

struct SearchLimits {
    int max_term_size = 10;  // total letters of any intermediate sum
    int max_steps = 8;
    int max_frontier = 50000;
};
enum class SearchStatus { Found, NotFound, LimitHit };
struct SearchResult {
    SearchStatus status = SearchStatus::NotFound;
    std::optional<ProofScript> script;
};

// Breadth-first over AC-normal forms, instantiating axiom variables with
// monomials; every returned script passes check_script. A NotFound result
// certifies nothing beyond the given limits.
SearchResult bounded_search(const Identity& goal, const std::vector<std::string>& axiom_ids,
                            const SearchLimits& limits, const std::string& set_name = "");
SearchResult bounded_search(const Identity& goal, const std::string& axiom_set,
                            const SearchLimits& limits);

// Script file format (JSON): { "goal": str, "axioms": set-name,
//   "steps": [ { "axiom": id, "dir": "fwd"|"bwd", "subst": {var: term},
//               "summands": [int...], "span": [start,end] | null } ] }
ProofScript load_script(const std::string& json_text);
ProofScript load_script_file(const std::string& path);
std::string save_script(const ProofScript&);

}  // namespace sr2
