#pragma once

#include <set>
#include <string>
#include <vector>

#include "sr2/models.hpp"
#include "sr2/term.hpp"

// Per-semiring syntactic satisfaction conditions and the ten-component
// semantic signature: two sums are equal in the variety generated by all
// ten semirings exactly when their signatures coincide.

namespace sr2 {

struct SemanticSignature {
    std::set<Variable> heads;                         // L2
    std::set<Variable> tails;                         // R2
    std::set<Variable> contents;                      // M2
    std::set<std::set<Variable>> min_contents;        // D2: subset-minimal summand contents
    std::set<Variable> unit_monomials;                // N2: variables occurring as length-1 summands
    bool has_long_monomial = false;                   // T2
    bool is_bare_variable = false;                    // Z2: the sum is a single variable
    bool w2_plural = false;                           // W2: more than one summand
    std::set<Variable> w2_content;                    // W2: content of the unique summand otherwise
    std::set<Variable> odd_unit_monomials;            // Z7: unit monomials with odd multiplicity
    std::set<std::set<Variable>> odd_content_classes; // Z8: contents whose total multiplicity is odd

    bool operator==(const SemanticSignature&) const = default;
};

SemanticSignature signature(const TermSum&);

// Exact satisfaction condition of the named semiring, evaluated purely on
// the syntax of the two sides. Agrees with models::satisfies on every
// identity (the test suites check this at scale).
bool criterion(Sr, const Identity&);
bool criterion(const std::string& name, const Identity&);

// Decision procedure for equality in the full variety.
bool sr2_equal(const TermSum&, const TermSum&);

// Stable textual key for a signature; equal strings iff equal signatures.
std::string signature_key(const SemanticSignature&);

struct CriterionReport {
    Sr s;
    bool holds = false;
    std::string lhs_data, rhs_data;  // the witnessing component values
};

std::vector<CriterionReport> explain(const Identity&);
std::string explain_text(const Identity&);
std::string explain_json(const Identity&);

}  // namespace sr2
