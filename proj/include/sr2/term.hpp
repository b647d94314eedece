#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Syntax of semiring terms and identities over the signature {+, *}:
// monomials are nonempty words of variables, term sums are nonempty
// multisets of monomials, identities are pairs of sums.

namespace sr2 {

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t at)
        : std::runtime_error(msg + " (at position " + std::to_string(at) + ")"), pos(at) {}
};

// A variable token: one lowercase letter followed by optional digits.
struct Variable {
    std::string name;

    Variable() = default;
    explicit Variable(std::string n) : name(std::move(n)) {}
    explicit Variable(char c) : name(1, c) {}

    auto operator<=>(const Variable&) const = default;
};

// A nonempty word over the variable alphabet. Multiplication is word
// concatenation; associativity is built into the representation.
struct Monomial {
    std::vector<Variable> letters;

    Monomial() = default;
    explicit Monomial(std::vector<Variable> ls) : letters(std::move(ls)) {}

    bool empty() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }

    bool operator==(const Monomial&) const = default;
    // Total order used for canonical printing: by (length, letter sequence).
    std::strong_ordering operator<=>(const Monomial& o) const {
        if (auto c = letters.size() <=> o.letters.size(); c != 0) return c;
        return letters <=> o.letters;
    }
};

// A nonempty multiset of monomials. Addition is multiset union; the map
// keeps summands in the canonical monomial order at all times.
struct TermSum {
    std::map<Monomial, int> summands;  // monomial -> multiplicity >= 1

    bool empty() const { return summands.empty(); }
    // Number of summands, counted with multiplicity.
    int summand_count() const;
    // Total number of letters, counted with multiplicity.
    int letter_count() const;
    void add(const Monomial& m, int k = 1);

    bool operator==(const TermSum&) const = default;
    auto operator<=>(const TermSum&) const = default;
};

struct Identity {
    TermSum lhs, rhs;
    bool operator==(const Identity&) const = default;
};

// Grammar (whitespace between tokens is insignificant):
//   identity := sum ("~" | "=") sum
//   sum      := addend { "+" addend }
//   addend   := [ integer ] monomial
//   monomial := factor { [ "*" ] factor }
//   factor   := variable [ "^" integer ]
//   variable := lowercase-letter { digit }
//   integer  := nonzero-digit { digit }
Identity parse_identity(const std::string& text);
TermSum parse_sum(const std::string& text);

// Canonical text: summands sorted, coefficient and exponent sugar applied.
// parse_identity(render(i)) == i for every identity.
std::string render(const Monomial&);
std::string render(const TermSum&);
std::string render(const Identity&);

Variable head(const Monomial&);
Variable tail(const Monomial&);
std::set<Variable> content(const Monomial&);
int length(const Monomial&);

std::set<Variable> sum_content(const TermSum&);
std::set<Variable> sum_heads(const TermSum&);
std::set<Variable> sum_tails(const TermSum&);
int occ(const Monomial&, const TermSum&);
std::vector<Variable> sorted_variables(const Identity&);

// Normal form of a monomial modulo the equational theory of the full
// variety: single letters stay as they are, longer words collapse to
// (head, content, tail).
struct MonoNF {
    bool bare = false;
    Variable hd, tl;
    std::set<Variable> cont;
    bool operator==(const MonoNF&) const = default;
};
MonoNF mono_normal_form(const Monomial&);

// Substitute x+x for every variable and flatten by distributivity:
// each multiplicity is scaled by 2^(monomial length).
TermSum hat_sum(const TermSum&);
Identity hat_identity(const Identity&);

// Multiset/word algebra used by the rewrite checker.
Monomial concat(const Monomial&, const Monomial&);
TermSum sum_add(const TermSum&, const TermSum&);
TermSum sum_mul(const TermSum&, const TermSum&);

}  // namespace sr2
