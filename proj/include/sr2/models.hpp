#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sr2/term.hpp"

// The ten two-element semirings as explicit operation tables, term
// evaluation over them, and brute-force identity satisfaction. This is
// the ground-truth oracle the rest of the code is checked against.

namespace sr2 {

enum class Sr : int { L2 = 0, R2, M2, D2, N2, T2, Z2, W2, Z7, Z8 };
inline constexpr int kSemiringCount = 10;

const std::array<Sr, kSemiringCount>& all_semirings();
std::string_view name_of(Sr);
Sr semiring_by_name(const std::string& name);  // throws std::invalid_argument

struct SemiringTable {
    Sr id;
    // add[a][b] and mul[a][b] over the carrier {0,1}.
    std::array<std::array<std::uint8_t, 2>, 2> add;
    std::array<std::array<std::uint8_t, 2>, 2> mul;
};

const SemiringTable& semiring(Sr);
const SemiringTable& semiring(const std::string& name);

// Exhaustively checks commutativity/associativity of +, associativity
// of *, and both distributive laws. Throws std::logic_error on failure.
void validate(const SemiringTable&);

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Assignment = std::map<Variable, std::uint8_t>;

// Value of a term sum under an assignment. Throws std::invalid_argument
// on an unbound variable.
std::uint8_t eval_term(const SemiringTable&, const TermSum&, const Assignment&);

// The values of a sum on all 2^n assignments of `vars`, packed as bits:
// bit r is the value at the assignment where vars[i] = bit i of r.
// Assignments are thus enumerated in binary-counter order over the
// variables sorted by name.
struct FuncVec {
    int nvars = 0;
    std::vector<std::uint64_t> words;
    bool operator==(const FuncVec&) const = default;
};
FuncVec func_vec(const SemiringTable&, const TermSum&, const std::vector<Variable>& vars);

inline constexpr int kMaxSatisfactionVars = 20;  // 2^n blowup guard

bool satisfies(const SemiringTable&, const Identity&);  // throws ResourceLimit past the guard
bool satisfies(Sr, const Identity&);
bool satisfies_all(const std::vector<Sr>&, const Identity&);

// An assignment on which the two sides differ, if any.
std::optional<Assignment> refuting_assignment(const SemiringTable&, const Identity&);

// E+ = {a : a + a = a} with the restricted operations. For every valid
// semiring this set is closed under both operations; a closure failure
// is an internal error (std::logic_error).
struct SubSemiring {
    std::vector<std::uint8_t> elements;
    const SemiringTable* parent = nullptr;
};
SubSemiring additive_idempotents(const SemiringTable&);

}  // namespace sr2
