#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sr2/term.hpp"
#include "sr2/variety.hpp"

// The lattice of subset-generated subvarieties: enumeration over all 1024
// generator subsets, order and Hasse diagram, joins/meets, the projection
// onto the additively idempotent part, intervals over the 64 ai classes,
// and relative-axiomatization checks.

namespace sr2 {

enum class IntervalCase { N2T2, T2only, N2only, Neither };
std::string_view case_name(IntervalCase);

struct VarietyClass {
    std::uint16_t label = 0;  // canonical generator bitmask
    bool is_ai = false;       // no generator outside the six ai semirings
};

struct IntervalReport {
    std::uint16_t base = 0, top = 0;
    IntervalCase tag = IntervalCase::Neither;
    std::vector<std::uint16_t> members;                        // sorted by label
    std::vector<std::pair<std::uint16_t, std::uint16_t>> covers;  // restricted Hasse edges
};

struct LatticeError : std::logic_error {
    using std::logic_error::logic_error;
};

class SubvarietyLattice {
public:
    // Builds the class set, order, covers, and meet table; asserts the
    // lattice laws (unique joins and meets) while doing so.
    static SubvarietyLattice enumerate();

    int size() const { return static_cast<int>(classes_.size()); }
    const std::vector<VarietyClass>& classes() const { return classes_; }
    const std::vector<std::pair<std::uint16_t, std::uint16_t>>& covers() const { return covers_; }

    bool contains(std::uint16_t label) const;
    const VarietyClass& cls(std::uint16_t label) const;

    // Order is canonical-label inclusion (containment of generated varieties).
    bool leq(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t join(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t meet(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t bottom() const { return 0; }
    std::uint16_t top() const { return 0x3FF; }

    // V -> V intersected with the ai part (drop the non-ai generators).
    std::uint16_t phi(std::uint16_t label) const;
    // Top of the interval over an ai base: join with the four non-ai classes.
    std::uint16_t hat(std::uint16_t ai_base) const;

    IntervalReport interval(std::uint16_t ai_base) const;  // throws if base is not ai

    struct RelativeAxiomResult {
        bool pass = false;
        std::uint16_t computed_max = 0;   // maximal class below hat(base) whose
                                          // generators all satisfy the identity
        std::uint16_t expected_join = 0;  // join(base, expected)
        std::vector<std::uint16_t> maximal_witnesses;  // >1 entries refute uniqueness
    };
    RelativeAxiomResult check_relative_axiom(std::uint16_t ai_base, const Identity& extra,
                                             GenSet expected) const;

    // Probe family for the additive cancellation schema x + u' ~ 2x + v'
    // (u' ~ v' ranging over identities of the base): fixed one-sided probes
    // plus instances built from the base generators' defining identities.
    struct SchemaProbeResult {
        bool pass = false;
        std::uint16_t computed_max = 0, expected_join = 0;
        std::vector<std::string> probes;
    };
    SchemaProbeResult check_schema_probes(std::uint16_t ai_base) const;

    std::string export_dot() const;
    std::string export_dot(const IntervalReport&) const;
    std::string export_json() const;

private:
    SubvarietyLattice() = default;
    int index(std::uint16_t label) const;

    std::vector<VarietyClass> classes_;           // sorted by label
    std::vector<int> index_by_label_;             // 1024 entries, -1 if absent
    std::vector<std::vector<std::uint64_t>> descendants_;  // bitset rows over class indices
    std::vector<std::pair<std::uint16_t, std::uint16_t>> covers_;
    std::vector<std::uint16_t> meet_;             // size*size table
};

}  // namespace sr2
