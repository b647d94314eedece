#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sr2/models.hpp"

// HSP membership and containment among varieties generated by subsets of
// the ten semirings, decided through the 2-generated free algebra: a
// two-element semiring lies in the variety generated by a set exactly
// when it satisfies every two-variable identity of that set.

namespace sr2 {

// A subset of the ten semirings, as a bitmask in enum order (L2 = bit 0,
// ..., Z8 = bit 9). May be empty (the trivial variety).
struct GenSet {
    std::uint16_t mask = 0;

    static GenSet of(std::initializer_list<Sr> ss);
    static GenSet all() { return GenSet{0x3FF}; }
    static GenSet ai() { return GenSet{0x03F}; }
    static GenSet single(Sr s) { return GenSet{static_cast<std::uint16_t>(1u << static_cast<int>(s))}; }
    // Comma-separated names; "" and "trivial" denote the empty set.
    static GenSet parse(const std::string& csv);

    bool contains(Sr s) const { return (mask >> static_cast<int>(s)) & 1; }
    bool subset_of(GenSet o) const { return (mask & ~o.mask) == 0; }
    GenSet with(Sr s) const { return GenSet{static_cast<std::uint16_t>(mask | (1u << static_cast<int>(s)))}; }
    GenSet unite(GenSet o) const { return GenSet{static_cast<std::uint16_t>(mask | o.mask)}; }
    GenSet intersect(GenSet o) const { return GenSet{static_cast<std::uint16_t>(mask & o.mask)}; }
    int size() const;
    std::vector<Sr> members() const;
    std::string to_string() const;  // "L2,R2" / "trivial"

    bool operator==(const GenSet&) const = default;
    auto operator<=>(const GenSet&) const = default;
};

// One element of the free algebra embedded in the product: per block a
// 4-bit slice, bit r = the value on the r-th assignment of (x, y).
// Block order: the generator set in enum order, then the extra block.
struct PairedVector {
    std::uint64_t bits = 0;
    bool operator==(const PairedVector&) const = default;
};

// Closure of the two projection vectors under blockwise + and *.
// Breadth-first from the generators, products before sums at equal depth.
std::vector<PairedVector> free_closure(GenSet t, std::optional<Sr> extra);

// Literal kernel test on free_closure(t, a): membership holds iff vectors
// agreeing on all t-blocks agree on the a-block.
bool member_via_closure(Sr a, GenSet t);

// Same verdicts computed from a single closure over all ten blocks (its
// projection to any subset of blocks is the closure over that subset).
bool is_member(Sr a, GenSet t);
bool leq(GenSet t1, GenSet t2);
GenSet canonical_label(GenSet t);

// All 10 x 1024 verdicts, precomputed once.
class MembershipTable {
public:
    static const MembershipTable& instance();
    bool member(Sr a, std::uint16_t subset_mask) const {
        return (labels_[subset_mask] >> static_cast<int>(a)) & 1;
    }
    std::uint16_t canonical(std::uint16_t subset_mask) const { return labels_[subset_mask]; }
    // One line per verdict: "semiring TAB subset-bitmask TAB 0/1".
    void write_tsv(std::ostream&) const;

private:
    MembershipTable();
    std::array<std::uint16_t, 1024> labels_{};
};

// The closure over all ten blocks (40-bit vectors in enum block order).
const std::vector<std::uint64_t>& universal_closure();

// Minimal generating subsets of the class labelled by `label`, reported
// as data (uniqueness is not asserted).
std::vector<GenSet> minimal_generating_subsets(GenSet label);

}  // namespace sr2
