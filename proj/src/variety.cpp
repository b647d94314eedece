#include "sr2/variety.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace sr2 {

GenSet GenSet::of(std::initializer_list<Sr> ss) {
    GenSet g;
    for (Sr s : ss) g = g.with(s);
    return g;
}

GenSet GenSet::parse(const std::string& csv) {
    GenSet g;
    if (csv.empty() || csv == "trivial") return g;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        g = g.with(semiring_by_name(tok));
    }
    return g;
}

int GenSet::size() const { return std::popcount(mask); }

std::vector<Sr> GenSet::members() const {
    std::vector<Sr> out;
    for (Sr s : all_semirings())
        if (contains(s)) out.push_back(s);
    return out;
}

std::string GenSet::to_string() const {
    if (mask == 0) return "trivial";
    std::string out;
    for (Sr s : members()) {
        if (!out.empty()) out += ",";
        out += std::string(name_of(s));
    }
    return out;
}

namespace {

int env_thread_cap() {
    if (const char* v = std::getenv("VARIETY_THREADS")) {
        int n = std::atoi(v);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int threads = std::min(env_thread_cap(), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

// One 4-bit block per semiring; bit r = value on assignment r of (x, y),
// where x = bit 0 of r and y = bit 1 of r.
std::uint64_t combine(const std::vector<const SemiringTable*>& blocks, std::uint64_t a,
                      std::uint64_t b, bool mul) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& tab = mul ? blocks[i]->mul : blocks[i]->add;
        std::uint64_t slice = 0;
        for (int r = 0; r < 4; ++r) {
            int av = (a >> (4 * i + r)) & 1;
            int bv = (b >> (4 * i + r)) & 1;
            if (tab[av][bv]) slice |= std::uint64_t{1} << r;
        }
        out |= slice << (4 * i);
    }
    return out;
}

std::vector<std::uint64_t> closure_over(const std::vector<const SemiringTable*>& blocks) {
    const std::size_t nb = blocks.size();
    std::uint64_t gx = 0, gy = 0;
    for (std::size_t i = 0; i < nb; ++i) {
        gx |= std::uint64_t{0b1010} << (4 * i);  // x on assignments 00,10,01,11
        gy |= std::uint64_t{0b1100} << (4 * i);  // y likewise
    }
    std::vector<std::uint64_t> elems{gx, gy};
    std::unordered_set<std::uint64_t> seen(elems.begin(), elems.end());
    std::size_t frontier_start = 0;
    while (frontier_start < elems.size()) {
        std::size_t frontier_end = elems.size();
        std::vector<std::uint64_t> next;
        for (bool mul : {true, false}) {  // products before sums at equal depth
            for (std::size_t i = frontier_start; i < frontier_end; ++i)
                for (std::size_t j = 0; j < frontier_end; ++j) {
                    for (auto z : {combine(blocks, elems[i], elems[j], mul),
                                   combine(blocks, elems[j], elems[i], mul)}) {
                        if (seen.insert(z).second) next.push_back(z);
                    }
                }
        }
        frontier_start = frontier_end;
        elems.insert(elems.end(), next.begin(), next.end());
    }
    return elems;
}

bool kernel_member(const std::vector<std::uint64_t>& vectors, std::uint64_t t_mask4,
                   std::uint64_t a_mask4) {
    // Vectors agreeing on the T-blocks must agree on the A-block.
    std::unordered_map<std::uint64_t, std::uint64_t> first_a;
    for (std::uint64_t v : vectors) {
        auto [it, inserted] = first_a.emplace(v & t_mask4, v & a_mask4);
        if (!inserted && it->second != (v & a_mask4)) return false;
    }
    return true;
}

std::uint64_t block_mask(GenSet t) {
    std::uint64_t m = 0;
    for (Sr s : t.members()) m |= std::uint64_t{0xF} << (4 * static_cast<int>(s));
    return m;
}

}  // namespace

std::vector<PairedVector> free_closure(GenSet t, std::optional<Sr> extra) {
    std::vector<const SemiringTable*> blocks;
    for (Sr s : t.members()) blocks.push_back(&semiring(s));
    if (extra) blocks.push_back(&semiring(*extra));
    if (blocks.empty()) throw std::invalid_argument("free_closure of an empty block list");
    std::vector<PairedVector> out;
    for (std::uint64_t v : closure_over(blocks)) out.push_back(PairedVector{v});
    return out;
}

bool member_via_closure(Sr a, GenSet t) {
    GenSet rest{static_cast<std::uint16_t>(t.mask & ~GenSet::single(a).mask)};
    std::vector<const SemiringTable*> blocks;
    for (Sr s : rest.members()) blocks.push_back(&semiring(s));
    blocks.push_back(&semiring(a));
    if (t.contains(a)) return true;
    auto vectors = closure_over(blocks);
    std::uint64_t a_mask = std::uint64_t{0xF} << (4 * rest.size());
    std::uint64_t t_mask = (std::uint64_t{1} << (4 * rest.size())) - 1;
    return kernel_member(vectors, t_mask, a_mask);
}

const std::vector<std::uint64_t>& universal_closure() {
    static const std::vector<std::uint64_t> u = [] {
        std::vector<const SemiringTable*> blocks;
        for (Sr s : all_semirings()) blocks.push_back(&semiring(s));
        return closure_over(blocks);
    }();
    return u;
}

MembershipTable::MembershipTable() {
    const auto& u = universal_closure();
    std::vector<std::uint16_t> out(1024, 0);
    parallel_for(1024, [&](int mask) {
        std::uint64_t t_mask = block_mask(GenSet{static_cast<std::uint16_t>(mask)});
        std::unordered_map<std::uint64_t, std::array<std::uint64_t, 2>> groups;
        groups.reserve(u.size());
        std::uint16_t label = static_cast<std::uint16_t>(mask);
        std::uint16_t undecided = static_cast<std::uint16_t>(~mask & 0x3FF);
        for (std::uint64_t v : u) {
            auto [it, inserted] = groups.emplace(v & t_mask, std::array<std::uint64_t, 2>{v, 0});
            if (inserted) continue;
            std::uint64_t diff = it->second[0] ^ v;
            for (Sr s : all_semirings()) {
                int b = static_cast<int>(s);
                if ((undecided >> b) & 1 && ((diff >> (4 * b)) & 0xF)) undecided &= ~(1u << b);
            }
        }
        out[mask] = label | undecided;
    });
    for (int i = 0; i < 1024; ++i) labels_[i] = out[i];
}

const MembershipTable& MembershipTable::instance() {
    static const MembershipTable table;
    return table;
}

void MembershipTable::write_tsv(std::ostream& os) const {
    for (Sr s : all_semirings())
        for (int mask = 0; mask < 1024; ++mask)
            os << name_of(s) << '\t' << mask << '\t' << (member(s, static_cast<std::uint16_t>(mask)) ? 1 : 0)
               << '\n';
}

bool is_member(Sr a, GenSet t) { return MembershipTable::instance().member(a, t.mask); }

bool leq(GenSet t1, GenSet t2) {
    for (Sr s : t1.members())
        if (!is_member(s, t2)) return false;
    return true;
}

GenSet canonical_label(GenSet t) { return GenSet{MembershipTable::instance().canonical(t.mask)}; }

std::vector<GenSet> minimal_generating_subsets(GenSet label) {
    std::vector<GenSet> out;
    const auto& table = MembershipTable::instance();
    for (std::uint16_t sub = 0; sub < 1024; ++sub) {
        if ((sub & ~label.mask) || table.canonical(sub) != label.mask) continue;
        bool minimal = true;
        for (Sr s : GenSet{sub}.members()) {
            std::uint16_t smaller = sub & ~GenSet::single(s).mask;
            if (table.canonical(smaller) == label.mask) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(GenSet{sub});
    }
    return out;
}

}  // namespace sr2
