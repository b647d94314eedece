#include "sr2/lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "json.hpp"

namespace sr2 {

namespace {

constexpr std::uint16_t kAiMask = 0x03F;
constexpr std::uint16_t kNonAiMask = 0x3C0;

bool subset(std::uint16_t a, std::uint16_t b) { return (a & ~b) == 0; }

std::string label_text(std::uint16_t label) { return GenSet{label}.to_string(); }

}  // namespace

std::string_view case_name(IntervalCase c) {
    switch (c) {
        case IntervalCase::N2T2: return "N2T2";
        case IntervalCase::T2only: return "T2only";
        case IntervalCase::N2only: return "N2only";
        case IntervalCase::Neither: return "neither";
    }
    return "?";
}

int SubvarietyLattice::index(std::uint16_t label) const {
    return label < index_by_label_.size() ? index_by_label_[label] : -1;
}

bool SubvarietyLattice::contains(std::uint16_t label) const { return index(label) >= 0; }

const VarietyClass& SubvarietyLattice::cls(std::uint16_t label) const {
    int i = index(label);
    if (i < 0) throw std::invalid_argument("not a canonical class label: " + std::to_string(label));
    return classes_[i];
}

bool SubvarietyLattice::leq(std::uint16_t a, std::uint16_t b) const {
    cls(a);
    cls(b);
    return subset(a, b);
}

SubvarietyLattice SubvarietyLattice::enumerate() {
    SubvarietyLattice lat;
    const auto& table = MembershipTable::instance();

    std::vector<bool> present(1024, false);
    for (int mask = 0; mask < 1024; ++mask) present[table.canonical(static_cast<std::uint16_t>(mask))] = true;
    for (int label = 0; label < 1024; ++label)
        if (present[label])
            lat.classes_.push_back(VarietyClass{static_cast<std::uint16_t>(label),
                                                (label & kNonAiMask) == 0});

    const int n = lat.size();
    lat.index_by_label_.assign(1024, -1);
    for (int i = 0; i < n; ++i) lat.index_by_label_[lat.classes_[i].label] = i;

    const int words = (n + 63) / 64;
    lat.descendants_.assign(n, std::vector<std::uint64_t>(words, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (subset(lat.classes_[j].label, lat.classes_[i].label))
                lat.descendants_[i][j / 64] |= std::uint64_t{1} << (j % 64);

    // Hasse edges: transitive reduction of the inclusion order. i is
    // covered by j when nothing lies strictly between them.
    std::vector<std::vector<std::uint64_t>> ancestors(n, std::vector<std::uint64_t>(words, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (subset(lat.classes_[i].label, lat.classes_[j].label))
                ancestors[i][j / 64] |= std::uint64_t{1} << (j % 64);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !subset(lat.classes_[i].label, lat.classes_[j].label)) continue;
            bool between = false;
            for (int w = 0; w < words && !between; ++w) {
                std::uint64_t bits = ancestors[i][w] & lat.descendants_[j][w];
                if (w == i / 64) bits &= ~(std::uint64_t{1} << (i % 64));
                if (w == j / 64) bits &= ~(std::uint64_t{1} << (j % 64));
                between = bits != 0;
            }
            if (!between) lat.covers_.emplace_back(lat.classes_[i].label, lat.classes_[j].label);
        }
    std::sort(lat.covers_.begin(), lat.covers_.end());

    // Meets: scan the common lower bounds and insist on a unique maximum.
    // Joins: canonical label of the union, checked to be the least upper bound.
    lat.meet_.assign(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::uint64_t> common(words);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            for (int w = 0; w < words; ++w) common[w] = lat.descendants_[i][w] & lat.descendants_[j][w];
            int best = -1;
            for (int w = 0; w < words; ++w) {
                std::uint64_t bits = common[w];
                while (bits) {
                    int k = w * 64 + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (best < 0 || std::popcount(lat.classes_[k].label) > std::popcount(lat.classes_[best].label))
                        best = k;
                }
            }
            if (best < 0) throw LatticeError("no common lower bound");
            for (int w = 0; w < words; ++w)
                if (common[w] & ~lat.descendants_[best][w])
                    throw LatticeError("meet is not unique below " + label_text(lat.classes_[i].label) +
                                       " and " + label_text(lat.classes_[j].label));
            lat.meet_[static_cast<std::size_t>(i) * n + j] = lat.classes_[best].label;
            lat.meet_[static_cast<std::size_t>(j) * n + i] = lat.classes_[best].label;

            std::uint16_t join_label =
                table.canonical(lat.classes_[i].label | lat.classes_[j].label);
            if (!subset(lat.classes_[i].label, join_label) || !subset(lat.classes_[j].label, join_label))
                throw LatticeError("join is not an upper bound");
            // Least: any canonical upper bound contains the union, hence its closure.
            if (lat.index(join_label) < 0) throw LatticeError("join label is not canonical");
        }
    return lat;
}

std::uint16_t SubvarietyLattice::join(std::uint16_t a, std::uint16_t b) const {
    cls(a);
    cls(b);
    return MembershipTable::instance().canonical(a | b);
}

std::uint16_t SubvarietyLattice::meet(std::uint16_t a, std::uint16_t b) const {
    return meet_[static_cast<std::size_t>(index(a)) * size() + index(b)];
}

std::uint16_t SubvarietyLattice::phi(std::uint16_t label) const {
    cls(label);
    return label & kAiMask;
}

std::uint16_t SubvarietyLattice::hat(std::uint16_t ai_base) const {
    return join(ai_base, MembershipTable::instance().canonical(kNonAiMask));
}

IntervalReport SubvarietyLattice::interval(std::uint16_t ai_base) const {
    if (!cls(ai_base).is_ai) throw std::invalid_argument("interval base must be an ai class");
    IntervalReport rep;
    rep.base = ai_base;
    rep.top = hat(ai_base);
    bool n2 = GenSet{ai_base}.contains(Sr::N2);
    bool t2 = GenSet{ai_base}.contains(Sr::T2);
    rep.tag = n2 ? (t2 ? IntervalCase::N2T2 : IntervalCase::N2only)
                 : (t2 ? IntervalCase::T2only : IntervalCase::Neither);
    for (const auto& c : classes_)
        if (subset(ai_base, c.label) && subset(c.label, rep.top) && phi(c.label) == ai_base)
            rep.members.push_back(c.label);
    for (auto& [lo, hi] : covers_) {
        bool lo_in = std::binary_search(rep.members.begin(), rep.members.end(), lo);
        bool hi_in = std::binary_search(rep.members.begin(), rep.members.end(), hi);
        if (lo_in && hi_in) rep.covers.emplace_back(lo, hi);
    }
    return rep;
}

SubvarietyLattice::RelativeAxiomResult SubvarietyLattice::check_relative_axiom(
    std::uint16_t ai_base, const Identity& extra, GenSet expected) const {
    RelativeAxiomResult res;
    std::uint16_t top = hat(ai_base);
    std::uint16_t sat = 0;
    for (Sr s : all_semirings())
        if (satisfies(s, extra)) sat |= static_cast<std::uint16_t>(1u << static_cast<int>(s));

    // Maximal classes below the interval top whose generators all satisfy it.
    std::vector<std::uint16_t> candidates;
    for (const auto& c : classes_)
        if (subset(c.label, top) && subset(c.label, sat)) candidates.push_back(c.label);
    for (std::uint16_t a : candidates) {
        bool maximal = true;
        for (std::uint16_t b : candidates)
            if (a != b && subset(a, b)) {
                maximal = false;
                break;
            }
        if (maximal) res.maximal_witnesses.push_back(a);
    }
    res.expected_join = MembershipTable::instance().canonical(ai_base | expected.mask);
    if (res.maximal_witnesses.size() == 1) {
        res.computed_max = res.maximal_witnesses.front();
        res.pass = (res.computed_max == res.expected_join);
    }
    return res;
}

SubvarietyLattice::SchemaProbeResult SubvarietyLattice::check_schema_probes(
    std::uint16_t ai_base) const {
    SchemaProbeResult res;
    for (const char* t : {"y", "yz", "y^2", "y + z", "yzw"}) {
        res.probes.push_back(std::string("x + ") + t + " ~ 2x + " + t);
    }
    // Instances with u' ~ v' drawn from the base generators' defining
    // identities, renamed away from x. The schema requires u' ~ v' to hold
    // in the whole base, so instances failing in some other base generator
    // are filtered out.
    static const std::map<Sr, std::vector<std::pair<const char*, const char*>>> bases = {
        {Sr::L2, {{"y + y", "y"}, {"yz", "y"}}},
        {Sr::R2, {{"y + y", "y"}, {"yz", "z"}}},
        {Sr::M2, {{"y + y", "y"}, {"y + z", "yz"}}},
        {Sr::D2, {{"y + y", "y"}, {"y^2", "y"}, {"yz", "zy"}, {"y + yz", "y"}}},
        {Sr::N2, {{"y + y", "y"}, {"yz", "tu"}, {"t + yz", "t"}}},
        {Sr::T2, {{"y + y", "y"}, {"yz", "tu"}, {"t + yz", "yz"}}},
    };
    for (Sr s : GenSet{ai_base}.members())
        for (auto& [u, v] : bases.at(s)) {
            Identity inner = parse_identity(std::string(u) + " ~ " + v);
            bool holds_in_base = true;
            for (Sr t : GenSet{ai_base}.members())
                if (!satisfies(t, inner)) holds_in_base = false;
            if (holds_in_base) res.probes.push_back(std::string("x + ") + u + " ~ 2x + " + v);
        }

    std::uint16_t sat = 0x3FF;
    for (const std::string& p : res.probes) {
        Identity id = parse_identity(p);
        for (Sr s : all_semirings())
            if (!satisfies(s, id)) sat &= ~static_cast<std::uint16_t>(1u << static_cast<int>(s));
    }
    std::uint16_t top = hat(ai_base);
    std::uint16_t best = 0;
    std::vector<std::uint16_t> candidates;
    for (const auto& c : classes_)
        if (subset(c.label, top) && subset(c.label, sat)) {
            candidates.push_back(c.label);
            if (std::popcount(c.label) > std::popcount(best)) best = c.label;
        }
    for (std::uint16_t c : candidates)
        if (!subset(c, best)) return res;  // no unique maximum: refuted
    res.computed_max = best;
    res.expected_join =
        MembershipTable::instance().canonical(ai_base | GenSet::of({Sr::Z2, Sr::W2}).mask);
    res.pass = (best == res.expected_join);
    return res;
}

std::string SubvarietyLattice::export_dot() const {
    std::ostringstream os;
    os << "digraph subvarieties {\n  rankdir=BT;\n";
    for (const auto& c : classes_)
        os << "  n" << c.label << " [label=\"" << label_text(c.label) << "\"];\n";
    for (auto& [lo, hi] : covers_) os << "  n" << lo << " -> n" << hi << ";\n";
    os << "}\n";
    return os.str();
}

std::string SubvarietyLattice::export_dot(const IntervalReport& rep) const {
    std::ostringstream os;
    os << "digraph interval {\n  rankdir=BT;\n  label=\"[" << label_text(rep.base) << ", "
       << label_text(rep.top) << "] case " << case_name(rep.tag) << "\";\n";
    for (std::uint16_t m : rep.members)
        os << "  n" << m << " [label=\"" << label_text(m) << "\"];\n";
    for (auto& [lo, hi] : rep.covers) os << "  n" << lo << " -> n" << hi << ";\n";
    os << "}\n";
    return os.str();
}

std::string SubvarietyLattice::export_json() const {
    nlohmann::ordered_json j;
    j["classes"] = nlohmann::ordered_json::array();
    for (const auto& c : classes_) {
        nlohmann::ordered_json e;
        e["mask"] = c.label;
        e["generators"] = nlohmann::ordered_json::array();
        for (Sr s : GenSet{c.label}.members()) e["generators"].push_back(std::string(name_of(s)));
        e["is_ai"] = c.is_ai;
        j["classes"].push_back(e);
    }
    j["covers"] = nlohmann::ordered_json::array();
    for (auto& [lo, hi] : covers_) j["covers"].push_back({lo, hi});
    j["intervals"] = nlohmann::ordered_json::array();
    for (int base = 0; base < 64; ++base) {
        IntervalReport rep = interval(static_cast<std::uint16_t>(base));
        nlohmann::ordered_json e;
        e["base"] = rep.base;
        e["top"] = rep.top;
        e["case"] = std::string(case_name(rep.tag));
        e["members"] = rep.members;
        j["intervals"].push_back(e);
    }
    return j.dump(2);
}

}  // namespace sr2
