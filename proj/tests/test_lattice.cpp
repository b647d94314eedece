#include "doctest.h"

#include <random>
#include <set>

#include "sr2/lattice.hpp"
#include "sr2/models.hpp"
#include "sr2/term.hpp"
#include "sr2/variety.hpp"

using namespace sr2;

namespace {

const SubvarietyLattice& lat() {
    static const SubvarietyLattice l = SubvarietyLattice::enumerate();
    return l;
}

}  // namespace

TEST_CASE("enumeration census") {
    CHECK(lat().size() == 800);
    int ai = 0;
    for (auto& c : lat().classes())
        if (c.is_ai) ++ai;
    CHECK(ai == 64);
    CHECK(lat().covers().size() == 3728);
    CHECK(lat().bottom() == 0);
    CHECK(lat().top() == 0x3FF);
    CHECK(lat().contains(GenSet::of({Sr::L2, Sr::Z7}).mask));
    CHECK_FALSE(lat().contains(GenSet::of({Sr::W2, Sr::T2}).mask));  // closes to include Z2
}

TEST_CASE("order, joins and meets") {
    std::uint16_t l2 = canonical_label(GenSet::single(Sr::L2)).mask;
    std::uint16_t r2 = canonical_label(GenSet::single(Sr::R2)).mask;
    std::uint16_t j = lat().join(l2, r2);
    CHECK(GenSet{j}.contains(Sr::L2));
    CHECK(GenSet{j}.contains(Sr::R2));
    CHECK(lat().meet(j, j) == j);
    CHECK(lat().meet(l2, r2) == lat().bottom());
    CHECK(lat().leq(l2, j));

    std::uint16_t zw = canonical_label(GenSet::of({Sr::Z2, Sr::W2, Sr::Z7, Sr::Z8})).mask;
    CHECK(lat().join(GenSet::ai().mask, zw) == lat().top());

    // meets agree with label intersection (closed sets form a closure system)
    std::mt19937 rng(31);
    std::uniform_int_distribution<std::size_t> pick(0, lat().classes().size() - 1);
    for (int t = 0; t < 2000; ++t) {
        std::uint16_t a = lat().classes()[pick(rng)].label;
        std::uint16_t b = lat().classes()[pick(rng)].label;
        CHECK(lat().meet(a, b) == (a & b));
        CHECK(lat().leq(lat().meet(a, b), a));
        CHECK(lat().leq(a, lat().join(a, b)));
    }
}

TEST_CASE("phi drops the non-idempotent generators") {
    CHECK(lat().phi(lat().top()) == GenSet::ai().mask);
    std::set<std::uint16_t> image;
    for (auto& c : lat().classes()) image.insert(lat().phi(c.label));
    CHECK(image.size() == 64);

    std::mt19937 rng(37);
    std::uniform_int_distribution<std::size_t> pick(0, lat().classes().size() - 1);
    for (int t = 0; t < 2000; ++t) {
        std::uint16_t a = lat().classes()[pick(rng)].label;
        std::uint16_t b = lat().classes()[pick(rng)].label;
        CHECK(lat().phi(lat().join(a, b)) == lat().join(lat().phi(a), lat().phi(b)));
        CHECK(lat().phi(lat().meet(a, b)) == lat().meet(lat().phi(a), lat().phi(b)));
    }
}

TEST_CASE("intervals partition the lattice") {
    std::size_t total = 0;
    std::map<IntervalCase, std::set<std::pair<int, int>>> shapes;
    std::map<IntervalCase, int> tag_count;
    for (int base = 0; base < 64; ++base) {
        IntervalReport rep = lat().interval(static_cast<std::uint16_t>(base));
        total += rep.members.size();
        shapes[rep.tag].insert({static_cast<int>(rep.members.size()),
                                static_cast<int>(rep.covers.size())});
        ++tag_count[rep.tag];
        for (std::uint16_t m : rep.members) CHECK(lat().phi(m) == base);
    }
    CHECK(total == 800);
    CHECK(tag_count[IntervalCase::N2T2] == 16);
    CHECK(tag_count[IntervalCase::T2only] == 16);
    CHECK(tag_count[IntervalCase::N2only] == 16);
    CHECK(tag_count[IntervalCase::Neither] == 16);
    // computed shape census, frozen
    CHECK(shapes[IntervalCase::N2T2] == std::set<std::pair<int, int>>{{12, 20}});
    CHECK(shapes[IntervalCase::T2only] == std::set<std::pair<int, int>>{{12, 20}});
    CHECK(shapes[IntervalCase::N2only] == std::set<std::pair<int, int>>{{12, 20}});
    CHECK(shapes[IntervalCase::Neither] == std::set<std::pair<int, int>>{{14, 25}});
}

TEST_CASE("interval members are joins of the base with non-ai classes") {
    IntervalReport rep = lat().interval(GenSet::ai().mask);
    CHECK(rep.tag == IntervalCase::N2T2);
    CHECK(rep.members.size() == 12);
    for (std::uint16_t m : rep.members) {
        std::uint16_t extra = m & 0x3C0;
        CHECK(lat().join(rep.base, canonical_label(GenSet{extra}).mask) == m);
    }
    CHECK_THROWS_AS(lat().interval(lat().top()), std::invalid_argument);
}

TEST_CASE("relative axiomatizations") {
    auto res = lat().check_relative_axiom(GenSet::ai().mask, parse_identity("2x^2 ~ 3x^2"),
                                          GenSet::of({Sr::Z2, Sr::W2, Sr::Z7}));
    CHECK(res.pass);

    // base without the zero-multiplication generator
    std::uint16_t b = GenSet::of({Sr::L2, Sr::M2}).mask;
    res = lat().check_relative_axiom(b, parse_identity("x^2 ~ x + 2x^2"), GenSet::of({Sr::Z2, Sr::Z8}));
    CHECK(res.pass);

    // x ~ x + x^2 marks the join with the xor-addition zero-multiplication
    // semiring exactly on bases without the constant-one multiplication
    res = lat().check_relative_axiom(GenSet::of({Sr::N2}).mask, parse_identity("x ~ x + x^2"),
                                     GenSet::of({Sr::Z7}));
    CHECK(res.pass);
    res = lat().check_relative_axiom(GenSet::of({Sr::T2}).mask, parse_identity("x ~ x + x^2"),
                                     GenSet::of({Sr::Z7}));
    CHECK_FALSE(res.pass);  // the base generator itself refutes the identity

    for (int base = 0; base < 64; ++base)
        CHECK(lat().check_schema_probes(static_cast<std::uint16_t>(base)).pass);
}

TEST_CASE("the idempotent-addition identity cuts out exactly the ai part") {
    Identity idem = parse_identity("x + x ~ x");
    std::uint16_t sat = 0;
    for (Sr s : all_semirings())
        if (satisfies(s, idem)) sat |= std::uint16_t(1u << static_cast<int>(s));
    CHECK(sat == GenSet::ai().mask);
    CHECK(lat().contains(sat));
}

TEST_CASE("exports are deterministic and well-formed") {
    std::string dot1 = lat().export_dot();
    std::string dot2 = lat().export_dot();
    CHECK(dot1 == dot2);
    CHECK(dot1.rfind("digraph", 0) == 0);

    IntervalReport rep = lat().interval(GenSet::of({Sr::L2}).mask);
    std::string idot = lat().export_dot(rep);
    // header, rankdir, label, one line per node and edge, closing brace
    CHECK(std::count(idot.begin(), idot.end(), '\n') ==
          4 + static_cast<long>(rep.members.size()) + static_cast<long>(rep.covers.size()));
    CHECK(rep.members.size() == 14);
    CHECK(rep.covers.size() == 25);

    std::string json = lat().export_json();
    CHECK(json == lat().export_json());
    CHECK(json.find("\"classes\"") != std::string::npos);
    CHECK(json.find("\"covers\"") != std::string::npos);
    CHECK(json.find("\"intervals\"") != std::string::npos);
}
