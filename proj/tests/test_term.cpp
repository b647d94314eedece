#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "sr2/models.hpp"
#include "sr2/term.hpp"

using namespace sr2;

namespace {

TermSum sum_of(std::initializer_list<std::pair<const char*, int>> parts) {
    TermSum u;
    for (auto& [text, k] : parts) {
        Monomial m;
        for (const char* p = text; *p; ++p) m.letters.emplace_back(*p);
        u.add(m, k);
    }
    return u;
}

}  // namespace

TEST_CASE("parsing denotes multisets of words") {
    Identity id = parse_identity("x + y ~ y + x");
    CHECK(id.lhs == sum_of({{"x", 1}, {"y", 1}}));
    CHECK(id.rhs == id.lhs);

    id = parse_identity("x^2 y ~ x y");
    CHECK(id.lhs == sum_of({{"xxy", 1}}));
    CHECK(id.rhs == sum_of({{"xy", 1}}));

    id = parse_identity("x + y ~ x + 3y");
    CHECK(id.lhs == sum_of({{"x", 1}, {"y", 1}}));
    CHECK(id.rhs == sum_of({{"x", 1}, {"y", 3}}));
}

TEST_CASE("parser accepts the full grammar") {
    CHECK(parse_sum("2x*y^2") == sum_of({{"xyy", 2}}));
    CHECK(parse_sum("x1y2") == parse_sum("x1 * y2"));
    CHECK(parse_sum("3 x ^ 2") == sum_of({{"xx", 3}}));
    CHECK(parse_identity("x = x").lhs == parse_identity("x ~ x").lhs);
    // summand order and grouping do not matter
    CHECK(parse_sum("y + x + y") == parse_sum("2y + x"));
}

TEST_CASE("parser rejects malformed input with positions") {
    CHECK_THROWS_AS(parse_identity("x +"), ParseError);
    CHECK_THROWS_AS(parse_identity("~ x"), ParseError);
    CHECK_THROWS_AS(parse_identity("x ~ y z +"), ParseError);
    CHECK_THROWS_AS(parse_identity("0x ~ x"), ParseError);
    CHECK_THROWS_AS(parse_identity("x^0 ~ x"), ParseError);
    CHECK_THROWS_AS(parse_identity("x ~ x ~ x"), ParseError);
    CHECK_THROWS_AS(parse_identity("X ~ x"), ParseError);
    CHECK_THROWS_AS(parse_sum(""), ParseError);
    try {
        parse_identity("x + $ ~ y");
    } catch (const ParseError& e) {
        CHECK(e.pos == 4);
    }
}

TEST_CASE("canonical rendering") {
    CHECK(render(parse_identity("x+3y ~ x+y")) == "x + 3y ~ x + y");
    CHECK(render(parse_identity("x^2y ~ xy")) == "x^2y ~ xy");
    CHECK(render(parse_sum("y + x")) == "x + y");
    CHECK(render(parse_sum("xyx")) == "xyx");      // only consecutive repeats group
    CHECK(render(parse_sum("x*x*y")) == "x^2y");
}

TEST_CASE("render/parse round trip is the identity on canonical forms") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> nsum(1, 5), nlen(1, 6), nvar(0, 3), ncoef(1, 4);
    const char* names = "xyzw";
    for (int t = 0; t < 500; ++t) {
        TermSum u;
        int m = nsum(rng);
        for (int i = 0; i < m; ++i) {
            Monomial mono;
            int len = nlen(rng);
            for (int p = 0; p < len; ++p) mono.letters.emplace_back(names[nvar(rng)]);
            u.add(mono, ncoef(rng));
        }
        Identity id{u, u};
        CHECK(parse_identity(render(id)) == id);
    }
}

TEST_CASE("monomial statistics") {
    Monomial xyx = parse_sum("xyx").summands.begin()->first;
    CHECK(head(xyx) == Variable{'x'});
    CHECK(tail(xyx) == Variable{'x'});
    CHECK(content(xyx) == std::set<Variable>{Variable{'x'}, Variable{'y'}});
    CHECK(length(xyx) == 3);

    Monomial x = parse_sum("x").summands.begin()->first;
    CHECK(head(x) == tail(x));
    CHECK(content(x) == std::set<Variable>{Variable{'x'}});
    CHECK(length(x) == 1);

    Monomial xxy = parse_sum("x^2y").summands.begin()->first;
    CHECK(content(xxy) == std::set<Variable>{Variable{'x'}, Variable{'y'}});
    CHECK(length(xxy) == 3);
}

TEST_CASE("sum statistics") {
    TermSum u = parse_sum("xy + z");
    CHECK(sum_heads(u) == std::set<Variable>{Variable{'x'}, Variable{'z'}});
    CHECK(sum_tails(u) == std::set<Variable>{Variable{'y'}, Variable{'z'}});
    CHECK(sum_content(u) == std::set<Variable>{Variable{'x'}, Variable{'y'}, Variable{'z'}});

    TermSum v = parse_sum("x + 3y");
    CHECK(occ(parse_sum("y").summands.begin()->first, v) == 3);
    CHECK(occ(parse_sum("z").summands.begin()->first, parse_sum("x + y")) == 0);

    // invariance under re-ordering of the input text
    CHECK(sum_heads(parse_sum("z + xy")) == sum_heads(u));
    CHECK(parse_sum("z + xy") == u);
}

TEST_CASE("monomial normal forms") {
    auto mono = [](const char* s) { return parse_sum(s).summands.begin()->first; };
    CHECK(mono_normal_form(mono("x^2y")) == mono_normal_form(mono("xy")));
    CHECK(mono_normal_form(mono("x")) != mono_normal_form(mono("x^2")));
    CHECK(mono_normal_form(mono("xy^2x")) == mono_normal_form(mono("xyx")));

    // oracle confirmation for the two derived facts above
    std::vector<Sr> ten(all_semirings().begin(), all_semirings().end());
    CHECK_FALSE(satisfies(Sr::Z2, parse_identity("x ~ x^2")));
    CHECK(satisfies_all(ten, parse_identity("xy^2x ~ xyx")));
}

TEST_CASE("normal form equality matches variety equality on small monomials") {
    // every pair of monomials with <= 3 variables and length <= 5
    std::vector<Monomial> monos;
    const std::vector<Variable> vars{Variable{'x'}, Variable{'y'}, Variable{'z'}};
    std::vector<Monomial> layer;
    for (const Variable& v : vars) layer.push_back(Monomial{{v}});
    for (int len = 1; len <= 5; ++len) {
        monos.insert(monos.end(), layer.begin(), layer.end());
        std::vector<Monomial> next;
        for (const Monomial& m : layer)
            for (const Variable& v : vars) {
                Monomial n = m;
                n.letters.push_back(v);
                next.push_back(std::move(n));
            }
        layer = std::move(next);
    }
    REQUIRE(monos.size() == 3 + 9 + 27 + 81 + 243);

    // group by normal form, then compare every pair through one
    // representative per class against the brute-force oracle
    std::vector<Sr> ten(all_semirings().begin(), all_semirings().end());
    std::map<std::string, std::vector<std::size_t>> classes;
    auto nf_key = [](const MonoNF& nf) {
        std::string k = nf.bare ? "b:" : "s:";
        k += nf.hd.name + "|" + nf.tl.name + "|";
        for (auto& v : nf.cont) k += v.name;
        return k;
    };
    for (std::size_t i = 0; i < monos.size(); ++i)
        classes[nf_key(mono_normal_form(monos[i]))].push_back(i);

    // within a class: everything equal to the representative
    for (auto& [key, members] : classes) {
        TermSum rep;
        rep.add(monos[members.front()]);
        for (std::size_t i : members) {
            TermSum u;
            u.add(monos[i]);
            REQUIRE(satisfies_all(ten, Identity{rep, u}));
        }
    }
    // across classes: representatives pairwise distinguishable
    std::vector<std::size_t> reps;
    for (auto& [key, members] : classes) reps.push_back(members.front());
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            TermSum a, b;
            a.add(monos[reps[i]]);
            b.add(monos[reps[j]]);
            REQUIRE_FALSE(satisfies_all(ten, Identity{a, b}));
        }
    CHECK(classes.size() == 27);  // the three-variable normal-form classes
}

TEST_CASE("hat substitution doubles every variable") {
    Identity h = hat_identity(parse_identity("x + x ~ x"));
    CHECK(h == parse_identity("4x ~ 2x"));

    h = hat_identity(parse_identity("xy ~ x"));
    CHECK(h == parse_identity("4xy ~ 2x"));

    std::vector<Sr> ten(all_semirings().begin(), all_semirings().end());
    CHECK(satisfies_all(ten, hat_identity(parse_identity("x + x ~ x"))));

    // multiplicities scale by 2^length
    TermSum u = parse_sum("2xy + z + 3xyz");
    TermSum hu = hat_sum(u);
    for (auto& [mono, k] : u.summands) CHECK(occ(mono, hu) == k * (1 << mono.length()));
}
