#include "doctest.h"

#include <random>

#include "sr2/criteria.hpp"
#include "sr2/models.hpp"
#include "sr2/term.hpp"

using namespace sr2;

namespace {

Identity random_identity(std::mt19937& rng, int max_vars, int max_summands, int max_len) {
    static const char* names = "abcdef";
    std::uniform_int_distribution<int> nv(1, max_vars);
    int n = nv(rng);
    auto side = [&] {
        TermSum u;
        std::uniform_int_distribution<int> ns(1, max_summands), nl(1, max_len), pick(0, n - 1);
        int m = ns(rng);
        for (int i = 0; i < m; ++i) {
            Monomial mono;
            int len = nl(rng);
            for (int p = 0; p < len; ++p) mono.letters.emplace_back(names[pick(rng)]);
            u.add(mono);
        }
        return u;
    };
    return Identity{side(), side()};
}

// The subset-quantified parity condition, evaluated literally.
bool z8_literal(const Identity& id) {
    auto vars = sorted_variables(id);
    auto count = [&](const TermSum& u, const std::set<Variable>& a) {
        int c = 0;
        for (auto& [mono, k] : u.summands) {
            auto cs = content(mono);
            if (std::includes(a.begin(), a.end(), cs.begin(), cs.end())) c += k;
        }
        return c;
    };
    for (std::size_t bits = 1; bits < (std::size_t{1} << vars.size()); ++bits) {
        std::set<Variable> a;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if ((bits >> i) & 1) a.insert(vars[i]);
        if (count(id.lhs, a) % 2 != count(id.rhs, a) % 2) return false;
    }
    return true;
}

// The two-quantifier content-domination condition, evaluated literally.
bool d2_literal(const Identity& id) {
    auto doms = [](const TermSum& u, const TermSum& v) {
        for (auto& [mu, ku] : u.summands) {
            auto cu = content(mu);
            bool found = false;
            for (auto& [mv, kv] : v.summands) {
                auto cv = content(mv);
                if (std::includes(cu.begin(), cu.end(), cv.begin(), cv.end())) found = true;
            }
            if (!found) return false;
        }
        return true;
    };
    return doms(id.lhs, id.rhs) && doms(id.rhs, id.lhs);
}

}  // namespace

TEST_CASE("criterion examples") {
    CHECK(criterion(Sr::M2, parse_identity("x + y ~ xy")));
    CHECK(criterion(Sr::Z7, parse_identity("3x ~ x")));
    CHECK_FALSE(criterion(Sr::Z8, parse_identity("x ~ x + x")));
    CHECK(criterion("Z7", parse_identity("3x ~ x")));
    CHECK_THROWS_AS(criterion("Q9", parse_identity("x ~ x")), std::invalid_argument);

    // oracle confirmations for the derived values
    CHECK(satisfies(Sr::Z7, parse_identity("3x ~ x")));
    CHECK_FALSE(satisfies(Sr::Z8, parse_identity("x ~ x + x")));
}

TEST_CASE("signature of a bare variable") {
    SemanticSignature sig = signature(parse_sum("x"));
    std::set<Variable> x{Variable{'x'}};
    CHECK(sig.heads == x);
    CHECK(sig.tails == x);
    CHECK(sig.contents == x);
    CHECK(sig.min_contents == std::set<std::set<Variable>>{x});
    CHECK(sig.unit_monomials == x);
    CHECK_FALSE(sig.has_long_monomial);
    CHECK(sig.is_bare_variable);
    CHECK_FALSE(sig.w2_plural);
    CHECK(sig.w2_content == x);
    CHECK(sig.odd_unit_monomials == x);
    CHECK(sig.odd_content_classes == std::set<std::set<Variable>>{x});
}

TEST_CASE("signature equalities from the defining identities") {
    CHECK(signature(parse_sum("x + 3y")) == signature(parse_sum("x + y")));
    CHECK(signature(parse_sum("x + xy + 2x^2")) == signature(parse_sum("x + xy")));
    CHECK(sr2_equal(parse_sum("x^2y"), parse_sum("xy")));
    CHECK_FALSE(sr2_equal(parse_sum("x"), parse_sum("2x")));
    CHECK(sr2_equal(parse_sum("x + yx"), parse_sum("x + yx")));
}

TEST_CASE("criteria equal brute-force satisfaction on random identities") {
    std::mt19937 rng(99);
    for (int t = 0; t < 20000; ++t) {
        Identity id = random_identity(rng, 6, 5, 6);
        for (Sr s : all_semirings()) {
            bool syntactic = criterion(s, id);
            bool semantic = satisfies(s, id);
            REQUIRE_MESSAGE(syntactic == semantic,
                            std::string(name_of(s)) << " disagrees on " << render(id));
        }
    }
}

TEST_CASE("signature equality decides joint satisfaction") {
    std::mt19937 rng(100);
    std::vector<Sr> ten(all_semirings().begin(), all_semirings().end());
    for (int t = 0; t < 10000; ++t) {
        Identity id = random_identity(rng, 4, 4, 4);
        REQUIRE(sr2_equal(id.lhs, id.rhs) == satisfies_all(ten, id));
    }
}

TEST_CASE("polynomial and subset-quantified parity conditions agree") {
    std::mt19937 rng(101);
    for (int t = 0; t < 8000; ++t) {
        Identity id = random_identity(rng, 4, 5, 5);
        CHECK(criterion(Sr::Z8, id) == z8_literal(id));
    }
    // and on an exhaustive two-variable pool
    std::vector<TermSum> pool;
    for (const char* s : {"x", "y", "2x", "x + y", "xy", "x + xy", "2xy + y", "x^2", "x^2 + y",
                          "3x", "x + 2y", "xy + yx"})
        pool.push_back(parse_sum(s));
    for (const auto& u : pool)
        for (const auto& v : pool) {
            Identity id{u, v};
            CHECK(criterion(Sr::Z8, id) == z8_literal(id));
        }
}

TEST_CASE("antichain form of content domination matches the literal form") {
    std::mt19937 rng(102);
    for (int t = 0; t < 8000; ++t) {
        Identity id = random_identity(rng, 4, 5, 5);
        CHECK(criterion(Sr::D2, id) == d2_literal(id));
    }
}

TEST_CASE("signatures are stable under renaming and reordering") {
    std::mt19937 rng(103);
    const char* names = "abcd";
    for (int t = 0; t < 500; ++t) {
        Identity id = random_identity(rng, 4, 4, 4);
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        auto rename = [&](const TermSum& u) {
            TermSum out;
            for (auto& [mono, k] : u.summands) {
                Monomial m2;
                for (auto& v : mono.letters) m2.letters.emplace_back(names[perm[v.name[0] - 'a']]);
                out.add(m2, k);
            }
            return out;
        };
        CHECK(sr2_equal(id.lhs, id.rhs) == sr2_equal(rename(id.lhs), rename(id.rhs)));
    }
}

TEST_CASE("explain reports per-semiring data") {
    auto reports = explain(parse_identity("x + y ~ xy"));
    REQUIRE(reports.size() == 10);
    CHECK(reports[static_cast<int>(Sr::M2)].holds);
    CHECK(reports[static_cast<int>(Sr::M2)].lhs_data == "C={x,y}");
    CHECK_FALSE(reports[static_cast<int>(Sr::N2)].holds);

    std::string text = explain_text(parse_identity("x ~ 2x"));
    CHECK(text.find("Z8") != std::string::npos);
    CHECK(text.find("fails") != std::string::npos);
    std::string json = explain_json(parse_identity("x + y ~ x + 3y"));
    CHECK(json.find("\"variety_satisfies\": true") != std::string::npos);
    json = explain_json(parse_identity("xy ~ zt"));
    CHECK(json.find("\"variety_satisfies\": false") != std::string::npos);
}
