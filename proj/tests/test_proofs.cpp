#include "doctest.h"

#include <filesystem>

#include "sr2/criteria.hpp"
#include "sr2/models.hpp"
#include "sr2/proofs.hpp"
#include "sr2/term.hpp"

using namespace sr2;

namespace {

RewriteStep step(const char* axiom, bool forward,
                 std::initializer_list<std::pair<const char*, const char*>> subst,
                 std::initializer_list<int> summands,
                 std::optional<std::pair<int, int>> span = std::nullopt) {
    RewriteStep s;
    s.axiom = axiom;
    s.forward = forward;
    for (auto& [v, t] : subst) s.subst[Variable{std::string(v)}] = parse_sum(t);
    s.summands = summands;
    s.span = span;
    return s;
}

}  // namespace

TEST_CASE("registry contents") {
    const auto& reg = AxiomRegistry::instance();
    CHECK(reg.get("eq4").identity == parse_identity("xyxy ~ xy"));
    CHECK(reg.get("eq10").identity == parse_identity("x + y ~ x + 3y"));
    CHECK(reg.named_set("reduced") == std::vector<std::string>{"eq3", "eq4", "eq5", "eq6", "eq10"});
    CHECK(reg.named_set("defining").size() == 10);
    CHECK(reg.named_set("Z8").size() == 3);
    CHECK(reg.get("D2.b4").identity == parse_identity("x + xy ~ x"));
    CHECK_THROWS_AS(reg.get("eq99"), std::invalid_argument);
    CHECK_THROWS_AS(reg.named_set("nope"), std::invalid_argument);
}

TEST_CASE("ac normalization is the canonical multiset form") {
    CHECK(render(ac_normal(parse_sum("y + x"))) == "x + y");
    TermSum u = parse_sum("zy + 2x");
    CHECK(ac_normal(ac_normal(u)) == ac_normal(u));
    CHECK(expanded_summands(parse_sum("x + 2y")) ==
          std::vector<Monomial>{parse_sum("x").summands.begin()->first,
                                parse_sum("y").summands.begin()->first,
                                parse_sum("y").summands.begin()->first});
}

TEST_CASE("single steps") {
    // whole-term square introduction: x^3 -> (x^2 x)^2 = x^6
    TermSum x3 = parse_sum("x^3");
    TermSum x6 = apply_step(x3, step("eq4", false, {{"x", "x^2"}, {"y", "x"}}, {0}, {{0, 3}}));
    CHECK(x6 == parse_sum("x^6"));

    // collapse an inner four-letter square, twice
    TermSum x4 = apply_step(x6, step("eq4", true, {{"x", "x"}, {"y", "x"}}, {0}, {{0, 4}}));
    CHECK(x4 == parse_sum("x^4"));
    CHECK(apply_step(x4, step("eq4", true, {{"x", "x"}, {"y", "x"}}, {0}, {{0, 4}})) ==
          parse_sum("x^2"));

    // sum-level rewrite of both summands
    TermSum uv = apply_step(parse_sum("x + y"), step("eq10", true, {{"x", "x"}, {"y", "y"}}, {0, 1}));
    CHECK(uv == parse_sum("x + 3y"));
}

TEST_CASE("steps are deterministic") {
    TermSum u = parse_sum("x + yz");
    RewriteStep s = step("eq5", true, {{"x", "x"}, {"y", "y"}, {"z", "z"}}, {0, 1});
    CHECK(apply_step(u, s) == apply_step(u, s));
}

TEST_CASE("step errors carry diffs") {
    TermSum u = parse_sum("x + yz");
    // wrong site: the instantiated side does not match
    CHECK_THROWS_AS(apply_step(u, step("eq5", true, {{"x", "y"}, {"y", "y"}, {"z", "z"}}, {0, 1})),
                    StepError);
    try {
        apply_step(u, step("eq5", true, {{"x", "y"}, {"y", "y"}, {"z", "z"}}, {0, 1}));
    } catch (const StepError& e) {
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
    // missing variable
    CHECK_THROWS_AS(apply_step(u, step("eq5", true, {{"x", "x"}, {"y", "y"}}, {0, 1})), StepError);
    // factor span on a sum-shaped axiom
    CHECK_THROWS_AS(
        apply_step(u, step("eq5", true, {{"x", "x"}, {"y", "y"}, {"z", "z"}}, {1}, {{0, 2}})),
        StepError);
    // bad indices
    CHECK_THROWS_AS(apply_step(u, step("eq10", true, {{"x", "x"}, {"y", "y"}}, {0, 7})), StepError);
    CHECK_THROWS_AS(apply_step(u, step("eq10", true, {{"x", "x"}, {"y", "y"}}, {0, 0})), StepError);
}

TEST_CASE("empty scripts prove reflexive goals") {
    ProofScript s;
    s.goal = parse_identity("x + y ~ y + x");
    s.axiom_set = "reduced";
    CHECK(check_script(s).accepted);
    s.goal = parse_identity("x ~ y");
    Verdict v = check_script(s);
    CHECK_FALSE(v.accepted);
    CHECK(v.failed_step == 0);
}

TEST_CASE("corpus scripts are accepted and sound") {
    namespace fs = std::filesystem;
    const auto& reg = AxiomRegistry::instance();
    int positives = 0;
    for (auto& entry : fs::directory_iterator("proofs/corpus")) {
        if (entry.path().extension() != ".json") continue;
        bool negative = entry.path().filename().string().rfind("negative_", 0) == 0;
        ProofScript script = load_script_file(entry.path().string());
        Verdict v = check_script(script);
        if (negative) {
            CHECK_FALSE(v.accepted);
            continue;
        }
        ++positives;
        CHECK_MESSAGE(v.accepted, entry.path().filename().string() << ": " << v.message
                                                                   << " at step " << v.failed_step);
        // soundness against the models of the axiom set
        std::vector<Sr> models_of_set;
        for (Sr s : all_semirings()) {
            bool all = true;
            for (const std::string& aid : reg.named_set(script.axiom_set))
                if (!satisfies(s, reg.get(aid).identity)) all = false;
            if (all) models_of_set.push_back(s);
        }
        CHECK(satisfies_all(models_of_set, script.goal));
        // every intermediate sum stays equal in the variety when the
        // axioms hold in all ten semirings
        bool set_holds_everywhere = true;
        for (const std::string& aid : reg.named_set(script.axiom_set)) {
            std::vector<Sr> ten(all_semirings().begin(), all_semirings().end());
            if (!satisfies_all(ten, reg.get(aid).identity)) set_holds_everywhere = false;
        }
        if (set_holds_everywhere)
            for (std::size_t i = 1; i < v.trace.size(); ++i)
                CHECK(sr2_equal(v.trace[i - 1], v.trace[i]));
    }
    CHECK(positives >= 6);
}

TEST_CASE("negative control fails at the corrupted step") {
    ProofScript script = load_script_file("proofs/corpus/negative_bad_power_collapse.json");
    Verdict v = check_script(script);
    CHECK_FALSE(v.accepted);
    CHECK(v.failed_step == 1);
    CHECK(v.message.find("site mismatch") != std::string::npos);
}

TEST_CASE("scripts using axioms outside the declared set are rejected") {
    ProofScript s;
    s.goal = parse_identity("x + yz ~ x + yz + 2x^2");
    s.axiom_set = "reduced";
    s.steps.push_back(step("eq7", true, {{"x", "x"}, {"y", "y"}, {"z", "z"}}, {0, 1}));
    Verdict v = check_script(s);
    CHECK_FALSE(v.accepted);
    CHECK(v.message.find("not in set") != std::string::npos);
}

TEST_CASE("bounded search finds small derivations") {
    SearchLimits limits;
    limits.max_term_size = 8;
    limits.max_steps = 6;
    SearchResult r = bounded_search(parse_identity("x^3 ~ x^2"), "reduced", limits);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(check_script(*r.script).accepted);

    // the word-rewriting axioms alone suffice for this goal
    SearchResult r34 = bounded_search(parse_identity("x^3 ~ x^2"), {"eq3", "eq4"}, limits, "reduced");
    REQUIRE(r34.status == SearchStatus::Found);
    CHECK(check_script(*r34.script).accepted);

    // deterministic across runs
    SearchResult r2 = bounded_search(parse_identity("x^3 ~ x^2"), "reduced", limits);
    REQUIRE(r2.status == SearchStatus::Found);
    CHECK(save_script(*r.script) == save_script(*r2.script));

    // reflexive goals need no steps
    SearchResult r3 = bounded_search(parse_identity("yx + x ~ x + yx"), "reduced", limits);
    REQUIRE(r3.status == SearchStatus::Found);
    CHECK(r3.script->steps.empty());
}

TEST_CASE("bounded search never proves refutable identities") {
    // the variety refutes x ~ 2x, so no script can exist
    SearchLimits limits;
    limits.max_term_size = 6;
    limits.max_steps = 4;
    limits.max_frontier = 4000;
    SearchResult r = bounded_search(parse_identity("x ~ 2x"), "defining", limits);
    CHECK(r.status != SearchStatus::Found);
}

TEST_CASE("script JSON round trip") {
    ProofScript script = load_script_file("proofs/corpus/eq7_from_reduced.json");
    std::string text = save_script(script);
    ProofScript again = load_script(text);
    CHECK(save_script(again) == text);
    CHECK(check_script(again).accepted);
}
