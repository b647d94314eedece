#include "sr2/proofs.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace sr2 {

namespace {

Identity parse(const char* s) { return parse_identity(s); }

std::set<Variable> identity_vars(const Identity& id) {
    auto v = sum_content(id.lhs);
    auto r = sum_content(id.rhs);
    v.insert(r.begin(), r.end());
    return v;
}

}  // namespace

AxiomRegistry::AxiomRegistry() {
    auto add = [&](const char* id, const char* text) {
        by_id_[id] = static_cast<int>(axioms_.size());
        axioms_.push_back(Axiom{id, parse(text)});
    };
    add("eq1", "x^2 y ~ xy");
    add("eq2", "x y^2 ~ xy");
    add("eq3", "xyzt ~ xzyt");
    add("eq4", "xyxy ~ xy");
    add("eq5", "x + yz ~ x + yz + 2xz");
    add("eq6", "x + yz ~ x + yz + 2yx");
    add("eq7", "x + yz ~ x + yz + 2x^2");
    add("eq8", "x + yz ~ x + yz + 2xyz");
    add("eq9", "x + yz ~ x + yz + 2yzx");
    add("eq10", "x + y ~ x + 3y");
    add("eq12", "2x + 2y ~ 2x + 2y");  // doubled addition; trivial once flattened
    add("eq13", "4xy ~ 2xy");          // doubled multiplication, flattened

    add("L2.b1", "x + x ~ x");
    add("L2.b2", "xy ~ x");
    add("R2.b1", "x + x ~ x");
    add("R2.b2", "xy ~ y");
    add("M2.b1", "x + x ~ x");
    add("M2.b2", "x + y ~ xy");
    add("D2.b1", "x + x ~ x");
    add("D2.b2", "x^2 ~ x");
    add("D2.b3", "xy ~ yx");
    add("D2.b4", "x + xy ~ x");
    add("N2.b1", "x + x ~ x");
    add("N2.b2", "xy ~ zt");
    add("N2.b3", "z + xy ~ z");
    add("T2.b1", "x + x ~ x");
    add("T2.b2", "xy ~ zt");
    add("T2.b3", "z + xy ~ xy");
    add("Z2.b1", "x + y ~ z + u");
    add("Z2.b2", "xy ~ x + y");
    add("W2.b1", "x + y ~ z + u");
    add("W2.b2", "x^2 ~ x");
    add("W2.b3", "xy ~ yx");
    add("Z7.b1", "x + x + y ~ y");
    add("Z7.b2", "xy ~ x + x");
    add("Z8.b1", "x + x + y ~ y");
    add("Z8.b2", "x^2 ~ x");
    add("Z8.b3", "xy ~ yx");

    sets_["defining"] = {"eq1", "eq2", "eq3", "eq4", "eq5", "eq6", "eq7", "eq8", "eq9", "eq10"};
    sets_["reduced"] = {"eq3", "eq4", "eq5", "eq6", "eq10"};
    sets_["hat"] = {"eq12", "eq13"};
    sets_["L2"] = {"L2.b1", "L2.b2"};
    sets_["R2"] = {"R2.b1", "R2.b2"};
    sets_["M2"] = {"M2.b1", "M2.b2"};
    sets_["D2"] = {"D2.b1", "D2.b2", "D2.b3", "D2.b4"};
    sets_["N2"] = {"N2.b1", "N2.b2", "N2.b3"};
    sets_["T2"] = {"T2.b1", "T2.b2", "T2.b3"};
    sets_["Z2"] = {"Z2.b1", "Z2.b2"};
    sets_["W2"] = {"W2.b1", "W2.b2", "W2.b3"};
    sets_["Z7"] = {"Z7.b1", "Z7.b2"};
    sets_["Z8"] = {"Z8.b1", "Z8.b2", "Z8.b3"};
}

const AxiomRegistry& AxiomRegistry::instance() {
    static const AxiomRegistry reg;
    return reg;
}

const Axiom& AxiomRegistry::get(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw std::invalid_argument("unknown axiom id: " + id);
    return axioms_[it->second];
}

const std::vector<std::string>& AxiomRegistry::named_set(const std::string& name) const {
    auto it = sets_.find(name);
    if (it == sets_.end()) throw std::invalid_argument("unknown axiom set: " + name);
    return it->second;
}

std::vector<std::string> AxiomRegistry::set_names() const {
    std::vector<std::string> out;
    for (auto& [k, v] : sets_) out.push_back(k);
    return out;
}

TermSum ac_normal(const TermSum& u) { return u; }  // the multiset map is the normal form

std::vector<Monomial> expanded_summands(const TermSum& u) {
    std::vector<Monomial> out;
    for (auto& [mono, k] : u.summands)
        for (int i = 0; i < k; ++i) out.push_back(mono);
    return out;
}

namespace {

TermSum instantiate_monomial(const Monomial& pattern, const std::map<Variable, TermSum>& subst) {
    TermSum acc;
    bool first = true;
    for (const Variable& v : pattern.letters) {
        auto it = subst.find(v);
        if (it == subst.end()) throw StepError("substitution missing a variable: " + v.name);
        acc = first ? it->second : sum_mul(acc, it->second);
        first = false;
    }
    return acc;
}

TermSum instantiate(const TermSum& pattern, const std::map<Variable, TermSum>& subst) {
    TermSum out;
    for (auto& [mono, k] : pattern.summands) {
        TermSum piece = instantiate_monomial(mono, subst);
        for (auto& [m2, k2] : piece.summands) out.add(m2, k * k2);
    }
    return out;
}

std::string multiset_diff(const TermSum& expected, const TermSum& found) {
    return "expected [" + render(expected) + "] but the site holds [" + render(found) + "]";
}

}  // namespace

TermSum apply_step(const TermSum& u, const RewriteStep& step) {
    const Axiom& ax = AxiomRegistry::instance().get(step.axiom);
    for (const Variable& v : identity_vars(ax.identity))
        if (!step.subst.count(v)) throw StepError("substitution missing a variable: " + v.name);
    const TermSum inst_from = instantiate(step.forward ? ax.identity.lhs : ax.identity.rhs, step.subst);
    const TermSum inst_to = instantiate(step.forward ? ax.identity.rhs : ax.identity.lhs, step.subst);

    auto listed = expanded_summands(u);
    std::vector<int> idx = step.summands;
    std::sort(idx.begin(), idx.end());
    if (idx.empty()) throw StepError("step selects no summands");
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw StepError("step selects a summand index twice");
    if (idx.front() < 0 || idx.back() >= static_cast<int>(listed.size()))
        throw StepError("summand index out of range");

    if (step.span) {
        auto mono_of = [](const TermSum& s) -> const Monomial* {
            if (s.summands.size() == 1 && s.summands.begin()->second == 1)
                return &s.summands.begin()->first;
            return nullptr;
        };
        const Monomial* from = mono_of(inst_from);
        const Monomial* to = mono_of(inst_to);
        bool axiom_monomial = mono_of(ax.identity.lhs) && mono_of(ax.identity.rhs);
        if (!axiom_monomial || !from || !to)
            throw StepError("factor span applied to a sum-shaped axiom instance");
        if (idx.size() != 1) throw StepError("a factor span selects exactly one summand");
        const Monomial& word = listed[idx[0]];
        auto [s, e] = *step.span;
        if (s < 0 || e > word.length() || s >= e) throw StepError("factor span out of range");
        Monomial slice{std::vector<Variable>(word.letters.begin() + s, word.letters.begin() + e)};
        if (slice != *from)
            throw StepError("site mismatch: " + multiset_diff(TermSum{{{*from, 1}}},
                                                              TermSum{{{slice, 1}}}),
                            render(slice));
        Monomial rebuilt{std::vector<Variable>(word.letters.begin(), word.letters.begin() + s)};
        rebuilt.letters.insert(rebuilt.letters.end(), to->letters.begin(), to->letters.end());
        rebuilt.letters.insert(rebuilt.letters.end(), word.letters.begin() + e, word.letters.end());
        TermSum out = u;
        out.add(word, -1);
        out.add(rebuilt, 1);
        return ac_normal(out);
    }

    TermSum site;
    for (int i : idx) site.add(listed[i], 1);
    if (site != inst_from)
        throw StepError("site mismatch: " + multiset_diff(inst_from, site), render(site));
    TermSum out = u;
    for (auto& [mono, k] : site.summands) out.add(mono, -k);
    for (auto& [mono, k] : inst_to.summands) out.add(mono, k);
    if (out.empty()) throw StepError("rewrite would leave an empty sum");
    return ac_normal(out);
}

Verdict check_script(const ProofScript& script) {
    Verdict v;
    const auto& reg = AxiomRegistry::instance();
    const std::vector<std::string>* allowed = nullptr;
    try {
        allowed = &reg.named_set(script.axiom_set);
    } catch (const std::invalid_argument& e) {
        v.message = e.what();
        v.failed_step = 0;
        return v;
    }
    TermSum cur = ac_normal(script.goal.lhs);
    v.trace.push_back(cur);
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        const auto& step = script.steps[i];
        if (std::find(allowed->begin(), allowed->end(), step.axiom) == allowed->end()) {
            v.failed_step = static_cast<int>(i);
            v.message = "axiom " + step.axiom + " is not in set " + script.axiom_set;
            return v;
        }
        try {
            cur = apply_step(cur, step);
        } catch (const StepError& e) {
            v.failed_step = static_cast<int>(i);
            v.message = e.what();
            return v;
        }
        v.trace.push_back(cur);
    }
    if (cur == ac_normal(script.goal.rhs)) {
        v.accepted = true;
    } else {
        v.failed_step = static_cast<int>(script.steps.size());
        v.message = "final term differs from the goal: " + multiset_diff(script.goal.rhs, cur);
    }
    return v;
}

// ---- bounded search ----------------------------------------------------

namespace {

struct Candidate {
    RewriteStep step;
    TermSum result;
};

// Assign pattern variables to nonempty subwords of `word[pos..]`.
void match_word(const Monomial& pattern, std::size_t pi, const Monomial& word, std::size_t pos,
                std::map<Variable, TermSum>& binding, const std::function<void()>& emit) {
    if (pi == pattern.letters.size()) {
        if (pos == word.letters.size()) emit();
        return;
    }
    const Variable& v = pattern.letters[pi];
    auto bound = binding.find(v);
    if (bound != binding.end()) {
        const Monomial& bw = bound->second.summands.begin()->first;
        if (pos + bw.letters.size() > word.letters.size()) return;
        if (!std::equal(bw.letters.begin(), bw.letters.end(), word.letters.begin() + pos)) return;
        match_word(pattern, pi + 1, word, pos + bw.letters.size(), binding, emit);
        return;
    }
    std::size_t remaining_patterns = pattern.letters.size() - pi - 1;
    for (std::size_t len = 1; pos + len + remaining_patterns <= word.letters.size(); ++len) {
        Monomial piece{std::vector<Variable>(word.letters.begin() + pos,
                                             word.letters.begin() + pos + len)};
        binding.emplace(v, TermSum{{{piece, 1}}});
        match_word(pattern, pi + 1, word, pos + len, binding, emit);
        binding.erase(v);
    }
}

// Match the pattern sum (list with repetition) against distinct summand
// indices of the subject, threading the variable binding through.
void match_sum(const std::vector<Monomial>& pattern, std::size_t pi,
               const std::vector<Monomial>& subject, std::vector<bool>& used,
               std::vector<int>& chosen, std::map<Variable, TermSum>& binding,
               const std::function<void()>& emit) {
    if (pi == pattern.size()) {
        emit();
        return;
    }
    for (std::size_t j = 0; j < subject.size(); ++j) {
        if (used[j]) continue;
        // Skip copies of the same monomial we already tried at this level.
        bool duplicate = false;
        for (std::size_t k = 0; k < j; ++k)
            if (!used[k] && subject[k] == subject[j]) {
                duplicate = true;
                break;
            }
        if (duplicate) continue;
        used[j] = true;
        chosen.push_back(static_cast<int>(j));
        match_word(pattern[pi], 0, subject[j], 0, binding, [&] {
            match_sum(pattern, pi + 1, subject, used, chosen, binding, emit);
        });
        chosen.pop_back();
        used[j] = false;
    }
}

void neighbors(const TermSum& u, const std::vector<std::string>& axiom_ids, int max_term_size,
               const std::function<void(Candidate&&)>& out) {
    const auto& reg = AxiomRegistry::instance();
    auto listed = expanded_summands(u);
    for (const std::string& id : axiom_ids) {
        const Axiom& ax = reg.get(id);
        for (bool forward : {true, false}) {
            const TermSum& from = forward ? ax.identity.lhs : ax.identity.rhs;
            const TermSum& to = forward ? ax.identity.rhs : ax.identity.lhs;
            // Directions that would introduce fresh variables are skipped.
            auto from_vars = sum_content(from);
            bool fresh = false;
            for (const Variable& v : sum_content(to))
                if (!from_vars.count(v)) fresh = true;
            if (fresh) continue;

            bool monomial_shaped = from.summands.size() == 1 && from.summands.begin()->second == 1 &&
                                   to.summands.size() == 1 && to.summands.begin()->second == 1;
            if (monomial_shaped) {
                const Monomial& pat = from.summands.begin()->first;
                std::set<Monomial> seen_words;
                for (std::size_t j = 0; j < listed.size(); ++j) {
                    if (!seen_words.insert(listed[j]).second) continue;  // one copy per word
                    const Monomial& word = listed[j];
                    for (int s = 0; s < word.length(); ++s)
                        for (int e = s + 1; e <= word.length(); ++e) {
                            Monomial slice{std::vector<Variable>(word.letters.begin() + s,
                                                                 word.letters.begin() + e)};
                            std::map<Variable, TermSum> binding;
                            match_word(pat, 0, slice, 0, binding, [&] {
                                RewriteStep step{id, forward, binding, {static_cast<int>(j)},
                                                 std::pair<int, int>{s, e}};
                                TermSum res;
                                try {
                                    res = apply_step(u, step);
                                } catch (const StepError&) {
                                    return;
                                }
                                if (res.letter_count() <= max_term_size)
                                    out(Candidate{std::move(step), std::move(res)});
                            });
                        }
                }
            } else {
                std::vector<Monomial> pattern = expanded_summands(from);
                if (pattern.size() > listed.size()) continue;
                std::vector<bool> used(listed.size(), false);
                std::vector<int> chosen;
                std::map<Variable, TermSum> binding;
                match_sum(pattern, 0, listed, used, chosen, binding, [&] {
                    RewriteStep step{id, forward, binding, chosen, std::nullopt};
                    TermSum res;
                    try {
                        res = apply_step(u, step);
                    } catch (const StepError&) {
                        return;
                    }
                    if (res.letter_count() <= max_term_size)
                        out(Candidate{std::move(step), std::move(res)});
                });
            }
        }
    }
}

}  // namespace

SearchResult bounded_search(const Identity& goal, const std::vector<std::string>& axiom_ids,
                            const SearchLimits& limits, const std::string& set_name) {
    SearchResult result;
    const TermSum start = ac_normal(goal.lhs);
    const TermSum target = ac_normal(goal.rhs);
    ProofScript script{goal, set_name, {}};
    if (start == target) {
        result.status = SearchStatus::Found;
        result.script = script;
        return result;
    }
    struct Node {
        TermSum sum;
        int parent;
        RewriteStep step;
    };
    std::vector<Node> nodes{{start, -1, {}}};
    std::unordered_set<std::string> seen{render(start)};
    std::deque<int> frontier{0};
    bool limit_hit = false;
    for (int depth = 0; depth < limits.max_steps && !frontier.empty(); ++depth) {
        std::deque<int> next;
        for (int ni : frontier) {
            bool done = false;
            // nodes may reallocate while candidates are appended
            const TermSum current = nodes[ni].sum;
            neighbors(current, axiom_ids, limits.max_term_size, [&](Candidate&& c) {
                if (done) return;
                if (!seen.insert(render(c.result)).second) return;
                if (static_cast<int>(nodes.size()) >= limits.max_frontier) {
                    limit_hit = true;
                    return;
                }
                nodes.push_back(Node{c.result, ni, c.step});
                if (c.result == target) {
                    done = true;
                    return;
                }
                next.push_back(static_cast<int>(nodes.size()) - 1);
            });
            if (done) {
                // Reconstruct the chain from the target back to the start.
                std::vector<RewriteStep> steps;
                int cur = static_cast<int>(nodes.size()) - 1;
                while (nodes[cur].parent >= 0) {
                    steps.push_back(nodes[cur].step);
                    cur = nodes[cur].parent;
                }
                std::reverse(steps.begin(), steps.end());
                script.steps = std::move(steps);
                Verdict v = check_script(script);
                if (!v.accepted) throw std::logic_error("search produced an invalid script");
                result.status = SearchStatus::Found;
                result.script = script;
                return result;
            }
            if (limit_hit) break;
        }
        if (limit_hit) break;
        frontier = std::move(next);
    }
    result.status = (limit_hit || !frontier.empty()) ? SearchStatus::LimitHit : SearchStatus::NotFound;
    return result;
}

SearchResult bounded_search(const Identity& goal, const std::string& axiom_set,
                            const SearchLimits& limits) {
    const auto& ids = AxiomRegistry::instance().named_set(axiom_set);
    return bounded_search(goal, ids, limits, axiom_set);
}

// ---- script files --------------------------------------------------------

ProofScript load_script(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    ProofScript script;
    script.goal = parse_identity(j.at("goal").get<std::string>());
    script.axiom_set = j.at("axioms").get<std::string>();
    for (const auto& js : j.at("steps")) {
        RewriteStep step;
        step.axiom = js.at("axiom").get<std::string>();
        std::string dir = js.at("dir").get<std::string>();
        if (dir != "fwd" && dir != "bwd") throw std::invalid_argument("step dir must be fwd or bwd");
        step.forward = (dir == "fwd");
        for (auto& [var, text] : js.at("subst").items())
            step.subst[Variable{var}] = parse_sum(text.get<std::string>());
        step.summands = js.at("summands").get<std::vector<int>>();
        if (js.contains("span") && !js.at("span").is_null()) {
            auto sp = js.at("span").get<std::vector<int>>();
            if (sp.size() != 2) throw std::invalid_argument("span must be [start, end)");
            step.span = {sp[0], sp[1]};
        }
        script.steps.push_back(std::move(step));
    }
    return script;
}

ProofScript load_script_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open proof script: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_script(ss.str());
}

std::string save_script(const ProofScript& script) {
    nlohmann::ordered_json j;
    j["goal"] = render(script.goal);
    j["axioms"] = script.axiom_set;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& step : script.steps) {
        nlohmann::ordered_json js;
        js["axiom"] = step.axiom;
        js["dir"] = step.forward ? "fwd" : "bwd";
        js["subst"] = nlohmann::ordered_json::object();
        for (auto& [var, sum] : step.subst) js["subst"][var.name] = render(sum);
        js["summands"] = step.summands;
        if (step.span)
            js["span"] = {step.span->first, step.span->second};
        else
            js["span"] = nullptr;
        j["steps"].push_back(js);
    }
    return j.dump(2);
}

}  // namespace sr2
