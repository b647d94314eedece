#include "sr2/criteria.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace sr2 {

namespace {

std::string var_set(const std::set<Variable>& s) {
    std::string out = "{";
    for (auto& v : s) {
        if (out.size() > 1) out += ",";
        out += v.name;
    }
    return out + "}";
}

std::string family(const std::set<std::set<Variable>>& f) {
    std::string out = "{";
    bool first = true;
    for (auto& s : f) {
        if (!first) out += ",";
        first = false;
        out += var_set(s);
    }
    return out + "}";
}

}  // namespace

SemanticSignature signature(const TermSum& u) {
    SemanticSignature sig;
    sig.heads = sum_heads(u);
    sig.tails = sum_tails(u);
    sig.contents = sum_content(u);
    sig.unit_monomials.clear();

    std::set<std::set<Variable>> all_contents;
    std::map<std::set<Variable>, int> class_total;
    for (auto& [mono, k] : u.summands) {
        auto c = content(mono);
        all_contents.insert(c);
        class_total[c] += k;
        if (mono.length() >= 2) sig.has_long_monomial = true;
        if (mono.length() == 1) {
            sig.unit_monomials.insert(mono.letters.front());
            if (k % 2 == 1) sig.odd_unit_monomials.insert(mono.letters.front());
        }
    }
    for (auto& c : all_contents) {
        bool minimal = true;
        for (auto& d : all_contents)
            if (d != c && std::includes(c.begin(), c.end(), d.begin(), d.end())) {
                minimal = false;
                break;
            }
        if (minimal) sig.min_contents.insert(c);
    }
    for (auto& [c, total] : class_total)
        if (total % 2 == 1) sig.odd_content_classes.insert(c);

    const int m = u.summand_count();
    sig.is_bare_variable = (m == 1 && !sig.has_long_monomial);
    sig.w2_plural = (m >= 2);
    if (!sig.w2_plural) sig.w2_content = content(u.summands.begin()->first);
    return sig;
}

bool criterion(Sr s, const Identity& id) {
    const SemanticSignature a = signature(id.lhs);
    const SemanticSignature b = signature(id.rhs);
    switch (s) {
        case Sr::L2:
            return a.heads == b.heads;
        case Sr::R2:
            return a.tails == b.tails;
        case Sr::M2:
            return a.contents == b.contents;
        case Sr::D2:
            // Mutual domination of the summand contents is exactly equality
            // of their subset-minimal antichains.
            return a.min_contents == b.min_contents;
        case Sr::N2:
            return a.unit_monomials == b.unit_monomials;
        case Sr::T2:
            // Constant-one multiplication: a side with a long summand is
            // constantly 1, a unit-only side is the join of its variables.
            if (a.has_long_monomial && b.has_long_monomial) return true;
            return !a.has_long_monomial && !b.has_long_monomial && a.contents == b.contents;
        case Sr::Z2:
            // Constant-zero operations: everything but a bare variable
            // evaluates to 0.
            if (a.is_bare_variable || b.is_bare_variable)
                return a.is_bare_variable && b.is_bare_variable && a.heads == b.heads;
            return true;
        case Sr::W2:
            if (a.w2_plural != b.w2_plural) return false;
            return a.w2_plural || a.w2_content == b.w2_content;
        case Sr::Z7:
            return a.odd_unit_monomials == b.odd_unit_monomials;
        case Sr::Z8:
            // Occurrence parity per content class; equality of these sets is
            // equivalent to the subset-quantified parity condition.
            return a.odd_content_classes == b.odd_content_classes;
    }
    return false;
}

bool criterion(const std::string& name, const Identity& id) {
    return criterion(semiring_by_name(name), id);
}

bool sr2_equal(const TermSum& u, const TermSum& v) { return signature(u) == signature(v); }

std::string signature_key(const SemanticSignature& s) {
    std::string out;
    out += "H" + var_set(s.heads);
    out += "T" + var_set(s.tails);
    out += "C" + var_set(s.contents);
    out += "D" + family(s.min_contents);
    out += "U" + var_set(s.unit_monomials);
    out += s.has_long_monomial ? "L1" : "L0";
    out += s.is_bare_variable ? "B1" : "B0";
    out += s.w2_plural ? std::string("Wp") : "Ws" + var_set(s.w2_content);
    out += "O" + var_set(s.odd_unit_monomials);
    out += "P" + family(s.odd_content_classes);
    return out;
}

std::vector<CriterionReport> explain(const Identity& id) {
    const SemanticSignature a = signature(id.lhs);
    const SemanticSignature b = signature(id.rhs);
    auto pick = [&](Sr s) -> std::pair<std::string, std::string> {
        switch (s) {
            case Sr::L2: return {"H=" + var_set(a.heads), "H=" + var_set(b.heads)};
            case Sr::R2: return {"T=" + var_set(a.tails), "T=" + var_set(b.tails)};
            case Sr::M2: return {"C=" + var_set(a.contents), "C=" + var_set(b.contents)};
            case Sr::D2: return {"min=" + family(a.min_contents), "min=" + family(b.min_contents)};
            case Sr::N2: return {"units=" + var_set(a.unit_monomials), "units=" + var_set(b.unit_monomials)};
            case Sr::T2:
                return {std::string("long=") + (a.has_long_monomial ? "yes" : "no") + " C=" + var_set(a.contents),
                        std::string("long=") + (b.has_long_monomial ? "yes" : "no") + " C=" + var_set(b.contents)};
            case Sr::Z2:
                return {std::string("bare=") + (a.is_bare_variable ? var_set(a.heads) : "no"),
                        std::string("bare=") + (b.is_bare_variable ? var_set(b.heads) : "no")};
            case Sr::W2:
                return {a.w2_plural ? "plural" : "single c=" + var_set(a.w2_content),
                        b.w2_plural ? "plural" : "single c=" + var_set(b.w2_content)};
            case Sr::Z7:
                return {"odd units=" + var_set(a.odd_unit_monomials), "odd units=" + var_set(b.odd_unit_monomials)};
            case Sr::Z8:
                return {"odd classes=" + family(a.odd_content_classes),
                        "odd classes=" + family(b.odd_content_classes)};
        }
        return {"", ""};
    };
    std::vector<CriterionReport> out;
    for (Sr s : all_semirings()) {
        auto [l, r] = pick(s);
        out.push_back(CriterionReport{s, criterion(s, id), l, r});
    }
    return out;
}

std::string explain_text(const Identity& id) {
    auto reports = explain(id);
    std::size_t wl = 0, wr = 0;
    for (auto& r : reports) {
        wl = std::max(wl, r.lhs_data.size());
        wr = std::max(wr, r.rhs_data.size());
    }
    std::ostringstream os;
    os << render(id) << "\n";
    for (auto& r : reports) {
        os << "  " << name_of(r.s) << "  " << (r.holds ? "holds " : "fails ") << " lhs: " << r.lhs_data
           << std::string(wl - r.lhs_data.size() + 2, ' ') << "rhs: " << r.rhs_data << "\n";
    }
    return os.str();
}

std::string explain_json(const Identity& id) {
    nlohmann::ordered_json j;
    j["identity"] = render(id);
    auto reports = explain(id);
    bool all = true;
    for (auto& r : reports) {
        nlohmann::ordered_json e;
        e["semiring"] = std::string(name_of(r.s));
        e["holds"] = r.holds;
        e["lhs"] = r.lhs_data;
        e["rhs"] = r.rhs_data;
        j["criteria"].push_back(e);
        all = all && r.holds;
    }
    j["variety_satisfies"] = all;
    return j.dump(2);
}

}  // namespace sr2
