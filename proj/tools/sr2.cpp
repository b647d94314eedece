#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sr2/criteria.hpp"
#include "sr2/lattice.hpp"
#include "sr2/models.hpp"
#include "sr2/proofs.hpp"
#include "sr2/selftest.hpp"
#include "sr2/term.hpp"
#include "sr2/variety.hpp"

// Exit codes: 0 success/accepted, 1 refutation/rejection, 2 usage error,
// 3 resource limit.

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

int cmd_check(const std::string& identity_text, const std::string& over) {
    sr2::Identity id = sr2::parse_identity(identity_text);
    sr2::GenSet gens = over.empty() ? sr2::GenSet::all() : sr2::GenSet::parse(over);
    bool all_hold = true;
    for (sr2::Sr s : sr2::all_semirings()) {
        bool by_tables = sr2::satisfies(s, id);
        bool by_criterion = sr2::criterion(s, id);
        std::cout << sr2::name_of(s) << ": " << (by_tables ? "holds" : "fails");
        if (by_tables != by_criterion) {
            std::cout << "  [INTERNAL DISAGREEMENT: criterion says "
                      << (by_criterion ? "holds" : "fails") << "]";
        }
        if (!by_tables) {
            if (auto env = sr2::refuting_assignment(sr2::semiring(s), id)) {
                std::cout << "  (witness:";
                for (auto& [var, val] : *env) std::cout << " " << var.name << "=" << int(val);
                std::cout << ")";
            }
        }
        if (gens.contains(s) && !by_tables) all_hold = false;
        std::cout << "\n";
    }
    std::cout << "variety: " << (all_hold ? "holds" : "fails") << " over " << gens.to_string() << "\n";
    return all_hold ? kOk : kRefuted;
}

int cmd_explain(const std::string& identity_text, const std::string& format) {
    sr2::Identity id = sr2::parse_identity(identity_text);
    if (format == "json")
        std::cout << sr2::explain_json(id) << "\n";
    else
        std::cout << sr2::explain_text(id);
    return kOk;
}

int cmd_member(const std::string& a, const std::string& gens) {
    sr2::Sr s = sr2::semiring_by_name(a);
    sr2::GenSet t = sr2::GenSet::parse(gens);
    bool in = sr2::is_member(s, t);
    std::cout << a << " in HSP(" << t.to_string() << "): " << (in ? "yes" : "no") << "\n";
    return in ? kOk : kRefuted;
}

int cmd_lattice(bool count_only, const std::string& format, const std::string& out_path,
                const std::string& tsv_path) {
    sr2::SubvarietyLattice lat = sr2::SubvarietyLattice::enumerate();
    if (!tsv_path.empty()) {
        std::ofstream tsv(tsv_path);
        if (!tsv) throw std::runtime_error("cannot open output file: " + tsv_path);
        sr2::MembershipTable::instance().write_tsv(tsv);
    }
    if (count_only) {
        std::cout << lat.size() << "\n";
        return kOk;
    }
    if (format == "dot") {
        write_output(lat.export_dot(), out_path);
    } else if (format == "json") {
        write_output(lat.export_json(), out_path);
    } else {
        int ai = 0;
        for (auto& c : lat.classes())
            if (c.is_ai) ++ai;
        std::cout << "classes: " << lat.size() << " (" << ai << " additively idempotent)\n"
                  << "cover edges: " << lat.covers().size() << "\n"
                  << "bottom: " << sr2::GenSet{lat.bottom()}.to_string()
                  << "  top: " << sr2::GenSet{lat.top()}.to_string() << "\n";
    }
    return kOk;
}

int cmd_interval(const std::string& base_csv, const std::string& format,
                 const std::string& out_path) {
    sr2::SubvarietyLattice lat = sr2::SubvarietyLattice::enumerate();
    sr2::GenSet base = sr2::GenSet::parse(base_csv);
    sr2::IntervalReport rep = lat.interval(base.mask);
    std::cout << "interval [" << sr2::GenSet{rep.base}.to_string() << ", "
              << sr2::GenSet{rep.top}.to_string() << "]: " << rep.members.size()
              << " classes, " << rep.covers.size() << " cover edges, case "
              << sr2::case_name(rep.tag) << "\n";
    if (format == "dot") write_output(lat.export_dot(rep), out_path);
    return kOk;
}

int cmd_prove(const std::string& path, bool trace) {
    sr2::ProofScript script = sr2::load_script_file(path);
    sr2::Verdict v = sr2::check_script(script);
    if (v.accepted) {
        std::cout << "accepted: " << sr2::render(script.goal) << " via " << script.steps.size()
                  << " steps from " << script.axiom_set << "\n";
    } else {
        std::cout << "rejected at step " << v.failed_step << ": " << v.message << "\n";
    }
    if (trace)
        for (std::size_t i = 0; i < v.trace.size(); ++i)
            std::cout << "  [" << i << "] " << sr2::render(v.trace[i]) << "\n";
    return v.accepted ? kOk : kRefuted;
}

int cmd_search(const std::string& goal_text, const std::string& axiom_set,
               const sr2::SearchLimits& limits, const std::string& out_path) {
    sr2::Identity goal = sr2::parse_identity(goal_text);
    sr2::SearchResult r = sr2::bounded_search(goal, axiom_set, limits);
    switch (r.status) {
        case sr2::SearchStatus::Found:
            write_output(sr2::save_script(*r.script) + "\n", out_path);
            return kOk;
        case sr2::SearchStatus::NotFound:
            std::cout << "no derivation within the limits (search exhausted)\n";
            return kRefuted;
        case sr2::SearchStatus::LimitHit:
            std::cout << "no derivation found before hitting the search limits\n";
            return kResource;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-element semiring varieties: identities, membership, lattice, proofs"};
    app.require_subcommand(1);

    std::string identity_text, over, format = "text", out_path, tsv_path, base_csv, script_path,
                member_name, member_gens, corpus_dir = "proofs/corpus";
    bool count_only = false, trace = false;
    std::uint64_t seed = 0;
    int randoms = 100000;

    auto* check = app.add_subcommand("check", "evaluate an identity against the ten semirings");
    check->add_option("identity", identity_text, "identity, e.g. \"x + y ~ x + 3y\"")->required();
    check->add_option("--over", over, "comma-separated generator names (default: all ten)");

    auto* explain = app.add_subcommand("explain", "show the per-semiring criterion data");
    explain->add_option("identity", identity_text)->required();
    explain->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* member = app.add_subcommand("member", "decide HSP membership");
    member->add_option("semiring", member_name)->required();
    member->add_option("generators", member_gens, "comma-separated names; 'trivial' for the empty set")
        ->required();

    auto* lattice = app.add_subcommand("lattice", "enumerate the subvariety lattice");
    lattice->add_flag("--count", count_only, "print only the number of classes");
    lattice->add_option("--format", format)->check(CLI::IsMember({"text", "dot", "json"}));
    lattice->add_option("--out", out_path, "write the export to a file");
    lattice->add_option("--membership-tsv", tsv_path, "also write the 10x1024 membership table");

    auto* interval = app.add_subcommand("interval", "report one interval over an ai base");
    interval->add_option("base", base_csv, "ai generators, e.g. L2,R2,M2,D2,N2,T2")->required();
    interval->add_option("--format", format)->check(CLI::IsMember({"text", "dot"}));
    interval->add_option("--out", out_path);

    std::string search_goal, search_axioms = "defining";
    sr2::SearchLimits search_limits;
    auto* prove = app.add_subcommand("prove", "check a proof script, or search for one");
    prove->add_option("script", script_path, "path to a JSON proof script");
    prove->add_flag("--trace", trace, "print every intermediate sum");
    prove->add_option("--search", search_goal, "search for a derivation of this identity instead");
    prove->add_option("--axioms", search_axioms, "axiom set for the search");
    prove->add_option("--max-steps", search_limits.max_steps)->check(CLI::PositiveNumber);
    prove->add_option("--max-size", search_limits.max_term_size)->check(CLI::PositiveNumber);
    prove->add_option("--max-frontier", search_limits.max_frontier)->check(CLI::PositiveNumber);

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_option("--seed", seed, "seed for the randomized suites");
    selftest->add_option("--random", randoms, "number of random identities per suite");
    selftest->add_option("--corpus", corpus_dir, "proof corpus directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (check->parsed()) return cmd_check(identity_text, over);
        if (explain->parsed()) return cmd_explain(identity_text, format);
        if (member->parsed()) return cmd_member(member_name, member_gens);
        if (lattice->parsed()) return cmd_lattice(count_only, format, out_path, tsv_path);
        if (interval->parsed()) return cmd_interval(base_csv, format, out_path);
        if (prove->parsed()) {
            if (!search_goal.empty()) return cmd_search(search_goal, search_axioms, search_limits, out_path);
            if (script_path.empty()) {
                std::cerr << "prove needs a script path or --search GOAL\n";
                return kUsage;
            }
            return cmd_prove(script_path, trace);
        }
        if (selftest->parsed()) {
            sr2::selftest::Config cfg;
            cfg.seed = seed;
            cfg.random_identities = randoms;
            cfg.corpus_dir = corpus_dir;
            int failures = sr2::selftest::run_and_report(cfg, std::cout);
            return failures == 0 ? kOk : kRefuted;
        }
    } catch (const sr2::ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const sr2::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
