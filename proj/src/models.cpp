#include "sr2/models.hpp"

#include <algorithm>
#include <stdexcept>

namespace sr2 {

namespace {

using Table = std::array<std::array<std::uint8_t, 2>, 2>;

constexpr Table kJoin{{{0, 1}, {1, 1}}};
constexpr Table kXor{{{0, 1}, {1, 0}}};
constexpr Table kZero{{{0, 0}, {0, 0}}};
constexpr Table kOne{{{1, 1}, {1, 1}}};
constexpr Table kMeet{{{0, 0}, {0, 1}}};
constexpr Table kLeft{{{0, 0}, {1, 1}}};
constexpr Table kRight{{{0, 1}, {0, 1}}};

constexpr std::array<SemiringTable, kSemiringCount> kTables{{
    {Sr::L2, kJoin, kLeft},
    {Sr::R2, kJoin, kRight},
    {Sr::M2, kJoin, kJoin},
    {Sr::D2, kJoin, kMeet},
    {Sr::N2, kJoin, kZero},
    {Sr::T2, kJoin, kOne},
    {Sr::Z2, kZero, kZero},
    {Sr::W2, kZero, kMeet},
    {Sr::Z7, kXor, kZero},
    {Sr::Z8, kXor, kMeet},
}};

constexpr std::array<std::string_view, kSemiringCount> kNames{
    "L2", "R2", "M2", "D2", "N2", "T2", "Z2", "W2", "Z7", "Z8"};

// Apply a 2x2 table to two bit-words in parallel.
std::uint64_t apply_table(const Table& t, std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (t[0][0]) out |= ~a & ~b;
    if (t[0][1]) out |= ~a & b;
    if (t[1][0]) out |= a & ~b;
    if (t[1][1]) out |= a & b;
    return out;
}

void apply_table(const Table& t, const std::vector<std::uint64_t>& a,
                 const std::vector<std::uint64_t>& b, std::vector<std::uint64_t>& out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = apply_table(t, a[i], b[i]);
}

// a added to itself k times, via doubling; addition need not be idempotent.
std::vector<std::uint64_t> add_times(const Table& add, std::vector<std::uint64_t> a, int k) {
    std::vector<std::uint64_t> acc;
    std::vector<std::uint64_t> tmp(a.size());
    while (k > 0) {
        if (k & 1) {
            if (acc.empty()) {
                acc = a;
            } else {
                apply_table(add, acc, a, tmp);
                acc = tmp;
            }
        }
        k >>= 1;
        if (k > 0) {
            apply_table(add, a, a, tmp);
            a = tmp;
        }
    }
    return acc;
}

}  // namespace

const std::array<Sr, kSemiringCount>& all_semirings() {
    static const std::array<Sr, kSemiringCount> all = [] {
        std::array<Sr, kSemiringCount> a{};
        for (int i = 0; i < kSemiringCount; ++i) a[i] = static_cast<Sr>(i);
        return a;
    }();
    return all;
}

std::string_view name_of(Sr s) { return kNames[static_cast<int>(s)]; }

Sr semiring_by_name(const std::string& name) {
    for (int i = 0; i < kSemiringCount; ++i)
        if (kNames[i] == name) return static_cast<Sr>(i);
    throw std::invalid_argument("unknown semiring name: " + name);
}

const SemiringTable& semiring(Sr s) { return kTables[static_cast<int>(s)]; }
const SemiringTable& semiring(const std::string& name) { return semiring(semiring_by_name(name)); }

void validate(const SemiringTable& t) {
    const auto& a = t.add;
    const auto& m = t.mul;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            if (a[x][y] != a[y][x])
                throw std::logic_error(std::string(name_of(t.id)) + ": addition not commutative");
            for (int z = 0; z < 2; ++z) {
                if (a[a[x][y]][z] != a[x][a[y][z]])
                    throw std::logic_error(std::string(name_of(t.id)) + ": addition not associative");
                if (m[m[x][y]][z] != m[x][m[y][z]])
                    throw std::logic_error(std::string(name_of(t.id)) + ": multiplication not associative");
                if (m[x][a[y][z]] != a[m[x][y]][m[x][z]])
                    throw std::logic_error(std::string(name_of(t.id)) + ": left distributivity fails");
                if (m[a[y][z]][x] != a[m[y][x]][m[z][x]])
                    throw std::logic_error(std::string(name_of(t.id)) + ": right distributivity fails");
            }
        }
}

std::uint8_t eval_term(const SemiringTable& t, const TermSum& u, const Assignment& env) {
    bool have = false;
    std::uint8_t total = 0;
    for (auto& [mono, k] : u.summands) {
        std::uint8_t prod = 0;
        bool first = true;
        for (const Variable& v : mono.letters) {
            auto it = env.find(v);
            if (it == env.end()) throw std::invalid_argument("unbound variable: " + v.name);
            prod = first ? it->second : t.mul[prod][it->second];
            first = false;
        }
        for (int i = 0; i < k; ++i) {
            total = have ? t.add[total][prod] : prod;
            have = true;
        }
    }
    if (!have) throw std::invalid_argument("cannot evaluate an empty sum");
    return total;
}

FuncVec func_vec(const SemiringTable& t, const TermSum& u, const std::vector<Variable>& vars) {
    const int n = static_cast<int>(vars.size());
    const std::size_t nwords = n <= 6 ? 1 : (std::size_t{1} << (n - 6));
    const std::size_t nbits = std::size_t{1} << n;

    // Bit pattern of each variable over assignment ranks.
    auto var_pattern = [&](int i) {
        std::vector<std::uint64_t> p(nwords, 0);
        if (i < 6) {
            // Rank bits 0..5 cycle identically within every 64-bit word.
            std::uint64_t w = 0;
            for (std::size_t r = 0; r < std::min<std::size_t>(64, nbits); ++r)
                if ((r >> i) & 1) w |= std::uint64_t{1} << r;
            std::fill(p.begin(), p.end(), w);
        } else {
            for (std::size_t c = 0; c < nwords; ++c)
                if ((c >> (i - 6)) & 1) p[c] = ~std::uint64_t{0};
        }
        return p;
    };

    std::map<Variable, int> index;
    for (int i = 0; i < n; ++i) index[vars[i]] = i;
    std::vector<std::vector<std::uint64_t>> pats(n);
    for (int i = 0; i < n; ++i) pats[i] = var_pattern(i);

    std::vector<std::uint64_t> total(nwords, 0);
    bool have = false;
    std::vector<std::uint64_t> prod(nwords), tmp(nwords);
    for (auto& [mono, k] : u.summands) {
        bool first = true;
        for (const Variable& v : mono.letters) {
            auto it = index.find(v);
            if (it == index.end()) throw std::invalid_argument("unbound variable: " + v.name);
            const auto& p = pats[it->second];
            if (first) {
                prod = p;
                first = false;
            } else {
                apply_table(t.mul, prod, p, tmp);
                prod.swap(tmp);
            }
        }
        auto repeated = add_times(t.add, prod, k);
        if (!have) {
            total = repeated;
            have = true;
        } else {
            apply_table(t.add, total, repeated, tmp);
            total.swap(tmp);
        }
    }
    // Mask the unused tail of the last word so comparisons are exact.
    if (n < 6) {
        std::uint64_t mask = (std::uint64_t{1} << nbits) - 1;
        total[0] &= mask;
    }
    return FuncVec{n, std::move(total)};
}

bool satisfies(const SemiringTable& t, const Identity& id) {
    auto vars = sorted_variables(id);
    if (static_cast<int>(vars.size()) >= kMaxSatisfactionVars)
        throw ResourceLimit("refusing satisfaction check over " + std::to_string(vars.size()) +
                            " variables (2^n assignments)");
    return func_vec(t, id.lhs, vars) == func_vec(t, id.rhs, vars);
}

bool satisfies(Sr s, const Identity& id) { return satisfies(semiring(s), id); }

bool satisfies_all(const std::vector<Sr>& ts, const Identity& id) {
    for (Sr s : ts)
        if (!satisfies(s, id)) return false;
    return true;
}

std::optional<Assignment> refuting_assignment(const SemiringTable& t, const Identity& id) {
    auto vars = sorted_variables(id);
    if (static_cast<int>(vars.size()) >= kMaxSatisfactionVars)
        throw ResourceLimit("refusing satisfaction check over " + std::to_string(vars.size()) +
                            " variables");
    for (std::size_t r = 0; r < (std::size_t{1} << vars.size()); ++r) {
        Assignment env;
        for (std::size_t i = 0; i < vars.size(); ++i)
            env[vars[i]] = static_cast<std::uint8_t>((r >> i) & 1);
        if (eval_term(t, id.lhs, env) != eval_term(t, id.rhs, env)) return env;
    }
    return std::nullopt;
}

SubSemiring additive_idempotents(const SemiringTable& t) {
    SubSemiring out;
    out.parent = &t;
    for (std::uint8_t a = 0; a < 2; ++a)
        if (t.add[a][a] == a) out.elements.push_back(a);
    auto inside = [&](std::uint8_t v) {
        return std::find(out.elements.begin(), out.elements.end(), v) != out.elements.end();
    };
    for (std::uint8_t a : out.elements)
        for (std::uint8_t b : out.elements)
            if (!inside(t.add[a][b]) || !inside(t.mul[a][b]))
                throw std::logic_error(std::string(name_of(t.id)) +
                                       ": additive idempotents not closed under the operations");
    return out;
}

}  // namespace sr2
