#include "sr2/term.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace sr2 {

int TermSum::summand_count() const {
    int m = 0;
    for (auto& [mono, k] : summands) m += k;
    return m;
}

int TermSum::letter_count() const {
    int n = 0;
    for (auto& [mono, k] : summands) n += k * mono.length();
    return n;
}

void TermSum::add(const Monomial& m, int k) {
    if (k == 0) return;
    auto it = summands.find(m);
    if (it == summands.end()) {
        summands.emplace(m, k);
    } else {
        it->second += k;
        if (it->second <= 0) summands.erase(it);
    }
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    Identity identity() {
        TermSum lhs = sum();
        skip_ws();
        if (pos_ >= s_.size() || (s_[pos_] != '~' && s_[pos_] != '='))
            throw ParseError("expected '~' or '=' between the two sides", pos_);
        ++pos_;
        TermSum rhs = sum();
        end();
        return Identity{std::move(lhs), std::move(rhs)};
    }

    TermSum single_sum() {
        TermSum u = sum();
        end();
        return u;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void end() {
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    TermSum sum() {
        TermSum u;
        addend_into(u);
        while (peek_is('+')) {
            ++pos_;
            addend_into(u);
        }
        return u;
    }

    void addend_into(TermSum& u) {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("empty side: every sum needs at least one summand", pos_);
        int coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) coeff = integer();
        u.add(monomial(), coeff);
    }

    int integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected an integer", pos_);
        if (s_[pos_] == '0') throw ParseError("integers start with a nonzero digit", pos_);
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > std::numeric_limits<int>::max()) throw ParseError("integer too large", start);
            ++pos_;
        }
        return static_cast<int>(v);
    }

    Monomial monomial() {
        Monomial m;
        factor_into(m);
        for (;;) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                factor_into(m);
                continue;
            }
            if (pos_ < s_.size() && std::islower(static_cast<unsigned char>(s_[pos_]))) {
                factor_into(m);
                continue;
            }
            break;
        }
        return m;
    }

    void factor_into(Monomial& m) {
        skip_ws();
        if (pos_ >= s_.size() || !std::islower(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected a variable (lowercase letter, optional digits)", pos_);
        std::string name(1, s_[pos_++]);
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) name += s_[pos_++];
        int exp = 1;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            exp = integer();
        }
        for (int i = 0; i < exp; ++i) m.letters.emplace_back(name);
    }
};

}  // namespace

Identity parse_identity(const std::string& text) { return Parser(text).identity(); }
TermSum parse_sum(const std::string& text) { return Parser(text).single_sum(); }

std::string render(const Monomial& m) {
    std::string out;
    std::size_t i = 0;
    while (i < m.letters.size()) {
        std::size_t j = i;
        while (j < m.letters.size() && m.letters[j] == m.letters[i]) ++j;
        out += m.letters[i].name;
        if (j - i >= 2) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string render(const TermSum& u) {
    std::string out;
    for (auto& [mono, k] : u.summands) {
        if (!out.empty()) out += " + ";
        if (k >= 2) out += std::to_string(k);
        out += render(mono);
    }
    return out;
}

std::string render(const Identity& id) { return render(id.lhs) + " ~ " + render(id.rhs); }

Variable head(const Monomial& m) { return m.letters.front(); }
Variable tail(const Monomial& m) { return m.letters.back(); }

std::set<Variable> content(const Monomial& m) {
    return std::set<Variable>(m.letters.begin(), m.letters.end());
}

int length(const Monomial& m) { return m.length(); }

std::set<Variable> sum_content(const TermSum& u) {
    std::set<Variable> out;
    for (auto& [mono, k] : u.summands) out.insert(mono.letters.begin(), mono.letters.end());
    return out;
}

std::set<Variable> sum_heads(const TermSum& u) {
    std::set<Variable> out;
    for (auto& [mono, k] : u.summands) out.insert(head(mono));
    return out;
}

std::set<Variable> sum_tails(const TermSum& u) {
    std::set<Variable> out;
    for (auto& [mono, k] : u.summands) out.insert(tail(mono));
    return out;
}

int occ(const Monomial& m, const TermSum& u) {
    auto it = u.summands.find(m);
    return it == u.summands.end() ? 0 : it->second;
}

std::vector<Variable> sorted_variables(const Identity& id) {
    std::set<Variable> vars = sum_content(id.lhs);
    auto r = sum_content(id.rhs);
    vars.insert(r.begin(), r.end());
    return std::vector<Variable>(vars.begin(), vars.end());
}

MonoNF mono_normal_form(const Monomial& m) {
    MonoNF nf;
    nf.hd = head(m);
    nf.tl = tail(m);
    nf.cont = content(m);
    nf.bare = (m.length() == 1);
    return nf;
}

TermSum hat_sum(const TermSum& u) {
    TermSum out;
    for (auto& [mono, k] : u.summands) {
        if (mono.length() > 30) throw std::overflow_error("hat expansion too large");
        long long scaled = static_cast<long long>(k) << mono.length();
        if (scaled > std::numeric_limits<int>::max()) throw std::overflow_error("hat expansion too large");
        out.add(mono, static_cast<int>(scaled));
    }
    return out;
}

Identity hat_identity(const Identity& id) { return Identity{hat_sum(id.lhs), hat_sum(id.rhs)}; }

Monomial concat(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

TermSum sum_add(const TermSum& a, const TermSum& b) {
    TermSum out = a;
    for (auto& [mono, k] : b.summands) out.add(mono, k);
    return out;
}

TermSum sum_mul(const TermSum& a, const TermSum& b) {
    TermSum out;
    for (auto& [ma, ka] : a.summands)
        for (auto& [mb, kb] : b.summands) out.add(concat(ma, mb), ka * kb);
    return out;
}

}  // namespace sr2
