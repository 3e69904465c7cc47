#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "partcat/lincomb.hpp"
#include "partcat/linear.hpp"
#include "partcat/partition.hpp"
#include "partcat/text.hpp"

namespace partcat {

// Index variable: kind 'i' (upper, free), 's' (lower, free), 't' (upper,
// summed), 'j' (lower, summed); index counts ordinary points from 1.
struct Var {
    char kind = 'i';
    int index = 1;
    bool summed() const { return kind == 't' || kind == 'j'; }
    auto operator<=>(const Var&) const = default;
};

struct Factor {
    enum class Kind { symbol, dotted, down };
    Kind kind = Kind::symbol;
    std::string symbol;
    bool conj = false;
    bool indexed = false;
    Var row, col;
    bool operator==(const Factor&) const = default;
};

struct Term {
    Scalar coef{1};
    int npow = 0;  // extra factor N^npow
    std::vector<std::vector<Var>> deltas;
    std::vector<Var> sums;
    std::vector<Factor> factors;
    bool operator==(const Term&) const = default;
};

struct Relation {
    std::vector<Term> lhs, rhs;
    bool operator==(const Relation&) const = default;
};

// Symbol per color; the ▲ symbol is one-dimensional and carries no indices.
struct SymbolNames {
    std::map<Color, std::pair<std::string, bool>> by_color;  // symbol, conjugated

    static SymbolNames defaults(Regime r) {
        SymbolNames n;
        switch (r) {
            case Regime::plain:
                n.by_color[Color::line] = {"u", false};
                break;
            case Regime::extra:
                n.by_color[Color::line] = {"v", false};
                n.by_color[Color::extra] = {"r", false};
                break;
            case Regime::two_colored:
                n.by_color[Color::white] = {"u", false};
                n.by_color[Color::black] = {"u", true};
                break;
        }
        return n;
    }
    static SymbolNames for_partition(const Partition& p) {
        if (p.family() == Family::circles) return defaults(Regime::two_colored);
        if (p.count(Color::extra)) return defaults(Regime::extra);
        return defaults(Regime::plain);
    }
    const std::pair<std::string, bool>& at(Color c) const {
        auto it = by_color.find(c);
        if (it == by_color.end())
            throw Error(ErrorCode::missing_name, std::string("no symbol for color '") + color_char(c) + "'");
        return it->second;
    }
};

namespace detail {

inline void substitute(Term& t, const Var& from, const Var& to) {
    for (auto& f : t.factors) {
        if (f.row == from) f.row = to;
        if (f.col == from) f.col = to;
    }
}

// Resolves the δ-classes: summed variables collapse onto a free member of
// their class (or the smallest summed one); leftover free members become δs;
// summed variables that no factor uses contribute N.
inline void simplify(Term& t, const std::vector<std::vector<Var>>& classes) {
    for (const auto& cls : classes) {
        std::vector<Var> fr, sm;
        for (const Var& v : cls) (v.summed() ? sm : fr).push_back(v);
        std::sort(fr.begin(), fr.end());
        std::sort(sm.begin(), sm.end());
        if (!fr.empty()) {
            for (const Var& v : sm) {
                substitute(t, v, fr.front());
                t.sums.erase(std::remove(t.sums.begin(), t.sums.end(), v), t.sums.end());
            }
            if (fr.size() > 1) t.deltas.push_back(fr);
        } else {
            for (std::size_t a = 1; a < sm.size(); ++a) {
                substitute(t, sm[a], sm.front());
                t.sums.erase(std::remove(t.sums.begin(), t.sums.end(), sm[a]), t.sums.end());
            }
        }
    }
    std::vector<Var> kept;
    for (const Var& v : t.sums) {
        bool used = std::any_of(t.factors.begin(), t.factors.end(),
                                [&](const Factor& f) { return f.indexed && (f.row == v || f.col == v); });
        if (used) kept.push_back(v);
        else ++t.npow;
    }
    t.sums = std::move(kept);
    std::sort(t.sums.begin(), t.sums.end());
    std::sort(t.deltas.begin(), t.deltas.end());
}

// dots: optional dotted letter per point (upper then lower).
inline std::pair<Term, Term> trel_terms(const Partition& p, const Scalar& c, const SymbolNames& names,
                                        const std::vector<std::optional<Dot>>& dots) {
    const std::size_t k = p.upper_count();
    std::vector<int> ordinal(p.size(), 0);
    int up = 0, down = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.color(i) != Color::extra) ordinal[i] = i < k ? ++up : ++down;

    auto make_factor = [&](std::size_t i, Var row, Var col) {
        Factor f;
        if (p.color(i) == Color::extra) {
            f.symbol = names.at(Color::extra).first;
            f.conj = names.at(Color::extra).second;
            return f;
        }
        const auto& [sym, conj] = names.at(p.color(i));
        f.symbol = sym;
        f.conj = conj;
        f.indexed = true;
        f.row = row;
        f.col = col;
        if (!dots.empty() && dots[i]) f.kind = *dots[i] == Dot::dot ? Factor::Kind::dotted : Factor::Kind::down;
        if (f.kind == Factor::Kind::down) f.indexed = false;
        return f;
    };

    Term lhs, rhs;
    lhs.coef = rhs.coef = c;
    std::vector<std::vector<Var>> lcls(p.block_count()), rcls(p.block_count());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.color(i) == Color::extra) {
            if (i < k) lhs.factors.push_back(make_factor(i, {}, {}));
            else rhs.factors.push_back(make_factor(i, {}, {}));
            continue;
        }
        const int o = ordinal[i];
        if (i < k) {
            Var t{'t', o}, iv{'i', o};
            lhs.factors.push_back(make_factor(i, t, iv));
            lhs.sums.push_back(t);
            lcls[p.label(i)].push_back(t);
            rcls[p.label(i)].push_back(iv);
        } else {
            Var s{'s', o}, j{'j', o};
            rhs.factors.push_back(make_factor(i, s, j));
            rhs.sums.push_back(j);
            lcls[p.label(i)].push_back(s);
            rcls[p.label(i)].push_back(j);
        }
    }
    for (auto& f : lhs.factors)
        if (f.kind == Factor::Kind::down) --lhs.npow;
    for (auto& f : rhs.factors)
        if (f.kind == Factor::Kind::down) --rhs.npow;
    simplify(lhs, lcls);
    simplify(rhs, rcls);
    return {lhs, rhs};
}

inline void merge_term(std::vector<Term>& side, Term t) {
    for (auto it = side.begin(); it != side.end(); ++it) {
        Term a = *it;
        a.coef = t.coef;
        if (a == t) {
            it->coef += t.coef;
            if (it->coef.is_zero()) side.erase(it);
            return;
        }
    }
    side.push_back(std::move(t));
}

}  // namespace detail

// The relation T_p u^{⊗k} = u^{⊗l} T_p written entrywise.
inline Relation emit_relation(const Partition& p, const SymbolNames& names) {
    auto [l, r] = detail::trel_terms(p, Scalar(1), names, {});
    return Relation{{l}, {r}};
}

inline Relation emit_relation(const Partition& p) { return emit_relation(p, SymbolNames::for_partition(p)); }

inline Relation emit_relation(const LinearCombination& lc, const SymbolNames& names) {
    Relation rel;
    for (const auto& [p, c] : lc.terms()) {
        auto [l, r] = detail::trel_terms(p, c, names, {});
        detail::merge_term(rel.lhs, l);
        detail::merge_term(rel.rhs, r);
    }
    return rel;
}

// Sides swapped, indices transposed, i↔s and t↔j renamed.
inline Relation formal_adjoint(const Relation& rel) {
    auto rename = [](Var v) {
        static const std::map<char, char> m{{'i', 's'}, {'s', 'i'}, {'t', 'j'}, {'j', 't'}};
        v.kind = m.at(v.kind);
        return v;
    };
    auto flip = [&](std::vector<Term> side) {
        for (auto& t : side) {
            for (auto& d : t.deltas) {
                for (auto& v : d) v = rename(v);
                std::sort(d.begin(), d.end());
            }
            std::sort(t.deltas.begin(), t.deltas.end());
            for (auto& v : t.sums) v = rename(v);
            std::sort(t.sums.begin(), t.sums.end());
            for (auto& f : t.factors) {
                if (!f.indexed) continue;
                Var row = rename(f.col), col = rename(f.row);
                f.row = row;
                f.col = col;
            }
        }
        return side;
    };
    return Relation{flip(rel.rhs), flip(rel.lhs)};
}

// ṽ ↦ v r and ṽ* ↦ r v in a relation of F(p), then r² = 1.
inline Relation glue_substitute(const Relation& rel, const std::string& glued, const std::string& line,
                                const std::string& extra) {
    auto side = [&](std::vector<Term> s) {
        for (auto& t : s) {
            std::vector<Factor> out;
            Factor r;
            r.symbol = extra;
            auto push = [&](const Factor& f) {
                if (!f.indexed && f.symbol == extra && !out.empty() && !out.back().indexed && out.back().symbol == extra)
                    out.pop_back();
                else
                    out.push_back(f);
            };
            for (const auto& f : t.factors) {
                if (f.symbol != glued) {
                    push(f);
                    continue;
                }
                Factor v = f;
                v.symbol = line;
                v.conj = false;
                if (f.conj) {
                    push(r);
                    push(v);
                } else {
                    push(v);
                    push(r);
                }
            }
            t.factors = std::move(out);
        }
        return s;
    };
    return Relation{side(rel.lhs), side(rel.rhs)};
}

// ---- rendering -------------------------------------------------------------

enum class RelationStyle { human, latex, machine };
enum class Naming { canonical, trel, compact };

namespace detail {

inline std::string unicode_subscript(int n) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string s;
    for (char c : std::to_string(n)) s += digits[c - '0'];
    return s;
}

class VarNamer {
public:
    VarNamer(const Relation& rel, Naming naming, RelationStyle style) : style_(style) {
        bool plain = true;
        for (const auto* side : {&rel.lhs, &rel.rhs})
            for (const auto& t : *side) plain = plain && t.deltas.empty() && t.sums.empty();
        compact_ = naming == Naming::compact || (naming == Naming::canonical && plain);
        std::map<char, std::vector<Var>> summed;
        auto visit = [&](const Var& v) {
            if (compact_ && !names_.count(v)) {
                static const std::string letters = "ijklmnpqabcdefgh";
                std::size_t n = names_.size();
                names_[v] = n < letters.size() ? std::string(1, letters[n]) : "x" + std::to_string(n);
            }
            if (v.summed()) {
                auto& vs = summed[v.kind];
                if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
            }
        };
        for (const auto* side : {&rel.lhs, &rel.rhs})
            for (const auto& t : *side) {
                for (const auto& v : t.sums) visit(v);
                for (const auto& d : t.deltas)
                    for (const auto& v : d) visit(v);
                for (const auto& f : t.factors)
                    if (f.indexed) {
                        visit(f.row);
                        visit(f.col);
                    }
            }
        for (const auto& [kind, vs] : summed)
            if (vs.size() == 1) bare_.insert(kind);
    }

    std::string operator()(const Var& v) const {
        if (compact_) return names_.at(v);
        std::string base(1, v.kind);
        if (v.summed() && bare_.count(v.kind)) return base;
        if (style_ == RelationStyle::latex) return base + "_" + std::to_string(v.index);
        if (style_ == RelationStyle::human) return base + unicode_subscript(v.index);
        return base + std::to_string(v.index);
    }

private:
    RelationStyle style_;
    bool compact_ = false;
    std::map<Var, std::string> names_;
    std::set<char> bare_;
};

// Scalar and power-of-N parts of a term's coefficient, sign split off.
inline std::pair<std::string, std::string> coefficient_parts(const Term& t, RelationStyle style, bool& negative) {
    const bool tex = style == RelationStyle::latex;
    Scalar c = t.coef;
    negative = false;
    if (c.is_rational() && c.a() < 0) {
        negative = true;
        c = -c;
    }
    std::string scalar = c.is_one() ? "" : c.str();
    std::string power;
    if (t.npow > 0) {
        std::string e = std::to_string(t.npow);
        power = t.npow == 1 ? "N" : tex ? "N^{" + e + "}" : "N^" + e;
    } else if (t.npow < 0) {
        std::string e = std::to_string(-t.npow);
        power = t.npow == -1 ? (tex ? "\\frac{1}{N}" : "(1/N)") : tex ? "\\frac{1}{N^{" + e + "}}" : "(1/N^" + e + ")";
    }
    return {scalar, power};
}

inline std::string factor_string(const Factor& f, const VarNamer& name, RelationStyle style) {
    const bool tex = style == RelationStyle::latex;
    std::string sym = f.symbol;
    if (f.conj) sym += tex ? "^*" : "*";
    if (f.kind == Factor::Kind::down) return "r";
    if (!f.indexed) return sym;
    std::string s = sym + "_{" + name(f.row) + name(f.col) + "}";
    if (f.kind == Factor::Kind::dotted) s = tex ? "(" + s + "-\\frac{1}{N}r)" : "(" + s + " − (1/N)r)";
    return s;
}

inline std::string term_string(const Term& t, const VarNamer& name, RelationStyle style, bool& negative) {
    const bool tex = style == RelationStyle::latex;
    auto [scalar, power] = coefficient_parts(t, style, negative);
    std::vector<std::string> body;
    if (!t.sums.empty()) {
        std::string vars;
        for (std::size_t a = 0; a < t.sums.size(); ++a) vars += (a ? "," : "") + name(t.sums[a]);
        body.push_back(tex ? "\\sum_{" + vars + "=1}^N" : "Σ_{" + vars + "}");
    }
    for (const auto& d : t.deltas) {
        std::string vars;
        for (const auto& v : d) vars += name(v);
        body.push_back((tex ? "\\delta_{" : "δ_{") + vars + "}");
    }
    for (const auto& f : t.factors) body.push_back(factor_string(f, name, style));
    const std::string sep = tex ? "" : " ";
    if (body.empty()) {
        if (scalar.empty() && power.empty()) return "1";
        if (scalar.empty()) return power;
        return power.empty() ? scalar : scalar + (tex ? "\\cdot " : "·") + power;
    }
    std::string out;
    if (!scalar.empty()) out += scalar + (tex ? "\\cdot " : "·");
    out += power;
    for (std::size_t a = 0; a < body.size(); ++a) out += (a || !power.empty() ? sep : "") + body[a];
    return out;
}

inline std::string side_string(const std::vector<Term>& side, const VarNamer& name, RelationStyle style) {
    if (side.empty()) return "0";
    std::string out;
    for (std::size_t a = 0; a < side.size(); ++a) {
        bool neg = false;
        std::string t = term_string(side[a], name, style, neg);
        if (a == 0) out += neg ? "-" + t : t;
        else out += (neg ? " - " : " + ") + t;
    }
    return out;
}

inline std::string machine_var(const Var& v) { return std::string(1, v.kind) + std::to_string(v.index); }

inline std::string machine_side(const std::vector<Term>& side) {
    std::ostringstream os;
    for (const auto& t : side) {
        os << " (term (coef " << t.coef.str() << ") (npow " << t.npow << ")";
        for (const auto& d : t.deltas) {
            os << " (delta";
            for (const auto& v : d) os << " " << machine_var(v);
            os << ")";
        }
        if (!t.sums.empty()) {
            os << " (sum";
            for (const auto& v : t.sums) os << " " << machine_var(v);
            os << ")";
        }
        for (const auto& f : t.factors) {
            const char* kind = f.kind == Factor::Kind::dotted ? "dot" : f.kind == Factor::Kind::down ? "down" : "sym";
            os << " (" << kind << " " << f.symbol << (f.conj ? "*" : "");
            if (f.indexed) os << " " << machine_var(f.row) << " " << machine_var(f.col);
            os << ")";
        }
        os << ")";
    }
    return os.str();
}

}  // namespace detail

inline std::string render(const Relation& rel, RelationStyle style = RelationStyle::human,
                          Naming naming = Naming::canonical) {
    if (style == RelationStyle::machine)
        return "(relation (lhs" + detail::machine_side(rel.lhs) + ") (rhs" + detail::machine_side(rel.rhs) + "))";
    detail::VarNamer name(rel, naming, style);
    return detail::side_string(rel.lhs, name, style) + " = " + detail::side_string(rel.rhs, name, style);
}

// Removes all whitespace; the comparison form for displayed relations.
inline std::string strip_whitespace(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

// ---- separated relations ---------------------------------------------------

struct SeparatedRelation {
    Relation relation;
    // Letter form, available when p has only singletons and through pairs
    // whose letters match at both ends.
    bool letter_form = false;
    std::string lhs_letters, rhs_letters;
    std::string dotted_letters;  // the letters standing for dotted through pairs

    std::string letters() const { return lhs_letters + " = " + rhs_letters; }
    std::string str() const {
        std::string out = letters();
        if (!dotted_letters.empty()) {
            std::string list;
            for (std::size_t a = 0; a < dotted_letters.size(); ++a) list += (a ? "," : "") + std::string(1, dotted_letters[a]);
            out += " with " + list + " ∈ span{u_{ij} − (1/N)r}";
        }
        return out;
    }
};

namespace detail {

inline bool separable_shape(const Partition& p, const DottedWord& w1, const DottedWord& w2) {
    auto sizes = p.block_sizes();
    auto letter = [&](std::size_t i) { return i < p.upper_count() ? w1[i] : w2[i - p.upper_count()]; };
    for (const auto& b : p.blocks()) {
        if (b.size() == 1) {
            if (letter(b[0]) != Dot::down) return false;
        } else if (b.size() == 2) {
            if (!p.is_upper(b[0]) || p.is_upper(b[1])) return false;
            if (letter(b[0]) != letter(b[1])) return false;
        } else {
            return false;
        }
    }
    return true;
}

}  // namespace detail

// Relation of the separated combination π^{⊗w2} p π^{⊗w1}. For singletons and
// through pairs it is the relation of p with each u replaced by its dotted
// part; otherwise the sandwich is expanded at the given N.
inline SeparatedRelation emit_separated_relation(const Partition& p, const DottedWord& w1, const DottedWord& w2,
                                                 std::optional<long> n = std::nullopt) {
    if (w1.size() != p.upper_count() || w2.size() != p.lower_count())
        throw Error(ErrorCode::arity_mismatch, "dotted words do not match the signature");
    detail::require_plain(p.signature());
    SeparatedRelation out;
    if (detail::separable_shape(p, w1, w2)) {
        std::vector<std::optional<Dot>> dots;
        for (Dot d : w1) dots.push_back(d);
        for (Dot d : w2) dots.push_back(d);
        auto [l, r] = detail::trel_terms(p, Scalar(1), SymbolNames::defaults(Regime::plain), dots);
        out.relation = Relation{{l}, {r}};
        out.letter_form = true;
        std::vector<char> letter_of(p.block_count(), 'r');
        char next = 'a';
        for (std::size_t i = 0; i < p.upper_count(); ++i) {
            if (p.block_sizes()[p.label(i)] == 2 && w1[i] == Dot::dot) {
                letter_of[p.label(i)] = next;
                out.dotted_letters += next;
            }
            if (p.block_sizes()[p.label(i)] == 2) ++next;
        }
        for (std::size_t i = 0; i < p.size(); ++i) (p.is_upper(i) ? out.lhs_letters : out.rhs_letters) += letter_of[p.label(i)];
        if (out.lhs_letters.empty()) out.lhs_letters = "1";
        if (out.rhs_letters.empty()) out.rhs_letters = "1";
        return out;
    }
    if (!n) throw Error(ErrorCode::bad_param, "this separated relation needs N");
    LinearCombination s = sandwich(LinearCombination::of(p, *n), w1, w2);
    out.relation = emit_relation(s, SymbolNames::defaults(Regime::plain));
    return out;
}

// ---- presentations ---------------------------------------------------------

inline std::vector<std::string> base_relations(Regime r, RelationStyle style) {
    const bool tex = style == RelationStyle::latex;
    switch (r) {
        case Regime::plain:
            return {tex ? "u=\\bar u" : "u = ū", tex ? "uu^t=u^tu=1" : "u uᵗ = uᵗ u = 1"};
        case Regime::extra:
            return {tex ? "v=\\bar v" : "v = v̄", tex ? "vv^t=v^tv=1" : "v vᵗ = vᵗ v = 1", tex ? "r=r^*" : "r = r*",
                    tex ? "r^2=1" : "r² = 1"};
        case Regime::two_colored:
            return {tex ? "uu^*=u^*u=1" : "u u* = u* u = 1", tex ? "\\bar uu^t=u^t\\bar u=1" : "ū uᵗ = uᵗ ū = 1"};
    }
    return {};
}

inline std::string emit_presentation(const std::vector<Partition>& gens, Regime regime, long n,
                                     RelationStyle style = RelationStyle::human) {
    std::ostringstream os;
    os << "PRESENTATION N=" << n << " regime=" << regime_name(regime) << "\n";
    const SymbolNames names = SymbolNames::defaults(regime);
    if (style == RelationStyle::machine) {
        for (const auto& b : base_relations(regime, RelationStyle::human)) os << "(base \"" << b << "\")\n";
    } else {
        for (const auto& b : base_relations(regime, style)) os << b << "\n";
    }
    for (const auto& g : gens) {
        if (!g.fits(regime)) throw Error(ErrorCode::wrong_regime, "generator " + to_string(g) + " is outside the regime");
        Relation rel = emit_relation(g, names);
        if (style == RelationStyle::machine) os << "(generator \"" << to_string(g) << "\" " << render(rel, style) << ")\n";
        else os << render(rel, style) << "\n";
    }
    return os.str();
}

}  // namespace partcat
