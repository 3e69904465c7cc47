#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "partcat/lincomb.hpp"
#include "partcat/partition.hpp"

namespace partcat {

enum class Dot { dot, down };  // •, ↓

using DottedWord = std::vector<Dot>;

// "o" or "•" for the dotted letter, "s" or "↓" for the singleton letter.
inline DottedWord parse_dotted_word(std::string_view s) {
    DottedWord w;
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] == 'o' || s[i] == '.') { w.push_back(Dot::dot); ++i; }
        else if (s[i] == 's' || s[i] == 'd') { w.push_back(Dot::down); ++i; }
        else if (s.substr(i, 3) == "•") { w.push_back(Dot::dot); i += 3; }
        else if (s.substr(i, 3) == "↓") { w.push_back(Dot::down); i += 3; }
        else if (s[i] == ' ' || s[i] == ',') ++i;
        else throw Error(ErrorCode::bad_param, "bad dotted word '" + std::string(s) + "'");
    }
    return w;
}

inline std::string dotted_word_string(const DottedWord& w) {
    std::string s;
    for (Dot d : w) s += d == Dot::dot ? 'o' : 's';
    return s;
}

inline Partition disconnecter_partition() {
    return Partition({Color::line}, {Color::line}, std::vector<int>{0, 1});
}

// π^↓ = (1/N)·disconnecter, π^• = id − π^↓.
inline LinearCombination pi(Dot letter, long n) {
    Scalar inv = Scalar::rational(1, n);
    LinearCombination down = LinearCombination::of(disconnecter_partition(), n, inv);
    if (letter == Dot::down) return down;
    return lin_identity({Color::line}, n) - down;
}

inline LinearCombination pi_word(const DottedWord& w, long n) {
    LinearCombination out = LinearCombination::of(Partition{}, n);
    for (Dot d : w) out = lin_tensor(out, pi(d, n));
    return out;
}

namespace detail {

inline void require_plain(const Signature& sig) {
    for (const Word* w : {&sig.upper, &sig.lower})
        for (Color c : *w)
            if (c != Color::line) throw Error(ErrorCode::wrong_regime, "projections act on line points only");
}

}  // namespace detail

// π^{⊗w2} ∘ p ∘ π^{⊗w1}
inline LinearCombination sandwich(const LinearCombination& p, const DottedWord& w1, const DottedWord& w2) {
    if (w1.size() != p.signature().upper.size() || w2.size() != p.signature().lower.size())
        throw Error(ErrorCode::arity_mismatch, "dotted words do not match the signature");
    detail::require_plain(p.signature());
    return lin_compose(pi_word(w2, p.context()), lin_compose(p, pi_word(w1, p.context())));
}

inline bool is_separated(const LinearCombination& lc, const DottedWord& w1, const DottedWord& w2) {
    return sandwich(lc, w1, w2) == lc;
}

// Singletons get ↓, every other point •.
inline std::pair<DottedWord, DottedWord> dotted_words(const Partition& p) {
    auto sizes = p.block_sizes();
    DottedWord w1, w2;
    for (std::size_t i = 0; i < p.size(); ++i)
        (p.is_upper(i) ? w1 : w2).push_back(sizes[p.label(i)] == 1 ? Dot::down : Dot::dot);
    return {w1, w2};
}

inline LinearCombination dotted(const Partition& p, long n) {
    auto [w1, w2] = dotted_words(p);
    return sandwich(LinearCombination::of(p, n), w1, w2);
}

// Dotted-basis order: ascending block count, then canonical order.
struct DottedOrder {
    bool operator()(const Partition& a, const Partition& b) const {
        int ba = a.block_count(), bb = b.block_count();
        if (ba != bb) return ba < bb;
        return a < b;
    }
};

using DottedCoefficients = std::map<Partition, Scalar, DottedOrder>;

// Peels off the smallest remaining term in dotted order; dotted(q) contains q
// with coefficient 1 and otherwise only partitions with more blocks.
inline DottedCoefficients to_dotted_basis(const LinearCombination& lc) {
    DottedCoefficients out;
    std::map<Partition, Scalar, DottedOrder> rest(lc.terms().begin(), lc.terms().end());
    while (!rest.empty()) {
        auto [q, c] = *rest.begin();
        out.emplace(q, c);
        LinearCombination d = dotted(q, lc.context());
        for (const auto& [r, x] : d.terms()) {
            auto [it, fresh] = rest.emplace(r, -(c * x));
            if (!fresh) {
                it->second -= c * x;
                if (it->second.is_zero()) rest.erase(it);
            }
        }
    }
    return out;
}

inline LinearCombination from_dotted_basis(const Signature& sig, long n, const DottedCoefficients& coeffs) {
    LinearCombination out(sig, n);
    for (const auto& [q, c] : coeffs) out += scale(c, dotted(q, n));
    return out;
}

}  // namespace partcat
