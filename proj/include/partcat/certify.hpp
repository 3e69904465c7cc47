#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "partcat/closure.hpp"
#include "partcat/functor_f.hpp"
#include "partcat/generators.hpp"
#include "partcat/partition.hpp"
#include "partcat/text.hpp"

namespace partcat {

enum class Verdict { holds, violates, unknown };

// A property of single partitions that is stable under ⊗, ∘, * and rotation.
// Some invariants are parameterised by the generating set (a lattice).
struct Invariant {
    std::string name;
    std::function<Verdict(const Partition&)> test;
    std::string note;
};

struct Certificate {
    std::string invariant;
    std::string detail;
};

namespace detail {

inline Verdict verdict(bool ok) { return ok ? Verdict::holds : Verdict::violates; }

inline bool blocks_even(const Partition& p) {
    auto sizes = p.block_sizes();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.color(i) != Color::extra && sizes[p.label(i)] % 2) return false;
    return true;
}

// Does the chord (a, b), a < b, on the cycle of one-row points split some
// non-▲ block?
inline bool chord_separates(const Partition& x, std::size_t a, std::size_t b) {
    std::vector<unsigned char> side(x.block_count(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i == a || i == b || x.color(i) == Color::extra) continue;
        side[x.label(i)] |= (i > a && i < b) ? 1 : 2;
    }
    return std::any_of(side.begin(), side.end(), [](unsigned char s) { return s == 3; });
}

// Backtracking over non-crossing perfect matchings of the ▲ points, each
// chord avoiding every non-▲ block.
inline bool extra_matching(const Partition& x, const std::vector<std::size_t>& pts, std::size_t lo, std::size_t hi) {
    if (lo >= hi) return true;
    if ((hi - lo) % 2) return false;
    for (std::size_t m = lo + 1; m < hi; m += 2) {
        if (chord_separates(x, pts[lo], pts[m])) continue;
        if (extra_matching(x, pts, lo + 1, m) && extra_matching(x, pts, m + 1, hi)) return true;
    }
    return false;
}

}  // namespace detail

constexpr std::size_t max_matched_extras = 12;

inline Verdict noncrossing_extra_pairing(const Partition& p) {
    Partition x = to_one_row(p);
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x.color(i) == Color::extra) pts.push_back(i);
    if (pts.size() % 2) return Verdict::violates;
    if (pts.size() > max_matched_extras) return Verdict::unknown;
    return detail::verdict(detail::extra_matching(x, pts, 0, pts.size()));
}

// c(p), or c(F(p)) in the extra-singleton regime (even length only).
inline std::optional<long> lattice_value(const Partition& p, Regime regime) {
    if (regime == Regime::two_colored) return color_sum(p);
    if (regime == Regime::extra && p.size() % 2 == 0 && p.family() != Family::circles) return color_sum(functor_f(p));
    return std::nullopt;
}

inline std::vector<Invariant> builtin_invariants(const std::vector<Partition>& gens, Regime regime) {
    std::vector<Invariant> out;
    if (regime != Regime::plain) {
        // The value is a homomorphism to Z; in the extra regime it only is on
        // the even part, so odd generators make the lattice unavailable.
        bool usable = true;
        long k = 0;
        for (const auto& g : gens) {
            auto v = lattice_value(g, regime);
            if (!v) usable = false;
            else k = std::gcd(k, std::labs(*v));
        }
        std::string lat = k == 0 ? "{0}" : (k == 1 ? "Z" : std::to_string(k) + "Z");
        out.push_back({"color-sum-lattice",
                       [=](const Partition& p) {
                           if (!usable) return Verdict::unknown;
                           auto v = lattice_value(p, regime);
                           if (!v) return Verdict::unknown;
                           return detail::verdict(k == 0 ? *v == 0 : *v % k == 0);
                       },
                       "color sum in " + lat});
    }
    out.push_back({"even-length", [](const Partition& p) { return detail::verdict(p.size() % 2 == 0); },
                   "even number of points"});
    out.push_back({"even-extra-count",
                   [](const Partition& p) { return detail::verdict(p.count(Color::extra) % 2 == 0); },
                   "even number of extra singletons"});
    out.push_back({"non-crossing", [](const Partition& p) { return detail::verdict(is_noncrossing(p)); },
                   "no crossing blocks"});
    out.push_back({"even-block-sizes", [](const Partition& p) { return detail::verdict(detail::blocks_even(p)); },
                   "every ordinary block has even size"});
    if (regime == Regime::extra)
        out.push_back({"noncrossing-extra-pairing", noncrossing_extra_pairing,
                       "extra singletons pair up without splitting any ordinary block"});
    return out;
}

// First invariant held by every generator and base partition and violated by p.
inline std::optional<Certificate> certify_exclusion(const Partition& p, const std::vector<Partition>& gens,
                                                    Regime regime) {
    std::vector<Partition> all = gens;
    for (const auto& b : detail::base_one_rows(regime)) all.push_back(b);
    if (regime == Regime::two_colored) {
        all.push_back(parse_partition("P(a:w ; a:w)"));
        all.push_back(parse_partition("P(a:b ; a:b)"));
    } else {
        all.push_back(parse_partition("P(a ; a)"));
    }
    for (const auto& inv : builtin_invariants(gens, regime)) {
        bool all_hold = std::all_of(all.begin(), all.end(),
                                    [&](const Partition& g) { return inv.test(g) == Verdict::holds; });
        if (all_hold && inv.test(p) == Verdict::violates) return Certificate{inv.name, inv.note};
    }
    return std::nullopt;
}

enum class ProductKind { free_product, tensor, trivial, times0, times2k, star_k, ctimes_k };

inline ProductKind parse_product_kind(std::string_view s) {
    if (s == "free") return ProductKind::free_product;
    if (s == "tensor") return ProductKind::tensor;
    if (s == "trivial") return ProductKind::trivial;
    if (s == "times0") return ProductKind::times0;
    if (s == "times2k") return ProductKind::times2k;
    if (s == "star_k" || s == "stark") return ProductKind::star_k;
    if (s == "ctimes_k" || s == "ctimesk") return ProductKind::ctimes_k;
    throw Error(ErrorCode::bad_param, "unknown product kind '" + std::string(s) + "'");
}

namespace detail {

inline bool contains_double_singleton(const std::vector<Partition>& base) {
    const Partition dd = parse_partition("P(; x y)");
    int budget = 2;
    for (const auto& g : base) budget = std::max<int>(budget, g.size());
    return closure(base, Regime::plain, budget, 4).contains(dd) == Membership::certified_in;
}

}  // namespace detail

// Generators of the extra-singleton category belonging to a glued product of
// the easy group of ⟨base⟩ with the dual of Z₂.
inline std::vector<Partition> product_generators(ProductKind kind, const std::vector<Partition>& base, int k = 1) {
    for (const auto& g : base)
        if (!g.fits(Regime::plain)) throw Error(ErrorCode::bad_param, "base generators must be plain partitions");
    if (k < 1) throw Error(ErrorCode::bad_param, "k must be positive");
    const bool needs_no_singleton =
        kind == ProductKind::times0 || kind == ProductKind::times2k || kind == ProductKind::ctimes_k;
    if (needs_no_singleton && !certify_exclusion(parse_partition("P(; x)"), base, Regime::plain))
        throw Error(ErrorCode::bad_param, "cannot certify that the base category avoids the singleton");
    const bool needs_double = kind == ProductKind::star_k || kind == ProductKind::ctimes_k;
    if (needs_double && !detail::contains_double_singleton(base))
        throw Error(ErrorCode::bad_param, "the base category must contain the double singleton");

    std::vector<Partition> out = base;
    switch (kind) {
        case ProductKind::free_product:
            break;
        case ProductKind::tensor:
            out.push_back(generator("positionerext"));
            break;
        case ProductKind::trivial:
            out.push_back(generator("extra_singleton"));
            break;
        case ProductKind::times0:
            out.push_back(generator("globcolext"));
            break;
        case ProductKind::times2k:
            out.push_back(tensor_power(generator("positionerext"), k));
            break;
        case ProductKind::star_k:
            out.push_back(tensor_power(parse_partition("P(; x y:t)"), k));
            break;
        case ProductKind::ctimes_k:
            out.push_back(generator("globcolext"));
            out.push_back(tensor_power(parse_partition("P(; x y:t)"), k));
            break;
    }
    return out;
}

}  // namespace partcat
