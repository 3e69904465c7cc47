#pragma once

#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "partcat/partition.hpp"
#include "partcat/text.hpp"

namespace partcat {

inline Partition empty_partition() { return Partition{}; }

inline Partition tensor_power(const Partition& p, int k) {
    Partition out;
    for (int i = 0; i < k; ++i) out = tensor(out, p);
    return out;
}

namespace detail {

struct CatalogEntry {
    const char* name;
    const char* text;  // empty when parametrized
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> c = {
        {"pairpart", "P(; a a)"},
        {"uppairpart", "P(a a ;)"},
        {"idpart", "P(a ; a)"},
        {"singleton", "P(; x)"},
        {"extra_singleton", "P(; x:t)"},
        {"idext", "P(x:t ; y:t)"},
        {"extpair", "P(; x:t y:t)"},
        {"crosspart", "P(a b ; b a)"},
        {"fourpart", "P(; a a a a)"},
        {"halflibpart", "P(a b c ; c b a)"},
        {"disconnecter", "P(x ; y)"},
        {"positionerext", "P(a x:t ; y:t a)"},
        {"globcolext", "P(a b x:t ; y:t a b)"},
        {"pabac", "P(; a b a c)"},
        {"wsingleton", "P(; x:w)"},
        {"bsingleton", "P(; x:b)"},
        {"wwpair", "P(; a:w a:w)"},
        {"bbpair", "P(; a:b a:b)"},
        {"wbpair", "P(; a:w a:b)"},
        {"bwpair", "P(; a:b a:w)"},
        {"widpart", "P(a:w ; a:w)"},
        {"bidpart", "P(a:b ; a:b)"},
        {"globcol2", "P(a:w b:b ; a:b b:w)"},
        {"wfourpart", "P(; a:w a:b a:w a:b)"},
        {"b_k_ext", ""},
        {"alt_tensor", ""},
    };
    return c;
}

}  // namespace detail

inline std::vector<std::string> generator_names() {
    std::vector<std::string> names;
    for (const auto& e : detail::catalog()) names.push_back(e.name);
    return names;
}

// b_k_ext(k): a k-point block on the odd positions of a 2k-point row, ▲ on the even ones.
// alt_tensor(k): (↓ ⊗ ▲)^⊗k.
inline Partition generator(std::string_view name, const std::vector<int>& params = {}) {
    for (const auto& e : detail::catalog()) {
        if (name != e.name) continue;
        if (*e.text) {
            if (!params.empty()) throw Error(ErrorCode::bad_param, std::string(name) + " takes no parameter");
            return parse_partition(e.text);
        }
        if (params.size() != 1 || params[0] < 1)
            throw Error(ErrorCode::bad_param, std::string(name) + " needs one parameter k >= 1");
        const int k = params[0];
        if (name == "b_k_ext") {
            Word lower;
            std::vector<int> labels;
            for (int i = 0; i < k; ++i) {
                lower.push_back(Color::line);
                labels.push_back(0);
                lower.push_back(Color::extra);
                labels.push_back(i + 1);
            }
            return Partition({}, lower, labels);
        }
        return tensor_power(parse_partition("P(; x y:t)"), k);
    }
    throw Error(ErrorCode::unknown_generator, std::string(name));
}

// "name" or "name:k"
inline Partition generator_spec(std::string_view spec) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos) return generator(spec);
    std::string num(spec.substr(colon + 1));
    int k = 0;
    try {
        std::size_t used = 0;
        k = std::stoi(num, &used);
        if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
        throw Error(ErrorCode::bad_param, "bad generator parameter '" + num + "'");
    }
    return generator(spec.substr(0, colon), {k});
}

// Every partition of the given signature (restricted growth strings over the
// non-▲ points; ▲ points stay singletons).
inline void for_each_partition(const Signature& sig, const std::function<void(const Partition&)>& f) {
    const std::size_t k = sig.upper.size();
    Word colors = sig.upper;
    colors.insert(colors.end(), sig.lower.begin(), sig.lower.end());
    const std::size_t n = colors.size();
    std::vector<std::size_t> free_pts;
    for (std::size_t i = 0; i < n; ++i)
        if (colors[i] != Color::extra) free_pts.push_back(i);
    std::vector<int> labels(n, 0);
    int next_extra = 1000;
    for (std::size_t i = 0; i < n; ++i)
        if (colors[i] == Color::extra) labels[i] = next_extra++;
    const std::size_t m = free_pts.size();
    std::vector<int> rgs(m, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t t, int used) {
        if (t == m) {
            for (std::size_t a = 0; a < m; ++a) labels[free_pts[a]] = rgs[a];
            f(Partition::canonical(k, colors, labels));
            return;
        }
        for (int b = 0; b <= used; ++b) {
            rgs[t] = b;
            rec(t + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
}

inline std::vector<Partition> all_partitions(const Signature& sig) {
    std::vector<Partition> out;
    for_each_partition(sig, [&](const Partition& p) { out.push_back(p); });
    return out;
}

inline bool is_pairing(const Partition& p) {
    for (std::size_t s : p.block_sizes())
        if (s != 2) return false;
    return true;
}

inline std::vector<Partition> partitions_where(const Signature& sig, const std::function<bool(const Partition&)>& keep) {
    std::vector<Partition> out;
    for_each_partition(sig, [&](const Partition& p) {
        if (keep(p)) out.push_back(p);
    });
    return out;
}

inline std::vector<Partition> named_family(std::string_view family, const Signature& sig) {
    if (family == "all") return all_partitions(sig);
    if (family == "pairs") return partitions_where(sig, is_pairing);
    if (family == "nc") return partitions_where(sig, is_noncrossing);
    if (family == "nc-pairs")
        return partitions_where(sig, [](const Partition& p) { return is_pairing(p) && is_noncrossing(p); });
    throw Error(ErrorCode::unknown_generator, "unknown family '" + std::string(family) + "'");
}

template <class Rng>
Partition random_partition_with_colors(Rng& rng, std::size_t k, const std::vector<Color>& colors) {
    const std::size_t n = colors.size();
    std::vector<int> labels(n);
    int blocks = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (colors[i] == Color::extra) {
            labels[i] = 1000 + static_cast<int>(i);
            continue;
        }
        std::uniform_int_distribution<int> pick(0, blocks);
        int b = pick(rng);
        labels[i] = b;
        if (b == blocks) ++blocks;
    }
    return Partition::canonical(k, colors, labels);
}

// Random partition with the given row lengths; colors drawn from the regime.
template <class Rng>
Partition random_partition(Rng& rng, Regime regime, std::size_t k, std::size_t l) {
    const std::size_t n = k + l;
    std::vector<Color> colors(n);
    std::uniform_int_distribution<int> third(0, 2), half(0, 1);
    for (auto& c : colors) {
        switch (regime) {
            case Regime::plain: c = Color::line; break;
            case Regime::extra: c = third(rng) == 0 ? Color::extra : Color::line; break;
            case Regime::two_colored: c = half(rng) ? Color::white : Color::black; break;
        }
    }
    return random_partition_with_colors(rng, k, colors);
}

template <class Rng>
Partition random_partition(Rng& rng, Regime regime, std::size_t max_points) {
    std::uniform_int_distribution<std::size_t> len(0, max_points);
    std::size_t n = len(rng);
    std::uniform_int_distribution<std::size_t> split(0, n);
    std::size_t k = split(rng);
    return random_partition(rng, regime, k, n - k);
}

// Random partition whose upper word is fixed (for composable pairs).
template <class Rng>
Partition random_partition_above(Rng& rng, Regime regime, const Word& upper, std::size_t l) {
    Partition shape = random_partition(rng, regime, 0, l);
    std::vector<Color> colors = upper;
    Word lw = shape.lower_word();
    colors.insert(colors.end(), lw.begin(), lw.end());
    return random_partition_with_colors(rng, upper.size(), colors);
}

}  // namespace partcat
