#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "partcat/partition.hpp"

namespace partcat {

// Alternating ○●○… by position (▲ positions count), then ▲ removed.
inline Word functor_f_word(const Word& w) {
    Word out;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (w[t] == Color::extra) continue;
        if (w[t] != Color::line) throw Error(ErrorCode::wrong_regime, "F takes line and extra points only");
        out.push_back(t % 2 == 0 ? Color::white : Color::black);
    }
    return out;
}

inline Partition functor_f(const Partition& p) {
    if (p.family() == Family::circles) throw Error(ErrorCode::wrong_regime, "F takes an extra-singleton partition");
    if (p.size() % 2) throw Error(ErrorCode::odd_length, "F is defined on even length only");
    std::vector<Color> colors;
    std::vector<int> labels;
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.color(i) == Color::extra) continue;
        std::size_t t = p.is_upper(i) ? i : i - p.upper_count();
        colors.push_back(t % 2 == 0 ? Color::white : Color::black);
        labels.push_back(p.label(i));
        k += p.is_upper(i);
    }
    return Partition::canonical(k, colors, labels);
}

namespace detail {

// Greedy preimage of one row: a ▲ goes in front of each point whose color
// disagrees with its position parity.
struct RowPreimage {
    std::vector<Color> colors;
    std::vector<int> labels;
};

inline RowPreimage row_preimage(const Partition& p, std::size_t from, std::size_t to, int& fresh) {
    RowPreimage r;
    for (std::size_t i = from; i < to; ++i) {
        Color want = r.colors.size() % 2 == 0 ? Color::white : Color::black;
        if (p.color(i) != want) {
            r.colors.push_back(Color::extra);
            r.labels.push_back(fresh++);
        }
        r.colors.push_back(Color::line);
        r.labels.push_back(p.label(i));
    }
    return r;
}

inline Partition join_rows(RowPreimage up, RowPreimage down, bool pad_upper, int& fresh) {
    if (pad_upper) {
        up.colors.push_back(Color::extra);
        up.labels.push_back(fresh++);
    }
    std::size_t k = up.colors.size();
    up.colors.insert(up.colors.end(), down.colors.begin(), down.colors.end());
    up.labels.insert(up.labels.end(), down.labels.begin(), down.labels.end());
    return Partition::canonical(k, up.colors, up.labels);
}

}  // namespace detail

// Shortest even-length preimage under F. When the two greedy rows have odd
// total length a single ▲ closes the upper row.
inline Partition shortest_preimage(const Partition& pt) {
    if (pt.family() == Family::lines) throw Error(ErrorCode::wrong_regime, "expected a two-colored partition");
    int fresh = 1000;
    auto up = detail::row_preimage(pt, 0, pt.upper_count(), fresh);
    auto down = detail::row_preimage(pt, pt.upper_count(), pt.size(), fresh);
    bool odd = (up.colors.size() + down.colors.size()) % 2 == 1;
    return detail::join_rows(up, down, odd, fresh);
}

// Removes ▲▲ neighbours and trailing ▲ row by row, keeping the length parity.
// On even length this is shortest_preimage(F(p)).
inline Partition preimage_normalize(const Partition& p) {
    if (p.family() == Family::circles) throw Error(ErrorCode::wrong_regime, "expected an extra-singleton partition");
    std::vector<Color> colors;
    std::vector<int> labels;
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.color(i) == Color::extra) continue;
        std::size_t t = p.is_upper(i) ? i : i - p.upper_count();
        colors.push_back(t % 2 == 0 ? Color::white : Color::black);
        labels.push_back(p.label(i));
        k += p.is_upper(i);
    }
    Partition image = Partition::canonical(k, colors, labels);
    int fresh = 1000;
    auto up = detail::row_preimage(image, 0, k, fresh);
    auto down = detail::row_preimage(image, k, image.size(), fresh);
    bool pad = (up.colors.size() + down.colors.size()) % 2 != p.size() % 2;
    return detail::join_rows(up, down, pad, fresh);
}

inline Partition psi_forget(const Partition& p) {
    std::vector<Color> colors = p.colors();
    for (Color c : colors)
        if (c == Color::extra) throw Error(ErrorCode::wrong_regime, "forgetful functor takes two-colored partitions");
    for (Color& c : colors) c = Color::line;
    return Partition::canonical(p.upper_count(), colors, p.labels());
}

// Deletes the ▲ points.
inline Partition remove_extra(const Partition& p) {
    std::vector<Color> colors;
    std::vector<int> labels;
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.color(i) == Color::extra) continue;
        colors.push_back(p.color(i));
        labels.push_back(p.label(i));
        k += p.is_upper(i);
    }
    return Partition::canonical(k, colors, labels);
}

// Alternating colorings whose rows start with the same color and end with the
// same color. Total length must be even.
inline std::vector<Partition> alt_colorings(const Partition& p) {
    std::vector<Partition> out;
    if (p.family() == Family::circles) throw Error(ErrorCode::wrong_regime, "expected a plain partition");
    if (p.count(Color::extra)) throw Error(ErrorCode::wrong_regime, "expected a plain partition");
    if (p.size() % 2) return out;
    const std::size_t k = p.upper_count(), l = p.lower_count();
    for (Color start : {Color::white, Color::black}) {
        std::vector<Color> colors(p.size());
        for (std::size_t t = 0; t < k; ++t) colors[t] = t % 2 ? dual(start) : start;
        for (std::size_t t = 0; t < l; ++t) colors[k + t] = t % 2 ? dual(start) : start;
        if (k && l && colors[k - 1] != colors[p.size() - 1]) continue;
        out.push_back(Partition::canonical(k, colors, p.labels()));
    }
    return out;
}

inline long color_sum(const Word& w) {
    long c = 0;
    for (Color x : w) {
        if (x == Color::white) ++c;
        else if (x == Color::black) --c;
        else throw Error(ErrorCode::wrong_regime, "color sum needs a two-colored word");
    }
    return c;
}

// c(lower) − c(upper)
inline long color_sum(const Partition& p) { return color_sum(p.lower_word()) - color_sum(p.upper_word()); }

struct DegreeEstimate {
    long gcd = 0;
    std::size_t sample_size = 0;
    int bound = 0;
    std::string label() const {
        return "sample gcd " + std::to_string(gcd) + " over " + std::to_string(sample_size) +
               " partitions with at most " + std::to_string(bound) + " points (a multiple of the degree)";
    }
};

inline DegreeEstimate degree_of_reflection(const std::vector<Partition>& sample, int bound) {
    DegreeEstimate d;
    d.bound = bound;
    d.sample_size = sample.size();
    for (const auto& p : sample) d.gcd = std::gcd(d.gcd, std::labs(color_sum(p)));
    return d;
}

// An odd-length generator contracts down to ↓ or ▲; then p ⊗ s is even and
// ⟨p⊗s, s⟩ contains p.
struct OddSplit {
    std::vector<Partition> even;
    std::vector<Partition> singletons;
};

inline OddSplit split_odd_generators(const std::vector<Partition>& gens) {
    OddSplit out;
    for (const auto& p : gens) {
        if (p.size() % 2 == 0) {
            out.even.push_back(p);
            continue;
        }
        Partition x = to_one_row(p);
        while (x.size() > 1) {
            std::size_t n = x.size(), i = 0;
            while (i < n && !contractible(x.color(i), x.color((i + 1) % n))) ++i;
            if (i == n) throw Error(ErrorCode::bad_param, "odd-length generator without contractible neighbours");
            if (i == n - 1) {
                x = cyclic_shift(x, n - 1);
                i = 0;
            }
            x = contract(x, i).result;
        }
        if (std::find(out.singletons.begin(), out.singletons.end(), x) == out.singletons.end())
            out.singletons.push_back(x);
        out.even.push_back(tensor(p, x));
    }
    return out;
}

}  // namespace partcat
