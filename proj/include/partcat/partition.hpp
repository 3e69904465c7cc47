#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "partcat/error.hpp"

namespace partcat {

enum class Color : std::uint8_t { line = 0, extra = 1, white = 2, black = 3 };

enum class Regime { plain, extra, two_colored };

inline Color dual(Color c) {
    if (c == Color::white) return Color::black;
    if (c == Color::black) return Color::white;
    return c;
}

inline char color_char(Color c) {
    switch (c) {
        case Color::line: return '-';
        case Color::extra: return 't';
        case Color::white: return 'w';
        case Color::black: return 'b';
    }
    return '?';
}

inline Color color_from_char(char ch) {
    switch (ch) {
        case '-': case '|': return Color::line;
        case 't': return Color::extra;
        case 'w': return Color::white;
        case 'b': return Color::black;
        default: throw Error(ErrorCode::bad_param, std::string("unknown color '") + ch + "'");
    }
}

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::plain: return "plain";
        case Regime::extra: return "extra";
        case Regime::two_colored: return "two-colored";
    }
    return "?";
}

inline Regime parse_regime(std::string_view s) {
    if (s == "plain") return Regime::plain;
    if (s == "extra" || s == "ext" || s == "extra-singleton") return Regime::extra;
    if (s == "two-colored" || s == "2col" || s == "two_colored") return Regime::two_colored;
    throw Error(ErrorCode::bad_param, "unknown regime '" + std::string(s) + "'");
}

inline bool color_allowed(Regime r, Color c) {
    switch (r) {
        case Regime::plain: return c == Color::line;
        case Regime::extra: return c == Color::line || c == Color::extra;
        case Regime::two_colored: return c == Color::white || c == Color::black;
    }
    return false;
}

// | and ▲ may share a partition, ○/● may not mix with either.
enum class Family { none, lines, circles };

inline Family family_of(Color c) {
    return (c == Color::white || c == Color::black) ? Family::circles : Family::lines;
}

using Word = std::vector<Color>;

inline std::string word_string(const Word& w) {
    std::string s;
    for (Color c : w) s += color_char(c);
    return s;
}

inline Word parse_word(std::string_view s) {
    Word w;
    for (char ch : s) w.push_back(color_from_char(ch));
    return w;
}

struct Signature {
    Word upper;
    Word lower;

    std::string str() const { return word_string(upper) + ";" + word_string(lower); }

    static Signature parse(std::string_view s) {
        auto semi = s.find(';');
        if (semi == std::string_view::npos)
            throw Error(ErrorCode::bad_param, "signature needs ';' separating upper and lower words");
        return {parse_word(s.substr(0, semi)), parse_word(s.substr(semi + 1))};
    }

    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature& a, const Signature& b) {
        if (auto c = a.upper.size() + a.lower.size() <=> b.upper.size() + b.lower.size(); c != 0) return c;
        if (auto c = a.upper.size() <=> b.upper.size(); c != 0) return c;
        if (auto c = a.upper <=> b.upper; c != 0) return c;
        return a.lower <=> b.lower;
    }
};

class Partition {
public:
    static constexpr int max_blocks = 64;

    Partition() = default;

    // labels[i] is an arbitrary block id for point i in reading order.
    Partition(const Word& upper, const Word& lower, std::span<const int> labels) {
        if (labels.size() != upper.size() + lower.size())
            throw Error(ErrorCode::invalid_blocks, "label count does not match point count");
        Word colors = upper;
        colors.insert(colors.end(), lower.begin(), lower.end());
        validate(colors, labels);
        *this = canonical(upper.size(), colors, labels);
    }

    // Trusted construction for internal operations: no regime or ▲ validation.
    static Partition canonical(std::size_t k, std::span<const Color> colors, std::span<const int> labels) {
        Partition p;
        p.k_ = static_cast<std::uint16_t>(k);
        p.code_.resize(colors.size());
        int seen[max_blocks];
        int n_seen = 0;
        for (std::size_t i = 0; i < colors.size(); ++i) {
            int id = -1;
            for (int b = 0; b < n_seen; ++b)
                if (seen[b] == labels[i]) { id = b; break; }
            if (id < 0) {
                if (n_seen == max_blocks)
                    throw Error(ErrorCode::bad_param, "more than 64 blocks");
                id = n_seen;
                seen[n_seen++] = labels[i];
            }
            p.code_[i] = static_cast<char>((id << 2) | static_cast<int>(colors[i]));
        }
        return p;
    }

    std::size_t upper_count() const { return k_; }
    std::size_t lower_count() const { return code_.size() - k_; }
    std::size_t size() const { return code_.size(); }
    bool empty() const { return code_.empty(); }

    Color color(std::size_t i) const { return static_cast<Color>(byte(i) & 3); }
    int label(std::size_t i) const { return byte(i) >> 2; }
    bool is_upper(std::size_t i) const { return i < k_; }

    std::vector<Color> colors() const {
        std::vector<Color> c(size());
        for (std::size_t i = 0; i < size(); ++i) c[i] = color(i);
        return c;
    }
    std::vector<int> labels() const {
        std::vector<int> l(size());
        for (std::size_t i = 0; i < size(); ++i) l[i] = label(i);
        return l;
    }
    Word upper_word() const {
        Word w;
        for (std::size_t i = 0; i < k_; ++i) w.push_back(color(i));
        return w;
    }
    Word lower_word() const {
        Word w;
        for (std::size_t i = k_; i < size(); ++i) w.push_back(color(i));
        return w;
    }
    Signature signature() const { return {upper_word(), lower_word()}; }

    int block_count() const {
        int m = 0;
        for (std::size_t i = 0; i < size(); ++i) m = std::max(m, label(i) + 1);
        return m;
    }
    // Blocks as 0-based point indices, ordered by minimal index.
    std::vector<std::vector<std::size_t>> blocks() const {
        std::vector<std::vector<std::size_t>> b(block_count());
        for (std::size_t i = 0; i < size(); ++i) b[label(i)].push_back(i);
        return b;
    }
    std::vector<std::size_t> block_sizes() const {
        std::vector<std::size_t> s(block_count(), 0);
        for (std::size_t i = 0; i < size(); ++i) ++s[label(i)];
        return s;
    }

    Family family() const {
        for (std::size_t i = 0; i < size(); ++i) return family_of(color(i));
        return Family::none;
    }
    bool fits(Regime r) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (!color_allowed(r, color(i))) return false;
        return true;
    }
    std::size_t count(Color c) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < size(); ++i) n += color(i) == c;
        return n;
    }

    const std::string& code() const { return code_; }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.k_ == b.k_ && a.code_ == b.code_;
    }
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        if (auto c = a.code_.size() <=> b.code_.size(); c != 0) return c;
        if (auto c = a.k_ <=> b.k_; c != 0) return c;
        int r = a.code_.compare(b.code_);
        return r < 0 ? std::strong_ordering::less
                     : r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    unsigned byte(std::size_t i) const { return static_cast<unsigned char>(code_[i]); }

    static void validate(std::span<const Color> colors, std::span<const int> labels) {
        Family fam = Family::none;
        for (Color c : colors) {
            Family f = family_of(c);
            if (fam != Family::none && f != fam)
                throw Error(ErrorCode::mixed_regime, "colors from more than one regime");
            fam = f;
        }
        for (std::size_t i = 0; i < colors.size(); ++i) {
            if (colors[i] != Color::extra) continue;
            for (std::size_t j = 0; j < colors.size(); ++j)
                if (j != i && labels[j] == labels[i])
                    throw Error(ErrorCode::extra_singleton_in_block, "extra singleton shares a block");
        }
    }

    std::uint16_t k_ = 0;
    std::string code_;
};

struct PartitionHash {
    std::size_t operator()(const Partition& p) const {
        return std::hash<std::string>{}(p.code()) * 31 + p.upper_count();
    }
};

// Blocks are 1-based index sets in reading order (upper left to right, then lower).
inline Partition make_partition(const Word& upper, const Word& lower,
                                const std::vector<std::vector<int>>& blocks) {
    const int n = static_cast<int>(upper.size() + lower.size());
    std::vector<int> labels(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw Error(ErrorCode::invalid_blocks, "empty block");
        for (int idx : blocks[b]) {
            if (idx < 1 || idx > n)
                throw Error(ErrorCode::invalid_blocks, "index " + std::to_string(idx) + " out of range");
            if (labels[idx - 1] >= 0)
                throw Error(ErrorCode::invalid_blocks, "index " + std::to_string(idx) + " used twice");
            labels[idx - 1] = static_cast<int>(b);
        }
    }
    for (int i = 0; i < n; ++i)
        if (labels[i] < 0)
            throw Error(ErrorCode::invalid_blocks, "index " + std::to_string(i + 1) + " not covered");
    return Partition(upper, lower, labels);
}

inline Partition tensor(const Partition& p, const Partition& q) {
    if (p.family() != Family::none && q.family() != Family::none && p.family() != q.family())
        throw Error(ErrorCode::mixed_regime, "tensor of partitions from different regimes");
    const std::size_t kp = p.upper_count(), kq = q.upper_count();
    const int shift = p.block_count();
    std::vector<Color> colors;
    std::vector<int> labels;
    colors.reserve(p.size() + q.size());
    labels.reserve(p.size() + q.size());
    auto push = [&](const Partition& x, std::size_t from, std::size_t to, int off) {
        for (std::size_t i = from; i < to; ++i) {
            colors.push_back(x.color(i));
            labels.push_back(x.label(i) + off);
        }
    };
    push(p, 0, kp, 0);
    push(q, 0, kq, shift);
    push(p, kp, p.size(), 0);
    push(q, kq, q.size(), shift);
    return Partition::canonical(kp + kq, colors, labels);
}

struct Composition {
    Partition result;
    int loops = 0;        // removed components of dimension N (line or colored points)
    int extra_loops = 0;  // removed ▲ components, weight 1
};

// q after p: p's lower row is glued to q's upper row.
inline Composition compose(const Partition& q, const Partition& p) {
    const std::size_t kp = p.upper_count(), l = p.lower_count(), kq = q.upper_count();
    if (l != kq) throw Error(ErrorCode::signature_mismatch, "lower row of p and upper row of q differ in length");
    for (std::size_t j = 0; j < l; ++j)
        if (p.color(kp + j) != q.color(j))
            throw Error(ErrorCode::signature_mismatch, "lower colors of p differ from upper colors of q");

    const int bp = p.block_count(), bq = q.block_count();
    std::vector<int> parent(bp + bq);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t j = 0; j < l; ++j) {
        int a = find(p.label(kp + j)), b = find(bp + q.label(j));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::vector<char> touched(bp + bq, 0);
    for (std::size_t i = 0; i < kp; ++i) touched[find(p.label(i))] = 1;
    for (std::size_t i = kq; i < q.size(); ++i) touched[find(bp + q.label(i))] = 1;

    Composition out;
    std::vector<char> counted(bp + bq, 0);
    for (std::size_t j = 0; j < l; ++j) {
        int r = find(p.label(kp + j));
        if (touched[r] || counted[r]) continue;
        counted[r] = 1;
        if (p.color(kp + j) == Color::extra) ++out.extra_loops;
        else ++out.loops;
    }

    std::vector<Color> colors;
    std::vector<int> labels;
    colors.reserve(kp + q.lower_count());
    labels.reserve(kp + q.lower_count());
    for (std::size_t i = 0; i < kp; ++i) {
        colors.push_back(p.color(i));
        labels.push_back(find(p.label(i)));
    }
    for (std::size_t i = kq; i < q.size(); ++i) {
        colors.push_back(q.color(i));
        labels.push_back(find(bp + q.label(i)));
    }
    out.result = Partition::canonical(kp, colors, labels);
    return out;
}

inline Partition involute(const Partition& p) {
    const std::size_t k = p.upper_count();
    std::vector<Color> colors;
    std::vector<int> labels;
    for (std::size_t i = k; i < p.size(); ++i) {
        colors.push_back(p.color(i));
        labels.push_back(p.label(i));
    }
    for (std::size_t i = 0; i < k; ++i) {
        colors.push_back(p.color(i));
        labels.push_back(p.label(i));
    }
    return Partition::canonical(p.lower_count(), colors, labels);
}

inline Partition color_invert(const Partition& p) {
    if (p.family() == Family::lines)
        throw Error(ErrorCode::mixed_regime, "color inversion needs a two-colored partition");
    std::vector<Color> colors = p.colors();
    for (Color& c : colors) c = dual(c);
    return Partition::canonical(p.upper_count(), colors, p.labels());
}

enum class Side { left, right };
enum class Direction { up, down };

// Moves one endpoint between rows along the boundary; ○/● flip when changing rows.
inline Partition rotate(const Partition& p, Side side, Direction dir) {
    const std::size_t k = p.upper_count(), n = p.size();
    std::vector<Color> colors = p.colors();
    std::vector<int> labels = p.labels();
    std::size_t from = 0, to = 0, new_k = k;
    if (dir == Direction::up) {
        if (k == n) throw Error(ErrorCode::bad_param, "no lower point to rotate up");
        from = side == Side::left ? k : n - 1;
        to = side == Side::left ? 0 : k;
        new_k = k + 1;
    } else {
        if (k == 0) throw Error(ErrorCode::bad_param, "no upper point to rotate down");
        from = side == Side::left ? 0 : k - 1;
        to = side == Side::left ? k - 1 : n - 1;
        new_k = k - 1;
    }
    Color c = dual(colors[from]);
    int lab = labels[from];
    colors.erase(colors.begin() + from);
    labels.erase(labels.begin() + from);
    colors.insert(colors.begin() + to, c);
    labels.insert(labels.begin() + to, lab);
    return Partition::canonical(new_k, colors, labels);
}

// One-row form: reversed, dualized upper row followed by the lower row.
inline Partition to_one_row(const Partition& p) {
    const std::size_t k = p.upper_count();
    std::vector<Color> colors;
    std::vector<int> labels;
    colors.reserve(p.size());
    labels.reserve(p.size());
    for (std::size_t i = k; i-- > 0;) {
        colors.push_back(dual(p.color(i)));
        labels.push_back(p.label(i));
    }
    for (std::size_t i = k; i < p.size(); ++i) {
        colors.push_back(p.color(i));
        labels.push_back(p.label(i));
    }
    return Partition::canonical(0, colors, labels);
}

inline Partition from_one_row(const Partition& x, std::size_t k) {
    if (x.upper_count() != 0) throw Error(ErrorCode::bad_param, "expected a one-row partition");
    if (k > x.size()) throw Error(ErrorCode::bad_param, "split exceeds length");
    std::vector<Color> colors;
    std::vector<int> labels;
    for (std::size_t i = k; i-- > 0;) {
        colors.push_back(dual(x.color(i)));
        labels.push_back(x.label(i));
    }
    for (std::size_t i = k; i < x.size(); ++i) {
        colors.push_back(x.color(i));
        labels.push_back(x.label(i));
    }
    return Partition::canonical(k, colors, labels);
}

inline Word one_row_word(const Signature& s) {
    Word w;
    for (auto it = s.upper.rbegin(); it != s.upper.rend(); ++it) w.push_back(dual(*it));
    w.insert(w.end(), s.lower.begin(), s.lower.end());
    return w;
}

// Cyclic shift of a one-row partition: the first `by` points move to the end.
inline Partition cyclic_shift(const Partition& x, std::size_t by) {
    const std::size_t n = x.size();
    if (n == 0) return x;
    std::vector<Color> colors(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        colors[i] = x.color((i + by) % n);
        labels[i] = x.label((i + by) % n);
    }
    return Partition::canonical(0, colors, labels);
}

// Involution of a one-row partition, brought back to one row.
inline Partition reflect_row(const Partition& x) {
    const std::size_t n = x.size();
    std::vector<Color> colors(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        colors[i] = dual(x.color(n - 1 - i));
        labels[i] = x.label(n - 1 - i);
    }
    return Partition::canonical(0, colors, labels);
}

inline bool contractible(Color a, Color b) {
    if (a == Color::white || a == Color::black) return b == dual(a);
    return a == b;
}

// Caps points i and i+1 of a one-row partition (composition with an upper pair).
inline Composition contract(const Partition& x, std::size_t i) {
    const std::size_t n = x.size();
    if (x.upper_count() != 0 || i + 1 >= n || !contractible(x.color(i), x.color(i + 1)))
        throw Error(ErrorCode::signature_mismatch, "points cannot be contracted");
    Composition out;
    const int a = x.label(i), b = x.label(i + 1);
    bool extra = x.color(i) == Color::extra;
    bool alone = true;
    std::vector<Color> colors;
    std::vector<int> labels;
    colors.reserve(n - 2);
    labels.reserve(n - 2);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == i + 1) continue;
        int lab = x.label(j);
        if (lab == b) lab = a;
        if (lab == a) alone = false;
        colors.push_back(x.color(j));
        labels.push_back(lab);
    }
    if (extra) out.extra_loops = 2;
    else if (alone) out.loops = 1;
    out.result = Partition::canonical(0, colors, labels);
    return out;
}

// Crossing test along the boundary cycle of the diagram.
inline bool is_noncrossing(const Partition& p) {
    Partition x = to_one_row(p);
    auto blocks = x.blocks();
    for (const auto& blk : blocks) {
        for (std::size_t t = 0; t + 1 < blk.size(); ++t) {
            std::size_t lo = blk[t], hi = blk[t + 1];
            for (std::size_t z = lo + 1; z < hi; ++z) {
                for (std::size_t w : blocks[x.label(z)])
                    if (w < lo || w > hi) return false;
            }
        }
    }
    return true;
}

}  // namespace partcat
