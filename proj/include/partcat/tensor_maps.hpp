#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "partcat/echelon.hpp"
#include "partcat/lincomb.hpp"
#include "partcat/partition.hpp"
#include "partcat/scalar.hpp"

namespace partcat {

class ExactMatrix {
public:
    using Index = std::pair<std::uint64_t, std::uint64_t>;

    ExactMatrix() = default;
    ExactMatrix(std::uint64_t rows, std::uint64_t cols) : rows_(rows), cols_(cols) {}

    static ExactMatrix identity(std::uint64_t n) {
        ExactMatrix m(n, n);
        for (std::uint64_t i = 0; i < n; ++i) m.add(i, i, Scalar(1));
        return m;
    }

    std::uint64_t rows() const { return rows_; }
    std::uint64_t cols() const { return cols_; }
    const std::map<Index, Scalar>& entries() const { return entries_; }

    Scalar at(std::uint64_t r, std::uint64_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Scalar(0) : it->second;
    }

    void add(std::uint64_t r, std::uint64_t c, const Scalar& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = entries_.emplace(Index{r, c}, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_);
        for (const auto& [ix, v] : entries_) t.entries_.emplace(Index{ix.second, ix.first}, v);
        return t;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorCode::arity_mismatch, "matrix shapes do not compose");
        ExactMatrix out(a.rows_, b.cols_);
        for (const auto& [ix, v] : a.entries_) {
            for (auto it = b.entries_.lower_bound({ix.second, 0});
                 it != b.entries_.end() && it->first.first == ix.second; ++it)
                out.add(ix.first, it->first.second, v * it->second);
        }
        return out;
    }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::arity_mismatch, "matrix shapes differ");
        ExactMatrix out = a;
        for (const auto& [ix, v] : b.entries_) out.add(ix.first, ix.second, v);
        return out;
    }

    ExactMatrix scaled(const Scalar& c) const {
        ExactMatrix out(rows_, cols_);
        for (const auto& [ix, v] : entries_) out.add(ix.first, ix.second, c * v);
        return out;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    // First index where the two matrices disagree.
    std::optional<Index> first_difference(const ExactMatrix& o) const {
        auto i = entries_.begin();
        auto j = o.entries_.begin();
        while (i != entries_.end() || j != o.entries_.end()) {
            if (j == o.entries_.end() || (i != entries_.end() && i->first < j->first)) return i->first;
            if (i == entries_.end() || j->first < i->first) return j->first;
            if (!(i->second == j->second)) return i->first;
            ++i;
            ++j;
        }
        return std::nullopt;
    }

    SparseVec flatten() const {
        SparseVec v;
        for (const auto& [ix, s] : entries_) v.emplace_back(ix.first * cols_ + ix.second, s);
        return v;
    }

private:
    std::uint64_t rows_ = 1, cols_ = 1;
    std::map<Index, Scalar> entries_;
};

inline ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (const auto& [i, x] : a.entries())
        for (const auto& [j, y] : b.entries())
            out.add(i.first * b.rows() + j.first, i.second * b.cols() + j.second, x * y);
    return out;
}

inline std::uint64_t color_dim(Color c, long n) { return c == Color::extra ? 1 : static_cast<std::uint64_t>(n); }

inline std::uint64_t word_dim(const Word& w, long n) {
    std::uint64_t d = 1;
    for (Color c : w) d *= color_dim(c, n);
    return d;
}

// δ_p(i, j): indices are given for the line/colored points only, or for all
// points with ▲ entries fixed to 0.
inline int delta_p(const Partition& p, const std::vector<long>& i, const std::vector<long>& j) {
    auto pick = [&](const std::vector<long>& idx, std::size_t from, std::size_t to) {
        std::size_t all = to - from, lines = 0;
        for (std::size_t t = from; t < to; ++t) lines += p.color(t) != Color::extra;
        if (idx.size() != all && idx.size() != lines)
            throw Error(ErrorCode::arity_mismatch, "index arity does not match the partition");
        std::vector<std::pair<std::size_t, long>> out;
        std::size_t a = 0;
        for (std::size_t t = from; t < to; ++t) {
            bool extra = p.color(t) == Color::extra;
            if (extra && idx.size() == lines) continue;
            long v = idx[a++];
            if (extra) {
                if (v != 0) return std::optional<std::vector<std::pair<std::size_t, long>>>();
                continue;
            }
            out.emplace_back(t, v);
        }
        return std::optional(out);
    };
    auto up = pick(i, 0, p.upper_count());
    auto down = pick(j, p.upper_count(), p.size());
    if (!up || !down) return 0;
    std::vector<std::optional<long>> value(p.block_count());
    for (const auto* side : {&*up, &*down})
        for (auto [t, v] : *side) {
            auto& slot = value[p.label(t)];
            if (slot && *slot != v) return 0;
            slot = v;
        }
    return 1;
}

// Shape dim(lower word) x dim(upper word); ▲ points have dimension 1.
inline ExactMatrix t_matrix(const Partition& p, long n) {
    if (n < 1) throw Error(ErrorCode::bad_param, "N must be positive");
    const Signature sig = p.signature();
    ExactMatrix m(word_dim(sig.lower, n), word_dim(sig.upper, n));
    const int nb = p.block_count();
    std::vector<int> line_block(nb, -1);
    int nl = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.color(i) != Color::extra && line_block[p.label(i)] < 0) line_block[p.label(i)] = nl++;
    std::vector<long> val(nl, 0);
    for (;;) {
        std::uint64_t row = 0, col = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p.color(i) == Color::extra) continue;
            auto v = static_cast<std::uint64_t>(val[line_block[p.label(i)]]);
            if (p.is_upper(i)) col = col * n + v;
            else row = row * n + v;
        }
        m.add(row, col, Scalar(1));
        int t = nl - 1;
        while (t >= 0 && ++val[t] == n) val[t--] = 0;
        if (t < 0) break;
    }
    return m;
}

inline ExactMatrix t_matrix(const LinearCombination& lc) {
    const long n = lc.context();
    ExactMatrix m(word_dim(lc.signature().lower, n), word_dim(lc.signature().upper, n));
    for (const auto& [p, c] : lc.terms()) m = m + t_matrix(p, n).scaled(c);
    return m;
}

inline std::size_t mor_dim(const std::vector<Partition>& gens, const Signature& sig, long n) {
    RowEchelon e;
    for (const auto& p : gens) {
        if (p.signature() != sig) throw Error(ErrorCode::signature_mismatch, "generator outside the signature");
        e.insert(t_matrix(p, n).flatten());
    }
    return e.rank();
}

struct FunctorReport {
    bool ok = true;
    std::string detail;
};

namespace detail {

inline void compare_into(FunctorReport& r, const std::string& what, const ExactMatrix& lhs, const ExactMatrix& rhs) {
    if (!r.ok) return;
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        r.ok = false;
        r.detail = what + ": shapes differ";
        return;
    }
    if (auto d = lhs.first_difference(rhs)) {
        r.ok = false;
        std::ostringstream os;
        os << what << ": entry (" << d->first << "," << d->second << ") " << lhs.at(d->first, d->second)
           << " vs " << rhs.at(d->first, d->second);
        r.detail = os.str();
    }
}

}  // namespace detail

// Checks T_{p*} = T_p^t, T_{p⊗q} = T_p ⊗ T_q and N^rl T_{qp} = T_q T_p.
inline FunctorReport verify_t_functor(const Partition& p, const Partition& q, long n) {
    Composition c = compose(q, p);
    FunctorReport r;
    ExactMatrix tp = t_matrix(p, n), tq = t_matrix(q, n);
    detail::compare_into(r, "involution", t_matrix(involute(p), n), tp.transpose());
    detail::compare_into(r, "tensor", t_matrix(tensor(p, q), n), kronecker(tp, tq));
    detail::compare_into(r, "composition", t_matrix(c.result, n).scaled(Scalar(n).pow(c.loops)), tq * tp);
    if (r.ok) r.detail = "ok";
    return r;
}

inline std::string dump_matrix(const ExactMatrix& m, const Signature& sig, long n) {
    std::ostringstream os;
    os << "T " << sig.str() << " N=" << n << "\n";
    for (const auto& [ix, v] : m.entries())
        os << ix.first << " " << ix.second << " " << v.a().get_str() << " " << v.b().get_str() << "\n";
    return os.str();
}

}  // namespace partcat
