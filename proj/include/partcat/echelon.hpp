#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "partcat/scalar.hpp"

namespace partcat {

// Sparse vector: (index, value) pairs, strictly increasing indices, no zeros.
using SparseVec = std::vector<std::pair<std::uint64_t, Scalar>>;

// x + c*y
inline SparseVec axpy(const SparseVec& x, const Scalar& c, const SparseVec& y) {
    SparseVec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            Scalar v = c * y[j].second;
            if (!v.is_zero()) out.emplace_back(y[j].first, std::move(v));
            ++j;
        } else {
            Scalar v = x[i].second + c * y[j].second;
            if (!v.is_zero()) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

inline SparseVec make_sparse(std::map<std::uint64_t, Scalar> m) {
    SparseVec v;
    for (auto& [k, s] : m)
        if (!s.is_zero()) v.emplace_back(k, std::move(s));
    return v;
}

// Incremental row echelon form; every stored row has leading coefficient 1
// and a distinct leading index.
class RowEchelon {
public:
    // Eliminates every entry that sits on a pivot index.
    SparseVec reduce(SparseVec v) const {
        std::size_t pos = 0;
        while (pos < v.size()) {
            auto it = rows_.find(v[pos].first);
            if (it == rows_.end()) {
                ++pos;
                continue;
            }
            // Pivot rows only reach indices >= their lead, so v[0..pos) is untouched.
            v = axpy(v, -v[pos].second, it->second);
        }
        return v;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    // Returns true when v was independent of the stored rows.
    bool insert(const SparseVec& v) {
        SparseVec r = reduce(v);
        if (r.empty()) return false;
        Scalar inv = Scalar(1) / r.front().second;
        for (auto& e : r) e.second *= inv;
        std::uint64_t lead = r.front().first;
        rows_.emplace(lead, std::move(r));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

    // Fully reduced rows: zero at every pivot other than their own.
    std::vector<SparseVec> reduced_rows() const {
        std::vector<SparseVec> out;
        RowEchelon done;
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            SparseVec r = it->second;
            SparseVec head(r.begin(), r.begin() + 1);
            SparseVec tail = done.reduce(SparseVec(r.begin() + 1, r.end()));
            head.insert(head.end(), tail.begin(), tail.end());
            done.rows_.emplace(it->first, head);
            out.push_back(std::move(head));
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
    const std::map<std::uint64_t, SparseVec>& rows() const { return rows_; }

private:
    std::map<std::uint64_t, SparseVec> rows_;
};

inline std::size_t rank_of(const std::vector<SparseVec>& vectors) {
    RowEchelon e;
    for (const auto& v : vectors) e.insert(v);
    return e.rank();
}

}  // namespace partcat
