#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "partcat/echelon.hpp"
#include "partcat/functor_f.hpp"
#include "partcat/generators.hpp"
#include "partcat/lincomb.hpp"
#include "partcat/partition.hpp"
#include "partcat/text.hpp"

namespace partcat {

enum class ClosureMode { set, linear };

struct ClosureConfig {
    Regime regime = Regime::plain;
    int points = 6;
    int slack = 4;
    ClosureMode mode = ClosureMode::set;
    long n = 0;
    int jobs = 1;
};

struct RoundStat {
    std::size_t candidates = 0;
    std::size_t added = 0;
    std::size_t added_within_bound = 0;
};

enum class Membership { certified_in, not_found };

inline const char* membership_name(Membership m) {
    return m == Membership::certified_in ? "CertifiedIn" : "NotFound";
}

namespace detail {

// One-row forms of the partitions every category of the regime contains.
inline std::vector<Partition> base_one_rows(Regime r) {
    std::vector<Partition> out;
    switch (r) {
        case Regime::plain:
            out.push_back(parse_partition("P(; a a)"));
            break;
        case Regime::extra:
            out.push_back(parse_partition("P(; a a)"));
            out.push_back(parse_partition("P(; x:t y:t)"));
            break;
        case Regime::two_colored:
            out.push_back(parse_partition("P(; a:w a:b)"));
            out.push_back(parse_partition("P(; a:b a:w)"));
            break;
    }
    return out;
}

inline void check_generator(const Partition& p, const ClosureConfig& cfg) {
    if (!p.fits(cfg.regime)) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (family_of(p.color(i)) != (cfg.regime == Regime::two_colored ? Family::circles : Family::lines))
                throw Error(ErrorCode::mixed_regime, "generator " + to_string(p) + " is outside the regime");
        throw Error(ErrorCode::wrong_regime, "generator " + to_string(p) + " is outside the regime");
    }
    if (static_cast<int>(p.size()) > cfg.points)
        throw Error(ErrorCode::budget_too_small, "generator " + to_string(p) + " exceeds the point budget");
}

// Splits [0, n) into `jobs` contiguous chunks and runs f(begin, end, slot).
template <class F>
void parallel_chunks(std::size_t n, int jobs, F&& f) {
    const std::size_t j = std::max<std::size_t>(1, std::min<std::size_t>(jobs < 1 ? 1 : jobs, n));
    if (j <= 1) {
        f(0, n, 0);
        return;
    }
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < j; ++t) {
        std::size_t b = n * t / j, e = n * (t + 1) / j;
        threads.emplace_back([&f, b, e, t] { f(b, e, t); });
    }
    for (auto& th : threads) th.join();
}

// Applies every unary one-row operation to a combination (rotations,
// reflection, contractions) and hands the results to emit.
template <class Emit>
void linear_unary(const LinearCombination& v, Emit&& emit) {
    const long n = v.context();
    const Word& w = v.signature().lower;
    const std::size_t len = w.size();
    for (std::size_t s = 1; s < len; ++s) {
        Word rw(w.begin() + s, w.end());
        rw.insert(rw.end(), w.begin(), w.begin() + s);
        LinearCombination out(Signature{{}, rw}, n);
        for (const auto& [p, c] : v.terms()) out.add_term(cyclic_shift(p, s), c);
        emit(std::move(out));
    }
    {
        Word rw(w.rbegin(), w.rend());
        for (Color& c : rw) c = dual(c);
        LinearCombination out(Signature{{}, rw}, n);
        for (const auto& [p, c] : v.terms()) out.add_term(reflect_row(p), c);
        emit(std::move(out));
    }
    for (std::size_t i = 0; i + 1 < len; ++i) {
        if (!contractible(w[i], w[i + 1])) continue;
        Word rw = w;
        rw.erase(rw.begin() + i, rw.begin() + i + 2);
        LinearCombination out(Signature{{}, rw}, n);
        for (const auto& [p, c] : v.terms()) {
            Composition k = contract(p, i);
            out.add_term(k.result, c * Scalar(n).pow(k.loops));
        }
        emit(std::move(out));
    }
}

inline LinearCombination lin_one_row(const LinearCombination& lc) {
    LinearCombination out(Signature{{}, one_row_word(lc.signature())}, lc.context());
    for (const auto& [p, c] : lc.terms()) out.add_term(to_one_row(p), c);
    return out;
}

inline LinearCombination lin_from_one_row(const LinearCombination& lc, std::size_t k) {
    std::optional<LinearCombination> out;
    for (const auto& [p, c] : lc.terms()) {
        Partition q = from_one_row(p, k);
        if (!out) out = LinearCombination(q.signature(), lc.context());
        out->add_term(q, c);
    }
    return out ? *out : LinearCombination(Signature{}, lc.context());
}

}  // namespace detail

// Bounded fixpoint of a generated category. Elements are kept in one-row
// form (every category is closed under rotation); tensor, rotation,
// reflection and contraction of neighbours generate the category operations.
class CategoryClosure {
public:
    CategoryClosure(std::vector<Partition> gens, ClosureConfig cfg) : cfg_(cfg), gens_(std::move(gens)) {
        if (cfg_.mode != ClosureMode::set) throw Error(ErrorCode::bad_param, "use the linear constructor");
        for (const auto& g : gens_) detail::check_generator(g, cfg_);
        run_set();
    }

    CategoryClosure(std::vector<LinearCombination> gens, ClosureConfig cfg) : cfg_(cfg), lin_gens_(std::move(gens)) {
        if (cfg_.mode != ClosureMode::linear) throw Error(ErrorCode::bad_param, "use the set constructor");
        if (cfg_.n < 1) throw Error(ErrorCode::bad_param, "linear mode needs N");
        for (const auto& g : lin_gens_) {
            if (g.context() != cfg_.n) throw Error(ErrorCode::context_mismatch, "generator context differs from N");
            for (const auto& [p, c] : g.terms()) detail::check_generator(p, cfg_);
        }
        run_linear();
    }

    const ClosureConfig& config() const { return cfg_; }
    const std::vector<Partition>& generators() const { return gens_; }
    const std::vector<RoundStat>& rounds() const { return rounds_; }
    // The bounded fixpoint was reached (no candidate left unexplored).
    bool saturated() const { return saturated_; }
    // Last round that produced an element within the point budget.
    std::size_t last_productive_round() const {
        std::size_t last = 0;
        for (std::size_t r = 0; r < rounds_.size(); ++r)
            if (rounds_[r].added_within_bound) last = r + 1;
        return last;
    }

    // Set mode: sorted one-row members with at most P points.
    const std::vector<Partition>& one_row_members() const { return members_; }

    std::vector<Partition> members(const Signature& sig) const {
        std::vector<Partition> out;
        const Word w = one_row_word(sig);
        if (cfg_.mode == ClosureMode::set) {
            for (const auto& x : members_)
                if (x.lower_word() == w) out.push_back(from_one_row(x, sig.upper.size()));
            std::sort(out.begin(), out.end());
        }
        return out;
    }

    Membership contains(const Partition& p) const {
        if (cfg_.mode == ClosureMode::linear) return contains(LinearCombination::of(p, cfg_.n));
        check_family(p);
        Partition x = to_one_row(p);
        return std::binary_search(members_.begin(), members_.end(), x) ? Membership::certified_in
                                                                         : Membership::not_found;
    }

    Membership contains(const LinearCombination& lc) const {
        if (cfg_.mode == ClosureMode::set) {
            if (lc.size() == 1 && lc.terms().begin()->second.is_one()) return contains(lc.terms().begin()->first);
            throw Error(ErrorCode::bad_param, "set-mode closures hold partitions, not combinations");
        }
        if (lc.context() != cfg_.n) throw Error(ErrorCode::context_mismatch, "combination context differs from N");
        if (lc.is_zero()) return Membership::certified_in;
        for (const auto& [p, c] : lc.terms()) check_family(p);
        LinearCombination x = detail::lin_one_row(lc);
        auto it = spaces_.find(x.signature().lower);
        if (it == spaces_.end()) return Membership::not_found;
        SparseVec v;
        for (const auto& [p, c] : x.terms()) {
            auto id = it->second.ids.find(p);
            if (id == it->second.ids.end()) return Membership::not_found;
            v.emplace_back(id->second, c);
        }
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return it->second.echelon.contains(v) ? Membership::certified_in : Membership::not_found;
    }

    // Linear mode: dimension of the space at this signature (|P| <= budget).
    std::size_t dimension(const Signature& sig) const {
        if (cfg_.mode == ClosureMode::set) return members(sig).size();
        auto it = spaces_.find(one_row_word(sig));
        if (it == spaces_.end() || static_cast<int>(it->first.size()) > cfg_.points) return 0;
        return it->second.echelon.rank();
    }

    // Linear mode: the fully reduced basis of a signature, coordinates in
    // canonical partition order.
    std::vector<LinearCombination> basis(const Signature& sig) const {
        std::vector<LinearCombination> out;
        const Word w = one_row_word(sig);
        auto it = spaces_.find(w);
        if (it == spaces_.end() || static_cast<int>(w.size()) > cfg_.points) return out;
        std::vector<Partition> order;
        for (const auto& [p, id] : it->second.ids) order.push_back(p);
        std::sort(order.begin(), order.end());
        std::unordered_map<Partition, std::uint64_t, PartitionHash> rank;
        for (std::size_t i = 0; i < order.size(); ++i) rank.emplace(order[i], i);
        RowEchelon e;
        for (const auto& v : it->second.accepted) {
            SparseVec s;
            for (const auto& [p, c] : v.terms()) s.emplace_back(rank.at(p), c);
            std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            e.insert(s);
        }
        for (const auto& row : e.reduced_rows()) {
            LinearCombination lc(Signature{{}, w}, cfg_.n);
            for (const auto& [i, c] : row) lc.add_term(order[i], c);
            out.push_back(detail::lin_from_one_row(lc, sig.upper.size()));
        }
        return out;
    }

    // One-row words present within the budget, sorted.
    std::vector<Word> words() const {
        std::vector<Word> out;
        if (cfg_.mode == ClosureMode::set) {
            for (const auto& x : members_) out.push_back(x.lower_word());
        } else {
            for (const auto& [w, sp] : spaces_)
                if (static_cast<int>(w.size()) <= cfg_.points && sp.echelon.rank()) out.push_back(w);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Every signature whose store is non-empty, in signature order.
    std::vector<Signature> signatures() const {
        std::vector<Signature> out;
        for (const auto& w : words()) {
            for (std::size_t k = 0; k <= w.size(); ++k) {
                Signature s;
                for (std::size_t i = k; i-- > 0;) s.upper.push_back(dual(w[i]));
                s.lower.assign(w.begin() + k, w.end());
                out.push_back(std::move(s));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void dump(std::ostream& os) const {
        os << "CLOSURE regime=" << regime_name(cfg_.regime) << " P=" << cfg_.points << " s=" << cfg_.slack
           << " mode=" << (cfg_.mode == ClosureMode::set ? "set" : "linear");
        if (cfg_.mode == ClosureMode::linear) os << " N=" << cfg_.n;
        os << "\n";
        for (const auto& sig : signatures()) {
            os << "SIG " << sig.str() << "\n";
            if (cfg_.mode == ClosureMode::set) {
                for (const auto& p : members(sig)) os << to_string(p) << "\n";
            } else {
                for (const auto& lc : basis(sig)) os << to_string(lc) << "\n";
            }
        }
    }

    std::string diagnostics() const {
        std::ostringstream os;
        os << "rounds=" << rounds_.size() << " saturated=" << (saturated_ ? "yes" : "no")
           << " last_productive_round=" << last_productive_round() << " growth=";
        for (std::size_t r = 0; r < rounds_.size(); ++r) os << (r ? "," : "") << rounds_[r].added_within_bound;
        return os.str();
    }

private:
    struct Space {
        RowEchelon echelon;
        std::unordered_map<Partition, std::uint64_t, PartitionHash> ids;
        std::vector<LinearCombination> accepted;
    };

    void check_family(const Partition& p) const {
        Family want = cfg_.regime == Regime::two_colored ? Family::circles : Family::lines;
        if (p.family() != Family::none && p.family() != want)
            throw Error(ErrorCode::mixed_regime, "partition is outside the closure's regime");
    }

    std::size_t max_len() const { return static_cast<std::size_t>(cfg_.points + cfg_.slack); }

    void run_set() {
        const std::size_t cap = max_len();
        std::unordered_set<Partition, PartitionHash> seen;
        std::vector<std::vector<Partition>> by_len(cap + 1);
        std::vector<Partition> frontier = detail::base_one_rows(cfg_.regime);
        for (const auto& g : gens_) frontier.push_back(to_one_row(g));
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());

        while (!frontier.empty()) {
            RoundStat st;
            for (const auto& x : frontier) {
                seen.insert(x);
                by_len[x.size()].push_back(x);
                ++st.added;
                st.added_within_bound += static_cast<int>(x.size()) <= cfg_.points;
            }
            std::vector<std::vector<Partition>> found(std::max(1, cfg_.jobs));
            detail::parallel_chunks(frontier.size(), cfg_.jobs, [&](std::size_t b, std::size_t e, std::size_t slot) {
                auto& out = found[slot];
                auto offer = [&](Partition&& c) {
                    if (!seen.count(c)) out.push_back(std::move(c));
                };
                for (std::size_t f = b; f < e; ++f) {
                    const Partition& x = frontier[f];
                    const std::size_t n = x.size();
                    for (std::size_t s = 1; s < n; ++s) offer(cyclic_shift(x, s));
                    offer(reflect_row(x));
                    for (std::size_t i = 0; i + 1 < n; ++i)
                        if (contractible(x.color(i), x.color(i + 1))) offer(contract(x, i).result);
                    for (std::size_t len = 1; len + n <= cap; ++len)
                        for (const auto& y : by_len[len]) offer(tensor(x, y));
                }
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
            });
            std::vector<Partition> next;
            for (auto& part : found) {
                st.candidates += part.size();
                next.insert(next.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            rounds_.push_back(st);
            frontier = std::move(next);
        }
        saturated_ = true;
        for (std::size_t len = 0; len <= std::min<std::size_t>(cap, cfg_.points); ++len)
            members_.insert(members_.end(), by_len[len].begin(), by_len[len].end());
        std::sort(members_.begin(), members_.end());
    }

    // Adds v to the space of its word; returns true when it enlarged the span.
    bool insert_linear(const LinearCombination& v) {
        if (v.is_zero()) return false;
        Space& sp = spaces_[v.signature().lower];
        SparseVec s;
        for (const auto& [p, c] : v.terms()) {
            auto [it, fresh] = sp.ids.emplace(p, sp.ids.size());
            s.emplace_back(it->second, c);
        }
        std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        if (!sp.echelon.insert(s)) return false;
        sp.accepted.push_back(v);
        return true;
    }

    void run_linear() {
        const std::size_t cap = max_len();
        std::vector<std::vector<LinearCombination>> by_len(cap + 1);
        std::vector<LinearCombination> frontier;
        auto offer_seed = [&](const LinearCombination& v) {
            if (insert_linear(v)) frontier.push_back(v);
        };
        for (const auto& b : detail::base_one_rows(cfg_.regime)) offer_seed(LinearCombination::of(b, cfg_.n));
        for (const auto& g : lin_gens_) offer_seed(detail::lin_one_row(g));

        while (!frontier.empty()) {
            RoundStat st;
            for (const auto& v : frontier) {
                by_len[v.signature().lower.size()].push_back(v);
                ++st.added;
                st.added_within_bound += static_cast<int>(v.signature().lower.size()) <= cfg_.points;
            }
            std::vector<std::vector<LinearCombination>> found(std::max(1, cfg_.jobs));
            detail::parallel_chunks(frontier.size(), cfg_.jobs, [&](std::size_t b, std::size_t e, std::size_t slot) {
                auto& out = found[slot];
                for (std::size_t f = b; f < e; ++f) {
                    const LinearCombination& x = frontier[f];
                    const std::size_t n = x.signature().lower.size();
                    detail::linear_unary(x, [&](LinearCombination&& c) {
                        if (!c.is_zero()) out.push_back(std::move(c));
                    });
                    for (std::size_t len = 1; len + n <= cap; ++len)
                        for (const auto& y : by_len[len]) out.push_back(lin_tensor(x, y));
                }
            });
            std::vector<LinearCombination> next;
            for (auto& part : found) {
                st.candidates += part.size();
                for (auto& c : part)
                    if (insert_linear(c)) next.push_back(std::move(c));
            }
            rounds_.push_back(st);
            frontier = std::move(next);
        }
        saturated_ = true;
    }

    ClosureConfig cfg_;
    std::vector<Partition> gens_;
    std::vector<LinearCombination> lin_gens_;
    std::vector<Partition> members_;
    std::map<Word, Space> spaces_;
    std::vector<RoundStat> rounds_;
    bool saturated_ = false;
};

inline CategoryClosure closure(const std::vector<Partition>& gens, Regime regime, int points, int slack = 4,
                               int jobs = 1) {
    return CategoryClosure(gens, ClosureConfig{regime, points, slack, ClosureMode::set, 0, jobs});
}

inline CategoryClosure closure_linear(const std::vector<LinearCombination>& gens, Regime regime, int points,
                                      int slack, long n, int jobs = 1) {
    return CategoryClosure(gens, ClosureConfig{regime, points, slack, ClosureMode::linear, n, jobs});
}

struct BoundedComparison {
    bool equal = true;
    int bound = 0;
    std::optional<Partition> witness;  // one-row form
    bool witness_in_first = false;

    std::string str() const {
        if (equal) return "Equal@" + std::to_string(bound);
        return "Differ(" + to_string(*witness) + (witness_in_first ? " only in first" : " only in second") + ")";
    }
};

namespace detail {

inline BoundedComparison compare_sorted(const std::vector<Partition>& a, const std::vector<Partition>& b, int bound) {
    BoundedComparison r;
    r.bound = bound;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            r.equal = false;
            r.witness = a[i];
            r.witness_in_first = true;
            return r;
        }
        if (i == a.size() || b[j] < a[i]) {
            r.equal = false;
            r.witness = b[j];
            return r;
        }
        ++i;
        ++j;
    }
    return r;
}

// Shortest even-length one-row ▲-preimage of a one-row two-colored partition.
inline std::size_t one_row_preimage_length(const Partition& y) {
    std::size_t len = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        Color want = len % 2 == 0 ? Color::white : Color::black;
        len += y.color(i) == want ? 1 : 2;
    }
    return len + len % 2;
}

}  // namespace detail

inline BoundedComparison equal_bounded(const CategoryClosure& a, const CategoryClosure& b) {
    const auto& ca = a.config();
    const auto& cb = b.config();
    if (ca.regime != cb.regime || ca.points != cb.points || ca.slack != cb.slack || ca.mode != cb.mode)
        throw Error(ErrorCode::bound_mismatch, "closures differ in regime, bound or mode");
    if (ca.mode == ClosureMode::set) return detail::compare_sorted(a.one_row_members(), b.one_row_members(), ca.points);
    BoundedComparison r;
    r.bound = ca.points;
    for (const auto& sig : a.signatures()) {
        if (!sig.upper.empty()) continue;
        for (const auto& v : a.basis(sig))
            if (b.contains(v) == Membership::not_found) {
                r.equal = false;
                r.witness = v.terms().begin()->first;
                r.witness_in_first = true;
                return r;
            }
    }
    for (const auto& sig : b.signatures()) {
        if (!sig.upper.empty()) continue;
        for (const auto& v : b.basis(sig))
            if (a.contains(v) == Membership::not_found) {
                r.equal = false;
                r.witness = v.terms().begin()->first;
                return r;
            }
    }
    return r;
}

// F applied to the even members of an extra-singleton closure, against the
// two-colored members whose shortest preimage fits the same bound.
inline BoundedComparison compare_f_image(const CategoryClosure& ext, const CategoryClosure& two) {
    if (ext.config().regime != Regime::extra || two.config().regime != Regime::two_colored)
        throw Error(ErrorCode::wrong_regime, "expected an extra-singleton and a two-colored closure");
    if (ext.config().points != two.config().points || ext.config().slack != two.config().slack)
        throw Error(ErrorCode::bound_mismatch, "closures differ in bound");
    const int bound = ext.config().points;
    std::vector<Partition> image;
    for (const auto& x : ext.one_row_members())
        if (x.size() % 2 == 0) image.push_back(functor_f(x));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::vector<Partition> reach;
    for (const auto& y : two.one_row_members())
        if (static_cast<int>(detail::one_row_preimage_length(y)) <= bound) reach.push_back(y);
    return detail::compare_sorted(image, reach, bound);
}

}  // namespace partcat
