#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "partcat/linear.hpp"
#include "partcat/tensor_maps.hpp"

namespace partcat {

enum class Sign { plus, minus };

inline Sign parse_sign(std::string_view s) {
    if (s == "plus" || s == "+") return Sign::plus;
    if (s == "minus" || s == "-") return Sign::minus;
    throw Error(ErrorCode::bad_param, "sign must be plus or minus");
}

struct UMatrix {
    long n = 0;
    Sign sign = Sign::plus;
    std::vector<std::vector<Scalar>> e;

    ExactMatrix matrix() const {
        ExactMatrix m(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) m.add(i, j, e[i][j]);
        return m;
    }
};

// Householder reflection H = I − 2wwᵗ/(wᵗw), w = e_N ∓ ξ/√N; for the minus
// sign the last row is negated so that it reads ξᵗ/√N in both cases.
inline UMatrix u_matrix(long n, Sign sign) {
    if (n < 2) throw Error(ErrorCode::bad_param, "U needs N >= 2");
    const Scalar s(0, mpq_class(1, n), n);  // 1/√N
    const Scalar sg = sign == Sign::plus ? Scalar(1) : Scalar(-1);
    std::vector<Scalar> w(n, -(sg * s));
    w[n - 1] = Scalar(1) - sg * s;
    Scalar wtw(0);
    for (const auto& x : w) wtw += x * x;
    const Scalar f = Scalar(2) / wtw;
    UMatrix u{n, sign, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n))};
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) u.e[i][j] = Scalar(i == j ? 1 : 0) - f * w[i] * w[j];
    if (sign == Sign::minus)
        for (auto& x : u.e[n - 1]) x = -x;
    return u;
}

// Formal sum over several signatures (U-images mix ▲ positions).
struct SignatureSum {
    long context = 1;
    std::map<Signature, LinearCombination> parts;

    void add(const Partition& p, const Scalar& c) {
        auto it = parts.try_emplace(p.signature(), p.signature(), context).first;
        it->second.add_term(p, c);
        if (it->second.is_zero()) parts.erase(it);
    }
    void add(const LinearCombination& lc) {
        for (const auto& [p, c] : lc.terms()) add(p, c);
    }
    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& [s, lc] : parts) n += lc.size();
        return n;
    }
    friend bool operator==(const SignatureSum& a, const SignatureSum& b) {
        return a.context == b.context && a.parts == b.parts;
    }
};

inline std::string to_string(const SignatureSum& s) {
    if (s.parts.empty()) return "0";
    std::string out;
    for (const auto& [sig, lc] : s.parts) {
        if (!out.empty()) out += " + ";
        out += to_string(lc);
    }
    return out;
}

inline SignatureSum sum_tensor(const SignatureSum& a, const SignatureSum& b) {
    SignatureSum out{a.context, {}};
    for (const auto& [s1, x] : a.parts)
        for (const auto& [s2, y] : b.parts) out.add(lin_tensor(x, y));
    return out;
}

inline SignatureSum sum_compose(const SignatureSum& q, const SignatureSum& p) {
    SignatureSum out{q.context, {}};
    for (const auto& [s1, x] : q.parts)
        for (const auto& [s2, y] : p.parts)
            if (s2.lower == s1.upper) out.add(lin_compose(x, y));
    return out;
}

inline SignatureSum sum_involute(const SignatureSum& a) {
    SignatureSum out{a.context, {}};
    for (const auto& [s, x] : a.parts) out.add(lin_involute(x));
    return out;
}

namespace detail {

inline void require_pair_domain(const LinearCombination& lc) {
    detail::require_plain(lc.signature());
    for (const auto& [p, c] : lc.terms())
        for (std::size_t s : p.block_sizes())
            if (s > 2) throw Error(ErrorCode::block_too_large, "U is implemented for blocks of size at most two");
}

}  // namespace detail

// Dotted pairs become pairs, singletons become √N·▲; the target has line dimension N−1.
inline SignatureSum u_functor(const LinearCombination& lc) {
    const long n = lc.context();
    if (n < 2) throw Error(ErrorCode::bad_param, "U needs N >= 2");
    detail::require_pair_domain(lc);
    const Scalar root = Scalar::sqrt_of(n);
    SignatureSum out{n - 1, {}};
    for (const auto& [q, c] : to_dotted_basis(lc)) {
        auto sizes = q.block_sizes();
        std::vector<Color> colors = q.colors();
        int singles = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (sizes[q.label(i)] == 1) {
                colors[i] = Color::extra;
                ++singles;
            }
        out.add(Partition::canonical(q.upper_count(), colors, q.labels()), c * root.pow(singles));
    }
    return out;
}

inline SignatureSum u_functor(const Partition& p, long n) { return u_functor(LinearCombination::of(p, n)); }

// Pairs go back to dotted pairs, ▲ to (1/√N)·↓.
inline LinearCombination u_inverse(const SignatureSum& s) {
    const long n = s.context + 1;
    const Scalar inv_root = Scalar(1) / Scalar::sqrt_of(n);
    std::optional<LinearCombination> out;
    for (const auto& [sig, lc] : s.parts) {
        for (const auto& [p, c] : lc.terms()) {
            if (p.family() == Family::circles) throw Error(ErrorCode::wrong_regime, "expected an extra-singleton partition");
            auto sizes = p.block_sizes();
            std::vector<Color> colors = p.colors();
            int extras = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (colors[i] == Color::extra) {
                    colors[i] = Color::line;
                    ++extras;
                } else if (sizes[p.label(i)] == 1) {
                    throw Error(ErrorCode::bad_param, "a line singleton has no preimage under U");
                } else if (sizes[p.label(i)] > 2) {
                    throw Error(ErrorCode::block_too_large, "U is implemented for blocks of size at most two");
                }
            }
            Partition q = Partition::canonical(p.upper_count(), colors, p.labels());
            if (!out) out = LinearCombination(q.signature(), n);
            if (q.signature() != out->signature())
                throw Error(ErrorCode::signature_mismatch, "parts of different lengths");
            *out += scale(c * inv_root.pow(extras), dotted(q, n));
        }
    }
    if (!out) throw Error(ErrorCode::bad_param, "cannot invert the zero sum without a signature");
    return *out;
}

inline LinearCombination u_inverse(const LinearCombination& lc) {
    SignatureSum s{lc.context(), {}};
    s.add(lc);
    return u_inverse(s);
}

// Dense tensor with legs ordered lower row then upper row, each of dimension N.
struct DenseTensor {
    long n = 1;
    std::size_t legs = 0;
    std::vector<Scalar> v;
};

inline DenseTensor dense_of(const ExactMatrix& m, long n, std::size_t legs) {
    DenseTensor t{n, legs, std::vector<Scalar>(static_cast<std::size_t>(m.rows() * m.cols()))};
    for (const auto& [ix, x] : m.entries()) t.v[ix.first * m.cols() + ix.second] = x;
    return t;
}

// Applies U to every leg: U^{⊗l} T (Uᵗ)^{⊗k}.
inline DenseTensor conjugate_all_legs(DenseTensor t, const UMatrix& u) {
    const std::size_t n = static_cast<std::size_t>(t.n);
    std::size_t stride = t.v.size();
    for (std::size_t leg = 0; leg < t.legs; ++leg) {
        stride /= n;
        std::vector<Scalar> out(t.v.size());
        for (std::size_t idx = 0; idx < t.v.size(); ++idx) {
            if (t.v[idx].is_zero()) continue;
            std::size_t digit = (idx / stride) % n;
            std::size_t base = idx - digit * stride;
            for (std::size_t a = 0; a < n; ++a) {
                const Scalar& ua = u.e[a][digit];
                if (!ua.is_zero()) out[base + a * stride] += ua * t.v[idx];
            }
        }
        t.v = std::move(out);
    }
    return t;
}

// T of an N−1 context term placed into N-dimensional coordinates: line index
// i stays i, the ▲ coordinate is N−1.
inline void embed_add(DenseTensor& t, const Partition& p, const Scalar& c) {
    const long n = t.n, m = n - 1;
    ExactMatrix tm = t_matrix(p, m);
    const std::size_t k = p.upper_count(), l = p.lower_count();
    std::vector<std::size_t> digits(k + l);
    for (const auto& [ix, x] : tm.entries()) {
        auto decode = [&](std::uint64_t code, std::size_t from, std::size_t to, std::size_t out_off) {
            for (std::size_t i = to; i-- > from;) {
                std::size_t slot = out_off + (i - from);
                if (p.color(i) == Color::extra) {
                    digits[slot] = static_cast<std::size_t>(n - 1);
                } else {
                    digits[slot] = static_cast<std::size_t>(code % m);
                    code /= m;
                }
            }
        };
        decode(ix.first, k, k + l, 0);
        decode(ix.second, 0, k, l);
        std::size_t idx = 0;
        for (std::size_t d : digits) idx = idx * n + d;
        t.v[idx] += c * x;
    }
}

struct TheoremUReport {
    bool ok = true;
    bool rhs_only = false;
    std::string detail;
};

// Compares T of the U-image with U^{⊗l} T_p U^{*⊗k}. Blocks of size three or
// more get the right-hand side only, checked for support on the U-words.
inline TheoremUReport verify_theorem_u(const LinearCombination& lc, Sign sign) {
    const long n = lc.context();
    detail::require_plain(lc.signature());
    const UMatrix u = u_matrix(n, sign);
    const std::size_t legs = lc.signature().upper.size() + lc.signature().lower.size();
    const std::size_t k = lc.signature().upper.size();
    TheoremUReport r;
    bool small = true;
    for (const auto& [p, c] : lc.terms())
        for (std::size_t s : p.block_sizes()) small = small && s <= 2;

    if (small) {
        DenseTensor rhs = conjugate_all_legs(dense_of(t_matrix(lc), n, legs), u);
        DenseTensor lhs{n, legs, std::vector<Scalar>(rhs.v.size())};
        for (const auto& [sig, part] : u_functor(lc).parts)
            for (const auto& [p, c] : part.terms()) embed_add(lhs, p, c);
        for (std::size_t i = 0; i < rhs.v.size(); ++i)
            if (!(lhs.v[i] == rhs.v[i])) {
                r.ok = false;
                std::ostringstream os;
                os << "coordinate " << i << ": " << lhs.v[i] << " vs " << rhs.v[i];
                r.detail = os.str();
                return r;
            }
        r.detail = "ok";
        return r;
    }

    r.rhs_only = true;
    for (const auto& [q, c] : to_dotted_basis(lc)) {
        DenseTensor rhs = conjugate_all_legs(dense_of(t_matrix(scale(c, dotted(q, n))), n, legs), u);
        auto [w1, w2] = dotted_words(q);
        for (std::size_t idx = 0; idx < rhs.v.size(); ++idx) {
            if (rhs.v[idx].is_zero()) continue;
            std::size_t rest = idx;
            bool inside = true;
            for (std::size_t leg = legs; leg-- > 0;) {
                std::size_t d = rest % n;
                rest /= n;
                Dot want = leg < legs - k ? w2[leg] : w1[leg - (legs - k)];
                bool is_extra = d == static_cast<std::size_t>(n - 1);
                inside = inside && (want == Dot::down) == is_extra;
            }
            if (!inside) {
                r.ok = false;
                r.detail = "support of " + to_string(q) + " leaves the U-words at coordinate " + std::to_string(idx);
                return r;
            }
        }
    }
    r.detail = "rhs only; support ok";
    return r;
}

}  // namespace partcat
