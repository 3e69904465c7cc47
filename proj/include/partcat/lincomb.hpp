#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "partcat/partition.hpp"
#include "partcat/scalar.hpp"
#include "partcat/text.hpp"

namespace partcat {

// Formal sum of partitions of one signature; the context N weighs loops.
class LinearCombination {
public:
    LinearCombination() = default;
    LinearCombination(Signature sig, long n) : sig_(std::move(sig)), n_(n) {
        if (n < 1) throw Error(ErrorCode::bad_param, "N must be positive");
    }

    static LinearCombination of(const Partition& p, long n, const Scalar& c = Scalar(1)) {
        LinearCombination lc(p.signature(), n);
        lc.add_term(p, c);
        return lc;
    }

    const Signature& signature() const { return sig_; }
    long context() const { return n_; }
    const std::map<Partition, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coefficient(const Partition& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(const Partition& p, const Scalar& c) {
        if (p.signature() != sig_)
            throw Error(ErrorCode::signature_mismatch, "term signature differs from the combination's");
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(p, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LinearCombination& operator+=(const LinearCombination& o) {
        check_same(o);
        for (const auto& [p, c] : o.terms_) add_term(p, c);
        return *this;
    }
    LinearCombination& operator-=(const LinearCombination& o) {
        check_same(o);
        for (const auto& [p, c] : o.terms_) add_term(p, -c);
        return *this;
    }
    friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
    friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }

    friend bool operator==(const LinearCombination& a, const LinearCombination& b) {
        return a.n_ == b.n_ && a.sig_ == b.sig_ && a.terms_ == b.terms_;
    }

private:
    void check_same(const LinearCombination& o) const {
        if (o.n_ != n_) throw Error(ErrorCode::context_mismatch, "combinations from different N");
        if (o.sig_ != sig_) throw Error(ErrorCode::signature_mismatch, "sum of different signatures");
    }

    Signature sig_;
    long n_ = 1;
    std::map<Partition, Scalar> terms_;
};

inline LinearCombination scale(const Scalar& c, const LinearCombination& a) {
    LinearCombination out(a.signature(), a.context());
    for (const auto& [p, x] : a.terms()) out.add_term(p, c * x);
    return out;
}

inline LinearCombination lin_tensor(const LinearCombination& a, const LinearCombination& b) {
    if (a.context() != b.context()) throw Error(ErrorCode::context_mismatch, "combinations from different N");
    Signature sig = a.signature();
    sig.upper.insert(sig.upper.end(), b.signature().upper.begin(), b.signature().upper.end());
    sig.lower.insert(sig.lower.end(), b.signature().lower.begin(), b.signature().lower.end());
    LinearCombination out(sig, a.context());
    for (const auto& [p, x] : a.terms())
        for (const auto& [q, y] : b.terms()) out.add_term(tensor(p, q), x * y);
    return out;
}

// q after p, each product weighted by N^rl.
inline LinearCombination lin_compose(const LinearCombination& q, const LinearCombination& p) {
    if (q.context() != p.context()) throw Error(ErrorCode::context_mismatch, "combinations from different N");
    if (p.signature().lower != q.signature().upper)
        throw Error(ErrorCode::signature_mismatch, "lower word of p differs from upper word of q");
    const Scalar n(q.context());
    LinearCombination out({p.signature().upper, q.signature().lower}, q.context());
    for (const auto& [b, y] : q.terms())
        for (const auto& [a, x] : p.terms()) {
            Composition c = compose(b, a);
            out.add_term(c.result, x * y * n.pow(c.loops));
        }
    return out;
}

// Coefficients are real, so the antilinear involution acts linearly.
inline LinearCombination lin_involute(const LinearCombination& a) {
    LinearCombination out({a.signature().lower, a.signature().upper}, a.context());
    for (const auto& [p, x] : a.terms()) out.add_term(involute(p), x);
    return out;
}

inline LinearCombination lin_identity(const Word& w, long n) {
    Partition p;
    for (Color c : w) {
        Partition id = c == Color::extra ? Partition({c}, {c}, std::vector<int>{0, 1})
                                         : Partition({c}, {c}, std::vector<int>{0, 0});
        p = tensor(p, id);
    }
    return LinearCombination::of(p, n);
}

inline std::string to_string(const LinearCombination& lc) {
    if (lc.is_zero()) return "0";
    std::string s;
    for (const auto& [p, c] : lc.terms()) {
        if (!s.empty()) s += " + ";
        s += c.str() + " * " + to_string(p);
    }
    return s;
}

namespace detail {

inline Scalar parse_scalar_at(Cursor& cur, long radicand) {
    cur.skip_ws();
    auto read_rat = [&]() {
        cur.skip_ws();
        std::size_t start = cur.pos;
        if (cur.peek() == '-' || cur.peek() == '+') ++cur.pos;
        while (!cur.at_end() && (std::isdigit(static_cast<unsigned char>(cur.peek())) || cur.peek() == '/')) ++cur.pos;
        if (cur.pos == start) cur.fail("expected a rational");
        try {
            return parse_rational(cur.s.substr(start, cur.pos - start));
        } catch (const Error&) {
            cur.pos = start;
            cur.fail("malformed rational");
        }
    };
    if (cur.peek() != '(') return Scalar(read_rat());
    ++cur.pos;
    mpq_class a = read_rat();
    cur.skip_ws();
    char sign = cur.peek();
    if (sign != '+' && sign != '-') cur.fail("expected '+' or '-'");
    ++cur.pos;
    mpq_class b = read_rat();
    cur.skip_ws();
    if (cur.s.substr(cur.pos, 7) != "*sqrtN)") cur.fail("expected '*sqrtN)'");
    cur.pos += 7;
    return Scalar(a, sign == '-' ? mpq_class(-b) : b, radicand);
}

}  // namespace detail

// `sig` is needed only for the zero combination "0".
inline LinearCombination parse_lincomb(std::string_view text, long n, std::optional<long> radicand = std::nullopt,
                                       std::optional<Signature> sig = std::nullopt) {
    detail::Cursor cur{text};
    cur.skip_ws();
    if (cur.s.substr(cur.pos) == "0" || (cur.peek() == '0' && text.find('P') == std::string_view::npos)) {
        if (!sig) throw SyntaxError(cur.pos, "zero combination needs a signature");
        return LinearCombination(*sig, n);
    }
    std::optional<LinearCombination> out;
    for (;;) {
        cur.skip_ws();
        Scalar c(1);
        if (cur.peek() != 'P') {
            c = detail::parse_scalar_at(cur, radicand.value_or(n));
            cur.expect('*');
        }
        Partition p = detail::parse_partition_at(cur);
        if (!out) out = LinearCombination(sig ? *sig : p.signature(), n);
        out->add_term(p, c);
        cur.skip_ws();
        if (cur.at_end()) break;
        cur.expect('+');
    }
    return *out;
}

}  // namespace partcat
