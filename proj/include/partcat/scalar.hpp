#pragma once

#include <gmpxx.h>

#include <cmath>
#include <ostream>
#include <string>
#include <string_view>

#include "partcat/error.hpp"

namespace partcat {

// Returns s with s*s == n, or 0 when n is not a perfect square.
inline long exact_sqrt(long n) {
    if (n < 0) return 0;
    long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
    for (long c = std::max(0L, r - 2); c <= r + 2; ++c)
        if (c * c == n) return c;
    return 0;
}

// a + b*sqrt(d). Rational values carry d = 0; b is folded into a when d is a square.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : a_(v) {}
    Scalar(const mpq_class& a) : a_(a) {}
    Scalar(const mpq_class& a, const mpq_class& b, long d) : a_(a), b_(b), d_(d) { normalize(); }

    static Scalar sqrt_of(long d) { return Scalar(0, 1, d); }
    static Scalar rational(long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(q);
    }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    long radicand() const { return d_; }
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }
    bool is_one() const { return is_rational() && a_ == 1; }

    Scalar& operator+=(const Scalar& o) {
        long d = join(o);
        a_ += o.a_;
        b_ += o.b_;
        d_ = d;
        normalize();
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        long d = join(o);
        a_ -= o.a_;
        b_ -= o.b_;
        d_ = d;
        normalize();
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        long d = join(o);
        mpq_class a = a_ * o.a_, b = a_ * o.b_ + b_ * o.a_;
        if (d) a += b_ * o.b_ * d;
        a_ = a;
        b_ = b;
        d_ = d;
        normalize();
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw Error(ErrorCode::bad_param, "division by zero");
        long d = join(o);
        // (a + b√d)/(c + e√d) = (a + b√d)(c − e√d)/(c² − d e²)
        mpq_class den = o.a_ * o.a_;
        if (d) den -= o.b_ * o.b_ * d;
        Scalar conj(o.a_, -o.b_, d);
        *this *= conj;
        a_ /= den;
        b_ /= den;
        normalize();
        return *this;
    }
    Scalar operator-() const { return Scalar(-a_, -b_, d_); }

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (sgn(x.b_) == 0 || x.d_ == y.d_);
    }

    Scalar pow(int e) const {
        Scalar r(1), base = *this;
        if (e < 0) {
            base = Scalar(1) / base;
            e = -e;
        }
        for (; e; e >>= 1) {
            if (e & 1) r *= base;
            base *= base;
        }
        return r;
    }

    // "p/q" when rational, "(a+b*sqrtN)" otherwise.
    std::string str() const {
        if (is_rational()) return a_.get_str();
        mpq_class babs = abs(b_);
        return "(" + a_.get_str() + (sgn(b_) < 0 ? "-" : "+") + babs.get_str() + "*sqrtN)";
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    long join(const Scalar& o) const {
        if (sgn(b_) == 0) return sgn(o.b_) == 0 ? 0 : o.d_;
        if (sgn(o.b_) == 0) return d_;
        if (d_ != o.d_)
            throw Error(ErrorCode::context_mismatch, "scalars from different quadratic fields");
        return d_;
    }
    void normalize() {
        a_.canonicalize();
        b_.canonicalize();
        if (sgn(b_) == 0) {
            d_ = 0;
            return;
        }
        if (long s = exact_sqrt(d_); s > 0 || d_ == 0) {
            a_ += b_ * s;
            b_ = 0;
            d_ = 0;
        }
    }

    mpq_class a_ = 0;
    mpq_class b_ = 0;
    long d_ = 0;
};

inline mpq_class parse_rational(std::string_view s) {
    std::string t(s);
    auto slash = t.find('/');
    auto valid_int = [](const std::string& x) {
        if (x.empty()) return false;
        std::size_t i = (x[0] == '-' || x[0] == '+') ? 1 : 0;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (x[i] < '0' || x[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? t : t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw Error(ErrorCode::bad_param, "bad rational '" + t + "'");
    if (num[0] == '+') num = num.substr(1);
    mpz_class n(num), d(den);
    if (d == 0) throw Error(ErrorCode::bad_param, "zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace partcat
