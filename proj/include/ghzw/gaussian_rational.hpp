#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "ghzw/error.hpp"

namespace ghzw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline std::optional<BigInt> parse_natural(std::string_view s) {
    if (s.empty()) return std::nullopt;
    BigInt value = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        value = value * 10 + (c - '0');
    }
    return value;
}

// `p` or `p/q` with an optional leading sign; `p/q` must be in lowest terms.
inline std::optional<Rational> parse_rational(std::string_view s, bool allow_sign) {
    bool negative = false;
    if (allow_sign && !s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    Rational value;
    if (slash == std::string_view::npos) {
        auto num = parse_natural(s);
        if (!num) return std::nullopt;
        value = Rational(*num);
    } else {
        auto num = parse_natural(s.substr(0, slash));
        auto den = parse_natural(s.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        if (boost::multiprecision::gcd(*num, *den) != 1) return std::nullopt;
        if (*den == 1) return std::nullopt;
        value = Rational(*num, *den);
    }
    return negative ? Rational(-value) : value;
}

inline std::string rational_to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace detail

// Exact complex number with rational real and imaginary parts: an element of
// the field Q(i). State coefficients and every symbolic manipulation use it.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT

    static GaussianRational fraction(std::int64_t num, std::int64_t den) {
        return GaussianRational(Rational(num, den));
    }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const {
        if (is_zero()) throw DomainError("division by zero coefficient");
        const Rational n = norm();
        return {re_ / n, -im_ / n};
    }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Total order (real part first) so coefficients can live in ordered containers.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    // Integer power; negative exponents invert.
    GaussianRational pow(std::int64_t e) const {
        GaussianRational base = e < 0 ? inverse() : *this;
        std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
        GaussianRational result(1);
        while (k != 0) {
            if (k & 1U) result *= base;
            base *= base;
            k >>= 1U;
        }
        return result;
    }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re_), static_cast<double>(im_)};
    }

    // `re`, or `re+imi` / `re-imi`; the state file coefficient grammar.
    std::string to_string() const {
        if (im_ == 0) return detail::rational_to_string(re_);
        const bool negative = im_ < 0;
        return detail::rational_to_string(re_) + (negative ? "-" : "+") +
               detail::rational_to_string(negative ? Rational(-im_) : im_) + "i";
    }

    static std::optional<GaussianRational> parse(std::string_view s) {
        if (s.empty()) return std::nullopt;
        if (s.back() != 'i') {
            auto re = detail::parse_rational(s, true);
            if (!re) return std::nullopt;
            return GaussianRational(*re);
        }
        s.remove_suffix(1);
        // The operator joining real and imaginary parts is the last sign that
        // is not the leading one.
        const auto op = s.find_last_of("+-");
        if (op == std::string_view::npos || op == 0) return std::nullopt;
        auto re = detail::parse_rational(s.substr(0, op), true);
        auto im = detail::parse_rational(s.substr(op + 1), false);
        if (!re || !im) return std::nullopt;
        if (s[op] == '-') *im = -*im;
        return GaussianRational(*re, *im);
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
        return os << z.to_string();
    }

private:
    Rational re_{0};
    Rational im_{0};
};

}  // namespace ghzw
