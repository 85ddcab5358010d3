#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace krf {

// Exact rational arithmetic on 64-bit numerator/denominator.  Every threshold
// comparison in the library (minimum-degree fractions, low-degree cutoffs,
// densities) goes through this type or through explicit 128-bit cross
// multiplication, never through floating point.
class Rational {
public:
    Rational() = default;
    Rational(long long num) : num_(num), den_(1) {}
    Rational(long long num, long long den) {
        if (den == 0)
            throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        num_ = num;
        den_ = den;
    }

    // Accepts "p/q" or a bare integer "p".
    static Rational parse(std::string_view s) {
        auto parse_int = [](std::string_view t) -> long long {
            if (t.empty())
                throw std::invalid_argument("Rational: empty number in \"p/q\"");
            size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
            if (i == t.size())
                throw std::invalid_argument("Rational: bad number");
            long long v = 0;
            for (; i < t.size(); ++i) {
                if (t[i] < '0' || t[i] > '9')
                    throw std::invalid_argument("Rational: expected \"p/q\" with integer p, q");
                if (v > (std::numeric_limits<long long>::max() - 9) / 10)
                    throw std::overflow_error("Rational: literal too large");
                v = v * 10 + (t[i] - '0');
            }
            return t[0] == '-' ? -v : v;
        };
        size_t slash = s.find('/');
        if (slash == std::string_view::npos)
            return Rational(parse_int(s));
        return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    std::string str() const {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    bool positive() const { return num_ > 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make_checked((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                            (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make_checked((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                            (__int128)a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make_checked((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0)
            throw std::invalid_argument("Rational: division by zero");
        return make_checked((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ <= (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

private:
    static Rational make_checked(__int128 num, __int128 den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 a = num < 0 ? -num : num;
        __int128 b = den;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            num /= a;
            den /= a;
        }
        constexpr __int128 lo = std::numeric_limits<long long>::min();
        constexpr __int128 hi = std::numeric_limits<long long>::max();
        if (num < lo || num > hi || den > hi)
            throw std::overflow_error("Rational: value out of 64-bit range");
        Rational r;
        r.num_ = (long long)num;
        r.den_ = (long long)den;
        return r;
    }

    long long num_ = 0;
    long long den_ = 1;
};

} // namespace krf
