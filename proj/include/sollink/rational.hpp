#pragma once

// Exact integer / rational scalars shared by every exact module.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sollink {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed user input (exit code 2 at the CLI).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an exact identity that must hold fails (exit code 1 at the CLI).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

using IVec2 = std::array<Integer, 2>;
using QVec2 = std::array<Rational, 2>;

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denom(q) == 1; }

inline int sign(const Integer& x) { return x.sign(); }
inline int sign(const Rational& q) { return q.sign(); }

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b)
{
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        Integer r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// floor(a / b) for b != 0 (cpp_int division truncates toward zero).
inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n)
{
    if (n < 0) throw std::domain_error("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Integer& n, Integer* root = nullptr)
{
    if (n < 0) return false;
    Integer r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

inline bool is_squarefree(std::int64_t n)
{
    if (n < 1) return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

/// n/d in lowest terms. Boost 1.74 rejects negative denominators in the
/// two-argument constructor, so the sign is moved to the numerator first.
inline Rational ratio(Integer n, Integer d)
{
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rational(n, d);
}

/// Lowest-terms "p/q"; integers print without a denominator ("2", "-3").
inline std::string to_string(const Rational& q)
{
    if (is_integer(q)) return numer(q).str();
    return numer(q).str() + "/" + denom(q).str();
}

inline Rational parse_rational(std::string_view text)
{
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw InputError("empty integer in rational '" + std::string(text) + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw InputError("malformed rational '" + std::string(text) + "'");
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw InputError("malformed rational '" + std::string(text) + "'");
        }
        return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in rational '" + std::string(text) + "'");
    return ratio(parse_int(text.substr(0, slash)), den);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Symplectic pairing x1*y2 - x2*y1 on the fiber homology.
inline Integer det2(const IVec2& x, const IVec2& y) { return x[0] * y[1] - x[1] * y[0]; }
inline Rational det2(const QVec2& x, const QVec2& y) { return x[0] * y[1] - x[1] * y[0]; }

inline QVec2 to_q(const IVec2& v) { return {Rational(v[0]), Rational(v[1])}; }

} // namespace sollink
