#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmdual {

/// Exact scalar. mpq_class keeps numerator and denominator coprime with a
/// positive denominator after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" (q > 0 after sign normalisation).
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto strip = [](std::string& x) {
        auto b = x.find_first_not_of(" \t");
        auto e = x.find_last_not_of(" \t");
        x = (b == std::string::npos) ? std::string{} : x.substr(b, e - b + 1);
    };
    strip(s);
    auto valid_int = [](const std::string& x) {
        std::size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (x[i] < '0' || x[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
    strip(num);
    strip(den);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw Error("malformed rational '" + std::string(text) + "'");
    Integer d(den);
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rational_pow(const Rational& base, unsigned e) {
    Rational out = 1;
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

} // namespace gmdual
