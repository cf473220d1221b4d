#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace koszulkit {

using Rational = mpq_class;
using Integer = mpz_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a requested computation needs data outside the certified window.
struct WindowError : Error {
    using Error::Error;
};

// A checked statement failed on concrete input; the message carries the witness.
struct PropertyViolation : Error {
    using Error::Error;
};

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw Error("bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace koszulkit
