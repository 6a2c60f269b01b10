#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftprod {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A value was queried or inserted outside the set's window [1, hi].
struct ValueOutOfWindow : Error {
    std::uint64_t value;
    std::uint64_t hi;
    ValueOutOfWindow(std::uint64_t v, std::uint64_t h)
        : Error("value " + std::to_string(v) + " outside window [1, " + std::to_string(h) + "]"),
          value(v),
          hi(h) {}
};

/// Binary set operation on operands with different windows.
struct WindowMismatch : Error {
    std::uint64_t lhs_hi;
    std::uint64_t rhs_hi;
    WindowMismatch(std::uint64_t l, std::uint64_t r)
        : Error("window mismatch: [1, " + std::to_string(l) + "] vs [1, " + std::to_string(r) + "]"),
          lhs_hi(l),
          rhs_hi(r) {}
};

/// Sieve limit below the smallest prime.
struct LimitTooSmall : Error {
    std::uint64_t limit;
    explicit LimitTooSmall(std::uint64_t m)
        : Error("sieve limit " + std::to_string(m) + " is below 2"), limit(m) {}
};

/// A finite-sums enumeration or witness search was asked to handle more
/// generators than the hard cap allows.
struct SequenceTooLong : Error {
    std::size_t length;
    std::size_t cap;
    SequenceTooLong(std::size_t len, std::size_t max_len)
        : Error("sequence length " + std::to_string(len) + " exceeds cap " + std::to_string(max_len)),
          length(len),
          cap(max_len) {}
};

/// r(r+1)/2 does not fit inside the candidate window.
struct RTooLargeForWindow : Error {
    std::uint64_t r;
    std::uint64_t required_hi;
    std::uint64_t window_hi;
    RTooLargeForWindow(std::uint64_t rr, std::uint64_t need, std::uint64_t have)
        : Error("r = " + std::to_string(rr) + " needs window hi >= " + std::to_string(need) +
                ", have " + std::to_string(have)),
          r(rr),
          required_hi(need),
          window_hi(have) {}
};

/// A derived window does not cover the values an operation must touch.
/// Carries the exact size the caller has to provide.
struct WindowTooSmall : Error {
    std::uint64_t required_hi;
    std::uint64_t window_hi;
    WindowTooSmall(const std::string& what_for, std::uint64_t need, std::uint64_t have)
        : Error(what_for + ": window hi must be >= " + std::to_string(need) + ", have " +
                std::to_string(have)),
          required_hi(need),
          window_hi(have) {}
};

/// The candidate intersection emptied out before a witness k was found.
/// emptied_at_m is the dilation factor whose intersection first produced
/// the empty set (0 when the input set was empty to begin with).
struct NoCandidateK : Error {
    std::uint64_t emptied_at_m;
    explicit NoCandidateK(std::uint64_t m)
        : Error(m == 0 ? std::string("no candidate k: input set is empty")
                       : "no candidate k: intersection emptied at dilation m = " + std::to_string(m) +
                             " (window too small or hypothesis fails at this scale)"),
          emptied_at_m(m) {}
};

/// Some x <= X_max has no valid multiplier p(x); carries all of them.
struct SelectorIncomplete : Error {
    std::vector<std::uint64_t> misses;
    explicit SelectorIncomplete(std::vector<std::uint64_t> missed)
        : Error("selector incomplete: " + std::to_string(missed.size()) +
                " value(s) of x have no p(x), first = " +
                (missed.empty() ? std::string("?") : std::to_string(missed.front()))),
          misses(std::move(missed)) {}
};

/// A certificate check needed a membership answer beyond the oracle's window.
struct OracleWindowInsufficient : Error {
    std::uint64_t query;
    std::uint64_t oracle_hi;
    OracleWindowInsufficient(const std::string& which, std::uint64_t q, std::uint64_t h)
        : Error("oracle for " + which + " answers on [1, " + std::to_string(h) +
                "] but the certificate needs membership of " + std::to_string(q)),
          query(q),
          oracle_hi(h) {}
};

/// Defensive: prefix sums of a positive sequence can never coincide.
struct DuplicatePrefixSum : Error {
    std::uint64_t sum;
    explicit DuplicatePrefixSum(std::uint64_t s)
        : Error("duplicate prefix sum " + std::to_string(s)), sum(s) {}
};

/// A set file or certificate file failed to parse or carries bad data.
struct MalformedInput : Error {
    using Error::Error;
};

/// Arithmetic that would overflow 64 bits; bounds must be chosen smaller.
struct Overflow : Error {
    using Error::Error;
};

namespace detail {

/// a * b with an overflow check.
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw Overflow("multiplication overflow: " + std::to_string(a) + " * " + std::to_string(b));
    }
    return out;
}

/// a + b with an overflow check.
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw Overflow("addition overflow: " + std::to_string(a) + " + " + std::to_string(b));
    }
    return out;
}

}  // namespace detail

}  // namespace shiftprod
