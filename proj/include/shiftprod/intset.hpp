#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shiftprod/detail/bitops.hpp"
#include "shiftprod/detail/parallel.hpp"
#include "shiftprod/errors.hpp"

namespace shiftprod {

/// The inclusive integer range [1, hi] on which a set truncation lives.
/// Every set carries its window explicitly; nothing is answered outside it.
class Window {
   public:
    explicit Window(std::uint64_t hi) : hi_(hi) {
        if (hi == 0) {
            throw Error("window upper bound must be >= 1");
        }
    }

    [[nodiscard]] std::uint64_t hi() const noexcept { return hi_; }
    [[nodiscard]] bool covers(std::uint64_t x) const noexcept { return x >= 1 && x <= hi_; }

    friend bool operator==(Window a, Window b) noexcept { return a.hi_ == b.hi_; }

   private:
    std::uint64_t hi_;
};

/// A dense bit-indexed integer set over a window [1, hi].
///
/// Bit (n - 1) of the backing words encodes membership of n. Values are
/// immutable after construction; every operation returns a new set.
/// Membership queries outside the window throw rather than answering.
class IntSet {
   public:
    static IntSet empty(Window w) {
        return IntSet(w, std::vector<std::uint64_t>(detail::words_for(w.hi()), 0));
    }

    static IntSet full(Window w) {
        std::vector<std::uint64_t> words(detail::words_for(w.hi()), ~std::uint64_t{0});
        detail::mask_tail(words, w.hi());
        return IntSet(w, std::move(words));
    }

    /// Builds a set from explicit members. Values outside [1, hi] are an
    /// error, never silently dropped.
    static IntSet from_members(Window w, std::span<const std::uint64_t> xs) {
        std::vector<std::uint64_t> words(detail::words_for(w.hi()), 0);
        for (std::uint64_t x : xs) {
            if (!w.covers(x)) {
                throw ValueOutOfWindow(x, w.hi());
            }
            detail::set_bit(words, x - 1);
        }
        return IntSet(w, std::move(words));
    }

    static IntSet from_members(Window w, std::initializer_list<std::uint64_t> xs) {
        return from_members(w, std::span<const std::uint64_t>(xs.begin(), xs.size()));
    }

    /// Builds the set {x in [1, hi] : pred(x)}.
    template <typename Pred>
    static IntSet from_predicate(Window w, Pred&& pred) {
        std::vector<std::uint64_t> words(detail::words_for(w.hi()), 0);
        for (std::uint64_t x = 1; x <= w.hi(); ++x) {
            if (pred(x)) {
                detail::set_bit(words, x - 1);
            }
        }
        return IntSet(w, std::move(words));
    }

    /// Adopts a raw word vector (bit n-1 encodes n). Bits at or beyond hi
    /// must be zero. Intended for kernels and deserialization.
    static IntSet from_raw_words(Window w, std::vector<std::uint64_t> words) {
        if (words.size() != detail::words_for(w.hi())) {
            throw Error("raw word count does not match window");
        }
        if (!words.empty() && (words.back() & ~detail::tail_mask(w.hi())) != 0) {
            throw Error("raw words carry bits beyond the window");
        }
        return IntSet(w, std::move(words));
    }

    [[nodiscard]] Window window() const noexcept { return window_; }
    [[nodiscard]] std::uint64_t hi() const noexcept { return window_.hi(); }
    [[nodiscard]] std::uint64_t cardinality() const noexcept { return cardinality_; }
    [[nodiscard]] bool is_empty() const noexcept { return cardinality_ == 0; }

    /// Membership of x. Throws ValueOutOfWindow for x outside [1, hi]:
    /// truncation is a visible contract, not a silent behavior.
    [[nodiscard]] bool contains(std::uint64_t x) const {
        if (!window_.covers(x)) {
            throw ValueOutOfWindow(x, window_.hi());
        }
        return detail::test_bit(words_, x - 1);
    }

    [[nodiscard]] std::vector<std::uint64_t> members() const {
        std::vector<std::uint64_t> out;
        out.reserve(static_cast<std::size_t>(cardinality_));
        detail::for_each_member(words_, [&](std::uint64_t x) { out.push_back(x); });
        return out;
    }

    /// Visits members in ascending order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        detail::for_each_member(words_, std::forward<Fn>(fn));
    }

    [[nodiscard]] std::optional<std::uint64_t> min_member() const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] != 0) {
                return i * detail::kWordBits + static_cast<unsigned>(std::countr_zero(words_[i])) + 1;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] std::optional<std::uint64_t> max_member() const {
        for (std::size_t i = words_.size(); i-- > 0;) {
            if (words_[i] != 0) {
                return i * detail::kWordBits + (detail::kWordBits - 1 -
                                                static_cast<unsigned>(std::countl_zero(words_[i]))) +
                       1;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

    /// Equal iff the windows coincide and the bits coincide.
    friend bool operator==(const IntSet& a, const IntSet& b) noexcept {
        return a.window_ == b.window_ && a.words_ == b.words_;
    }

   private:
    IntSet(Window w, std::vector<std::uint64_t> words)
        : window_(w), words_(std::move(words)), cardinality_(detail::popcount_words(words_)) {
        assert(words_.size() == detail::words_for(window_.hi()));
        assert(words_.empty() || (words_.back() & ~detail::tail_mask(window_.hi())) == 0);
    }

    Window window_;
    std::vector<std::uint64_t> words_;
    std::uint64_t cardinality_;
};

/// {s - t : s, t in S, s > t}, on the same window as S.
inline IntSet difference_set(const IntSet& s) {
    const std::uint64_t hi = s.hi();
    std::vector<std::uint64_t> acc(detail::words_for(hi), 0);
    s.for_each([&](std::uint64_t t) { detail::or_shift_down(acc, s.words(), t, hi, hi); });
    return IntSet::from_raw_words(s.window(), std::move(acc));
}

/// {a * b : a in A, b in B, a * b <= out.hi}. Commutative; may run
/// chunk-parallel over A with a deterministic OR merge.
inline IntSet product_set(const IntSet& a, const IntSet& b, Window out, unsigned threads = 1) {
    const std::uint64_t hi = out.hi();
    const std::size_t n_words = detail::words_for(hi);
    if (a.is_empty() || b.is_empty()) {
        return IntSet::empty(out);
    }
    const std::vector<std::uint64_t> a_members = a.members();
    const std::vector<std::uint64_t> b_members = b.members();

    const unsigned n_threads = std::max(1U, threads);
    const std::uint64_t n_chunks =
        std::min<std::uint64_t>(n_threads, static_cast<std::uint64_t>(a_members.size()));
    std::vector<std::vector<std::uint64_t>> accs(static_cast<std::size_t>(n_chunks),
                                                 std::vector<std::uint64_t>(n_words, 0));
    detail::parallel_chunks(a_members.size(), n_threads, [&](std::size_t c, std::uint64_t lo,
                                                             std::uint64_t end) {
        auto& acc = accs[c];
        for (std::uint64_t i = lo; i < end; ++i) {
            const std::uint64_t av = a_members[i];
            const std::uint64_t cap = hi / av;  // b <= hi / a keeps a*b inside the window
            for (std::uint64_t bv : b_members) {
                if (bv > cap) {
                    break;
                }
                detail::set_bit(acc, av * bv - 1);
            }
        }
    });
    std::vector<std::uint64_t> merged(n_words, 0);
    for (const auto& acc : accs) {
        for (std::size_t i = 0; i < n_words; ++i) {
            merged[i] |= acc[i];
        }
    }
    return IntSet::from_raw_words(out, std::move(merged));
}

/// m * S, truncated to S's window.
inline IntSet dilate(const IntSet& s, std::uint64_t m) {
    if (m == 0) {
        throw Error("dilation factor must be >= 1");
    }
    const std::uint64_t hi = s.hi();
    std::vector<std::uint64_t> words(detail::words_for(hi), 0);
    s.for_each([&](std::uint64_t x) {
        if (x <= hi / m) {
            detail::set_bit(words, x * m - 1);
        }
    });
    return IntSet::from_raw_words(s.window(), std::move(words));
}

/// Exact-quotient contraction {q : m * q in S}, on S's window.
inline IntSet contract(const IntSet& s, std::uint64_t m) {
    if (m == 0) {
        throw Error("contraction divisor must be >= 1");
    }
    const std::uint64_t hi = s.hi();
    std::vector<std::uint64_t> words(detail::words_for(hi), 0);
    for (std::uint64_t q = 1; q <= hi / m; ++q) {
        if (detail::test_bit(s.words(), q * m - 1)) {
            detail::set_bit(words, q - 1);
        }
    }
    return IntSet::from_raw_words(s.window(), std::move(words));
}

namespace detail {
inline void require_same_window(const IntSet& a, const IntSet& b) {
    if (!(a.window() == b.window())) {
        throw WindowMismatch(a.hi(), b.hi());
    }
}
}  // namespace detail

inline IntSet intersect(const IntSet& a, const IntSet& b) {
    detail::require_same_window(a, b);
    std::vector<std::uint64_t> words(a.words().begin(), a.words().end());
    for (std::size_t i = 0; i < words.size(); ++i) {
        words[i] &= b.words()[i];
    }
    return IntSet::from_raw_words(a.window(), std::move(words));
}

inline IntSet set_union(const IntSet& a, const IntSet& b) {
    detail::require_same_window(a, b);
    std::vector<std::uint64_t> words(a.words().begin(), a.words().end());
    for (std::size_t i = 0; i < words.size(); ++i) {
        words[i] |= b.words()[i];
    }
    return IntSet::from_raw_words(a.window(), std::move(words));
}

inline IntSet complement_in_window(const IntSet& s) {
    std::vector<std::uint64_t> words(s.words().begin(), s.words().end());
    for (auto& w : words) {
        w = ~w;
    }
    detail::mask_tail(words, s.hi());
    return IntSet::from_raw_words(s.window(), std::move(words));
}

/// Explicit re-windowing: members above the new bound drop out, growing the
/// window never adds members. The one sanctioned way to move between windows.
inline IntSet rewindow(const IntSet& s, Window w) {
    std::vector<std::uint64_t> words(detail::words_for(w.hi()), 0);
    const std::size_t copy_words = std::min(words.size(), s.words().size());
    std::copy_n(s.words().begin(), copy_words, words.begin());
    if (w.hi() < s.hi()) {
        detail::mask_tail(words, w.hi());
    }
    return IntSet::from_raw_words(w, std::move(words));
}

}  // namespace shiftprod
