#pragma once

#include <cstdint>
#include <vector>

#include "shiftprod/detail/bitops.hpp"
#include "shiftprod/detail/parallel.hpp"
#include "shiftprod/errors.hpp"
#include "shiftprod/intset.hpp"

namespace shiftprod {

/// Dense primality table over [1, limit], filled by a sieve of
/// Eratosthenes. Immutable once built.
class PrimeTable {
   public:
    explicit PrimeTable(std::uint64_t limit) : limit_(limit), bits_(detail::words_for(limit), 0) {
        if (limit < 2) {
            throw LimitTooSmall(limit);
        }
        if (limit > (std::uint64_t{1} << 32)) {
            throw Error("sieve limit above 2^32 is not supported");
        }
        // Start from "everything >= 2 is prime" and cross off multiples.
        for (std::uint64_t n = 2; n <= limit_; ++n) {
            detail::set_bit(bits_, n - 1);
        }
        for (std::uint64_t p = 2; p * p <= limit_; ++p) {
            if (!detail::test_bit(bits_, p - 1)) {
                continue;
            }
            for (std::uint64_t c = p * p; c <= limit_; c += p) {
                clear_bit(c - 1);
            }
        }
        if (limit_ >= 100 && count_up_to(100) != 25) {
            throw Error("sieve self-check failed: pi(100) != 25");
        }
    }

    [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }

    [[nodiscard]] bool is_prime(std::uint64_t n) const {
        if (n < 1 || n > limit_) {
            throw ValueOutOfWindow(n, limit_);
        }
        return detail::test_bit(bits_, n - 1);
    }

    [[nodiscard]] std::uint64_t count_up_to(std::uint64_t n) const {
        std::uint64_t count = 0;
        for_each_prime([&](std::uint64_t p) {
            if (p <= n) {
                ++count;
            }
        });
        return count;
    }

    [[nodiscard]] std::uint64_t prime_count() const { return detail::popcount_words(bits_); }

    template <typename Fn>
    void for_each_prime(Fn&& fn) const {
        detail::for_each_member(bits_, std::forward<Fn>(fn));
    }

    [[nodiscard]] std::vector<std::uint64_t> primes() const {
        std::vector<std::uint64_t> out;
        for_each_prime([&](std::uint64_t p) { out.push_back(p); });
        return out;
    }

    /// The primes as an IntSet on the window [1, limit].
    [[nodiscard]] IntSet as_set() const {
        std::vector<std::uint64_t> words(bits_);
        return IntSet::from_raw_words(Window(limit_), std::move(words));
    }

    [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return bits_; }

   private:
    void clear_bit(std::uint64_t bit) {
        bits_[static_cast<std::size_t>(bit / detail::kWordBits)] &=
            ~(std::uint64_t{1} << (bit % detail::kWordBits));
    }

    std::uint64_t limit_;
    std::vector<std::uint64_t> bits_;
};

inline PrimeTable sieve(std::uint64_t limit) { return PrimeTable(limit); }

/// Default prime search bound for a difference window: generous enough
/// that small differences saturate empirically.
inline std::uint64_t default_prime_limit(std::uint64_t window_hi) {
    return std::max<std::uint64_t>(1'000'000, detail::checked_mul(100, window_hi));
}

/// (P - P) truncated to `out`: d is a member iff p - q = d for primes
/// p, q <= table.limit(). For each prime q the primality bits of
/// (q, q + out.hi] are OR-shifted into the accumulator, so the cost is
/// pi(limit) * out.hi / 64 word operations; q-chunks may run in parallel
/// with a deterministic OR merge.
inline IntSet prime_diff_set(const PrimeTable& table, Window out, unsigned threads = 1) {
    const std::uint64_t hi = out.hi();
    const std::uint64_t limit = table.limit();
    const std::size_t n_words = detail::words_for(hi);
    const std::vector<std::uint64_t> qs = table.primes();

    const unsigned n_threads = std::max(1U, threads);
    const std::uint64_t n_chunks =
        std::min<std::uint64_t>(n_threads, static_cast<std::uint64_t>(qs.size()));
    std::vector<std::vector<std::uint64_t>> accs(
        static_cast<std::size_t>(std::max<std::uint64_t>(1, n_chunks)),
        std::vector<std::uint64_t>(n_words, 0));
    detail::parallel_chunks(qs.size(), n_threads,
                            [&](std::size_t c, std::uint64_t lo, std::uint64_t end) {
                                auto& acc = accs[c];
                                for (std::uint64_t i = lo; i < end; ++i) {
                                    // bit d-1 of acc <- primality bit (q+d)-1, i.e. shift by q
                                    detail::or_shift_down(acc, table.words(), qs[i], limit, hi);
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

inline IntSet prime_diff_set(std::uint64_t prime_limit, Window out, unsigned threads = 1) {
    if (prime_limit < 2) {
        throw LimitTooSmall(prime_limit);
    }
    return prime_diff_set(PrimeTable(prime_limit), out, threads);
}

}  // namespace shiftprod
