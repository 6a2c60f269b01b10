#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

// Word-level helpers shared by the set kernels. Bit i of the backing words
// encodes membership of the integer i + 1, so shifts translate directly to
// adding or subtracting a constant from every member.

namespace shiftprod::detail {

inline constexpr std::uint64_t kWordBits = 64;

inline std::size_t words_for(std::uint64_t bit_count) {
    return static_cast<std::size_t>((bit_count + kWordBits - 1) / kWordBits);
}

/// Mask keeping the low `bit_count % 64` bits of the last word (all-ones
/// when bit_count is word-aligned).
inline std::uint64_t tail_mask(std::uint64_t bit_count) {
    const std::uint64_t tail = bit_count % kWordBits;
    return tail == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail) - 1;
}

inline void mask_tail(std::vector<std::uint64_t>& words, std::uint64_t bit_count) {
    if (!words.empty()) {
        words.back() &= tail_mask(bit_count);
    }
}

inline bool test_bit(std::span<const std::uint64_t> words, std::uint64_t bit) {
    return (words[static_cast<std::size_t>(bit / kWordBits)] >> (bit % kWordBits)) & 1U;
}

inline void set_bit(std::vector<std::uint64_t>& words, std::uint64_t bit) {
    words[static_cast<std::size_t>(bit / kWordBits)] |= std::uint64_t{1} << (bit % kWordBits);
}

inline std::uint64_t popcount_words(std::span<const std::uint64_t> words) {
    std::uint64_t n = 0;
    for (std::uint64_t w : words) {
        n += static_cast<std::uint64_t>(std::popcount(w));
    }
    return n;
}

/// dst |= (src >> shift), reading at most src_bits bits of src and writing
/// at most dst_bits bits of dst. Bit j of dst receives bit j + shift of src.
/// Bits of src at positions >= src_bits must be zero (IntSet invariant).
inline void or_shift_down(std::vector<std::uint64_t>& dst, std::span<const std::uint64_t> src,
                          std::uint64_t shift, std::uint64_t src_bits, std::uint64_t dst_bits) {
    if (shift >= src_bits) {
        return;
    }
    const std::uint64_t usable = std::min(dst_bits, src_bits - shift);
    const std::size_t n_words = words_for(usable);
    const std::size_t src_words = words_for(src_bits);
    const std::size_t q = static_cast<std::size_t>(shift / kWordBits);
    const unsigned r = static_cast<unsigned>(shift % kWordBits);
    const std::uint64_t last_mask = tail_mask(usable);
    for (std::size_t i = 0; i < n_words; ++i) {
        std::uint64_t w = 0;
        if (i + q < src_words) {
            w = src[i + q] >> r;
            if (r != 0 && i + q + 1 < src_words) {
                w |= src[i + q + 1] << (kWordBits - r);
            }
        }
        if (i + 1 == n_words) {
            w &= last_mask;
        }
        dst[i] |= w;
    }
}

/// dst |= (src << shift), writing at most dst_bits bits of dst.
/// Bit j + shift of dst receives bit j of src.
inline void or_shift_up(std::vector<std::uint64_t>& dst, std::span<const std::uint64_t> src,
                        std::uint64_t shift, std::uint64_t dst_bits) {
    if (shift >= dst_bits) {
        return;
    }
    const std::size_t dst_words = words_for(dst_bits);
    const std::size_t src_words = src.size();
    const std::size_t q = static_cast<std::size_t>(shift / kWordBits);
    const unsigned r = static_cast<unsigned>(shift % kWordBits);
    for (std::size_t i = dst_words; i-- > q;) {
        const std::size_t j = i - q;
        std::uint64_t w = 0;
        if (j < src_words) {
            w = src[j] << r;
        }
        if (r != 0 && j >= 1 && j - 1 < src_words) {
            w |= src[j - 1] >> (kWordBits - r);
        }
        dst[i] |= w;
    }
    mask_tail(dst, dst_bits);
}

/// Calls fn(value) for every set bit, in ascending order of the encoded
/// integer (bit i encodes i + 1).
template <typename Fn>
void for_each_member(std::span<const std::uint64_t> words, Fn&& fn) {
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::uint64_t w = words[i];
        while (w != 0) {
            const unsigned b = static_cast<unsigned>(std::countr_zero(w));
            fn(static_cast<std::uint64_t>(i) * kWordBits + b + 1);
            w &= w - 1;
        }
    }
}

}  // namespace shiftprod::detail
