#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "shiftprod/detail/bitops.hpp"
#include "shiftprod/errors.hpp"
#include "shiftprod/intset.hpp"

// Finite-sums machinery: subset-sum enumeration, IP_r witness search on a
// window, the pigeonhole block extractor, and the derived constructions
// built from them.

namespace shiftprod {

/// Hard cap on generator counts for subset-sum enumeration (2^L blowup).
inline constexpr std::size_t kMaxFsLength = 30;
/// Hard cap on the rank of an IP_r witness search.
inline constexpr std::uint64_t kMaxWitnessRank = 20;

/// An ordered, nonempty sequence of positive integer generators.
class FiniteSequence {
   public:
    explicit FiniteSequence(std::vector<std::uint64_t> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) {
            throw Error("a finite sequence needs at least one term");
        }
        for (std::uint64_t t : terms_) {
            if (t == 0) {
                throw Error("sequence terms must be >= 1");
            }
        }
    }

    FiniteSequence(std::initializer_list<std::uint64_t> terms)
        : FiniteSequence(std::vector<std::uint64_t>(terms)) {}

    [[nodiscard]] std::size_t length() const noexcept { return terms_.size(); }
    [[nodiscard]] std::span<const std::uint64_t> terms() const noexcept { return terms_; }
    /// 1-based term access, matching index-set conventions.
    [[nodiscard]] std::uint64_t term(std::size_t i) const { return terms_.at(i - 1); }

    [[nodiscard]] std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (std::uint64_t t : terms_) {
            sum = detail::checked_add(sum, t);
        }
        return sum;
    }

   private:
    std::vector<std::uint64_t> terms_;
};

/// All nonempty subset sums of `seq`, truncated to `out`. Subset-sum DP
/// over the bit representation: O(L * hi/64) instead of 2^L.
inline IntSet fs_enumerate(const FiniteSequence& seq, Window out) {
    if (seq.length() > kMaxFsLength) {
        throw SequenceTooLong(seq.length(), kMaxFsLength);
    }
    const std::uint64_t hi = out.hi();
    std::vector<std::uint64_t> reach(detail::words_for(hi), 0);
    for (std::uint64_t t : seq.terms()) {
        std::vector<std::uint64_t> shifted(reach.size(), 0);
        detail::or_shift_up(shifted, reach, t, hi);
        for (std::size_t i = 0; i < reach.size(); ++i) {
            reach[i] |= shifted[i];
        }
        if (t <= hi) {
            detail::set_bit(reach, t - 1);
        }
    }
    return IntSet::from_raw_words(out, std::move(reach));
}

/// r(r+1)/2, the largest subset sum of {1, ..., r}.
inline std::uint64_t fs_range_max(std::uint64_t r) {
    if (r == 0) {
        throw Error("r must be >= 1");
    }
    return detail::checked_mul(r, r + 1) / 2;
}

/// FS({1, ..., r}) on the window [1, r(r+1)/2]; equals that full interval.
inline IntSet fs_range(std::uint64_t r) {
    std::vector<std::uint64_t> gens(static_cast<std::size_t>(r));
    std::iota(gens.begin(), gens.end(), std::uint64_t{1});
    return fs_enumerate(FiniteSequence(std::move(gens)), Window(fs_range_max(r)));
}

/// Generators x_1 <= ... <= x_r whose 2^r - 1 nonempty subset sums all lie
/// in a target set; validated on construction.
class IPrWitness {
   public:
    IPrWitness(const IntSet& target, std::vector<std::uint64_t> generators)
        : generators_(validate(target, std::move(generators))) {}

    [[nodiscard]] const FiniteSequence& generators() const noexcept { return generators_; }
    [[nodiscard]] std::uint64_t rank() const noexcept { return generators_.length(); }

    /// The sorted, deduplicated subset sums.
    [[nodiscard]] std::vector<std::uint64_t> subset_sums() const {
        const IntSet sums = fs_enumerate(generators_, Window(generators_.total()));
        return sums.members();
    }

   private:
    static FiniteSequence validate(const IntSet& target, std::vector<std::uint64_t> gens) {
        FiniteSequence seq(std::move(gens));
        if (!std::is_sorted(seq.terms().begin(), seq.terms().end())) {
            throw Error("witness generators must be nondecreasing");
        }
        const std::uint64_t top = seq.total();
        if (top > target.hi()) {
            throw ValueOutOfWindow(top, target.hi());
        }
        const IntSet sums = fs_enumerate(seq, Window(top));
        bool ok = true;
        sums.for_each([&](std::uint64_t s) { ok = ok && target.contains(s); });
        if (!ok) {
            throw Error("witness subset sums escape the target set");
        }
        return seq;
    }

    FiniteSequence generators_;
};

namespace detail {

// Depth-first search over nondecreasing (or strictly increasing) generator
// tuples in lexicographic order; the first complete tuple is the
// lexicographically minimal witness.
inline bool ip_witness_dfs(const IntSet& s, std::uint64_t r, std::uint64_t gen_bound, bool distinct,
                           std::vector<std::uint64_t>& gens, std::vector<std::uint64_t>& sums,
                           std::uint64_t max_sum) {
    if (gens.size() == static_cast<std::size_t>(r)) {
        return true;
    }
    const std::uint64_t hi = s.hi();
    std::uint64_t v = gens.empty() ? 1 : (distinct ? gens.back() + 1 : gens.back());
    for (; v <= gen_bound; ++v) {
        // Every subset sum must stay inside the window to count as a member;
        // larger v only pushes sums higher, so overflow ends this level.
        if (v > hi || v > hi - max_sum) {
            break;
        }
        if (!test_bit(s.words(), v - 1)) {
            continue;
        }
        bool feasible = true;
        const std::size_t old_count = sums.size();
        for (std::size_t i = 0; i < old_count && feasible; ++i) {
            feasible = test_bit(s.words(), sums[i] + v - 1);
        }
        if (!feasible) {
            continue;
        }
        for (std::size_t i = 0; i < old_count; ++i) {
            sums.push_back(sums[i] + v);
        }
        sums.push_back(v);
        gens.push_back(v);
        if (ip_witness_dfs(s, r, gen_bound, distinct, gens, sums, max_sum + v)) {
            return true;
        }
        gens.pop_back();
        sums.resize(old_count);
    }
    return false;
}

}  // namespace detail

/// Exhaustive search for an IP_r configuration inside S with generators
/// <= gen_bound. Returns the lexicographically smallest witness (tuples
/// nondecreasing; strictly increasing when `distinct`), or nothing if no
/// witness exists below the bound. Absence is a value, not an error.
inline std::optional<IPrWitness> find_ip_r_witness(const IntSet& s, std::uint64_t r,
                                                   std::uint64_t gen_bound, bool distinct = false) {
    if (r == 0) {
        throw Error("witness rank r must be >= 1");
    }
    if (r > kMaxWitnessRank) {
        throw SequenceTooLong(static_cast<std::size_t>(r), static_cast<std::size_t>(kMaxWitnessRank));
    }
    if (gen_bound == 0 || gen_bound > s.hi()) {
        throw ValueOutOfWindow(gen_bound, s.hi());
    }
    std::vector<std::uint64_t> gens;
    std::vector<std::uint64_t> sums;
    gens.reserve(static_cast<std::size_t>(r));
    if (!detail::ip_witness_dfs(s, r, gen_bound, distinct, gens, sums, 0)) {
        return std::nullopt;
    }
    return IPrWitness(s, std::move(gens));
}

/// Finite semidecision of "S meets every IP_r set": holds on this window
/// iff the complement has no IP_r witness with generators <= gen_bound.
/// A positive answer is only as strong as the bound it was checked at.
struct IPrStarReport {
    bool holds;
    std::uint64_t gen_bound;
    std::optional<IPrWitness> counterexample;
};

inline IPrStarReport is_ip_r_star_on_window(const IntSet& s, std::uint64_t r,
                                            std::uint64_t gen_bound, bool distinct = false) {
    std::optional<IPrWitness> w = find_ip_r_witness(complement_in_window(s), r, gen_bound, distinct);
    if (w.has_value()) {
        return IPrStarReport{false, gen_bound, std::move(w)};
    }
    return IPrStarReport{true, gen_bound, std::nullopt};
}

/// Pairwise-disjoint contiguous index blocks (1-based) whose term sums are
/// all divisible by the extraction divisor.
struct BlockExtraction {
    std::uint64_t divisor;
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::uint64_t> block_sums;
};

/// Greedy left-to-right residue-collision scan over prefix sums: within any
/// m + 1 consecutive unconsumed prefix sums two share a residue class mod m,
/// so the extractor always returns at least floor(L/m) disjoint blocks.
inline BlockExtraction pigeonhole_blocks(const FiniteSequence& seq, std::uint64_t m) {
    if (m == 0) {
        throw Error("block divisor must be >= 1");
    }
    BlockExtraction out{m, {}, {}};
    std::unordered_map<std::uint64_t, std::size_t> seen;  // residue -> prefix index
    seen.reserve(seq.length() + 1);
    std::uint64_t prefix = 0;
    seen.emplace(0, 0);
    for (std::size_t j = 1; j <= seq.length(); ++j) {
        prefix = detail::checked_add(prefix, seq.term(j));
        const std::uint64_t res = prefix % m;
        auto it = seen.find(res);
        if (it == seen.end()) {
            seen.emplace(res, j);
            continue;
        }
        const std::size_t i = it->second;
        std::vector<std::size_t> block(j - i);
        std::iota(block.begin(), block.end(), i + 1);
        std::uint64_t sum = 0;
        for (std::size_t t = i + 1; t <= j; ++t) {
            sum += seq.term(t);
        }
        out.blocks.push_back(std::move(block));
        out.block_sums.push_back(sum);
        seen.clear();
        seen.emplace(res, j);  // restart the scan after the consumed block
    }
    return out;
}

/// A member of (m * A) ∩ FS(seq) found through the constructive route:
/// value = m * (sum of chosen reduced terms), H = union of the chosen blocks.
struct DilatedFsMember {
    std::uint64_t value;
    std::vector<std::size_t> indices;
};

/// Builds y_n = (block sum)/m from the pigeonhole extraction and searches
/// A ∩ FS(y). Success yields an element of dilate(A, m) ∩ fs_enumerate(seq)
/// together with its index set. Absence means this constructive path failed
/// on this finite sequence, not that the intersection is empty.
inline std::optional<DilatedFsMember> dilated_fs_member(const IntSet& a, std::uint64_t m,
                                                        const FiniteSequence& seq) {
    if (m == 0) {
        throw Error("dilation factor must be >= 1");
    }
    if (a.is_empty()) {
        return std::nullopt;
    }
    const std::uint64_t cap = a.hi() / m;  // need m * sum <= window hi
    if (cap == 0) {
        return std::nullopt;
    }
    const BlockExtraction ext = pigeonhole_blocks(seq, m);
    const std::size_t n = ext.blocks.size();
    if (n == 0) {
        return std::nullopt;
    }
    std::vector<std::uint64_t> reduced(n);
    for (std::size_t i = 0; i < n; ++i) {
        reduced[i] = ext.block_sums[i] / m;
    }

    // Layered subset-sum DP so the chosen blocks can be reconstructed.
    const std::size_t n_words = detail::words_for(cap);
    std::vector<std::vector<std::uint64_t>> layers(n + 1, std::vector<std::uint64_t>(n_words, 0));
    for (std::size_t i = 1; i <= n; ++i) {
        layers[i] = layers[i - 1];
        detail::or_shift_up(layers[i], layers[i - 1], reduced[i - 1], cap);
        if (reduced[i - 1] >= 1 && reduced[i - 1] <= cap) {
            detail::set_bit(layers[i], reduced[i - 1] - 1);
        }
    }

    std::optional<std::uint64_t> found;
    for (std::uint64_t sum = 1; sum <= cap; ++sum) {  // smallest reachable element of A wins
        if (detail::test_bit(layers[n], sum - 1) && detail::test_bit(a.words(), sum - 1)) {
            found = sum;
            break;
        }
    }
    if (!found.has_value()) {
        return std::nullopt;
    }

    // Walk the layers back, skipping any block that is not needed.
    std::vector<std::size_t> chosen_blocks;
    std::uint64_t remaining = *found;
    for (std::size_t i = n; i >= 1 && remaining > 0; --i) {
        if (detail::test_bit(layers[i - 1], remaining - 1)) {
            continue;
        }
        if (reduced[i - 1] > remaining) {
            throw Error("subset-sum reconstruction failed");  // unreachable by construction
        }
        chosen_blocks.push_back(i - 1);
        remaining -= reduced[i - 1];
    }
    if (remaining != 0) {
        throw Error("subset-sum reconstruction failed");
    }

    DilatedFsMember result{detail::checked_mul(m, *found), {}};
    std::sort(chosen_blocks.begin(), chosen_blocks.end());
    std::uint64_t direct_sum = 0;
    for (std::size_t b : chosen_blocks) {
        result.indices.insert(result.indices.end(), ext.blocks[b].begin(), ext.blocks[b].end());
        direct_sum += ext.block_sums[b];
    }
    if (direct_sum != result.value || !a.contains(result.value / m)) {
        throw Error("constructive witness failed its self-check");  // unreachable
    }
    return result;
}

/// The prefix-sum set S' = {x_1, x_1+x_2, ...}: every pairwise difference
/// of S' is a sum of consecutive generators and therefore a subset sum.
/// Verified directly on construction.
inline std::vector<std::uint64_t> delta_witness_from_ip(const FiniteSequence& gen) {
    std::vector<std::uint64_t> prefix;
    prefix.reserve(gen.length());
    std::uint64_t sum = 0;
    for (std::uint64_t t : gen.terms()) {
        sum = detail::checked_add(sum, t);
        if (!prefix.empty() && sum <= prefix.back()) {
            throw DuplicatePrefixSum(sum);  // impossible for positive terms; defensive
        }
        prefix.push_back(sum);
    }
    const IntSet sums = fs_enumerate(gen, Window(gen.total()));
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        for (std::size_t j = i + 1; j < prefix.size(); ++j) {
            if (!sums.contains(prefix[j] - prefix[i])) {
                throw Error("prefix-sum difference escapes the subset sums");  // unreachable
            }
        }
    }
    return prefix;
}

}  // namespace shiftprod
