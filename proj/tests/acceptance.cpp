// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit when
// anything fails. The CLI-facing criteria need --cli <path-to-binary>.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mutation_suite.hpp"
#include "oracles.hpp"
#include "shiftprod/certificate.hpp"
#include "shiftprod/fs.hpp"
#include "shiftprod/intset.hpp"
#include "shiftprod/primes.hpp"
#include "shiftprod/witness.hpp"

using namespace shiftprod;
using nlohmann::json;

namespace {

struct CriterionResult {
    bool ok;
    std::string detail;
};

using Criterion = std::function<CriterionResult()>;

std::string g_cli_path;
std::filesystem::path g_work_dir;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::set<std::uint64_t> as_set(const IntSet& s) {
    const auto m = s.members();
    return {m.begin(), m.end()};
}

int run_cli(const std::string& args, const std::filesystem::path& stdout_path) {
    const std::string cmd = g_cli_path + " " + args + " > " + stdout_path.string() + " 2> " +
                            (g_work_dir / "stderr.log").string();
    const int rc = std::system(cmd.c_str());
    if (rc == -1) {
        return -1;
    }
    return WEXITSTATUS(rc);
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    json j;
    in >> j;
    return j;
}

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// --- criterion 1: kernel oracle equivalence ---------------------------------

CriterionResult kernels_match_naive_oracles() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t hi = 1 + rng() % 2000;
        const auto a_members = oracles::random_members(rng, hi, density(rng));
        const auto b_members = oracles::random_members(rng, hi, density(rng));
        const IntSet a = IntSet::from_members(Window(hi), a_members);
        const IntSet b = IntSet::from_members(Window(hi), b_members);
        const std::uint64_t out_hi = 1 + rng() % 2000;
        const std::uint64_t m = 1 + rng() % 16;

        if (as_set(product_set(a, b, Window(out_hi))) !=
            oracles::naive_product_set(a_members, b_members, out_hi)) {
            return {false, "product_set diverged at trial " + std::to_string(trial)};
        }
        if (as_set(difference_set(a)) != oracles::naive_difference_set(a_members)) {
            return {false, "difference_set diverged at trial " + std::to_string(trial)};
        }
        if (as_set(dilate(a, m)) != oracles::naive_dilate(a_members, m, hi)) {
            return {false, "dilate diverged at trial " + std::to_string(trial)};
        }
        if (as_set(contract(a, m)) != oracles::naive_contract(a_members, m, hi)) {
            return {false, "contract diverged at trial " + std::to_string(trial)};
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 30.0) {
        return {false, "200 trials took " + std::to_string(elapsed) + " s (limit 30)"};
    }
    std::ostringstream detail;
    detail << "200 random pairs, hi <= 2000, " << elapsed << " s";
    return {true, detail.str()};
}

// --- criterion 2: FS closed form ---------------------------------------------

CriterionResult fs_range_closed_form() {
    for (std::uint64_t r = 1; r <= 12; ++r) {
        const std::uint64_t top = r * (r + 1) / 2;
        const IntSet s = fs_range(r);
        if (s.hi() != top || !(s == IntSet::full(Window(top)))) {
            return {false, "fs_range(" + std::to_string(r) + ") is not [1, " +
                               std::to_string(top) + "]"};
        }
    }
    return {true, "fs_range(r) = [1, r(r+1)/2] for r in [1, 12]"};
}

// --- criterion 3: pigeonhole extractor ---------------------------------------

CriterionResult pigeonhole_guarantees() {
    std::mt19937_64 rng(1003);
    for (int trial = 0; trial < 10'000; ++trial) {
        const std::size_t len = 1 + rng() % 20;
        const std::uint64_t m = 1 + rng() % 20;
        std::vector<std::uint64_t> terms(len);
        for (auto& t : terms) {
            t = 1 + rng() % 100;
        }
        const FiniteSequence seq(terms);
        const BlockExtraction ext = pigeonhole_blocks(seq, m);
        if (ext.blocks.size() < len / m) {
            return {false, "trial " + std::to_string(trial) + ": " +
                               std::to_string(ext.blocks.size()) + " blocks < floor(" +
                               std::to_string(len) + "/" + std::to_string(m) + ")"};
        }
        std::set<std::size_t> used;
        for (std::size_t b = 0; b < ext.blocks.size(); ++b) {
            std::uint64_t sum = 0;
            for (std::size_t idx : ext.blocks[b]) {
                if (idx < 1 || idx > len || !used.insert(idx).second) {
                    return {false, "trial " + std::to_string(trial) + ": bad block index"};
                }
                sum += seq.term(idx);
            }
            if (sum % m != 0 || sum != ext.block_sums[b]) {
                return {false, "trial " + std::to_string(trial) + ": block sum not divisible"};
            }
        }
    }
    return {true, "10^4 random (seq, m): disjoint blocks, sums divisible, count >= floor(L/m)"};
}

// --- criterion 4: claim soundness --------------------------------------------

CriterionResult dilated_member_soundness() {
    std::mt19937_64 rng(1004);
    int successes = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::uint64_t hi = 10 + rng() % 400;
        const IntSet a = IntSet::from_members(
            Window(hi), oracles::random_members(rng, hi, 0.05 + 0.4 * (rng() % 100) / 100.0));
        const std::uint64_t m = 1 + rng() % 12;
        std::vector<std::uint64_t> terms(1 + rng() % 16);
        for (auto& t : terms) {
            t = 1 + rng() % 40;
        }
        const FiniteSequence seq(terms);
        const auto hit = dilated_fs_member(a, m, seq);
        if (!hit.has_value()) {
            continue;
        }
        ++successes;
        if (!dilate(a, m).contains(hit->value)) {
            return {false, "trial " + std::to_string(trial) + ": value not in dilate(A, m)"};
        }
        if (!fs_enumerate(seq, Window(hi)).contains(hit->value)) {
            return {false, "trial " + std::to_string(trial) + ": value not in FS(seq)"};
        }
    }
    return {true, "10^3 random (A, m, seq); " + std::to_string(successes) +
                      " constructive successes, all sound"};
}

// --- criterion 5: pipeline vs oracle -----------------------------------------

CriterionResult pipeline_vs_oracle() {
    std::mt19937_64 rng(1005);
    int succeeded = 0;
    int attempts = 0;
    while (succeeded < 100 && attempts < 2000) {
        ++attempts;
        const std::uint64_t r = 1 + rng() % 3;
        const std::uint64_t fs_top = fs_range_max(r);
        std::uint64_t lcm = 1;
        for (std::uint64_t m = 2; m <= fs_top; ++m) {
            lcm = std::lcm(lcm, m);
        }
        const std::uint64_t k0 = lcm * (1 + rng() % 3);
        const std::uint64_t x_max = 2 + rng() % 15;
        const std::uint64_t a_hi = k0 + rng() % 300;
        const std::uint64_t b_hi = x_max * fs_top + rng() % 300;

        auto a_members = oracles::random_members(rng, a_hi, 0.25);
        for (std::uint64_t m = 1; m <= fs_top; ++m) {
            a_members.push_back(k0 / m);
        }
        auto b_members = oracles::random_members(rng, b_hi, 0.25);
        for (std::uint64_t x = 1; x <= x_max; ++x) {
            b_members.push_back(x * (1 + rng() % fs_top));
        }
        const IntSet a = IntSet::from_members(Window(a_hi), a_members);
        const IntSet b = IntSet::from_members(Window(b_hi), b_members);

        std::optional<WitnessResult> res;
        try {
            res = run_pipeline(a, b, r, x_max);
        } catch (const NoCandidateK&) {
            continue;
        } catch (const SelectorIncomplete&) {
            continue;
        }
        ++succeeded;
        if (!verify_direct(a, b, res->k, x_max).ok) {
            return {false, "direct oracle rejected pipeline k at attempt " +
                               std::to_string(attempts)};
        }
        const auto brute = min_k_bruteforce(a, b, x_max, res->k);
        if (!brute.has_value() || *brute > res->k) {
            return {false, "min_k_bruteforce exceeded pipeline k at attempt " +
                               std::to_string(attempts)};
        }
    }
    if (succeeded < 100) {
        return {false, "only " + std::to_string(succeeded) + " successful fixtures in " +
                           std::to_string(attempts) + " attempts"};
    }
    return {true, "100 successful (A, B, r <= 3) fixtures agree with the direct oracle"};
}

// --- criterion 6: corollary-4 desk scale --------------------------------------

CriterionResult corollary4_desk_scale() {
    if (g_cli_path.empty()) {
        return {false, "CLI path not provided (--cli)"};
    }
    const auto cert_path = g_work_dir / "corollary4.fscert";
    const auto summary_path = g_work_dir / "corollary4.json";
    const auto start = std::chrono::steady_clock::now();
    const int rc = run_cli("corollary4 --prime-limit 1000000 --r 2 --xmax 1000 --cert " +
                               cert_path.string() + " --format json",
                           summary_path);
    const double elapsed = seconds_since(start);
    if (rc != 0) {
        return {false, "corollary4 exited with " + std::to_string(rc)};
    }
    if (elapsed >= 60.0) {
        return {false, "corollary4 took " + std::to_string(elapsed) + " s (limit 60)"};
    }
    const json summary = read_json(summary_path);
    const std::uint64_t k = summary.at("k").get<std::uint64_t>();

    const auto check_out = g_work_dir / "check.json";
    const int check_rc = run_cli("check " + cert_path.string() + " --format json", check_out);
    if (check_rc != 0) {
        return {false, "cmd_check rejected the emitted certificate (exit " +
                           std::to_string(check_rc) + ")"};
    }

    // Independent confirmation, bypassing the pipeline: direct product
    // membership of k*x for every x, plus the exhaustive minimum scan.
    const PrimeTable table(1'000'000);
    const IntSet diffs = prime_diff_set(table, Window(3000), 2);
    const DirectVerdict direct = verify_direct(diffs, diffs, k, 1000, 2);
    if (!direct.ok) {
        return {false, "verify_direct failed at x = " + std::to_string(direct.first_failing_x)};
    }
    const auto brute = min_k_bruteforce(diffs, diffs, 1000, 10, 2);
    if (!brute.has_value()) {
        return {false, "min_k_bruteforce found no k <= 10"};
    }
    if (*brute > k) {
        return {false, "min_k " + std::to_string(*brute) + " exceeds certificate k " +
                           std::to_string(k)};
    }
    if (*brute != 2) {
        return {false, "min_k_bruteforce reported " + std::to_string(*brute) +
                           ", analysis predicts 2 (k = 1 dies at x = 7)"};
    }
    std::ostringstream detail;
    detail << "k = " << k << ", min_k = " << *brute << ", run " << elapsed << " s, check accepted";
    return {true, detail.str()};
}

// --- criterion 7: certificate mutation suite ----------------------------------

CriterionResult certificate_mutations() {
    const IntSet a = IntSet::full(Window(100));
    const IntSet b =
        IntSet::from_predicate(Window(200), [](std::uint64_t x) { return x % 2 == 0; });
    const WitnessResult res = run_pipeline(a, b, 2, 10);
    const Certificate cert = emit(res, SetDescriptor::for_set(a), SetDescriptor::for_set(b));
    const MembershipOracle a_oracle = oracle_from(a);
    const MembershipOracle b_oracle = oracle_from(b);
    if (!check(cert, a_oracle, b_oracle).accepted) {
        return {false, "honest certificate was rejected"};
    }
    const mutation_suite::Outcome out = mutation_suite::run(cert, a_oracle, b_oracle);
    if (!out.accepted_mutants.empty()) {
        return {false, "mutant accepted: " + out.accepted_mutants.front()};
    }
    return {true, std::to_string(out.mutants) + " single-field mutants, all rejected; honest "
                      "certificate accepted"};
}

// --- criterion 8: thread determinism ------------------------------------------

CriterionResult certificates_identical_across_threads() {
    if (g_cli_path.empty()) {
        return {false, "CLI path not provided (--cli)"};
    }
    const auto cert1 = g_work_dir / "det_t1.fscert";
    const auto cert8 = g_work_dir / "det_t8.fscert";
    for (const auto& [threads, path] : {std::pair{1, cert1}, std::pair{8, cert8}}) {
        const int rc = run_cli("corollary4 --prime-limit 200000 --r 2 --xmax 400 --threads " +
                                   std::to_string(threads) + " --cert " + path.string() +
                                   " --format json",
                               g_work_dir / "det_summary.json");
        if (rc != 0) {
            return {false, "corollary4 with --threads " + std::to_string(threads) +
                               " exited with " + std::to_string(rc)};
        }
    }
    if (slurp(cert1) != slurp(cert8)) {
        return {false, "certificates differ between --threads 1 and --threads 8"};
    }
    // Digest files carry "<hex>  <filename>"; the hex part must coincide.
    const auto hex_of = [](std::filesystem::path p) {
        p += ".sha256";
        const auto bytes = slurp(p);
        const std::string text(bytes.begin(), bytes.end());
        return text.substr(0, text.find_first_of(" \t\n"));
    };
    const std::string hex1 = hex_of(cert1);
    if (hex1.size() != 64 || hex1 != hex_of(cert8)) {
        return {false, "digest files differ between --threads 1 and --threads 8"};
    }
    return {true, "byte-identical certificates and digests for --threads 1 vs 8"};
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) {
            g_cli_path = argv[++i];
        }
    }
    g_work_dir = std::filesystem::temp_directory_path() / "shiftprod_acceptance";
    std::filesystem::create_directories(g_work_dir);

    const std::vector<std::pair<std::string, Criterion>> criteria = {
        {"kernel-oracle-equivalence", kernels_match_naive_oracles},
        {"fs-closed-form", fs_range_closed_form},
        {"pigeonhole-extractor", pigeonhole_guarantees},
        {"claim-soundness", dilated_member_soundness},
        {"pipeline-vs-oracle", pipeline_vs_oracle},
        {"corollary4-desk-scale", corollary4_desk_scale},
        {"certificate-mutation-suite", certificate_mutations},
        {"threads-determinism", certificates_identical_across_threads},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        CriterionResult result{false, "threw"};
        try {
            result = fn();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        if (result.ok) {
            std::cout << "PASS " << name << " (" << result.detail << ")\n";
        } else {
            ++failures;
            std::cout << "FAIL " << name << ": " << result.detail << "\n";
        }
        std::cout.flush();
    }
    return failures == 0 ? 0 : 1;
}
