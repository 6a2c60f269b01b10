// shiftprod — windowed integer-set experiments with checkable certificates.
//
// Subcommands cover the set kernels (sieve, diffset, product), the
// finite-sums tools (fs, find-ipr, pigeonhole), the witness pipeline
// (find-k, min-k), the certificate checker (check), and the end-to-end
// prime-difference run (corollary4).
//
// stdout carries exactly one machine-parseable summary per run (JSON when
// piped, table on a terminal, --format overrides). Progress events stream
// to stderr as line-delimited JSON. Exit codes: 0 success, 1 witness
// failure or certificate rejection, 2 configuration or input errors.

#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shiftprod/certificate.hpp"
#include "shiftprod/fs.hpp"
#include "shiftprod/intset.hpp"
#include "shiftprod/primes.hpp"
#include "shiftprod/setfile.hpp"
#include "shiftprod/witness.hpp"

namespace {

using nlohmann::json;
using namespace shiftprod;

constexpr int kExitOk = 0;
constexpr int kExitWitnessFailure = 1;
constexpr int kExitConfigError = 2;

enum class Format { automatic, json_out, table_out };

struct GlobalOptions {
    unsigned threads = 0;  // 0 = SHIFTPROD_THREADS or hardware count
    Format format = Format::automatic;

    [[nodiscard]] unsigned resolved_threads() const { return detail::resolve_threads(threads); }
    [[nodiscard]] bool json_output() const {
        if (format == Format::json_out) {
            return true;
        }
        if (format == Format::table_out) {
            return false;
        }
        return isatty(STDOUT_FILENO) == 0;
    }
};

void render_table(const json& j, const std::string& prefix = "") {
    for (const auto& [key, value] : j.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            render_table(value, name);
        } else {
            std::cout << name << ": " << value.dump() << "\n";
        }
    }
}

void emit_summary(const GlobalOptions& opts, const json& summary) {
    if (opts.json_output()) {
        std::cout << summary.dump() << "\n";
    } else {
        render_table(summary);
    }
}

void diag(const std::string& stage, json detail) {
    json event;
    event["stage"] = stage;
    event["detail"] = std::move(detail);
    std::cerr << event.dump() << "\n";
}

class StageTimer {
   public:
    explicit StageTimer(std::string stage) : stage_(std::move(stage)), start_(clock::now()) {
        diag(stage_, {{"state", "start"}});
    }
    /// Milliseconds since construction; also emits the end event once.
    std::uint64_t finish(json extra = json::object()) {
        const auto ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start_).count());
        extra["state"] = "end";
        extra["ms"] = ms;
        diag(stage_, std::move(extra));
        return ms;
    }

   private:
    using clock = std::chrono::steady_clock;
    std::string stage_;
    clock::time_point start_;
};

json members_json(const IntSet& s) {
    json arr = json::array();
    s.for_each([&](std::uint64_t v) { arr.push_back(v); });
    return arr;
}

// A set argument is either a set-file path or a "primes-diff:M:N" recipe.
struct SetInput {
    IntSet set;
    SetDescriptor descriptor;
};

SetInput load_set_input(const std::string& spec, unsigned threads) {
    const std::string recipe_prefix = "primes-diff:";
    if (spec.rfind(recipe_prefix, 0) == 0) {
        const std::string rest = spec.substr(recipe_prefix.size());
        const std::size_t colon = rest.find(':');
        if (colon == std::string::npos) {
            throw MalformedInput("recipe must be primes-diff:<prime_limit>:<window>");
        }
        std::uint64_t limit = 0, hi = 0;
        try {
            limit = std::stoull(rest.substr(0, colon));
            hi = std::stoull(rest.substr(colon + 1));
        } catch (const std::exception&) {
            throw MalformedInput("recipe bounds must be positive integers");
        }
        IntSet d = prime_diff_set(limit, Window(hi), threads);
        SetDescriptor desc = SetDescriptor::for_primes_diff(limit, d);
        return SetInput{std::move(d), std::move(desc)};
    }
    IntSet s = read_set_file(spec);
    SetDescriptor desc = SetDescriptor::for_set(s);
    return SetInput{std::move(s), std::move(desc)};
}

json descriptor_json(const SetDescriptor& d) { return detail::descriptor_to_json(d); }

// --- subcommand bodies ------------------------------------------------------

int cmd_sieve(const GlobalOptions& opts, std::uint64_t limit, const std::string& out_path) {
    StageTimer timer("sieve");
    const PrimeTable table(limit);
    write_set_file(table.as_set(), out_path);
    const std::uint64_t ms = timer.finish({{"limit", limit}});
    json summary;
    summary["command"] = "sieve";
    summary["config"] = {{"limit", limit}, {"out", out_path}, {"threads", opts.resolved_threads()}};
    summary["prime_count"] = table.prime_count();
    summary["out"] = out_path;
    summary["ms"] = ms;
    emit_summary(opts, summary);
    return kExitOk;
}

int cmd_diffset(const GlobalOptions& opts, std::uint64_t prime_limit, std::uint64_t window_hi,
                const std::string& out_path) {
    const std::uint64_t limit = prime_limit == 0 ? default_prime_limit(window_hi) : prime_limit;
    StageTimer timer("prime-diff-set");
    const IntSet d = prime_diff_set(limit, Window(window_hi), opts.resolved_threads());
    write_set_file(d, out_path);
    const std::uint64_t ms = timer.finish();
    json summary;
    summary["command"] = "diffset";
    summary["config"] = {{"prime_limit", limit},
                         {"window", window_hi},
                         {"out", out_path},
                         {"threads", opts.resolved_threads()}};
    summary["prime_limit"] = limit;  // both bounds repeated so claims are reproducible
    summary["window"] = window_hi;
    summary["cardinality"] = d.cardinality();
    summary["out"] = out_path;
    summary["ms"] = ms;
    emit_summary(opts, summary);
    return kExitOk;
}

int cmd_product(const GlobalOptions& opts, const std::string& a_path, const std::string& b_path,
                std::uint64_t window_hi, const std::string& out_path) {
    const IntSet a = read_set_file(a_path);
    const IntSet b = read_set_file(b_path);
    StageTimer timer("product-set");
    const IntSet p = product_set(a, b, Window(window_hi), opts.resolved_threads());
    write_set_file(p, out_path);
    const std::uint64_t ms = timer.finish();
    json summary;
    summary["command"] = "product";
    summary["config"] = {{"a", a_path},
                         {"b", b_path},
                         {"window", window_hi},
                         {"out", out_path},
                         {"threads", opts.resolved_threads()}};
    summary["cardinality"] = p.cardinality();
    summary["out"] = out_path;
    summary["ms"] = ms;
    emit_summary(opts, summary);
    return kExitOk;
}

int cmd_fs(const GlobalOptions& opts, const std::vector<std::uint64_t>& terms) {
    const FiniteSequence seq(terms);
    const IntSet sums = fs_enumerate(seq, Window(seq.total()));
    json summary;
    summary["command"] = "fs";
    summary["config"] = {{"generators", terms}};
    summary["members"] = members_json(sums);
    emit_summary(opts, summary);
    return kExitOk;
}

int cmd_find_ipr(const GlobalOptions& opts, const std::string& set_path, std::uint64_t r,
                 std::uint64_t bound, bool distinct) {
    const IntSet s = read_set_file(set_path);
    StageTimer timer("ip-witness-search");
    const std::optional<IPrWitness> witness = find_ip_r_witness(s, r, bound, distinct);
    const std::uint64_t ms = timer.finish();
    json summary;
    summary["command"] = "find-ipr";
    summary["config"] = {
        {"set", set_path}, {"r", r}, {"gen_bound", bound}, {"distinct", distinct}};
    summary["found"] = witness.has_value();
    if (witness.has_value()) {
        summary["r"] = r;
        summary["generators"] = std::vector<std::uint64_t>(witness->generators().terms().begin(),
                                                           witness->generators().terms().end());
        summary["subset_sums"] = witness->subset_sums();
    }
    summary["ms"] = ms;
    emit_summary(opts, summary);
    return kExitOk;
}

int cmd_pigeonhole(const GlobalOptions& opts, std::uint64_t m,
                   const std::vector<std::uint64_t>& terms) {
    const FiniteSequence seq(terms);
    const BlockExtraction ext = pigeonhole_blocks(seq, m);
    json summary;
    summary["command"] = "pigeonhole";
    summary["config"] = {{"m", m}, {"terms", terms}};
    summary["m"] = ext.divisor;
    summary["blocks"] = ext.blocks;
    summary["sums"] = ext.block_sums;
    emit_summary(opts, summary);
    return kExitOk;
}

int cmd_find_k(const GlobalOptions& opts, const std::string& a_spec, const std::string& b_spec,
               std::uint64_t r, std::uint64_t x_max, const std::string& cert_path) {
    const unsigned threads = opts.resolved_threads();
    StageTimer load_timer("load-sets");
    SetInput a = load_set_input(a_spec, threads);
    SetInput b = load_set_input(b_spec, threads);
    const std::uint64_t load_ms = load_timer.finish();

    StageTimer pipeline_timer("pipeline");
    const WitnessResult result = run_pipeline(a.set, b.set, r, x_max, threads);
    const std::uint64_t pipeline_ms = pipeline_timer.finish({{"k", result.k}});

    const Certificate cert = emit(result, a.descriptor, b.descriptor);
    write_certificate_files(cert, cert_path);
    const CheckVerdict verdict = check(cert, oracle_from(a.set), oracle_from(b.set));
    if (!verdict.accepted) {
        throw Error("emitted certificate failed its self-check: " + verdict.clause);
    }

    json summary;
    summary["command"] = "find-k";
    summary["config"] = {{"a", a_spec},
                         {"b", b_spec},
                         {"r", r},
                         {"x_max", x_max},
                         {"cert", cert_path},
                         {"threads", threads}};
    summary["k"] = result.k;
    summary["candidate_count"] = result.k_set.cardinality();
    summary["set_a"] = descriptor_json(a.descriptor);
    summary["set_b"] = descriptor_json(b.descriptor);
    summary["certificate"] = cert_path;
    summary["self_check"] = "accept";
    summary["timings_ms"] = {{"load", load_ms}, {"pipeline", pipeline_ms}};
    emit_summary(opts, summary);
    return kExitOk;
}

int cmd_min_k(const GlobalOptions& opts, const std::string& a_spec, const std::string& b_spec,
              std::uint64_t x_max, std::uint64_t k_bound) {
    const unsigned threads = opts.resolved_threads();
    SetInput a = load_set_input(a_spec, threads);
    SetInput b = load_set_input(b_spec, threads);
    StageTimer timer("min-k-scan");
    const std::optional<std::uint64_t> k = min_k_bruteforce(a.set, b.set, x_max, k_bound, threads);
    const std::uint64_t ms = timer.finish();
    json summary;
    summary["command"] = "min-k";
    summary["config"] = {
        {"a", a_spec}, {"b", b_spec}, {"x_max", x_max}, {"k_bound", k_bound}, {"threads", threads}};
    if (k.has_value()) {
        summary["k"] = *k;
    } else {
        summary["k"] = nullptr;
    }
    summary["ms"] = ms;
    emit_summary(opts, summary);
    return kExitOk;
}

MembershipOracle oracle_for_descriptor(const SetDescriptor& desc, const std::string& which,
                                       const std::string& override_path, unsigned threads) {
    if (desc.kind == SetDescriptor::Kind::primes_diff) {
        diag("regenerate", {{"set", which}, {"prime_limit", desc.prime_limit}, {"hi", desc.hi}});
        IntSet regenerated = prime_diff_set(desc.prime_limit, Window(desc.hi), threads);
        if (set_digest(regenerated) != desc.sha256) {
            throw MalformedInput("regenerated " + which + " does not match the certificate digest");
        }
        return oracle_from(std::move(regenerated));
    }
    if (override_path.empty()) {
        throw MalformedInput("certificate references a set file for " + which +
                             "; pass --set-" + which);
    }
    IntSet loaded = read_set_file(override_path);
    if (loaded.hi() != desc.hi) {
        throw MalformedInput(which + " window is " + std::to_string(loaded.hi()) +
                             ", certificate declares " + std::to_string(desc.hi));
    }
    if (set_digest(loaded) != desc.sha256) {
        throw MalformedInput(which + " set file does not match the certificate digest");
    }
    return oracle_from(std::move(loaded));
}

int cmd_check(const GlobalOptions& opts, const std::string& cert_path, const std::string& set_a,
              const std::string& set_b) {
    const unsigned threads = opts.resolved_threads();
    const LoadedCertificate loaded = load_certificate_files(cert_path);

    json summary;
    summary["command"] = "check";
    summary["config"] = {{"cert", cert_path}, {"set_a", set_a}, {"set_b", set_b}};

    if (!loaded.digest_ok) {
        summary["verdict"] = "reject";
        summary["clause"] = "digest";
        summary["detail"] = "body digests to " + loaded.actual_digest + ", companion file says " +
                            loaded.expected_digest;
        emit_summary(opts, summary);
        return kExitWitnessFailure;
    }

    const MembershipOracle a = oracle_for_descriptor(loaded.cert.set_a, "a", set_a, threads);
    const MembershipOracle b = oracle_for_descriptor(loaded.cert.set_b, "b", set_b, threads);
    StageTimer timer("check");
    const CheckVerdict verdict = check(loaded.cert, a, b);
    const std::uint64_t ms = timer.finish();

    summary["verdict"] = verdict.accepted ? "accept" : "reject";
    summary["k"] = loaded.cert.k;
    summary["r"] = loaded.cert.r;
    summary["x_max"] = loaded.cert.x_max;
    if (!verdict.accepted) {
        summary["clause"] = verdict.clause;
        if (verdict.entry_x.has_value()) {
            summary["entry_x"] = *verdict.entry_x;
        }
        summary["detail"] = verdict.detail;
    }
    summary["ms"] = ms;
    emit_summary(opts, summary);
    return verdict.accepted ? kExitOk : kExitWitnessFailure;
}

int cmd_corollary4(const GlobalOptions& opts, std::uint64_t prime_limit, std::uint64_t r,
                   std::uint64_t x_max, std::uint64_t window_hi, const std::string& cert_path,
                   bool require_k_in_a) {
    const unsigned threads = opts.resolved_threads();
    const std::uint64_t fs_top = fs_range_max(r);
    const std::uint64_t hi = window_hi == 0 ? detail::checked_mul(x_max, fs_top) : window_hi;

    StageTimer sieve_timer("sieve");
    const PrimeTable table(prime_limit);
    const std::uint64_t sieve_ms = sieve_timer.finish({{"prime_count", table.prime_count()}});

    StageTimer diff_timer("prime-diff-set");
    const IntSet diffs = prime_diff_set(table, Window(hi), threads);
    const std::uint64_t diff_ms = diff_timer.finish({{"cardinality", diffs.cardinality()}});

    StageTimer pipeline_timer("pipeline");
    const WitnessResult result = run_pipeline(diffs, diffs, r, x_max, threads);
    const std::uint64_t pipeline_ms = pipeline_timer.finish({{"k", result.k}});

    const SetDescriptor desc = SetDescriptor::for_primes_diff(prime_limit, diffs);
    const Certificate cert = emit(result, desc, desc);
    write_certificate_files(cert, cert_path);

    StageTimer check_timer("self-check");
    const CheckVerdict verdict = check(cert, oracle_from(diffs), oracle_from(diffs));
    const std::uint64_t check_ms = check_timer.finish();
    if (!verdict.accepted) {
        throw Error("emitted certificate failed its self-check: " + verdict.clause);
    }

    json summary;
    summary["command"] = "corollary4";
    summary["config"] = {{"prime_limit", prime_limit}, {"r", r},
                         {"x_max", x_max},             {"window", hi},
                         {"cert", cert_path},          {"require_k_in_a", require_k_in_a},
                         {"threads", threads}};
    summary["k"] = result.k;
    summary["candidate_count"] = result.k_set.cardinality();
    summary["prime_limit"] = prime_limit;
    summary["window"] = hi;
    summary["set"] = descriptor_json(desc);
    summary["certificate"] = cert_path;
    summary["self_check"] = "accept";
    if (require_k_in_a) {
        summary["k_in_a"] = diffs.contains(result.k);  // K ⊆ A, so always true
    }
    summary["timings_ms"] = {
        {"sieve", sieve_ms}, {"diffset", diff_ms}, {"pipeline", pipeline_ms}, {"check", check_ms}};
    emit_summary(opts, summary);
    return kExitOk;
}

json error_summary(const std::string& kind, const std::string& message) {
    json j;
    j["error"] = kind;
    j["message"] = message;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"windowed integer-set engine: set kernels, finite-sums search, "
                 "multiplier witnesses, and checkable certificates"};
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_option("--threads", opts.threads,
                   "worker threads (0 = SHIFTPROD_THREADS env or hardware)");
    std::string format = "auto";
    app.add_option("--format", format, "output format: auto, json, table")
        ->check(CLI::IsMember({"auto", "json", "table"}));

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "sieve primes up to a limit into a set file");
    std::uint64_t sieve_limit = 0;
    std::string sieve_out;
    sieve_cmd->add_option("--limit", sieve_limit, "sieve bound M")->required();
    sieve_cmd->add_option("--out", sieve_out, "output set file")->required();

    // diffset
    auto* diff_cmd = app.add_subcommand("diffset", "prime difference set on a window");
    std::uint64_t diff_limit = 0, diff_window = 0;
    std::string diff_out;
    diff_cmd->add_option("--prime-limit", diff_limit,
                         "prime search bound M (default max(10^6, 100 * window))");
    diff_cmd->add_option("--window", diff_window, "difference window N")->required();
    diff_cmd->add_option("--out", diff_out, "output set file")->required();

    // product
    auto* product_cmd = app.add_subcommand("product", "product set of two set files");
    std::string product_a, product_b, product_out;
    std::uint64_t product_window = 0;
    product_cmd->add_option("--a", product_a, "left set file")->required();
    product_cmd->add_option("--b", product_b, "right set file")->required();
    product_cmd->add_option("--window", product_window, "output window N")->required();
    product_cmd->add_option("--out", product_out, "output set file")->required();

    // fs
    auto* fs_cmd = app.add_subcommand("fs", "all nonempty subset sums of the given generators");
    std::vector<std::uint64_t> fs_terms;
    fs_cmd->add_option("generators", fs_terms, "positive generators")->required()->expected(-1);

    // find-ipr
    auto* ipr_cmd = app.add_subcommand("find-ipr", "search a set file for an IP_r witness");
    std::string ipr_set;
    std::uint64_t ipr_r = 0, ipr_bound = 0;
    bool ipr_distinct = false;
    ipr_cmd->add_option("--set", ipr_set, "set file to search")->required();
    ipr_cmd->add_option("--r", ipr_r, "witness rank r")->required();
    ipr_cmd->add_option("--bound", ipr_bound, "generator bound")->required();
    ipr_cmd->add_flag("--distinct", ipr_distinct, "require strictly increasing generators");

    // pigeonhole
    auto* pigeon_cmd = app.add_subcommand("pigeonhole", "disjoint blocks with sums divisible by m");
    std::uint64_t pigeon_m = 0;
    std::vector<std::uint64_t> pigeon_terms;
    pigeon_cmd->add_option("--m", pigeon_m, "divisor m")->required();
    pigeon_cmd->add_option("terms", pigeon_terms, "sequence terms")->required()->expected(-1);

    // find-k
    auto* findk_cmd = app.add_subcommand(
        "find-k", "run the witness pipeline and emit a certificate");
    std::string findk_a, findk_b, findk_cert;
    std::uint64_t findk_r = 0, findk_xmax = 0;
    findk_cmd->add_option("--a", findk_a, "set file or primes-diff:<M>:<N> recipe")->required();
    findk_cmd->add_option("--b", findk_b, "set file or primes-diff:<M>:<N> recipe")->required();
    findk_cmd->add_option("--r", findk_r, "rank r")->required();
    findk_cmd->add_option("--xmax", findk_xmax, "verified multiplier bound X_max")->required();
    findk_cmd->add_option("--cert", findk_cert, "certificate output path")->required();

    // min-k
    auto* mink_cmd = app.add_subcommand("min-k", "exhaustive scan for the smallest verified k");
    std::string mink_a, mink_b;
    std::uint64_t mink_xmax = 0, mink_bound = 0;
    mink_cmd->add_option("--a", mink_a, "set file or primes-diff:<M>:<N> recipe")->required();
    mink_cmd->add_option("--b", mink_b, "set file or primes-diff:<M>:<N> recipe")->required();
    mink_cmd->add_option("--xmax", mink_xmax, "verified multiplier bound X_max")->required();
    mink_cmd->add_option("--k-bound", mink_bound, "largest k to try")->required();

    // check
    auto* check_cmd = app.add_subcommand("check", "validate a certificate independently");
    std::string check_cert, check_set_a, check_set_b;
    check_cmd->add_option("cert", check_cert, "certificate file (.fscert)")->required();
    check_cmd->add_option("--set-a", check_set_a, "set file backing descriptor a");
    check_cmd->add_option("--set-b", check_set_b, "set file backing descriptor b");

    // corollary4
    auto* cor_cmd = app.add_subcommand(
        "corollary4", "end-to-end run on A = B = prime differences, with certificate");
    std::uint64_t cor_limit = 1'000'000, cor_r = 2, cor_xmax = 1000, cor_window = 0;
    std::string cor_cert = "corollary4.fscert";
    bool cor_require_k = false;
    cor_cmd->add_option("--prime-limit", cor_limit, "prime search bound M");
    cor_cmd->add_option("--r", cor_r, "rank r");
    cor_cmd->add_option("--xmax", cor_xmax, "verified multiplier bound X_max");
    cor_cmd->add_option("--window", cor_window,
                        "difference window (default X_max * r(r+1)/2)");
    cor_cmd->add_option("--cert", cor_cert, "certificate output path");
    cor_cmd->add_flag("--require-k-in-a", cor_require_k,
                      "report that the witness k itself lies in A");

    // Let --threads / --format appear after a subcommand name too.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    if (format == "json") {
        opts.format = Format::json_out;
    } else if (format == "table") {
        opts.format = Format::table_out;
    }

    try {
        if (sieve_cmd->parsed()) {
            return cmd_sieve(opts, sieve_limit, sieve_out);
        }
        if (diff_cmd->parsed()) {
            return cmd_diffset(opts, diff_limit, diff_window, diff_out);
        }
        if (product_cmd->parsed()) {
            return cmd_product(opts, product_a, product_b, product_window, product_out);
        }
        if (fs_cmd->parsed()) {
            return cmd_fs(opts, fs_terms);
        }
        if (ipr_cmd->parsed()) {
            return cmd_find_ipr(opts, ipr_set, ipr_r, ipr_bound, ipr_distinct);
        }
        if (pigeon_cmd->parsed()) {
            return cmd_pigeonhole(opts, pigeon_m, pigeon_terms);
        }
        if (findk_cmd->parsed()) {
            return cmd_find_k(opts, findk_a, findk_b, findk_r, findk_xmax, findk_cert);
        }
        if (mink_cmd->parsed()) {
            return cmd_min_k(opts, mink_a, mink_b, mink_xmax, mink_bound);
        }
        if (check_cmd->parsed()) {
            return cmd_check(opts, check_cert, check_set_a, check_set_b);
        }
        if (cor_cmd->parsed()) {
            return cmd_corollary4(opts, cor_limit, cor_r, cor_xmax, cor_window, cor_cert,
                                  cor_require_k);
        }
    } catch (const NoCandidateK& e) {
        json j = error_summary("no-candidate-k", e.what());
        j["emptied_at_m"] = e.emptied_at_m;
        emit_summary(opts, j);
        return kExitWitnessFailure;
    } catch (const SelectorIncomplete& e) {
        json j = error_summary("selector-incomplete", e.what());
        j["misses"] = e.misses;
        emit_summary(opts, j);
        return kExitWitnessFailure;
    } catch (const MalformedInput& e) {
        emit_summary(opts, error_summary("malformed-input", e.what()));
        return kExitConfigError;
    } catch (const Error& e) {
        emit_summary(opts, error_summary("config", e.what()));
        return kExitConfigError;
    } catch (const std::exception& e) {
        emit_summary(opts, error_summary("internal", e.what()));
        return kExitConfigError;
    }
    return kExitConfigError;
}
