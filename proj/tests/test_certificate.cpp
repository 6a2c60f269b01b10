#include "shiftprod/certificate.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "mutation_suite.hpp"
#include "oracles.hpp"

using namespace shiftprod;

namespace {

IntSet evens(std::uint64_t hi) {
    return IntSet::from_predicate(Window(hi), [](std::uint64_t x) { return x % 2 == 0; });
}

// The reference fixture: A = [1,100], B = evens up to 200, r = 2, X_max = 10,
// which the pipeline resolves to k = 6 with p alternating between 2 and 1.
struct Fixture {
    IntSet a = IntSet::full(Window(100));
    IntSet b = evens(200);
    WitnessResult result = run_pipeline(a, b, 2, 10);
    Certificate cert = emit(result, SetDescriptor::for_set(a), SetDescriptor::for_set(b));
};

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST(Emit, MatchesWorkedExample) {
    const Fixture fx;
    EXPECT_EQ(fx.cert.k, 6U);
    ASSERT_EQ(fx.cert.entries.size(), 10U);
    EXPECT_EQ(fx.cert.entries[0].x, 1U);
    EXPECT_EQ(fx.cert.entries[0].p, 2U);
    EXPECT_EQ(fx.cert.entries[0].a, 3U);
    EXPECT_EQ(fx.cert.entries[0].b, 2U);
    EXPECT_EQ(fx.cert.entries[1].x, 2U);
    EXPECT_EQ(fx.cert.entries[1].p, 1U);
    EXPECT_EQ(fx.cert.entries[1].a, 6U);
    EXPECT_EQ(fx.cert.entries[1].b, 2U);
}

TEST(Emit, DegenerateSingleEntry) {
    const IntSet full = IntSet::full(Window(10));
    const WitnessResult res = run_pipeline(full, full, 1, 1);
    const Certificate cert = emit(res, SetDescriptor::for_set(full), SetDescriptor::for_set(full));
    EXPECT_EQ(cert.k, 1U);
    ASSERT_EQ(cert.entries.size(), 1U);
    EXPECT_EQ(cert.entries[0].x, 1U);
    EXPECT_EQ(cert.entries[0].p, 1U);
    EXPECT_EQ(cert.entries[0].a, 1U);
    EXPECT_EQ(cert.entries[0].b, 1U);
}

TEST(CanonicalJson, GoldenForm) {
    const std::string digest(64, 'a');
    Certificate cert;
    cert.r = 1;
    cert.k = 1;
    cert.x_max = 1;
    cert.set_a = SetDescriptor{SetDescriptor::Kind::setfile, 6, 0, digest};
    cert.set_b = SetDescriptor{SetDescriptor::Kind::primes_diff, 6, 10, digest};
    cert.entries = {CertificateEntry{1, 1, 1, 1}};
    const std::string expected = "{\"entries\":[[1,1,1,1]],\"k\":1,\"r\":1,\"set_a\":{\"hi\":6,"
                                 "\"kind\":\"setfile\",\"sha256\":\"" + digest +
                                 "\"},\"set_b\":{\"hi\":6,\"kind\":\"primes-diff\",\"prime_limit\""
                                 ":10,\"sha256\":\"" + digest +
                                 "\"},\"version\":1,\"x_max\":1}";
    EXPECT_EQ(canonical_json(cert), expected);
}

TEST(CanonicalJson, ParseRoundTrip) {
    const Fixture fx;
    const std::string body = canonical_json(fx.cert);
    const Certificate reparsed = parse_certificate(body);
    EXPECT_EQ(canonical_json(reparsed), body);
    EXPECT_EQ(reparsed.k, fx.cert.k);
    EXPECT_EQ(reparsed.r, fx.cert.r);
    EXPECT_EQ(reparsed.x_max, fx.cert.x_max);
    EXPECT_EQ(reparsed.entries.size(), fx.cert.entries.size());
}

TEST(ParseCertificate, RejectsBadShapes) {
    EXPECT_THROW(parse_certificate("not json"), MalformedInput);
    EXPECT_THROW(parse_certificate("[]"), MalformedInput);
    EXPECT_THROW(parse_certificate("{\"version\":1}"), MalformedInput);
    EXPECT_THROW(parse_certificate("{\"entries\":[[1,2,3]],\"k\":1,\"r\":1,"
                                   "\"set_a\":{\"hi\":1,\"kind\":\"setfile\",\"sha256\":\"x\"},"
                                   "\"set_b\":{\"hi\":1,\"kind\":\"setfile\",\"sha256\":\"x\"},"
                                   "\"version\":1,\"x_max\":1}"),
                 MalformedInput);
    // floats are not integers
    EXPECT_THROW(parse_certificate("{\"entries\":[],\"k\":1.5,\"r\":1,"
                                   "\"set_a\":{\"hi\":1,\"kind\":\"setfile\",\"sha256\":\"x\"},"
                                   "\"set_b\":{\"hi\":1,\"kind\":\"setfile\",\"sha256\":\"x\"},"
                                   "\"version\":1,\"x_max\":1}"),
                 MalformedInput);
}

TEST(Check, AcceptsHonestCertificate) {
    const Fixture fx;
    const CheckVerdict verdict = check(fx.cert, oracle_from(fx.a), oracle_from(fx.b));
    EXPECT_TRUE(verdict.accepted) << verdict.clause << ": " << verdict.detail;
}

TEST(Check, RejectsDecrementedA) {
    Fixture fx;
    fx.cert.entries[3].a -= 1;
    const CheckVerdict verdict = check(fx.cert, oracle_from(fx.a), oracle_from(fx.b));
    EXPECT_FALSE(verdict.accepted);
    EXPECT_EQ(verdict.clause, "a = k/p");
    EXPECT_EQ(verdict.entry_x, 4U);
}

TEST(Check, RejectsPOutsideFsRange) {
    Fixture fx;
    fx.cert.entries[0].p = fs_range_max(fx.cert.r) + 1;
    const CheckVerdict verdict = check(fx.cert, oracle_from(fx.a), oracle_from(fx.b));
    EXPECT_FALSE(verdict.accepted);
    EXPECT_EQ(verdict.clause, "p in FS range");
}

TEST(Check, RejectsRaisedRankViaCandidateMembership) {
    // Raising r widens the FS range; k = 6 is not divisible by 4, so the
    // k ∈ ⋂ m·A clause has to fire.
    Fixture fx;
    fx.cert.r += 1;
    const CheckVerdict verdict = check(fx.cert, oracle_from(fx.a), oracle_from(fx.b));
    EXPECT_FALSE(verdict.accepted);
    EXPECT_EQ(verdict.clause, "k divisible by FS range");
}

TEST(Check, AllSingleFieldMutationsRejected) {
    const Fixture fx;
    const mutation_suite::Outcome out =
        mutation_suite::run(fx.cert, oracle_from(fx.a), oracle_from(fx.b));
    EXPECT_EQ(out.mutants, out.rejected);
    EXPECT_TRUE(out.accepted_mutants.empty())
        << "first surviving mutant: " << out.accepted_mutants.front();
    EXPECT_GE(out.mutants, 4 * 2 * fx.cert.entries.size());
}

TEST(Check, CompleteOnRandomPipelineFixtures) {
    std::mt19937_64 rng(51);
    int built = 0;
    for (int i = 0; i < 40; ++i) {
        const std::uint64_t r = 1 + rng() % 3;
        const std::uint64_t fs_top = fs_range_max(r);
        std::uint64_t lcm = 1;
        for (std::uint64_t m = 2; m <= fs_top; ++m) {
            lcm = std::lcm(lcm, m);
        }
        const std::uint64_t k0 = lcm * (1 + rng() % 2);
        const std::uint64_t x_max = 2 + rng() % 10;
        const std::uint64_t a_hi = std::min<std::uint64_t>(500, k0 + rng() % 100);
        const std::uint64_t b_hi = std::min<std::uint64_t>(500, x_max * fs_top + rng() % 100);
        auto a_members = oracles::random_members(rng, a_hi, 0.3);
        for (std::uint64_t m = 1; m <= fs_top; ++m) {
            a_members.push_back(k0 / m);
        }
        auto b_members = oracles::random_members(rng, b_hi, 0.3);
        for (std::uint64_t x = 1; x <= x_max; ++x) {
            b_members.push_back(x * (1 + rng() % fs_top));
        }
        const IntSet a = IntSet::from_members(Window(a_hi), a_members);
        const IntSet b = IntSet::from_members(Window(b_hi), b_members);
        const WitnessResult res = run_pipeline(a, b, r, x_max);
        const Certificate cert = emit(res, SetDescriptor::for_set(a), SetDescriptor::for_set(b));
        const CheckVerdict verdict = check(cert, oracle_from(a), oracle_from(b));
        EXPECT_TRUE(verdict.accepted) << verdict.clause << " / " << verdict.detail;
        ++built;
    }
    EXPECT_EQ(built, 40);
}

TEST(Check, OracleWindowMustCoverQueries) {
    const Fixture fx;
    const MembershipOracle narrow{5, [](std::uint64_t) { return true; }};
    EXPECT_THROW(check(fx.cert, narrow, oracle_from(fx.b)), OracleWindowInsufficient);
}

TEST(CertificateFiles, WriteLoadAndDigest) {
    const Fixture fx;
    const auto path = temp_path("shiftprod_test_cert.fscert");
    write_certificate_files(fx.cert, path);
    const LoadedCertificate loaded = load_certificate_files(path);
    EXPECT_TRUE(loaded.digest_ok);
    EXPECT_EQ(canonical_json(loaded.cert), canonical_json(fx.cert));

    // Tampering with the body must break the companion digest.
    std::string body = canonical_json(fx.cert);
    body[body.find("\"k\":6") + 4] = '7';
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << body;
    }
    const LoadedCertificate tampered = load_certificate_files(path);
    EXPECT_FALSE(tampered.digest_ok);

    std::filesystem::remove(path);
    auto digest_path = path;
    digest_path += ".sha256";
    std::filesystem::remove(digest_path);
}

TEST(CertificateFiles, MissingDigestFileIsMalformed) {
    const Fixture fx;
    const auto path = temp_path("shiftprod_test_nodigest.fscert");
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << canonical_json(fx.cert);
    }
    EXPECT_THROW(load_certificate_files(path), MalformedInput);
    std::filesystem::remove(path);
}
